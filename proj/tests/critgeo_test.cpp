// Copyright 2026 The mlab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mlab/critgeo.hpp"

#include <random>
#include <set>

#include "gtest/gtest.h"

namespace mlab {
namespace {

const std::vector<std::string> kTX = {"t", "x"};
const CotangentChart kChart = CotangentChart::Standard(2);

Ideal ChartIdeal(std::vector<std::string> gens) { return Ideal::Parse(gens, kChart.AllVars()); }

TEST(CritIdealTest, Identity) {
  const auto r = CritIdeal(PolyMap::Identity(kTX));
  EXPECT_TRUE(VarietyContains(r.ideal, {ChartIdeal({"xi1", "xi2"})}));
  EXPECT_TRUE(VarietyContains(ChartIdeal({"xi1", "xi2"}), {r.ideal}));
  EXPECT_EQ(r.dimension, 2);
  EXPECT_EQ(r.nonzero_section_dimension, -1);
  EXPECT_EQ(r.verdict, LagrangianVerdict::kLagrangian);
}

TEST(CritIdealTest, KashiwaraExample) {
  const auto r = CritIdeal(PolyMap::Parse("t, t^2*x", kTX));
  const Ideal zero = ChartIdeal({"xi1", "xi2"});
  const Ideal line = ChartIdeal({"y1", "y2", "xi1"});
  EXPECT_TRUE(VarietyContains(r.ideal, {zero, line}));
  EXPECT_TRUE(VarietyContains(zero, {r.ideal}));
  EXPECT_TRUE(VarietyContains(line, {r.ideal}));
  EXPECT_FALSE(VarietyContains(r.ideal, {zero}));
  EXPECT_EQ(r.dimension, 2);
  EXPECT_EQ(r.nonzero_section_dimension, 1);
  EXPECT_EQ(r.verdict, LagrangianVerdict::kStrictlyIsotropicCandidate);
  EXPECT_TRUE(IsFiberHomogeneous(r.ideal, r.chart));
  // xi1 vanishes on the part of Crit away from the zero section.
  auto vars = kChart.AllVars();
  vars.push_back("s");
  const Ideal away = r.ideal.Embed(vars).Plus({ParsePoly("1 - s*xi2", vars)});
  EXPECT_TRUE(RadicalMember(ParsePoly("xi1", vars), away));
  // Oracle: sampled points (0, 0, 0, c) of that component satisfy xi1 = 0.
  for (int c = 1; c < 5; ++c) {
    for (const auto& g : r.ideal.generators()) EXPECT_EQ(g.Eval({0, 0, 0, c}), 0);
  }
}

TEST(CritIdealTest, CubicExample) {
  const auto r = CritIdeal(PolyMap::Parse("t, x^3/3 - 2*t^2*x", kTX));
  EXPECT_EQ(r.dimension, 2);
  EXPECT_EQ(r.nonzero_section_dimension, 2);
  EXPECT_EQ(r.verdict, LagrangianVerdict::kLagrangian);
  EXPECT_TRUE(IsFiberHomogeneous(r.ideal, r.chart));
}

// Kernel of the transposed Jacobian at a rational point, one vector or none.
std::vector<Rational> CokernelVector(const std::vector<std::vector<Rational>>& j) {
  // 2x2 only: find xi with xi^T J = 0.
  const Rational det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
  if (det != 0) return {0, 0};
  if (j[1][0] != 0 || j[1][1] != 0) {
    // xi = (j[1][k], -j[0][k]) for a nonzero column entry in row 1.
    const int k = j[1][0] != 0 ? 0 : 1;
    return {j[1][k], -j[0][k]};
  }
  return {0, 1};
}

// Soundness: (f(x), xi) with xi^T d_x f = 0 satisfies every generator.
TEST(CritIdealPropertyTest, SampledPointsLieOnCrit) {
  for (const char* map : {"t, t^2*x", "t, x^3/3 - 2*t^2*x", "t*x, x"}) {
    const PolyMap f = PolyMap::Parse(map, kTX);
    const auto r = CritIdeal(f);
    const auto jac = f.Jacobian();
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> d(-9, 9);
    for (int k = 0; k < 100; ++k) {
      std::vector<Rational> x = {Rational(d(rng)) / (1 + k % 4), Rational(d(rng)) / (1 + k % 3)};
      if (k % 2) x[0] = 0;
      std::vector<std::vector<Rational>> j(2, std::vector<Rational>(2));
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) j[a][b] = jac[a][b].Eval(x);
      }
      const auto xi = CokernelVector(j);
      const auto y = f.Eval(x);
      const Rational scale = 1 + k % 5;
      for (const auto& g : r.ideal.generators()) {
        EXPECT_EQ(g.Eval({y[0], y[1], xi[0] * scale, xi[1] * scale}), 0) << map;
      }
    }
  }
}

TEST(ConormalTest, Examples) {
  EXPECT_EQ(ConormalIdeal({}, kChart).ToStrings(), (std::vector<std::string>{"xi1", "xi2"}));
  EXPECT_EQ(ConormalIdeal({0, 1}, kChart).ToStrings(), (std::vector<std::string>{"y1", "y2"}));
  EXPECT_EQ(ConormalIdeal({0}, kChart).ToStrings(), (std::vector<std::string>{"y1", "xi2"}));
}

TEST(VarietyContainsTest, Examples) {
  const std::vector<std::string> xy = {"x", "y"};
  EXPECT_TRUE(VarietyContains(Ideal::Parse({"x", "y"}, xy), {Ideal::Parse({"x"}, xy)}));
  EXPECT_FALSE(VarietyContains(Ideal::Parse({"x*y"}, xy), {Ideal::Parse({"x"}, xy)}));
  EXPECT_TRUE(VarietyContains(Ideal::Parse({"x*y"}, xy),
                              {Ideal::Parse({"x"}, xy), Ideal::Parse({"y"}, xy)}));
  const auto r = CritIdeal(PolyMap::Parse("t, t^2*x", kTX));
  EXPECT_TRUE(VarietyContains(r.ideal, {ConormalIdeal({}, kChart), ConormalIdeal({0, 1}, kChart)}));
}

TEST(IsotropyTest, ZeroSectionAndConormal) {
  const auto z = IsotropySampleCheck(ChartIdeal({"xi1", "xi2"}), kChart, 20, 1e-8);
  EXPECT_TRUE(z.pass);
  EXPECT_LT(z.max_residual, 1e-12);
  const auto c = IsotropySampleCheck(ChartIdeal({"y1", "xi2"}), kChart, 20, 1e-8);
  EXPECT_TRUE(c.pass);
  EXPECT_LT(c.max_residual, 1e-12);
  // A non-isotropic plane is caught.
  const auto bad = IsotropySampleCheck(ChartIdeal({"xi1", "xi2 - y1"}), kChart, 20, 1e-8);
  EXPECT_FALSE(bad.pass);
}

TEST(IsotropyTest, KashiwaraCrit) {
  const auto r = CritIdeal(PolyMap::Parse("t, t^2*x", kTX));
  const auto rep = IsotropySampleCheck(r.ideal, r.chart, 20, 1e-8, 42);
  EXPECT_TRUE(rep.pass);
  EXPECT_GE(rep.smooth_points, 20);
  // Same seed, same points.
  EXPECT_EQ(IsotropySampleCheck(r.ideal, r.chart, 20, 1e-8, 42).points, rep.points);
}

TEST(IsotropyPropertyTest, ConormalsAreLagrangian) {
  const auto chart3 = CotangentChart::Standard(3);
  for (std::size_t mask = 0; mask < 8; ++mask) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < 3; ++i) {
      if (mask >> i & 1) s.push_back(i);
    }
    const auto rep = IsotropySampleCheck(ConormalIdeal(s, chart3), chart3, 10, 1e-8);
    EXPECT_TRUE(rep.pass);
    EXPECT_LT(rep.max_residual, 1e-12);
  }
}

TEST(CensusTest, QuadraticResidues) {
  const std::vector<std::string> x = {"x"};
  const Ideal i = Ideal::Parse({"x^2 - 2"}, x);
  // Oracle: squares modulo small primes.
  auto squares = [](int p) {
    std::set<int> s;
    for (int a = 0; a < p; ++a) s.insert(a * a % p);
    return s;
  };
  EXPECT_FALSE(squares(3).count(2));
  EXPECT_FALSE(squares(5).count(2));
  EXPECT_TRUE(squares(7).count(2));
  EXPECT_TRUE(FPointCensus(i, 3, 3).points.empty());
  EXPECT_TRUE(FPointCensus(i, 5, 3).points.empty());
  const auto c7 = FPointCensus(i, 7, 3);
  ASSERT_EQ(c7.points.size(), 2u);
  for (const auto& p : c7.points) EXPECT_EQ((p[0] * p[0] - 2) % 343, 0);
}

TEST(CensusTest, CubicCriticalPointsOnlyAtOrigin) {
  // Critical points of (t, x^3/3 - a t^2 x): x^2 - a t^2 = 0, a = 2.
  const auto c = FPointCensus(Ideal::Parse({"x^2 - 2*t^2"}, kTX), 5, 3);
  ASSERT_EQ(c.points.size(), 1u);
  EXPECT_EQ(c.points[0], (std::vector<Integer>{0, 0}));
  EXPECT_GT(c.residue_solutions, 1u);
}

}  // namespace
}  // namespace mlab
