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

#include "mlab/resolution.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include "gtest/gtest.h"

namespace mlab {
namespace {

std::string ReadData(const std::string& name) {
  std::ifstream in(std::string(MLAB_DATA_DIR) + "/atlases/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ChartAtlas X2() { return ChartAtlas::Parse(ReadData("x2.atlas")); }

// V(a) = V(b).
void ExpectSameVariety(const Ideal& a, const Ideal& b) {
  EXPECT_TRUE(VarietyContains(a, {b}));
  EXPECT_TRUE(VarietyContains(b, {a}));
}

// A chart with two coordinates and the given divisor lines.
ChartAtlas OneChart(const std::string& f, const std::string& p, const std::string& divisors) {
  return ChartAtlas::Parse("W_dimension=2\n[chart c]\ncoords=x, t\nf=(" + f + ")\np=" + p +
                           "\nomega_beta=0, 0\nomega_unit=1\n" + divisors);
}

Stratum Curve(const std::string& phi) {
  Stratum st;
  st.r = 1;
  st.chart = "test";
  st.free_coords = {"x"};
  st.phi = PolyMap::Parse(phi, {"x"});
  return st;
}

TEST(AtlasTest, FileRoundTripIsBitExact) {
  for (const char* name : {"x2.atlas", "x2_dropped.atlas"}) {
    const std::string text = ReadData(name);
    ASSERT_FALSE(text.empty()) << name;
    EXPECT_EQ(ChartAtlas::Parse(text).Serialize(), text) << name;
  }
}

TEST(AtlasTest, SerializeIsIdempotentOnSloppyInput) {
  const auto a = ChartAtlas::Parse(
      "# comment\nW_dimension = 2\n\n[chart inf]\ncoords=s\nf=( s , 1 )\np=s*s\n"
      "omega_beta=-2\nomega_unit=-1\ndivisor=s:2:inf\n[chart aff]\ncoords=v\nf=(v,v*v)\np=1\n"
      "omega_beta=0\nomega_unit=1\n[glue aff->inf]\ns=(1)/(v)\n");
  const std::string once = a.Serialize();
  EXPECT_EQ(ChartAtlas::Parse(once).Serialize(), once);
  EXPECT_NE(once.find("p=s^2"), std::string::npos);
  EXPECT_NO_THROW(a.Validate());
}

TEST(AtlasTest, ParseErrors) {
  for (const char* text : {"W_dimension=2\n[chart c]\ncoords=x\n",
                           "W_dimension=2\nbogus=1\n",
                           "W_dimension=two\n",
                           "W_dimension=2\n[chart c]\ncoords=x\nf=(x, 1)\np=1\nomega_beta=0\n"
                           "omega_unit=1\ndivisor=x:1\n",
                           "W_dimension=2\n[section]\n"}) {
    try {
      ChartAtlas::Parse(text);
      ADD_FAILURE() << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::kParseError) << text;
    }
  }
}

TEST(AtlasTest, ValidateRejectsInconsistentCharts) {
  auto kind = [](const ChartAtlas& a) {
    try {
      a.Validate();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::kInvalidArgument;
  };
  // p does not vanish on the declared component at infinity.
  EXPECT_EQ(kind(OneChart("1, x", "t + 1", "divisor=t:1:inf\n")), ErrorKind::kAtlasInconsistency);
  // A finite component on which p vanishes.
  EXPECT_EQ(kind(OneChart("1, x", "t", "divisor=t:1:fin\n")), ErrorKind::kAtlasInconsistency);
  // Divisor equation that is not a coordinate.
  EXPECT_EQ(kind(OneChart("1, x", "t", "divisor=y:1:inf\n")), ErrorKind::kAtlasInconsistency);
  // f and p vanish together at x = t = 0.
  EXPECT_EQ(kind(OneChart("x, x", "t", "divisor=t:1:inf\n")), ErrorKind::kCommonZeroViolation);
  EXPECT_EQ(kind(OneChart("1, x", "t", "divisor=t:1:inf\n")), ErrorKind::kInvalidArgument);
  // A gluing map that does not intertwine (f : p).
  auto a = X2();
  a.gluing[0].numerators[0] = ParsePoly("2", {"v"});
  EXPECT_EQ(kind(a), ErrorKind::kAtlasInconsistency);
}

TEST(StrataTest, SingleCoordinateAtInfinity) {
  const auto st = EnumerateStrata(OneChart("1, x", "t", "divisor=t:1:inf\n"));
  ASSERT_EQ(st.size(), 1u);
  EXPECT_EQ(st[0].r, 1);
  EXPECT_EQ(st[0].zero_coords, std::vector<std::string>{"t"});
  EXPECT_EQ(st[0].free_coords, std::vector<std::string>{"x"});
  EXPECT_EQ(st[0].phi.ToString(), "(1, x)");
}

TEST(StrataTest, TwoCoordinatesAtInfinity) {
  const auto st = EnumerateStrata(OneChart("1, x + t", "x*t", "divisor=x:1:inf\ndivisor=t:1:inf\n"));
  ASSERT_EQ(st.size(), 3u);
  EXPECT_EQ(st[0].r, 1);
  EXPECT_EQ(st[1].r, 1);
  EXPECT_EQ(st[2].r, 2);
  EXPECT_EQ(st[0].zero_coords, std::vector<std::string>{"x"});
  EXPECT_EQ(st[1].zero_coords, std::vector<std::string>{"t"});
  EXPECT_EQ(st[2].zero_coords, (std::vector<std::string>{"x", "t"}));
  EXPECT_TRUE(st[2].free_coords.empty());
  EXPECT_EQ(st[2].phi.ToString(), "(1, 0)");
}

TEST(StrataTest, NoStrataBeyondTheComponentsAtInfinity) {
  EXPECT_TRUE(EnumerateStrata(OneChart("1, x", "1", "divisor=t:1:fin\n")).empty());
  for (const auto& s : EnumerateStrata(OneChart("1, x", "t", "divisor=t:1:inf\n"))) {
    EXPECT_LE(s.r, 1);
  }
  // A finite component meets the one at infinity; their intersection is a
  // stratum since it lies in X_inf.
  const auto st = EnumerateStrata(OneChart("1, x", "t", "divisor=t:1:inf\ndivisor=x:1:fin\n"));
  ASSERT_EQ(st.size(), 2u);
  EXPECT_EQ(st[1].r, 2);
}

TEST(StrataTest, X2HasOnePointAtInfinity) {
  const auto st = EnumerateStrata(X2());
  ASSERT_EQ(st.size(), 1u);
  EXPECT_EQ(st[0].chart, "inf");
  EXPECT_TRUE(st[0].free_coords.empty());
  EXPECT_EQ(st[0].phi.ToString(), "(0, 1)");
}

TEST(IprimeTest, ImmersionGivesZeroSection) {
  const auto ip = CritUnionIprime({Curve("1, x")}, 2);
  ASSERT_EQ(ip.size(), 2u);  // charts w1 != 0 and w2 != 0
  ExpectSameVariety(ip[0].crit.ideal, Ideal::Parse({"zeta2"}, ip[0].crit.chart.AllVars()));
}

TEST(IprimeTest, ConstantMapGivesFullConormal) {
  const auto ip = CritUnionIprime({Curve("1, 2")}, 2);
  ASSERT_EQ(ip.size(), 2u);
  ExpectSameVariety(ip[0].crit.ideal, Ideal::Parse({"u2 - 2"}, ip[0].crit.chart.AllVars()));
  ExpectSameVariety(ip[1].crit.ideal, Ideal::Parse({"2*u1 - 1"}, ip[1].crit.chart.AllVars()));
}

TEST(IprimeTest, X2IsTheFiberOverTheExceptionalPoint) {
  const auto ip = CritUnionIprime(EnumerateStrata(X2()), 2);
  // The stratum maps to (0 : 1), outside {w1 != 0}.
  ASSERT_EQ(ip.size(), 1u);
  EXPECT_EQ(ip[0].w_chart, 1u);
  EXPECT_EQ(ip[0].crit.chart.base, std::vector<std::string>{"u1"});
  ExpectSameVariety(ip[0].crit.ideal, Ideal::Parse({"u1"}, {"u1", "zeta1"}));
}

TEST(IprimeTest, EveryPieceIsIsotropic) {
  std::vector<Stratum> strata = EnumerateStrata(X2());
  strata.push_back(Curve("1, x"));
  strata.push_back(Curve("1, x^2"));
  strata.push_back(Curve("x, x^3 + 1"));
  for (const auto& piece : CritUnionIprime(strata, 2)) {
    const auto rep = IsotropySampleCheck(piece.crit.ideal, piece.crit.chart, 10, 1e-8);
    EXPECT_TRUE(rep.pass) << piece.stratum << " " << piece.w_chart;
  }
}

TEST(AssembleTest, EmptyIprimeGivesTheAxes) {
  const auto i = AssembleI({}, 2);
  ASSERT_EQ(i.pieces.size(), 2u);
  const auto vars = i.chart.AllVars();
  ExpectSameVariety(i.pieces[0], Ideal::Parse({"w1", "w2"}, vars));
  ExpectSameVariety(i.pieces[1], Ideal::Parse({"xi1", "xi2"}, vars));
}

TEST(AssembleTest, X2Pieces) {
  const auto i = AssembleI(CritUnionIprime(EnumerateStrata(X2()), 2), 2);
  ASSERT_EQ(i.pieces.size(), 3u);
  // Lines through (0 : 1) with the hyperplanes xi2 = 0 containing them.
  ExpectSameVariety(i.pieces[0], Ideal::Parse({"w1", "xi2"}, i.chart.AllVars()));
  EXPECT_TRUE(InAssembledI(i, {5, 0}, {0, 3}));
  EXPECT_TRUE(InAssembledI(i, {0, 0}, {1, 1}));
  EXPECT_TRUE(InAssembledI(i, {1, 2}, {0, 0}));
  EXPECT_FALSE(InAssembledI(i, {1, 1}, {0, 1}));
  EXPECT_FALSE(InAssembledI(i, {1, 0}, {1, 1}));
  // Mod-p^s representatives: 3 * (1, 0) is 0 mod 3 in the first entry.
  EXPECT_TRUE(InAssembledI(i, {1, 0}, {3, 1}, 3, 1));
  EXPECT_FALSE(InAssembledI(i, {1, 0}, {3, 1}, 3, 2));
}

TEST(AssembleTest, PiecesAreBihomogeneous) {
  std::vector<Stratum> strata = EnumerateStrata(X2());
  strata.push_back(Curve("1, x^2"));
  strata.push_back(Curve("x, x^3 + 1"));
  const auto i = AssembleI(CritUnionIprime(strata, 2), 2);
  const CotangentChart swapped{i.chart.fiber, i.chart.base};
  for (const auto& piece : i.pieces) {
    EXPECT_TRUE(IsFiberHomogeneous(piece, i.chart));
    EXPECT_TRUE(IsFiberHomogeneous(piece.Embed(swapped.AllVars()), swapped));
  }
}

TEST(BadLocusTest, ZeroSectionGivesAllOfU) {
  const std::vector<Stratum> strata{Curve("1, x")};
  const auto bad = ComputeU(strata, CritUnionIprime(strata, 2), 2);
  EXPECT_TRUE(bad.from_crit.empty());
  EXPECT_TRUE(bad.from_transversality.empty());
  EXPECT_TRUE(bad.routes_agree);
  EXPECT_TRUE(bad.InU({1, 0}));
  EXPECT_TRUE(bad.InU({-3, 7}));
  EXPECT_FALSE(bad.InU({0, 0}));
}

TEST(BadLocusTest, X2IsTheLineXi2) {
  const auto strata = EnumerateStrata(X2());
  const auto bad = ComputeU(strata, CritUnionIprime(strata, 2), 2);
  ASSERT_EQ(bad.from_crit.size(), 1u);
  ExpectSameVariety(bad.from_crit[0], Ideal::Parse({"xi2"}, {"xi1", "xi2"}));
  EXPECT_TRUE(bad.routes_agree);
  EXPECT_FALSE(bad.InU({4, 0}));
  EXPECT_TRUE(bad.InU({0, 1}));
}

TEST(BadLocusTest, RoutesAgreeAndAreHomogeneous) {
  // phi = (1 : x^2) fails transversality at xi = (0, 1); the cusp-like
  // (x : x^3 + 1) has a one-parameter family of tangent lines.
  for (const char* phi : {"1, x^2", "x, x^3 + 1", "1, 2"}) {
    const std::vector<Stratum> strata{Curve(phi)};
    const auto bad = ComputeU(strata, CritUnionIprime(strata, 2), 2);
    EXPECT_TRUE(bad.routes_agree) << phi;
    std::vector<std::size_t> all{0, 1};
    for (const auto* list : {&bad.from_crit, &bad.from_transversality}) {
      for (const auto& piece : *list) {
        for (const auto& g : piece.generators()) EXPECT_TRUE(g.IsHomogeneousIn(all)) << phi;
      }
    }
  }
}

TEST(BadLocusTest, MembershipIsScaleInvariant) {
  const std::vector<Stratum> strata{Curve("x, x^3 + 1")};
  const auto bad = ComputeU(strata, CritUnionIprime(strata, 2), 2);
  std::mt19937 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const std::vector<Rational> xi{Rational(static_cast<int>(rng() % 9) - 4),
                                   Rational(static_cast<int>(rng() % 9) - 4)};
    Rational c(static_cast<int>(rng() % 7) + 1, static_cast<int>(rng() % 5) + 1);
    c.canonicalize();
    if (rng() % 2) c = -c;
    EXPECT_EQ(bad.InU(xi), bad.InU({c * xi[0], c * xi[1]}));
  }
}

TEST(TransversalTest, Cases) {
  EXPECT_TRUE(CheckTransversal(Curve("1, x"), {1, 2}));
  EXPECT_TRUE(CheckTransversal(Curve("1, x"), {0, 1}));
  // H: w2 = 0 touches the parabola (1 : x^2) at x = 0.
  EXPECT_FALSE(CheckTransversal(Curve("1, x^2"), {0, 1}));
  EXPECT_TRUE(CheckTransversal(Curve("1, x^2"), {-1, 1}));
  // The x^2 point stratum: H must avoid (0 : 1).
  const auto st = EnumerateStrata(X2())[0];
  EXPECT_FALSE(CheckTransversal(st, {1, 0}));
  EXPECT_TRUE(CheckTransversal(st, {0, 1}));
  EXPECT_TRUE(CheckTransversal(st, {1, 1}));
  // A point stratum mapping to (1 : 0) avoided by every H with xi1 != 0.
  const auto p = EnumerateStrata(OneChart("1, x + t", "x*t", "divisor=x:1:inf\ndivisor=t:1:inf\n"))[2];
  EXPECT_TRUE(CheckTransversal(p, {1, 0}));
  EXPECT_FALSE(CheckTransversal(p, {0, 1}));
}

TEST(TransversalTest, AgreesWithBadLocus) {
  for (const char* phi : {"1, x^2", "x, x^3 + 1"}) {
    const std::vector<Stratum> strata{Curve(phi)};
    const auto bad = ComputeU(strata, CritUnionIprime(strata, 2), 2);
    for (int a = -3; a <= 3; ++a) {
      for (int b = -3; b <= 3; ++b) {
        if (a == 0 && b == 0) continue;
        EXPECT_EQ(bad.InU({a, b}), CheckTransversal(strata[0], {a, b})) << phi << " " << a << "," << b;
      }
    }
  }
}

ValidationConfig QuickConfig(int p) {
  ValidationConfig c;
  c.primes = {p};
  c.twists = {1, Rational(1, 3)};
  c.stab_numerators = 4;
  c.stab_nmax = 5;
  return c;
}

TEST(CrossValidateTest, X2Passes) {
  const auto rep = CrossValidate(X2(), QuickConfig(3));
  EXPECT_TRUE(rep.pass);
  EXPECT_TRUE(rep.twist_verdicts_identical);
  EXPECT_GT(rep.stabilization_points, 0);
  EXPECT_EQ(rep.stabilized, rep.stabilization_points);
  EXPECT_GT(rep.wf_in_candidates, 0);
  EXPECT_TRUE(rep.failures.empty());
}

TEST(CrossValidateTest, DroppedChartFails) {
  const auto rep = CrossValidate(ChartAtlas::Parse(ReadData("x2_dropped.atlas")), QuickConfig(3));
  EXPECT_FALSE(rep.pass);
  ASSERT_FALSE(rep.failures.empty());
  for (const auto& f : rep.failures) {
    EXPECT_EQ(f.kind, "wave_front");
    EXPECT_EQ(f.basepoint[1], "0");
    EXPECT_EQ(f.direction, (std::vector<std::string>{"0", "1"}));
  }
}

TEST(CrossValidateTest, ZeroPolynomialPasses) {
  // phi(v) = (v, 0): the chart at infinity s = 1/v is (1 : 0 : s).
  const auto a = ChartAtlas::Parse(
      "W_dimension=2\nsource_vars=v\nsource_poly=0\n[chart affine]\ncoords=v\nf=(v, 0)\np=1\n"
      "omega_beta=0\nomega_unit=1\n[chart inf]\ncoords=s\nf=(1, 0)\np=s\nomega_beta=-2\n"
      "omega_unit=-1\ndivisor=s:2:inf\n[glue affine->inf]\ns=(1)/(v)\n");
  const auto rep = CrossValidate(a, QuickConfig(3));
  EXPECT_TRUE(rep.pass);
  EXPECT_GT(rep.stabilization_points, 0);
}

}  // namespace
}  // namespace mlab
