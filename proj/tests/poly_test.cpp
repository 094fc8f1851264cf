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

#include <random>

#include "gtest/gtest.h"
#include "mlab/groebner.hpp"
#include "mlab/poly.hpp"

namespace mlab {
namespace {

const std::vector<std::string> kTX = {"t", "x"};
const std::vector<std::string> kXY = {"x", "y"};

MultiPoly P(const std::string& s, const std::vector<std::string>& v) { return ParsePoly(s, v); }

TEST(ParseTest, CanonicalPrinting) {
  EXPECT_EQ(P("x^3/3 - 2*t^2*x", kTX).ToString(), "-2*t^2*x + 1/3*x^3");
  EXPECT_EQ(P("(t + x)^2", kTX).ToString(), "t^2 + 2*t*x + x^2");
  EXPECT_EQ(P("0", kTX).ToString(), "0");
  EXPECT_EQ(P("-1/2 + x", kTX).ToString(), "x - 1/2");
  EXPECT_EQ(P("3/6*t", kTX).ToString(), "1/2*t");
  for (const char* s : {"1/3*x^3 - 2*t^2*x", "t^2*x - 7", "-t + 4/9*x^2*t^3"}) {
    const MultiPoly f = P(s, kTX);
    EXPECT_EQ(P(f.ToString(), kTX), f);
  }
}

TEST(ParseTest, Errors) {
  EXPECT_THROW(P("z + 1", kTX), Error);
  EXPECT_THROW(P("x/t", kTX), Error);
  EXPECT_THROW(P("x/0", kTX), Error);
  EXPECT_THROW(P("x +", kTX), Error);
  EXPECT_THROW(P("(x", kTX), Error);
}

TEST(EvalTest, Examples) {
  const MultiPoly sq = P("x^2", {"x"});
  const auto v = sq.EvalPadic({PadicScalar::FromRational(Rational(1, 3), 3, 10)}, 3);
  EXPECT_EQ(v.valuation(), -2);
  EXPECT_EQ(v.ToRational(), Rational(1, 9));
  EXPECT_EQ(P("x^3/3 - 2*t^2*x", kTX).Eval({0, 0}), 0);
  EXPECT_EQ(P("t^2*x", kTX).Eval({3, 1}), 9);
  EXPECT_DOUBLE_EQ(P("t^2*x", kTX).EvalDouble({0.5, 2.0}), 0.5);
  EXPECT_THROW(P("t", kTX).Eval({1}), Error);
}

TEST(JacobianTest, Examples) {
  const auto j1 = PolyMap::Parse("t, t^2*x", kTX).Jacobian();
  EXPECT_EQ(j1[0][0].ToString(), "1");
  EXPECT_EQ(j1[0][1].ToString(), "0");
  EXPECT_EQ(j1[1][0].ToString(), "2*t*x");
  EXPECT_EQ(j1[1][1].ToString(), "t^2");
  const auto id = PolyMap::Identity(kTX).Jacobian();
  EXPECT_EQ(id[0][0].ToString(), "1");
  EXPECT_EQ(id[1][0].ToString(), "0");
  const auto j3 = Jacobian(PolyMap::Parse("t, x^3/3 - 2*t^2*x", kTX));
  EXPECT_EQ(j3[1][0].ToString(), "-4*t*x");
  EXPECT_EQ(j3[1][1].ToString(), "-2*t^2 + x^2");
}

TEST(ComposeTest, Substitution) {
  const MultiPoly f = P("x^2 + y", kXY);
  const MultiPoly g = f.Compose({P("t + 1", kTX), P("x", kTX)});
  EXPECT_EQ(g, P("t^2 + 2*t + 1 + x", kTX));
  EXPECT_EQ(f.Embed({"y", "z", "x"}), P("x^2 + y", {"y", "z", "x"}));
}

GroebnerOptions Lex() {
  GroebnerOptions o;
  o.order = MonomialOrder::kLex;
  return o;
}

std::vector<std::string> Strings(const std::vector<MultiPoly>& b) {
  std::vector<std::string> out;
  for (const auto& f : b) out.push_back(f.ToString());
  return out;
}

TEST(GroebnerTest, Examples) {
  EXPECT_EQ(Strings(GroebnerBasis({P("x", kXY)}, kXY, Lex())), std::vector<std::string>{"x"});
  EXPECT_EQ(Strings(GroebnerBasis({P("y - x^2", kXY), P("x", kXY)}, kXY, Lex())),
            (std::vector<std::string>{"x", "y"}));
  // y^3 - 1 lies in (xy - 1, x^2 - y): x^2 y^2 = y^3 and x^2 y^2 = 1 mod I.
  const auto b = GroebnerBasis({P("x*y - 1", kXY), P("x^2 - y", kXY)}, kXY, Lex());
  EXPECT_TRUE(Reduce(P("y^3 - 1", kXY), b, Lex()).IsZero());
  EXPECT_EQ(Strings(b), (std::vector<std::string>{"-y^2 + x", "y^3 - 1"}));
  EXPECT_TRUE(SatisfiesBuchbergerCriterion(b, Lex()));
}

TEST(GroebnerTest, UnitAndZero) {
  EXPECT_EQ(Strings(GroebnerBasis({P("x", kXY), P("x + 1", kXY)}, kXY, Lex())),
            std::vector<std::string>{"1"});
  EXPECT_TRUE(GroebnerBasis({P("0", kXY)}, kXY, Lex()).empty());
}

TEST(GroebnerTest, StepCap) {
  GroebnerOptions o;
  o.step_cap = 1;
  const std::vector<std::string> v = {"x", "y", "z"};
  std::vector<MultiPoly> gens = {P("x^2 + y*z - 1", v), P("y^2 + x*z - 2", v),
                                 P("z^2 + x*y - 3", v)};
  try {
    GroebnerBasis(gens, v, o);
    FAIL() << "expected budget error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kResourceBudgetExceeded);
  }
}

// Random small ideals: the output passes Buchberger's criterion, contains
// the generators, and is deterministic.
TEST(GroebnerPropertyTest, RandomIdeals) {
  const std::vector<std::string> v = {"x", "y", "z"};
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coef(-3, 3), ex(0, 2);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<MultiPoly> gens;
    for (int g = 0; g < 2 + trial % 2; ++g) {
      MultiPoly f(v);
      for (int k = 0; k < 3; ++k) f.AddTerm({ex(rng), ex(rng), ex(rng)}, coef(rng));
      gens.push_back(f);
    }
    for (auto order : {MonomialOrder::kLex, MonomialOrder::kDegRevLex}) {
      GroebnerOptions o;
      o.order = order;
      const auto b = GroebnerBasis(gens, v, o);
      EXPECT_TRUE(SatisfiesBuchbergerCriterion(b, o));
      for (const auto& g : gens) EXPECT_TRUE(Reduce(g, b, o).IsZero());
      EXPECT_EQ(Strings(b), Strings(GroebnerBasis(gens, v, o)));
    }
  }
}

TEST(EliminateTest, Examples) {
  EXPECT_TRUE(Eliminate(Ideal::Parse({"y - x^2"}, kXY), {"x"}).IsZero());
  // Elimination ideal of (x^2, xy) w.r.t. x is zero: every y is the image
  // of x = 0. Oracle: (0, y) lies on the variety for every rational y.
  const Ideal e = Eliminate(Ideal::Parse({"x^2", "x*y"}, kXY), {"x"});
  EXPECT_TRUE(e.IsZero());
  for (int y = -5; y <= 5; ++y) {
    EXPECT_EQ(P("x^2", kXY).Eval({0, y}), 0);
    EXPECT_EQ(P("x*y", kXY).Eval({0, y}), 0);
  }
  // Twisted cubic: eliminating t from (x - t, y - t^2, z - t^3).
  const std::vector<std::string> v = {"t", "x", "y", "z"};
  const Ideal tc = Eliminate(Ideal::Parse({"x - t", "y - t^2", "z - t^3"}, v), {"t"});
  EXPECT_EQ(tc.vars(), (std::vector<std::string>{"x", "y", "z"}));
  EXPECT_TRUE(tc.Contains(P("y - x^2", tc.vars())));
  EXPECT_TRUE(tc.Contains(P("z - x^3", tc.vars())));
}

// Soundness: generators of an elimination ideal vanish on images of points.
TEST(EliminatePropertyTest, VanishesOnImages) {
  const std::vector<std::string> v = {"s", "t", "a", "b"};
  const Ideal i = Ideal::Parse({"a - s^2 - t", "b - s*t"}, v);
  const Ideal e = Eliminate(i, {"s", "t"});
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> d(-20, 20);
  for (int k = 0; k < 200; ++k) {
    const Rational s = Rational(d(rng)) / (1 + k % 7), t = Rational(d(rng)) / (1 + k % 5);
    for (const auto& g : e.generators()) EXPECT_EQ(g.Eval({s * s + t, s * t}), 0);
  }
}

TEST(DimensionTest, Examples) {
  EXPECT_EQ(IdealDimension(Ideal::Parse({"x"}, kXY)), 1);
  EXPECT_EQ(IdealDimension(Ideal(kXY, {})), 2);
  const std::vector<std::string> tw = {"y1", "y2", "xi1", "xi2"};
  EXPECT_EQ(IdealDimension(Ideal::Parse({"xi1", "xi2"}, tw)), 2);
  EXPECT_THROW(IdealDimension(Ideal::Parse({"x", "x - 1"}, kXY)), Error);
}

TEST(DimensionPropertyTest, Monotone) {
  const std::vector<std::string> v = {"x", "y", "z"};
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> coef(-2, 2), ex(0, 2);
  for (int trial = 0; trial < 20; ++trial) {
    MultiPoly f(v), g(v);
    for (int k = 0; k < 3; ++k) {
      f.AddTerm({ex(rng), ex(rng), ex(rng)}, coef(rng));
      g.AddTerm({ex(rng), ex(rng), ex(rng)}, coef(rng));
    }
    const Ideal small(v, {f});
    const Ideal big(v, {f, g});
    if (big.IsUnit() || small.IsUnit()) continue;
    EXPECT_GE(IdealDimension(small), IdealDimension(big));
  }
}

TEST(RadicalTest, Examples) {
  EXPECT_TRUE(RadicalMember(P("x", kXY), Ideal::Parse({"x^2"}, kXY)));
  EXPECT_FALSE(RadicalMember(P("y", kXY), Ideal::Parse({"x"}, kXY)));
  EXPECT_FALSE(Ideal::Parse({"x^2"}, kXY).Contains(P("x", kXY)));
}

}  // namespace
}  // namespace mlab
