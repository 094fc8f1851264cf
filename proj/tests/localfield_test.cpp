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

#include "mlab/localfield.hpp"

#include <random>

#include "gtest/gtest.h"

namespace mlab {
namespace {

PadicScalar Q(long num, long den, int p, int prec = 12) {
  Rational q(num, den);
  q.canonicalize();
  return PadicScalar::FromRational(q, p, prec);
}

TEST(PadicNormTest, Basics) {
  EXPECT_EQ(PadicNorm(PadicScalar::Zero(3)), 0);
  EXPECT_EQ(PadicNorm(Q(1, 3, 3)), 3);
  EXPECT_EQ(PadicNorm(Q(18, 1, 3)), Rational(1, 9));
}

TEST(FractionalPartTest, Examples) {
  EXPECT_EQ(FractionalPartOf(Q(5, 1, 7)), Phase(7, 0, 0));
  EXPECT_EQ(FractionalPartOf(Q(1, 3, 3)), Phase(3, 1, 1));
  EXPECT_EQ(FractionalPartOf(Q(7, 9, 3)), Phase(3, 7, 2));
  // 1/2 in Q_3 is a unit, so its class is trivial.
  EXPECT_TRUE(FractionalPartOf(Q(1, 2, 3)).IsZero());
  // 5/18 = 5/(2*9); 1/2 = 5 mod 9, so {5/18} = 25/9 mod 1 = 7/9.
  EXPECT_EQ(FractionalPartOf(Q(5, 18, 3)), Phase(3, 7, 2));
}

TEST(FractionalPartTest, InsufficientPrecision) {
  // 1/9 known only to one digit of negative weight.
  PadicScalar x = PadicScalar::FromDigits(3, -2, {1});
  try {
    FractionalPartOf(x);
    FAIL() << "expected InsufficientPrecision";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInsufficientPrecision);
  }
}

TEST(PhaseTest, Canonical) {
  Phase a(3, 3, 2);  // 3/9 = 1/3
  EXPECT_EQ(a, Phase(3, 1, 1));
  Phase b(3, -1, 1);
  EXPECT_EQ(b, Phase(3, 2, 1));
  EXPECT_EQ(Phase(3, 9, 2), Phase(3, 0, 0));
}

TEST(PsiTest, Examples) {
  const auto one3 = PadicScalar::FromInteger(1, 3, 8);
  const Complex a = Psi(PadicScalar::FromInteger(4, 3, 8), one3);
  EXPECT_EQ(a, Complex(1, 0));
  const Complex b = Psi(Q(1, 2, 2), PadicScalar::FromInteger(1, 2, 8));
  EXPECT_NEAR(b.real(), -1, 1e-15);
  EXPECT_NEAR(b.imag(), 0, 1e-15);
  const Complex c = Psi(Q(1, 3, 3), one3);
  EXPECT_NEAR(c.real(), -0.5, 1e-15);
  EXPECT_NEAR(c.imag(), 0.8660254037844386, 1e-15);
}

TEST(BallVolumeTest, Examples) {
  EXPECT_EQ(BallVolume(3, 0, 2), 1);
  EXPECT_EQ(BallVolume(3, 1, 1), Rational(1, 3));
  EXPECT_EQ(BallVolume(3, -2, 1), 9);
}

TEST(PadicScalarTest, RoundTripAndArithmetic) {
  for (int p : {2, 3, 5, 7}) {
    std::mt19937 rng(p);
    std::uniform_int_distribution<long> d(-500, 500);
    for (int k = 0; k < 200; ++k) {
      long a = d(rng), b = d(rng), c = d(rng), e = d(rng);
      if (b == 0 || e == 0) continue;
      const Rational x = Rational(a) / b, y = Rational(c) / e;
      auto px = PadicScalar::FromRational(x, p, 40);
      auto py = PadicScalar::FromRational(y, p, 40);
      const int prec = 20;
      auto modcheck = [&](const PadicScalar& got, const Rational& want) {
        if (want == 0) {
          EXPECT_TRUE(got.IsZero());
          return;
        }
        EXPECT_EQ(got.valuation(), Valuation(want, p));
        // Compare the leading digits.
        auto ref = PadicScalar::FromRational(want, p, prec);
        ASSERT_GE(got.precision(), prec) << p << " " << want.get_str();
        for (int i = 0; i < prec; ++i) EXPECT_EQ(got.unit_digits()[i], ref.unit_digits()[i]);
      };
      modcheck(px * py, x * y);
      if (x + y != 0 && Valuation(x + y, p) - std::min(Valuation(x, p), Valuation(y, p)) < 15) {
        modcheck(px + py, x + y);
      }
      if (x != 0) modcheck(px.Inverse(), 1 / x);
    }
  }
}

// psi is a character and the norm is multiplicative and ultrametric.
TEST(PadicPropertyTest, CharacterAndNorm) {
  for (int p : {2, 3, 5}) {
    std::mt19937 rng(100 + p);
    std::uniform_int_distribution<long> num(-2000, 2000);
    std::uniform_int_distribution<int> pw(0, 4);
    const auto one = PadicScalar::FromInteger(1, p, 30);
    for (int k = 0; k < 300; ++k) {
      long den1 = 1, den2 = 1;
      for (int i = pw(rng); i > 0; --i) den1 *= p;
      for (int i = pw(rng); i > 0; --i) den2 *= p;
      const Rational x = Rational(num(rng)) / den1, y = Rational(num(rng)) / (den2 * (k % 3 + 1));
      auto px = PadicScalar::FromRational(x, p, 30);
      auto py = PadicScalar::FromRational(y, p, 30);
      EXPECT_EQ(FractionalPartOf(px + py), FractionalPartOf(px) + FractionalPartOf(py));
      const Complex lhs = Psi(px + py, one), rhs = Psi(px, one) * Psi(py, one);
      EXPECT_NEAR(std::abs(lhs - rhs), 0, 1e-12);
      EXPECT_EQ(PadicNorm(px * py), PadicNorm(px) * PadicNorm(py));
      EXPECT_LE(PadicNorm(px + py), std::max(PadicNorm(px), PadicNorm(py)));
    }
    // psi is trivial on Z_p.
    for (long z = -50; z <= 50; ++z) {
      EXPECT_EQ(Psi(PadicScalar::FromInteger(z, p, 10), one), Complex(1, 0));
    }
  }
}

TEST(ModularTest, InverseAndRationalMod) {
  EXPECT_EQ(MulMod(InverseMod(2, 27), 2, 27), 1);
  EXPECT_EQ(RationalMod(Rational(1, 2), 9), 5);
  EXPECT_EQ(RationalMod(Rational(-1, 1), 9), 8);
  EXPECT_EQ(CheckedPow(3, 4), 81);
  EXPECT_THROW(CheckedPow(3, 60), Error);
}

TEST(RootOfUnityTest, QuarterPointsExact) {
  EXPECT_EQ(RootOfUnity(0, 4), Complex(1, 0));
  EXPECT_EQ(RootOfUnity(1, 4), Complex(0, 1));
  EXPECT_EQ(RootOfUnity(2, 4), Complex(-1, 0));
  EXPECT_EQ(RootOfUnity(-1, 4), Complex(0, -1));
  EXPECT_NEAR(std::abs(RootOfUnity(1, 3) - std::polar(1.0, 2 * M_PI / 3)), 0, 1e-15);
}

}  // namespace
}  // namespace mlab
