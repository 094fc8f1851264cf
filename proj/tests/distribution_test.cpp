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

#include "mlab/distribution.hpp"

#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "mlab/fft.hpp"

namespace mlab {
namespace {

// Fractional part in Q_p/Z_p of a rational with p-power denominator.
Rational Frac(const Rational& q) {
  Integer num = q.get_num() % q.get_den();
  if (num < 0) num += q.get_den();
  return Rational(num, q.get_den());
}

Complex E(const Rational& frac) { return std::polar(1.0, 2 * M_PI * frac.get_d()); }

TEST(FftTest, MatchesNaive) {
  std::mt19937 rng(1);
  std::normal_distribution<double> g;
  for (std::size_t n : {1u, 2u, 7u, 8u, 9u, 12u, 25u, 27u, 243u, 1024u}) {
    std::vector<Complex> x(n);
    for (auto& v : x) v = Complex(g(rng), g(rng));
    for (int sign : {+1, -1}) {
      auto y = x;
      Dft(y, sign);
      double err = 0;
      for (std::size_t k = 0; k < n; k += std::max<std::size_t>(1, n / 16)) {
        Complex s = 0;
        for (std::size_t j = 0; j < n; ++j) s += x[j] * std::polar(1.0, sign * 2 * M_PI * double(j * k % n) / n);
        err = std::max(err, std::abs(s - y[k]));
      }
      EXPECT_LT(err, 1e-9 * std::sqrt(double(n))) << n;
    }
  }
}

TEST(LevelFunctionTest, CsvRoundTrip) {
  LevelFunction f(3, 2, 1, 1);
  f[0] = Complex(1, 0);
  f[5] = Complex(0.1, -2.5e-17);
  f[80] = Complex(-3, 4);
  const std::string csv = f.ToCsv();
  const LevelFunction g = LevelFunction::FromCsv(csv);
  EXPECT_EQ(g.values(), f.values());
  EXPECT_EQ(g.ToCsv(), csv);
  EXPECT_EQ(csv.substr(0, 14), "p,n,N,M\n3,2,1,");
}

TEST(FourierLevelTest, LatticeIndicators) {
  const LevelFunction zp = BallIndicator(3, {0}, 0, 0, 0);
  const LevelFunction ft = FourierLevel(zp);
  ASSERT_EQ(ft.size(), 1u);
  EXPECT_NEAR(std::abs(ft[0] - 1.0), 0, 1e-15);

  const LevelFunction f = BallIndicator(3, {0}, 1, 0, 1);  // 3 Z_3
  const LevelFunction g = FourierLevel(f);
  EXPECT_EQ(g.support_exponent(), 1);
  EXPECT_EQ(g.level_exponent(), 0);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(std::abs(g[i] - 1.0 / 3), 0, 1e-15);
  EXPECT_NEAR(std::abs(g.Eval({Rational(1, 3)}) - 1.0 / 3), 0, 1e-15);
  EXPECT_EQ(g.Eval({Rational(1, 9)}), Complex(0, 0));
}

// f(x) = psi(x^2 / 9) on Z_3 at level 2; oracle: direct double loop over
// residues mod 9, and the same function on the finer level-3 grid.
TEST(FourierLevelTest, QuadraticPhaseOracle) {
  LevelFunction f(3, 1, 0, 2);
  for (std::size_t u = 0; u < f.size(); ++u) f[u] = E(Frac(Rational(static_cast<long>(u * u)) / 9));
  const LevelFunction ft = FourierLevel(f);
  LevelFunction fine(3, 1, 0, 3);
  for (std::size_t u = 0; u < fine.size(); ++u) fine[u] = E(Frac(Rational(static_cast<long>(u * u)) / 9));
  const LevelFunction ft_fine = FourierLevel(fine);
  for (long w = -20; w <= 20; ++w) {
    const Rational xi = Rational(w) / 9;
    Complex direct = 0;
    for (long u = 0; u < 9; ++u) direct += E(Frac(Rational(u * u + u * w) / 9)) / 9.0;
    EXPECT_NEAR(std::abs(ft.Eval({xi}) - direct), 0, 1e-12);
    EXPECT_NEAR(std::abs(ft_fine.Eval({xi}) - direct), 0, 1e-12);
  }
  // Beyond 3^{-2} the transform vanishes.
  EXPECT_NEAR(std::abs(ft_fine.Eval({Rational(1, 27)})), 0, 1e-12);
}

// Involution and Plancherel on random level functions.
TEST(FourierPropertyTest, InvolutionAndPlancherel) {
  std::mt19937 rng(2024);
  std::normal_distribution<double> g;
  for (int p : {2, 3, 5}) {
    for (int dim : {1, 2}) {
      for (auto [n, m] : std::vector<std::pair<int, int>>{{0, 0}, {1, 1}, {-1, 3}, {2, 1}, {0, 3}}) {
        LevelFunction f(p, dim, n, m);
        for (auto& v : f.values()) v = Complex(g(rng), g(rng));
        const LevelFunction ft = FourierLevel(f);
        const LevelFunction back = FourierLevel(ft);
        const LevelFunction refl = Reflect(f);
        double err = 0, l2f = 0, l2g = 0;
        for (std::size_t i = 0; i < f.size(); ++i) {
          err = std::max(err, std::abs(back[i] - refl[i]));
          l2f += std::norm(f[i]);
          l2g += std::norm(ft[i]);
        }
        l2f *= f.CellVolume().get_d();
        l2g *= ft.CellVolume().get_d();
        EXPECT_LT(err, 1e-10);
        EXPECT_NEAR(l2f, l2g, 1e-10 * std::max(1.0, l2f));
      }
    }
  }
}

TEST(FourierLevelTest, TwistIsRescaling) {
  LevelFunction f(5, 1, 1, 1);
  std::mt19937 rng(9);
  std::normal_distribution<double> g;
  for (auto& v : f.values()) v = Complex(g(rng), g(rng));
  const LevelFunction a = FourierLevel(f, Rational(2));
  const LevelFunction b = FourierLevel(f);
  for (long w = 0; w < 25; ++w) {
    const Rational xi = Rational(w) / 5;
    EXPECT_NEAR(std::abs(a.Eval({xi}) - b.Eval({2 * xi})), 0, 1e-12);
  }
  EXPECT_THROW(FourierLevel(f, Rational(5)), Error);
}

OscillatorySpec Spec(const std::string& poly, int p, Rational twist = 1) {
  return {ParsePoly(poly, {"x"}), p, twist};
}

TEST(ProbeTest, PureCharacterSum) {
  const auto rep = FtPsiPProbe(Spec("0", 3), {Rational(1, 3)}, 4, 1e-12);
  for (std::size_t k = 0; k < rep.values.size(); ++k) EXPECT_NEAR(std::abs(rep.values[k]), 0, 1e-12);
  ASSERT_TRUE(rep.stabilization_level.has_value());
  EXPECT_LE(*rep.stabilization_level, 1);
}

// Oracle: phases p-adic fractional parts of a^2/9^N + a/3^N at a finer grid.
Complex GaussOracle(int big_n, const Rational& xi, int extra) {
  const int level = big_n + extra;
  const long count = std::lround(std::pow(3.0, big_n + level));
  const Rational scale = Rational(1) / Integer(static_cast<long>(std::lround(std::pow(3.0, big_n))));
  Complex s = 0;
  for (long a = 0; a < count; ++a) {
    const Rational x = Rational(a) * scale;
    s += E(Frac(x * x + x * xi));
  }
  return s / std::pow(3.0, level);
}

TEST(ProbeTest, GaussSumMatchesOracle) {
  const auto rep = FtPsiPProbe(Spec("x^2", 3), {Rational(1)}, 4, 1e-9, true);
  for (int n = 0; n <= 4; ++n) {
    EXPECT_NEAR(std::abs(rep.values[n] - GaussOracle(n, 1, 2)), 0, 1e-9) << n;
    EXPECT_NEAR(std::abs(rep.exact_values[n].ToComplex() - rep.values[n]), 0, 1e-9);
  }
  ASSERT_TRUE(rep.stabilization_level.has_value());
  EXPECT_LE(*rep.stabilization_level, 1);
  // Unit-modulus Gauss integral for an odd prime.
  EXPECT_NEAR(std::abs(rep.values.back()), 1.0, 1e-9);
}

TEST(ProbeTest, LocalConstancyOnCosets) {
  const auto spec = Spec("x^2", 3);
  for (const Rational& xi : {Rational(1, 9), Rational(2, 27), Rational(5, 3)}) {
    const auto base = FtPsiPProbe(spec, {xi}, 5, 1e-9);
    for (long k = 1; k <= 5; ++k) {
      const auto moved = FtPsiPProbe(spec, {xi + Rational(27 * k)}, 5, 1e-9);
      EXPECT_NEAR(std::abs(moved.values.back() - base.values.back()), 0, 1e-9);
    }
  }
}

// Twisting by b equals scaling P and xi by b, exactly.
TEST(ProbePropertyTest, HomothetyCovariance) {
  for (const Rational& lambda : {Rational(2), Rational(1, 3), Rational(9), Rational(4, 5)}) {
    for (const Rational& xi : {Rational(1), Rational(2, 9), Rational(7, 27)}) {
      const auto twisted = FtPsiPProbe(Spec("x^2 + x^3", 3, lambda), {xi}, 3, 1e-9, true);
      MultiPoly scaled = ParsePoly("x^2 + x^3", {"x"}) * lambda;
      const auto direct = FtPsiPProbe({scaled, 3, 1}, {lambda * xi}, 3, 1e-9, true);
      for (int n = 0; n <= 3; ++n) EXPECT_EQ(twisted.exact_values[n], direct.exact_values[n]);
    }
  }
}

TEST(ProbePropertyTest, TwistVerdictsAgree) {
  for (const Rational& xi : {Rational(1), Rational(1, 3), Rational(4, 9)}) {
    std::vector<bool> verdicts;
    for (const Rational& b : {Rational(1), Rational(3), Rational(1, 3)}) {
      const auto rep = FtPsiPProbe(Spec("x^2", 3, b), {xi}, 6, 1e-9);
      verdicts.push_back(rep.stabilization_level.has_value());
    }
    EXPECT_EQ(verdicts, std::vector<bool>(3, true));
  }
}

TEST(CyclotomicTest, Canonical) {
  // 1 + zeta + zeta^2 = 0 for p = 3.
  EXPECT_EQ(CyclotomicValue(3, 1, {1, 1, 1}, 0), CyclotomicValue(3, 0, {0}, 0));
  // zeta_9^3 = zeta_3.
  std::vector<Integer> c(9, 0);
  c[3] = 1;
  EXPECT_EQ(CyclotomicValue(3, 2, c, 0), CyclotomicValue(3, 1, {0, 1, 0}, 0));
  EXPECT_EQ(CyclotomicValue(3, 1, {3, 0, 0}, 1), CyclotomicValue(3, 0, {1}, 0));
  EXPECT_FALSE(CyclotomicValue(3, 1, {0, 1, 0}, 0) == CyclotomicValue(3, 1, {0, 0, 1}, 0));
}

TEST(PushforwardTest, IdentityMap) {
  PushforwardSpec s;
  s.phi = PolyMap::Identity({"x"});
  s.omega_density = MultiPoly::Constant({"x"}, 1);
  s.domain_center = {0};
  LevelFunction h(3, 1, 0, 2);
  for (std::size_t i = 0; i < h.size(); ++i) h[i] = double(i % 4);
  const auto r = PushforwardPair(s, h, 0);
  double integral = 0;
  for (std::size_t i = 0; i < h.size(); ++i) integral += h[i].real() / 9;
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value.real(), integral, 1e-12);
}

TEST(PushforwardTest, KashiwaraClosedForm) {
  const std::vector<std::string> tx = {"t", "x"};
  PushforwardSpec s;
  s.phi = PolyMap::Parse("t, t^2*x", tx);
  s.omega_density = MultiPoly::Constant(tx, 1);
  s.domain_center = {0, 0};
  // h = indicator of (2 + 3Z_3) x (1 + 3Z_3); |t| = 1 there.
  const LevelFunction h = BallIndicator(3, {2, 1}, 1, 0, 1);
  const auto r = PushforwardPair(s, h, 1);
  EXPECT_TRUE(r.converged);
  Rational total = 0;
  for (const auto& [idx, m] : r.masses) total += m * Rational(static_cast<long>(std::lround(h[idx].real())));
  // Closed form: vol(B_t) * |t|^{-2} * vol(B_y) = 1/3 * 1 * 1/3.
  EXPECT_EQ(total, Rational(1, 9));
  // Total mass of the domain.
  Rational all = 0;
  for (const auto& [idx, m] : r.masses) all += m;
  EXPECT_EQ(all, 1);
}

TEST(PushforwardTest, DensityWeights) {
  PushforwardSpec s;
  s.phi = PolyMap::Identity({"x"});
  s.omega_density = ParsePoly("x", {"x"});
  s.domain_center = {0};
  // int_{Z_3} |x| dx = sum_k 3^{-k} (2/3) 3^{-k} = (2/3) / (1 - 1/9) = 3/4.
  LevelFunction h = BallIndicator(3, {0}, 0, 0, 0);
  const auto r = PushforwardPair(s, h, 6);
  EXPECT_FALSE(r.converged);  // never exact: mass accumulates near 0
  EXPECT_NEAR(r.value.real(), 0.75, 1e-3);
  // Away from the zero of g the answer is exact.
  s.domain_center = {1};
  s.domain_radius_exponent = 1;
  const auto r1 = PushforwardPair(s, h, 0);
  EXPECT_TRUE(r1.converged);
  EXPECT_NEAR(r1.value.real(), 1.0 / 3, 1e-15);
}

TEST(ReductionTest, Examples) {
  EXPECT_EQ(ReductionToPushforward(ParsePoly("x^2", {"x"})).phi.ToString(), "(x, x^2)");
  EXPECT_EQ(ReductionToPushforward(ParsePoly("0", {"x"})).phi.ToString(), "(x, 0)");
  EXPECT_EQ(ReductionToPushforward(ParsePoly("x1*x2", {"x1", "x2"})).phi.ToString(),
            "(x1, x2, x1*x2)");
}

PadicScalar Q3(const Rational& q) { return PadicScalar::FromRational(q, 3, 12); }

TEST(ChartPartialFtTest, Examples) {
  const std::vector<std::string> v = {"x"};
  ChartPartialFt plain(PolyMap::Parse("x", v), ParsePoly("1", v), ParsePoly("1", v));
  const Complex a = plain.Eval({Q3(Rational(1, 3))}, {Q3(1)});
  EXPECT_NEAR(std::abs(a - std::polar(1.0, 2 * M_PI / 3)), 0, 1e-12);
  ChartPartialFt pole(PolyMap::Parse("1", v), ParsePoly("x", v), ParsePoly("1", v));
  EXPECT_EQ(pole.Eval({PadicScalar::Zero(3)}, {Q3(1)}), Complex(0, 0));
  try {
    ChartPartialFt bad(PolyMap::Parse("x", v), ParsePoly("x^2", v), ParsePoly("1", v));
    FAIL() << "expected CommonZeroViolation";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kCommonZeroViolation);
  }
}

// With p = x^alpha, omega = x^beta and f nonvanishing, the chart formula
// is the model function at eta = <f(x), xi>.
TEST(ChartPartialFtTest, PullbackIdentity) {
  const std::vector<std::string> v = {"x1", "x2"};
  ChartPartialFt c(PolyMap::Parse("1, 1 + x1", v), ParsePoly("x1^2*x2", v), ParsePoly("x1", v));
  const MonomialSymbol sym{{2, 1}, {1, 0}};
  std::mt19937 rng(4);
  std::uniform_int_distribution<long> d(1, 80);
  for (int k = 0; k < 20; ++k) {
    const std::vector<PadicScalar> x = {Q3(Rational(d(rng)) / 9), Q3(Rational(d(rng)))};
    const Rational x1 = x[0].ToRational();
    if (x1 == 0 || x[1].ToRational() == 0 || x1 == -1) continue;
    const std::vector<PadicScalar> xi = {Q3(Rational(d(rng)) / 27), Q3(Rational(d(rng)) / 3)};
    const PadicScalar eta = xi[0] + Q3(1 + x1) * xi[1];
    EXPECT_NEAR(std::abs(c.Eval(x, xi) - ModelUEval(sym, x, eta)), 0, 1e-12);
  }
}

TEST(ModelUTest, Examples) {
  const MonomialSymbol s{{1}, {0}};
  EXPECT_NEAR(std::abs(ModelUEval(s, {Q3(1)}, Q3(Rational(1, 3))) - std::polar(1.0, 2 * M_PI / 3)), 0,
              1e-12);
  EXPECT_EQ(ModelUEval(s, {PadicScalar::Zero(3)}, Q3(5)), Complex(0, 0));
  EXPECT_THROW((MonomialSymbol{{0}, {-1}}.Validate()), Error);
  const MonomialSymbol q{{2}, {1}};
  std::mt19937 rng(8);
  std::uniform_int_distribution<long> d(1, 500);
  for (int k = 0; k < 10; ++k) {
    const PadicScalar x = Q3(Rational(d(rng)) / 3), eta = Q3(Rational(d(rng)) / 27);
    const PhaseValue a = ModelU(q, {Q3(3) * x}, Q3(9) * eta);
    PhaseValue b = ModelU(q, {x}, eta);
    b.magnitude /= 3;
    EXPECT_EQ(a, b);
  }
}

TEST(ModelUTest, QuasiInvarianceCheck) {
  for (int p : {2, 3, 5}) {
    const auto rep = QuasiInvarianceCheck({{2, 1}, {1, 0}}, p, 100, 11);
    EXPECT_EQ(rep.samples, 100);
    EXPECT_EQ(rep.mismatches, 0) << p;
  }
}

}  // namespace
}  // namespace mlab
