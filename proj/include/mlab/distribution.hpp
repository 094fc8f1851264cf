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

// Finite-level functions on Q_p^n, their Fourier transforms, truncated
// oscillatory integrals of psi(P(x)), and pushforwards of measures.

#ifndef MLAB_DISTRIBUTION_HPP_
#define MLAB_DISTRIBUTION_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mlab/groebner.hpp"
#include "mlab/localfield.hpp"
#include "mlab/poly.hpp"

namespace mlab {

// Default and process-wide cap on summands per probe.
std::uint64_t DefaultGridCap();
void SetDefaultGridCap(std::uint64_t cap);

// A function on Q_p^n supported on p^{-N} Z_p^n and constant on cosets of
// p^M Z_p^n. Cell u = (u_1..u_n), 0 <= u_i < p^{N+M}, is the coset of
// x = u / p^N; its flat index is u_1 + side * (u_2 + side * (...)).
class LevelFunction {
 public:
  LevelFunction() = default;
  LevelFunction(int prime, int dimension, int support_exponent, int level_exponent);

  int prime() const { return prime_; }
  int dimension() const { return dim_; }
  int support_exponent() const { return n_; }
  int level_exponent() const { return m_; }
  std::int64_t side() const { return side_; }
  std::size_t size() const { return values_.size(); }

  std::vector<Complex>& values() { return values_; }
  const std::vector<Complex>& values() const { return values_; }
  Complex& operator[](std::size_t i) { return values_[i]; }
  const Complex& operator[](std::size_t i) const { return values_[i]; }

  std::size_t Index(const std::vector<std::int64_t>& u) const;
  std::vector<std::int64_t> Cell(std::size_t index) const;
  // Value at a rational point (zero outside the support).
  Complex Eval(const std::vector<Rational>& x) const;
  // Cell of a rational point, or nullopt outside the support.
  std::optional<std::size_t> CellOf(const std::vector<Rational>& x) const;

  // Volume of one cell, p^{-nM}.
  Rational CellVolume() const { return BallVolume(prime_, m_, dim_); }

  // CSV: header "p,n,N,M", a line with the four values, then one row per
  // nonzero cell: N+M little-endian base-p digits per coordinate, re, im.
  std::string ToCsv() const;
  static LevelFunction FromCsv(const std::string& text);

 private:
  int prime_ = 2;
  int dim_ = 1;
  int n_ = 0;
  int m_ = 0;
  std::int64_t side_ = 1;
  std::vector<Complex> values_;
};

// Indicator of the ball c + p^r Z_p^n as a level function with the given
// exponents (the ball must be a union of cells).
LevelFunction BallIndicator(int prime, const std::vector<Rational>& center, int radius_exponent,
                            int support_exponent, int level_exponent);

// FT f(xi) = int f(x) psi(b <x, xi>) dx for a p-adic unit b. Roles of the
// exponents swap: the result has support exponent M and level exponent N.
LevelFunction FourierLevel(const LevelFunction& f, const Rational& twist = 1);

// f(-x).
LevelFunction Reflect(const LevelFunction& f);

// Exact element p^{-e} * sum_j c_j zeta^j of Q(zeta), zeta = exp(2 pi i / p^k),
// kept in the power basis 0 <= j < (p-1) p^{k-1}, with k and e minimal.
class CyclotomicValue {
 public:
  CyclotomicValue() = default;
  // counts[j] is the coefficient of zeta^j for 0 <= j < p^k.
  CyclotomicValue(int prime, int log_order, std::vector<Integer> counts, int log_denominator);

  int prime() const { return p_; }
  int log_order() const { return k_; }
  int log_denominator() const { return e_; }
  const std::vector<Integer>& coefficients() const { return c_; }

  Complex ToComplex() const;
  bool operator==(const CyclotomicValue& o) const;
  std::string ToString() const;

 private:
  void Canonicalize();
  int p_ = 2;
  int k_ = 0;
  int e_ = 0;
  std::vector<Integer> c_;
};

// x -> numerator mod p^log_den of P(u / p^N) + <u / p^N, xi> (times b); the
// phase of the integrand in the cell of u.
class PhasePolynomial {
 public:
  PhasePolynomial(const MultiPoly& poly, const std::vector<Rational>& xi, int prime,
                  int support_exponent, const Rational& twist);
  int log_denominator() const { return log_den_; }
  std::int64_t modulus() const { return mod_; }
  std::int64_t Numerator(const std::vector<std::int64_t>& u) const;

 private:
  struct Term {
    Exponent e;
    std::int64_t c;
  };
  std::vector<Term> terms_;
  int log_den_ = 0;
  std::int64_t mod_ = 1;
};

// Smallest L >= -N such that P(x) + <x, xi> is constant mod Z_p on cosets of
// p^L Z_p^n inside p^{-N} Z_p^n.
int LocalConstancyLevel(const MultiPoly& poly, const std::vector<Rational>& xi, int prime,
                        int support_exponent, const Rational& twist = 1);

struct OscillatorySpec {
  MultiPoly poly;
  int prime = 3;
  Rational twist = 1;
};

struct StabilizationReport {
  std::vector<Rational> xi;
  std::vector<Complex> values;  // index N = 0..N_max
  std::vector<CyclotomicValue> exact_values;  // filled in exact mode
  std::vector<int> cell_levels;               // L used at each N
  std::optional<int> stabilization_level;
  double tolerance = 0;
  double error_bound = 0;  // accumulated rounding bound
};

// values[N] = int_{|x| <= p^N} psi(b (P(x) + <x, xi>)) dx for N = 0..n_max.
StabilizationReport FtPsiPProbe(const OscillatorySpec& spec, const std::vector<Rational>& xi,
                                int n_max, double tolerance, bool exact = false);

// Smallest N0 < values.size() - 1 with |values[k] - values.back()| <= tol for
// all k >= N0.
std::optional<int> StabilizationLevel(const std::vector<Complex>& values, double tol);

// Chart-local data of a pushforward: x -> phi(x) on c + p^r Z_p^n with
// density |g(x)| dx.
struct PushforwardSpec {
  PolyMap phi;
  MultiPoly omega_density;
  std::vector<Rational> domain_center;
  int domain_radius_exponent = 0;
};

struct PushforwardResult {
  Complex value;
  bool converged = false;
  int level = 0;  // domain refinement used for value
  // Exact mass of phi_*|g| on each cell of the target grid of h.
  std::map<std::size_t, Rational> masses;
};

// Exact cell masses of phi_*(|g| dx) on the grid with exponents (N, M) in
// the target, enumerating domain cells of radius p^{-(r + level)}.
std::map<std::size_t, Rational> PushforwardMasses(const PushforwardSpec& spec, int prime,
                                                  int support_exponent, int level_exponent,
                                                  int level);
// Same, discarding mass outside p^{-N} Z_p^m; `outside` receives it.
std::map<std::size_t, Rational> PushforwardMasses(const PushforwardSpec& spec, int prime,
                                                  int support_exponent, int level_exponent,
                                                  int level, Rational* outside);

// Smallest domain refinement at which every domain cell maps into a single
// target cell of level M.
int PushforwardBaseLevel(const PushforwardSpec& spec, int prime, int level_exponent);

// <phi_* |g|, h>, refined to `refine_to` and checked against refine_to + 1.
PushforwardResult PushforwardPair(const PushforwardSpec& spec, const LevelFunction& h,
                                  int refine_to);

// phi(v) = (v, P(v)), g = 1 on Z_p^n.
PushforwardSpec ReductionToPushforward(const MultiPoly& poly);

// Chart data (f, p, g) of a regularized partial transform.
class ChartPartialFt {
 public:
  // Throws kCommonZeroViolation when f and p have a common zero.
  ChartPartialFt(PolyMap f, MultiPoly p_scalar, MultiPoly omega_density);
  // psi(<f(x), xi> / p(x)) |g(x)|, and 0 where p(x) = 0.
  Complex Eval(const std::vector<PadicScalar>& x, const std::vector<PadicScalar>& xi) const;

 private:
  PolyMap f_;
  MultiPoly p_;
  MultiPoly g_;
};

struct MonomialSymbol {
  std::vector<int> alpha;
  std::vector<int> beta;
  void Validate() const;
};

// Value psi(phase) * magnitude, or exactly zero.
struct PhaseValue {
  bool zero = true;
  Phase phase;
  Rational magnitude = 0;
  Complex ToComplex() const;
  bool operator==(const PhaseValue& o) const = default;
};

// u(x, eta) = psi(eta / x^alpha) |x^beta|, and 0 where x^alpha = 0.
PhaseValue ModelU(const MonomialSymbol& sym, const std::vector<PadicScalar>& x,
                  const PadicScalar& eta);
Complex ModelUEval(const MonomialSymbol& sym, const std::vector<PadicScalar>& x,
                   const PadicScalar& eta);

struct QuasiInvarianceReport {
  int samples = 0;
  int mismatches = 0;
  // First mismatch as (lambda..., x..., eta) rationals.
  std::vector<std::string> first_mismatch;
};

// Compares u(lambda x, lambda^alpha eta) with |lambda^beta| u(x, eta) at
// seeded random triples with lambda in (Q_p^x)^n.
QuasiInvarianceReport QuasiInvarianceCheck(const MonomialSymbol& sym, int prime, int samples,
                                           std::uint64_t seed);

}  // namespace mlab

#endif  // MLAB_DISTRIBUTION_HPP_
