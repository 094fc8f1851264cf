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

// Exact arithmetic in Q_p: scalars, the standard additive character
// psi(x) = exp(2 pi i {x}_p), and Haar-measure bookkeeping.

#ifndef MLAB_LOCALFIELD_HPP_
#define MLAB_LOCALFIELD_HPP_

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "mlab/errors.hpp"

namespace mlab {

using Integer = mpz_class;
using Rational = mpq_class;
using Complex = std::complex<double>;

inline constexpr int kInfiniteValuation = std::numeric_limits<int>::max();

// p-adic valuation of a rational; kInfiniteValuation for 0.
int Valuation(const Rational& q, int p);
int Valuation(const Integer& z, int p);

// p^e as an exact rational (e may be negative).
Rational PowP(int p, int e);

// p^e as a machine integer; throws kResourceBudgetExceeded past 2^62.
std::int64_t CheckedPow(std::int64_t p, int e);

// Modular helpers with 128-bit intermediates; modulus < 2^62.
std::int64_t MulMod(std::int64_t a, std::int64_t b, std::int64_t m);
std::int64_t InverseMod(std::int64_t a, std::int64_t m);
std::int64_t RationalMod(const Rational& q, std::int64_t m);  // q p-integral

// A class in Q_p/Z_p, i.e. numerator / p^log_denominator modulo 1.
class Phase {
 public:
  Phase() = default;
  Phase(int prime, std::int64_t numerator, int log_denominator);

  int prime() const { return prime_; }
  std::int64_t numerator() const { return numerator_; }
  int log_denominator() const { return log_denominator_; }
  bool IsZero() const { return numerator_ == 0; }

  Phase operator+(const Phase& other) const;
  Phase operator-() const;
  bool operator==(const Phase& other) const = default;

  // Phase as numerator/p^level for level >= log_denominator.
  std::int64_t NumeratorAtLevel(int level) const;

  // exp(2 pi i numerator / p^log_denominator); rounding happens only here.
  Complex ToComplex() const;
  Rational ToRational() const;

 private:
  int prime_ = 2;
  std::int64_t numerator_ = 0;
  int log_denominator_ = 0;
};

// Fractional part of a rational in Q_p/Z_p.
Phase FractionalPart(const Rational& q, int p);

// exp(2 pi i k / p^level), exact reduction of k before rounding.
Complex RootOfUnity(std::int64_t k, std::int64_t modulus);

// An element of Q_p known to a finite number of digits:
//   x = p^valuation * (d_0 + d_1 p + ... + d_{precision-1} p^{precision-1} + O(p^precision))
// with d_0 != 0. Zero is either exact or known only modulo p^abs_precision.
class PadicScalar {
 public:
  static PadicScalar Zero(int prime);
  static PadicScalar ApproximateZero(int prime, int abs_precision);
  static PadicScalar FromRational(const Rational& q, int prime, int precision);
  static PadicScalar FromInteger(long value, int prime, int precision);
  static PadicScalar FromDigits(int prime, int valuation,
                                std::vector<int> unit_digits);

  int prime() const { return prime_; }
  bool IsZero() const { return zero_; }
  bool IsExactZero() const { return zero_ && abs_precision_ == kInfiniteValuation; }
  // Valuation; for an approximate zero, the guaranteed lower bound.
  int valuation() const { return zero_ ? abs_precision_ : valuation_; }
  int precision() const { return zero_ ? 0 : static_cast<int>(digits_.size()); }
  // Exponent k such that x is known modulo p^k.
  int AbsolutePrecision() const;
  const std::vector<int>& unit_digits() const { return digits_; }

  // Unit part d_0 + d_1 p + ... as an integer.
  Integer UnitResidue() const;
  // The rational p^v * UnitResidue(); exact iff the input was.
  Rational ToRational() const;

  PadicScalar operator+(const PadicScalar& other) const;
  PadicScalar operator-(const PadicScalar& other) const;
  PadicScalar operator*(const PadicScalar& other) const;
  PadicScalar operator-() const;
  PadicScalar Inverse() const;

  std::string ToString() const;

  // p^valuation * unit, keeping `precision` digits of the unit (p ∤ unit).
  static PadicScalar FromScaledUnit(int prime, int valuation,
                                    const Integer& unit, int precision);

 private:
  int prime_ = 2;
  bool zero_ = true;
  int valuation_ = 0;
  int abs_precision_ = kInfiniteValuation;  // only for zeros
  std::vector<int> digits_;
};

// |x|_p = p^{-valuation}; 0 for exact zero.
Rational PadicNorm(const PadicScalar& x);

// Class of x in Q_p/Z_p; throws kInsufficientPrecision when some digit of
// negative weight is unknown.
Phase FractionalPartOf(const PadicScalar& x);

// psi_b(x) = psi(b x) for the standard character psi.
Complex Psi(const PadicScalar& x, const PadicScalar& twist);

// Haar volume of a ball of radius p^{-m} in Q_p^n (vol Z_p^n = 1).
Rational BallVolume(int prime, int radius_exponent, int dimension);

}  // namespace mlab

#endif  // MLAB_LOCALFIELD_HPP_
