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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace mlab {

int Valuation(const Integer& z, int p) {
  if (z == 0) return kInfiniteValuation;
  Integer a = abs(z);
  int v = 0;
  const Integer pp = p;
  while (mpz_divisible_p(a.get_mpz_t(), pp.get_mpz_t())) {
    a /= pp;
    ++v;
  }
  return v;
}

int Valuation(const Rational& q, int p) {
  if (q == 0) return kInfiniteValuation;
  return Valuation(Integer(q.get_num()), p) - Valuation(Integer(q.get_den()), p);
}

Rational PowP(int p, int e) {
  Integer b;
  mpz_ui_pow_ui(b.get_mpz_t(), static_cast<unsigned long>(p),
                static_cast<unsigned long>(e < 0 ? -e : e));
  if (e >= 0) return Rational(b);
  return Rational(Integer(1), b);
}

std::int64_t CheckedPow(std::int64_t p, int e) {
  if (e < 0) Fail(ErrorKind::kInvalidArgument, "CheckedPow: negative exponent");
  std::int64_t r = 1;
  for (int i = 0; i < e; ++i) {
    if (r > (std::int64_t{1} << 62) / p) {
      Fail(ErrorKind::kResourceBudgetExceeded,
           "modulus p^" + std::to_string(e) + " exceeds 2^62");
    }
    r *= p;
  }
  return r;
}

std::int64_t MulMod(std::int64_t a, std::int64_t b, std::int64_t m) {
  __int128 r = static_cast<__int128>(a) * b % m;
  if (r < 0) r += m;
  return static_cast<std::int64_t>(r);
}

std::int64_t InverseMod(std::int64_t a, std::int64_t m) {
  std::int64_t g = m, x = 0, x1 = 1, a1 = ((a % m) + m) % m;
  if (m == 1) return 0;
  while (a1 != 0) {
    std::int64_t q = g / a1;
    std::int64_t t = g - q * a1;
    g = a1;
    a1 = t;
    t = x - q * x1;
    x = x1;
    x1 = t;
  }
  if (g != 1) Fail(ErrorKind::kInvalidArgument, "InverseMod: not invertible");
  return ((x % m) + m) % m;
}

std::int64_t RationalMod(const Rational& q, std::int64_t m) {
  Integer num = q.get_num(), den = q.get_den();
  Integer mm = m;
  Integer nr = num % mm;
  if (nr < 0) nr += mm;
  Integer dr = den % mm;
  std::int64_t inv = InverseMod(dr.get_si(), m);
  return MulMod(nr.get_si(), inv, m);
}

// ---------------------------------------------------------------- Phase

Phase::Phase(int prime, std::int64_t numerator, int log_denominator)
    : prime_(prime), numerator_(numerator), log_denominator_(log_denominator) {
  if (log_denominator_ < 0) log_denominator_ = 0;
  std::int64_t m = CheckedPow(prime_, log_denominator_);
  numerator_ %= m;
  if (numerator_ < 0) numerator_ += m;
  if (numerator_ == 0) {
    log_denominator_ = 0;
    return;
  }
  while (log_denominator_ > 0 && numerator_ % prime_ == 0) {
    numerator_ /= prime_;
    --log_denominator_;
  }
}

std::int64_t Phase::NumeratorAtLevel(int level) const {
  if (level < log_denominator_) {
    Fail(ErrorKind::kInvalidArgument, "Phase::NumeratorAtLevel below denominator");
  }
  return numerator_ * CheckedPow(prime_, level - log_denominator_);
}

Phase Phase::operator+(const Phase& other) const {
  const int p = IsZero() ? other.prime_ : prime_;
  const int level = std::max(log_denominator_, other.log_denominator_);
  const std::int64_t m = CheckedPow(p, level);
  std::int64_t s = NumeratorAtLevel(level) + other.NumeratorAtLevel(level);
  return Phase(p, s % m, level);
}

Phase Phase::operator-() const {
  return Phase(prime_, -numerator_, log_denominator_);
}

Complex Phase::ToComplex() const {
  return RootOfUnity(numerator_, CheckedPow(prime_, log_denominator_));
}

Rational Phase::ToRational() const {
  Rational r(Integer(static_cast<long>(numerator_)), 1);
  return r * PowP(prime_, -log_denominator_);
}

Phase FractionalPart(const Rational& q, int p) {
  if (q == 0) return Phase(p, 0, 0);
  const int v = Valuation(q, p);
  if (v >= 0) return Phase(p, 0, 0);
  const int k = -v;
  const std::int64_t m = CheckedPow(p, k);
  // q * p^k is p-integral; its residue mod p^k is the numerator.
  Rational scaled = q * PowP(p, k);
  return Phase(p, RationalMod(scaled, m), k);
}

Complex RootOfUnity(std::int64_t k, std::int64_t modulus) {
  if (modulus <= 1) return {1.0, 0.0};
  k %= modulus;
  if (k < 0) k += modulus;
  if (k == 0) return {1.0, 0.0};
  // Reduce to the first octant-free form: exact quarter points come out exact.
  if (4 * static_cast<__int128>(k) == modulus) return {0.0, 1.0};
  if (2 * static_cast<__int128>(k) == modulus) return {-1.0, 0.0};
  if (4 * static_cast<__int128>(k) == 3 * static_cast<__int128>(modulus)) {
    return {0.0, -1.0};
  }
  const long double angle = 2.0L * std::numbers::pi_v<long double> *
                            static_cast<long double>(k) /
                            static_cast<long double>(modulus);
  return {static_cast<double>(std::cos(angle)),
          static_cast<double>(std::sin(angle))};
}

// ----------------------------------------------------------- PadicScalar

PadicScalar PadicScalar::Zero(int prime) {
  PadicScalar z;
  z.prime_ = prime;
  return z;
}

PadicScalar PadicScalar::ApproximateZero(int prime, int abs_precision) {
  PadicScalar z;
  z.prime_ = prime;
  z.abs_precision_ = abs_precision;
  return z;
}

PadicScalar PadicScalar::FromScaledUnit(int prime, int valuation,
                                        const Integer& unit, int precision) {
  if (precision < 1) {
    Fail(ErrorKind::kInsufficientPrecision, "nonzero p-adic needs precision >= 1");
  }
  PadicScalar x;
  x.prime_ = prime;
  x.zero_ = false;
  x.valuation_ = valuation;
  Integer u = unit;
  Integer mod;
  mpz_ui_pow_ui(mod.get_mpz_t(), prime, precision);
  u %= mod;
  if (u < 0) u += mod;
  x.digits_.reserve(precision);
  for (int i = 0; i < precision; ++i) {
    Integer d = u % prime;
    x.digits_.push_back(static_cast<int>(d.get_si()));
    u /= prime;
  }
  if (x.digits_.front() == 0) {
    Fail(ErrorKind::kInvalidArgument, "unit part must have nonzero first digit");
  }
  return x;
}

PadicScalar PadicScalar::FromRational(const Rational& q, int prime, int precision) {
  if (q == 0) return Zero(prime);
  const int v = Valuation(q, prime);
  Rational unit = q * PowP(prime, -v);
  Integer mod;
  mpz_ui_pow_ui(mod.get_mpz_t(), prime, precision);
  Integer den = unit.get_den(), inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t());
  Integer u = Integer(unit.get_num()) * inv;
  return FromScaledUnit(prime, v, u, precision);
}

PadicScalar PadicScalar::FromInteger(long value, int prime, int precision) {
  return FromRational(Rational(value), prime, precision);
}

PadicScalar PadicScalar::FromDigits(int prime, int valuation,
                                    std::vector<int> unit_digits) {
  if (unit_digits.empty()) return Zero(prime);
  if (unit_digits.front() == 0) {
    Fail(ErrorKind::kInvalidArgument, "first unit digit must be nonzero");
  }
  for (int d : unit_digits) {
    if (d < 0 || d >= prime) Fail(ErrorKind::kInvalidArgument, "digit out of range");
  }
  PadicScalar x;
  x.prime_ = prime;
  x.zero_ = false;
  x.valuation_ = valuation;
  x.digits_ = std::move(unit_digits);
  return x;
}

int PadicScalar::AbsolutePrecision() const {
  if (zero_) return abs_precision_;
  return valuation_ + static_cast<int>(digits_.size());
}

Integer PadicScalar::UnitResidue() const {
  Integer u = 0;
  for (auto it = digits_.rbegin(); it != digits_.rend(); ++it) {
    u = u * prime_ + *it;
  }
  return u;
}

Rational PadicScalar::ToRational() const {
  if (zero_) return Rational(0);
  return Rational(UnitResidue()) * PowP(prime_, valuation_);
}

namespace {

// Builds a scalar from an integer residue r known modulo p^{abs_prec},
// scaled by p^{shift}: value = p^shift * r.
PadicScalar FromResidue(int p, int shift, Integer r, int abs_prec) {
  if (abs_prec <= shift) return PadicScalar::ApproximateZero(p, abs_prec);
  Integer mod;
  mpz_ui_pow_ui(mod.get_mpz_t(), p, abs_prec - shift);
  r %= mod;
  if (r < 0) r += mod;
  if (r == 0) return PadicScalar::ApproximateZero(p, abs_prec);
  const int v = Valuation(r, p);
  Integer pv;
  mpz_ui_pow_ui(pv.get_mpz_t(), p, v);
  Integer unit = r / pv;
  return PadicScalar::FromScaledUnit(p, shift + v, unit, abs_prec - shift - v);
}

}  // namespace

PadicScalar PadicScalar::operator+(const PadicScalar& o) const {
  if (prime_ != o.prime_ && !(IsExactZero() || o.IsExactZero())) {
    Fail(ErrorKind::kDimensionMismatch, "adding p-adics of different primes");
  }
  if (IsExactZero()) return o;
  if (o.IsExactZero()) return *this;
  const int abs_prec = std::min(AbsolutePrecision(), o.AbsolutePrecision());
  if (zero_ || o.zero_) {
    const PadicScalar& nz = zero_ ? o : *this;
    if (nz.zero_) return ApproximateZero(prime_, abs_prec);
    return FromResidue(prime_, nz.valuation_, nz.UnitResidue(), abs_prec);
  }
  const int shift = std::min(valuation_, o.valuation_);
  Integer a = UnitResidue(), b = o.UnitResidue(), t;
  mpz_ui_pow_ui(t.get_mpz_t(), prime_, valuation_ - shift);
  a *= t;
  mpz_ui_pow_ui(t.get_mpz_t(), prime_, o.valuation_ - shift);
  b *= t;
  return FromResidue(prime_, shift, a + b, abs_prec);
}

PadicScalar PadicScalar::operator-() const {
  if (zero_) return *this;
  return FromScaledUnit(prime_, valuation_, -UnitResidue(), precision());
}

PadicScalar PadicScalar::operator-(const PadicScalar& o) const { return *this + (-o); }

PadicScalar PadicScalar::operator*(const PadicScalar& o) const {
  if (IsExactZero() || o.IsExactZero()) return Zero(prime_);
  if (zero_ || o.zero_) {
    const int v = valuation() + o.valuation();
    return ApproximateZero(prime_, v);
  }
  if (prime_ != o.prime_) Fail(ErrorKind::kDimensionMismatch, "mixed primes");
  const int prec = std::min(precision(), o.precision());
  return FromScaledUnit(prime_, valuation_ + o.valuation_,
                        UnitResidue() * o.UnitResidue(), prec);
}

PadicScalar PadicScalar::Inverse() const {
  if (zero_) Fail(ErrorKind::kInsufficientPrecision, "inverse of a p-adic zero");
  Integer mod, inv, u = UnitResidue();
  mpz_ui_pow_ui(mod.get_mpz_t(), prime_, precision());
  mpz_invert(inv.get_mpz_t(), u.get_mpz_t(), mod.get_mpz_t());
  return FromScaledUnit(prime_, -valuation_, inv, precision());
}

std::string PadicScalar::ToString() const {
  std::ostringstream os;
  if (zero_) {
    if (IsExactZero()) return "0";
    os << "O(" << prime_ << "^" << abs_precision_ << ")";
    return os.str();
  }
  os << prime_ << "^" << valuation_ << "*[";
  for (std::size_t i = 0; i < digits_.size(); ++i) {
    if (i) os << ",";
    os << digits_[i];
  }
  os << "]";
  return os.str();
}

Rational PadicNorm(const PadicScalar& x) {
  if (x.IsExactZero()) return Rational(0);
  if (x.IsZero()) {
    Fail(ErrorKind::kInsufficientPrecision, "norm of an approximate zero is unknown");
  }
  return PowP(x.prime(), -x.valuation());
}

Phase FractionalPartOf(const PadicScalar& x) {
  const int p = x.prime();
  if (x.IsExactZero()) return Phase(p, 0, 0);
  if (x.IsZero()) {
    if (x.valuation() >= 0) return Phase(p, 0, 0);
    Fail(ErrorKind::kInsufficientPrecision,
         "fractional part of a zero known only mod p^" +
             std::to_string(x.valuation()));
  }
  const int v = x.valuation();
  if (v >= 0) return Phase(p, 0, 0);
  const int needed = -v;
  if (x.precision() < needed) {
    Fail(ErrorKind::kInsufficientPrecision,
         "need " + std::to_string(needed) + " digits, have " +
             std::to_string(x.precision()));
  }
  std::int64_t num = 0;
  for (int i = needed - 1; i >= 0; --i) num = num * p + x.unit_digits()[i];
  return Phase(p, num, needed);
}

Complex Psi(const PadicScalar& x, const PadicScalar& twist) {
  return FractionalPartOf(x * twist).ToComplex();
}

Rational BallVolume(int prime, int radius_exponent, int dimension) {
  if (dimension < 1) Fail(ErrorKind::kInvalidArgument, "dimension must be >= 1");
  return PowP(prime, -radius_exponent * dimension);
}

}  // namespace mlab
