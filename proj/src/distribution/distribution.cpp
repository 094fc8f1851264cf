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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <random>
#include <sstream>

#include "mlab/fft.hpp"

namespace mlab {

namespace {

std::uint64_t g_grid_cap = 10000000;

std::uint64_t CheckedCells(std::int64_t side, int dim) {
  std::uint64_t total = 1;
  for (int i = 0; i < dim; ++i) {
    total *= static_cast<std::uint64_t>(side);
    if (total > g_grid_cap) {
      Fail(ErrorKind::kResourceBudgetExceeded,
           "grid of " + std::to_string(side) + "^" + std::to_string(dim) + " cells exceeds cap " +
               std::to_string(g_grid_cap));
    }
  }
  return total;
}

std::string FormatDouble(double v) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, r.ptr);
}

// Advances a base-`side` odometer; false after the last vector.
bool Next(std::vector<std::int64_t>& u, std::int64_t side) {
  for (auto& d : u) {
    if (++d < side) return true;
    d = 0;
  }
  return false;
}

}  // namespace

std::uint64_t DefaultGridCap() { return g_grid_cap; }
void SetDefaultGridCap(std::uint64_t cap) { g_grid_cap = cap; }

// ---------------------------------------------------------- LevelFunction

LevelFunction::LevelFunction(int prime, int dimension, int support_exponent, int level_exponent)
    : prime_(prime), dim_(dimension), n_(support_exponent), m_(level_exponent) {
  if (prime < 2 || dimension < 1) Fail(ErrorKind::kInvalidArgument, "level function shape");
  if (n_ + m_ < 0) Fail(ErrorKind::kInvalidArgument, "level function needs N + M >= 0");
  side_ = CheckedPow(prime, n_ + m_);
  values_.assign(CheckedCells(side_, dim_), Complex(0, 0));
}

std::size_t LevelFunction::Index(const std::vector<std::int64_t>& u) const {
  std::size_t idx = 0;
  for (int i = dim_; i-- > 0;) idx = idx * static_cast<std::size_t>(side_) + static_cast<std::size_t>(u[i]);
  return idx;
}

std::vector<std::int64_t> LevelFunction::Cell(std::size_t index) const {
  std::vector<std::int64_t> u(dim_);
  for (int i = 0; i < dim_; ++i) {
    u[i] = static_cast<std::int64_t>(index % static_cast<std::size_t>(side_));
    index /= static_cast<std::size_t>(side_);
  }
  return u;
}

std::optional<std::size_t> LevelFunction::CellOf(const std::vector<Rational>& x) const {
  if (static_cast<int>(x.size()) != dim_) Fail(ErrorKind::kDimensionMismatch, "point dimension");
  std::vector<std::int64_t> u(dim_);
  const Rational scale = PowP(prime_, n_);
  for (int i = 0; i < dim_; ++i) {
    const Rational y = x[i] * scale;
    if (y != 0 && Valuation(y, prime_) < 0) return std::nullopt;
    u[i] = side_ == 1 ? 0 : RationalMod(y, side_);
  }
  return Index(u);
}

Complex LevelFunction::Eval(const std::vector<Rational>& x) const {
  auto idx = CellOf(x);
  return idx ? values_[*idx] : Complex(0, 0);
}

std::string LevelFunction::ToCsv() const {
  std::ostringstream os;
  os << "p,n,N,M\n" << prime_ << "," << dim_ << "," << n_ << "," << m_ << "\n";
  const int digits = n_ + m_;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] == Complex(0, 0)) continue;
    for (auto c : Cell(i)) {
      for (int d = 0; d < digits; ++d) {
        os << c % prime_ << ",";
        c /= prime_;
      }
    }
    os << FormatDouble(values_[i].real()) << "," << FormatDouble(values_[i].imag()) << "\n";
  }
  return os.str();
}

LevelFunction LevelFunction::FromCsv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line != "p,n,N,M") {
    Fail(ErrorKind::kParseError, "level function CSV: bad header");
  }
  auto split = [](const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(item);
    return out;
  };
  if (!std::getline(is, line)) Fail(ErrorKind::kParseError, "level function CSV: no shape");
  auto shape = split(line);
  if (shape.size() != 4) Fail(ErrorKind::kParseError, "level function CSV: shape row");
  LevelFunction f(std::stoi(shape[0]), std::stoi(shape[1]), std::stoi(shape[2]),
                  std::stoi(shape[3]));
  const int digits = f.n_ + f.m_;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    auto cols = split(line);
    if (cols.size() != static_cast<std::size_t>(f.dim_ * digits + 2)) {
      Fail(ErrorKind::kParseError, "level function CSV: row width");
    }
    std::vector<std::int64_t> u(f.dim_, 0);
    for (int i = 0; i < f.dim_; ++i) {
      std::int64_t v = 0;
      for (int d = digits; d-- > 0;) {
        const int digit = std::stoi(cols[i * digits + d]);
        if (digit < 0 || digit >= f.prime_) Fail(ErrorKind::kParseError, "digit out of range");
        v = v * f.prime_ + digit;
      }
      u[i] = v;
    }
    const double re = std::strtod(cols[cols.size() - 2].c_str(), nullptr);
    const double im = std::strtod(cols.back().c_str(), nullptr);
    f.values_[f.Index(u)] = Complex(re, im);
  }
  return f;
}

LevelFunction BallIndicator(int prime, const std::vector<Rational>& center, int radius_exponent,
                            int support_exponent, int level_exponent) {
  const int dim = static_cast<int>(center.size());
  LevelFunction f(prime, dim, support_exponent, level_exponent);
  if (radius_exponent > level_exponent || radius_exponent < -support_exponent) {
    Fail(ErrorKind::kInvalidArgument, "ball is not a union of cells of the grid");
  }
  const int k = support_exponent + radius_exponent;
  const std::int64_t mk = CheckedPow(prime, k);
  std::vector<std::int64_t> target(dim);
  for (int i = 0; i < dim; ++i) {
    const Rational y = center[i] * PowP(prime, support_exponent);
    if (y != 0 && Valuation(y, prime) < 0) return f;  // disjoint from the support
    target[i] = mk == 1 ? 0 : RationalMod(y, mk);
  }
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto u = f.Cell(i);
    bool in = true;
    for (int c = 0; c < dim && in; ++c) in = u[c] % mk == target[c];
    if (in) f[i] = 1;
  }
  return f;
}

LevelFunction FourierLevel(const LevelFunction& f, const Rational& twist) {
  const int p = f.prime();
  if (twist == 0 || Valuation(twist, p) != 0) {
    Fail(ErrorKind::kInvalidArgument, "fourier_level twist must be a p-adic unit");
  }
  LevelFunction out(p, f.dimension(), f.level_exponent(), f.support_exponent());
  const std::int64_t side = f.side();
  std::vector<Complex> d = f.values();
  DftMulti(d, std::vector<std::size_t>(f.dimension(), static_cast<std::size_t>(side)), +1);
  const std::int64_t b = side == 1 ? 0 : RationalMod(twist, side);
  const double scale = BallVolume(p, f.level_exponent(), f.dimension()).get_d();
  for (std::size_t i = 0; i < out.size(); ++i) {
    auto w = out.Cell(i);
    for (auto& c : w) c = side == 1 ? 0 : MulMod(c, b, side);
    out[i] = d[f.Index(w)] * scale;
  }
  return out;
}

LevelFunction Reflect(const LevelFunction& f) {
  LevelFunction out(f.prime(), f.dimension(), f.support_exponent(), f.level_exponent());
  for (std::size_t i = 0; i < f.size(); ++i) {
    auto u = f.Cell(i);
    for (auto& c : u) c = (f.side() - c) % f.side();
    out[out.Index(u)] = f[i];
  }
  return out;
}

// -------------------------------------------------------- CyclotomicValue

CyclotomicValue::CyclotomicValue(int prime, int log_order, std::vector<Integer> counts,
                                 int log_denominator)
    : p_(prime), k_(log_order), e_(log_denominator), c_(std::move(counts)) {
  if (k_ < 0 || static_cast<std::int64_t>(c_.size()) != CheckedPow(p_, k_)) {
    Fail(ErrorKind::kInvalidArgument, "cyclotomic value: counts size must be p^k");
  }
  if (k_ >= 1) {
    const std::int64_t q = CheckedPow(p_, k_ - 1);
    const std::int64_t basis = (p_ - 1) * q;
    // zeta^{j0 + (p-1) q} = -sum_{i < p-1} zeta^{j0 + i q}.
    for (std::int64_t j = static_cast<std::int64_t>(c_.size()) - 1; j >= basis; --j) {
      if (c_[j] == 0) continue;
      const std::int64_t j0 = j - basis;
      for (int i = 0; i + 1 < p_; ++i) c_[j0 + i * q] -= c_[j];
      c_[j] = 0;
    }
    c_.resize(basis);
  }
  while (e_ < 0) {
    for (auto& c : c_) c *= p_;
    ++e_;
  }
  Canonicalize();
}

void CyclotomicValue::Canonicalize() {
  bool all_zero = std::all_of(c_.begin(), c_.end(), [](const Integer& c) { return c == 0; });
  if (all_zero) {
    k_ = 0;
    e_ = 0;
    c_ = {Integer(0)};
    return;
  }
  while (k_ >= 1) {
    if (k_ == 1) {
      bool rational = true;
      for (std::size_t j = 1; j < c_.size(); ++j) rational = rational && c_[j] == 0;
      if (!rational) break;
      c_.resize(1);
      k_ = 0;
      break;
    }
    bool sub = true;
    for (std::size_t j = 0; j < c_.size() && sub; ++j) sub = c_[j] == 0 || j % p_ == 0;
    if (!sub) break;
    std::vector<Integer> d(c_.size() / p_);
    for (std::size_t j = 0; j < d.size(); ++j) d[j] = c_[j * p_];
    c_ = std::move(d);
    --k_;
  }
  while (e_ > 0) {
    bool div = std::all_of(c_.begin(), c_.end(),
                           [this](const Integer& c) { return mpz_divisible_ui_p(c.get_mpz_t(), p_); });
    if (!div) break;
    for (auto& c : c_) c /= p_;
    --e_;
  }
}

Complex CyclotomicValue::ToComplex() const {
  const std::int64_t order = CheckedPow(p_, k_);
  Complex s = 0;
  for (std::size_t j = 0; j < c_.size(); ++j) {
    if (c_[j] != 0) s += c_[j].get_d() * RootOfUnity(static_cast<std::int64_t>(j), order);
  }
  return s / PowP(p_, e_).get_d();
}

bool CyclotomicValue::operator==(const CyclotomicValue& o) const {
  return p_ == o.p_ && k_ == o.k_ && e_ == o.e_ && c_ == o.c_;
}

std::string CyclotomicValue::ToString() const {
  std::ostringstream os;
  os << "zeta_" << p_ << "^" << k_ << " / " << p_ << "^" << e_ << " : [";
  for (std::size_t j = 0; j < c_.size(); ++j) os << (j ? "," : "") << c_[j].get_str();
  os << "]";
  return os.str();
}

// -------------------------------------------------------- PhasePolynomial

PhasePolynomial::PhasePolynomial(const MultiPoly& poly, const std::vector<Rational>& xi,
                                 int prime, int support_exponent, const Rational& twist) {
  const std::size_t n = poly.num_vars();
  if (xi.size() != n) Fail(ErrorKind::kDimensionMismatch, "xi dimension");
  std::map<Exponent, Rational> coef;
  for (const auto& [e, c] : poly.terms()) {
    int deg = 0;
    for (int a : e) deg += a;
    coef[e] += twist * c * PowP(prime, -support_exponent * deg);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (xi[i] == 0) continue;
    Exponent e(n, 0);
    e[i] = 1;
    coef[e] += twist * xi[i] * PowP(prime, -support_exponent);
  }
  log_den_ = 0;
  for (const auto& [e, c] : coef) {
    if (c != 0) log_den_ = std::max(log_den_, -Valuation(c, prime));
  }
  mod_ = CheckedPow(prime, log_den_);
  for (const auto& [e, c] : coef) {
    if (c == 0) continue;
    const std::int64_t r = mod_ == 1 ? 0 : RationalMod(c * PowP(prime, log_den_), mod_);
    if (r != 0) terms_.push_back({e, r});
  }
}

std::int64_t PhasePolynomial::Numerator(const std::vector<std::int64_t>& u) const {
  std::int64_t s = 0;
  for (const auto& t : terms_) {
    std::int64_t v = t.c;
    for (std::size_t i = 0; i < u.size(); ++i) {
      for (int k = 0; k < t.e[i]; ++k) v = MulMod(v, u[i], mod_);
    }
    s += v;
    if (s >= mod_) s -= mod_;
  }
  return s;
}

int LocalConstancyLevel(const MultiPoly& poly, const std::vector<Rational>& xi, int prime,
                        int support_exponent, const Rational& twist) {
  const int n = support_exponent;
  int level = -n;
  for (const auto& [e, c] : poly.terms()) {
    int deg = 0;
    for (int a : e) deg += a;
    if (deg == 0) continue;
    level = std::max(level, n * (deg - 1) - Valuation(twist * c, prime));
  }
  for (const auto& x : xi) {
    if (x != 0) level = std::max(level, -Valuation(twist * x, prime));
  }
  return level;
}

// ------------------------------------------------------------------ probes

std::optional<int> StabilizationLevel(const std::vector<Complex>& values, double tol) {
  if (values.size() < 2) return std::nullopt;
  const Complex last = values.back();
  std::optional<int> level;
  for (int k = static_cast<int>(values.size()) - 2; k >= 0; --k) {
    if (std::abs(values[k] - last) > tol) break;
    level = k;
  }
  return level;
}

StabilizationReport FtPsiPProbe(const OscillatorySpec& spec, const std::vector<Rational>& xi,
                                int n_max, double tolerance, bool exact) {
  const int p = spec.prime;
  const int dim = static_cast<int>(spec.poly.num_vars());
  if (static_cast<int>(xi.size()) != dim) Fail(ErrorKind::kDimensionMismatch, "xi dimension");
  if (spec.twist == 0) Fail(ErrorKind::kInvalidArgument, "twist must be nonzero");
  StabilizationReport rep;
  rep.xi = xi;
  rep.tolerance = tolerance;
  for (int big_n = 0; big_n <= n_max; ++big_n) {
    const int level = LocalConstancyLevel(spec.poly, xi, p, big_n, spec.twist);
    const std::int64_t side = CheckedPow(p, big_n + level);
    const std::uint64_t cells = CheckedCells(side, dim);
    const PhasePolynomial phase(spec.poly, xi, p, big_n, spec.twist);
    const std::int64_t mod = phase.modulus();
    std::vector<std::int64_t> u(dim, 0);
    Complex sum = 0;
    const bool histogram = mod <= (std::int64_t{1} << 22);
    if (exact && !histogram) {
      Fail(ErrorKind::kResourceBudgetExceeded, "exact mode phase modulus too large");
    }
    if (histogram) {
      std::vector<std::uint64_t> counts(static_cast<std::size_t>(mod), 0);
      do {
        ++counts[static_cast<std::size_t>(phase.Numerator(u))];
      } while (Next(u, side));
      for (std::int64_t j = 0; j < mod; ++j) {
        if (counts[j]) sum += static_cast<double>(counts[j]) * RootOfUnity(j, mod);
      }
      if (exact) {
        std::vector<Integer> c(counts.size());
        for (std::size_t j = 0; j < counts.size(); ++j) c[j] = Integer(static_cast<unsigned long>(counts[j]));
        rep.exact_values.emplace_back(p, phase.log_denominator(), std::move(c), dim * level);
      }
    } else {
      do {
        sum += RootOfUnity(phase.Numerator(u), mod);
      } while (Next(u, side));
    }
    const double vol = BallVolume(p, level, dim).get_d();
    rep.values.push_back(sum * vol);
    rep.cell_levels.push_back(level);
    rep.error_bound = std::max(rep.error_bound, static_cast<double>(cells) * vol * std::ldexp(1.0, -50));
  }
  rep.stabilization_level = StabilizationLevel(rep.values, tolerance);
  return rep;
}

// ------------------------------------------------------------ pushforward

namespace {

// Lower bound for v(g(x + d) - g(x)) over x in the domain ball and
// d in p^{r+k} Z_p^n.
int DifferenceValuation(const MultiPoly& g, int prime, int a, int rk) {
  int best = kInfiniteValuation;
  for (const auto& [e, c] : g.terms()) {
    int deg = 0;
    for (int x : e) deg += x;
    if (deg == 0) continue;
    best = std::min(best, Valuation(c, prime) + a * (deg - 1) + rk);
  }
  return best;
}

int DomainValuationBound(const PushforwardSpec& spec, int prime) {
  int a = spec.domain_radius_exponent;
  for (const auto& c : spec.domain_center) {
    if (c != 0) a = std::min(a, Valuation(c, prime));
  }
  return a;
}

}  // namespace

int PushforwardBaseLevel(const PushforwardSpec& spec, int prime, int level_exponent) {
  const int a = DomainValuationBound(spec, prime);
  const int r = spec.domain_radius_exponent;
  int k = 0;
  for (const auto& comp : spec.phi.components()) {
    const int d0 = DifferenceValuation(comp, prime, a, r);  // at k = 0
    if (d0 == kInfiniteValuation) continue;
    k = std::max(k, level_exponent - d0);
  }
  return k;
}

std::map<std::size_t, Rational> PushforwardMasses(const PushforwardSpec& spec, int prime,
                                                  int support_exponent, int level_exponent,
                                                  int level, Rational* outside) {
  const std::size_t n = spec.phi.source_dim();
  const std::size_t m = spec.phi.target_dim();
  if (spec.domain_center.size() != n) Fail(ErrorKind::kDimensionMismatch, "domain center");
  const int base = PushforwardBaseLevel(spec, prime, level_exponent);
  const int depth = std::max(level, base);
  const int a = DomainValuationBound(spec, prime);
  const int r = spec.domain_radius_exponent;
  const MultiPoly& g = spec.omega_density;
  const bool g_const = g.IsConstant();
  const Rational g_abs_const = g_const && !g.IsZero() ? PadicNorm(PadicScalar::FromRational(g.ConstantTerm(), prime, 1)) : Rational(0);
  const std::int64_t side = CheckedPow(prime, support_exponent + level_exponent);
  const Rational to_grid = PowP(prime, support_exponent);
  CheckedCells(CheckedPow(prime, base), static_cast<int>(n));

  std::map<std::size_t, Rational> masses;
  if (outside) *outside = 0;
  auto deposit = [&](const std::vector<Rational>& x, const Rational& mass) {
    if (mass == 0) return;
    const auto y = spec.phi.Eval(x);
    std::size_t idx = 0;
    for (std::size_t j = m; j-- > 0;) {
      const Rational s = y[j] * to_grid;
      if (s != 0 && Valuation(s, prime) < 0) {
        if (outside) *outside += mass;
        return;
      }
      idx = idx * static_cast<std::size_t>(side) + static_cast<std::size_t>(side == 1 ? 0 : RationalMod(s, side));
    }
    masses[idx] += mass;
  };
  // Depth-first over domain cells c + p^r (u + p^k Z_p^n).
  std::vector<std::int64_t> digits;
  struct Frame {
    std::vector<Rational> x;
    int k;
  };
  std::vector<Frame> stack = {{spec.domain_center, 0}};
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    const Rational vol = BallVolume(prime, r + f.k, static_cast<int>(n));
    if (f.k >= base) {
      if (g_const) {
        deposit(f.x, vol * g_abs_const);
        continue;
      }
      const Rational gx = g.Eval(f.x);
      const int vg = gx == 0 ? kInfiniteValuation : Valuation(gx, prime);
      const int dv = DifferenceValuation(g, prime, a, r + f.k);
      if (vg != kInfiniteValuation && dv > vg) {
        deposit(f.x, vol * PowP(prime, -vg));
        continue;
      }
      if (f.k >= depth) {
        // Riemann value on an unresolved cell.
        deposit(f.x, vg == kInfiniteValuation ? Rational(0) : vol * PowP(prime, -vg));
        continue;
      }
    }
    const Rational step = PowP(prime, r + f.k);
    std::vector<std::int64_t> d(n, 0);
    std::vector<Frame> children;
    do {
      Frame c{f.x, f.k + 1};
      for (std::size_t i = 0; i < n; ++i) c.x[i] += step * d[i];
      children.push_back(std::move(c));
    } while (Next(d, prime));
    for (auto it = children.rbegin(); it != children.rend(); ++it) stack.push_back(std::move(*it));
  }
  return masses;
}

std::map<std::size_t, Rational> PushforwardMasses(const PushforwardSpec& spec, int prime,
                                                  int support_exponent, int level_exponent,
                                                  int level) {
  return PushforwardMasses(spec, prime, support_exponent, level_exponent, level, nullptr);
}

PushforwardResult PushforwardPair(const PushforwardSpec& spec, const LevelFunction& h,
                                  int refine_to) {
  const int p = h.prime();
  if (static_cast<int>(spec.phi.target_dim()) != h.dimension()) {
    Fail(ErrorKind::kDimensionMismatch, "pushforward target dimension");
  }
  const int base = PushforwardBaseLevel(spec, p, h.level_exponent());
  PushforwardResult res;
  res.level = std::max(refine_to, base);
  res.masses = PushforwardMasses(spec, p, h.support_exponent(), h.level_exponent(), res.level);
  const auto finer =
      PushforwardMasses(spec, p, h.support_exponent(), h.level_exponent(), res.level + 1);
  res.converged = finer == res.masses;
  for (const auto& [idx, mass] : res.masses) res.value += h[idx] * mass.get_d();
  return res;
}

PushforwardSpec ReductionToPushforward(const MultiPoly& poly) {
  const auto& vars = poly.vars();
  std::vector<MultiPoly> comps;
  for (std::size_t i = 0; i < vars.size(); ++i) comps.push_back(MultiPoly::Variable(vars, i));
  comps.push_back(poly);
  PushforwardSpec s;
  s.phi = PolyMap(vars, std::move(comps));
  s.omega_density = MultiPoly::Constant(vars, 1);
  s.domain_center.assign(vars.size(), Rational(0));
  s.domain_radius_exponent = 0;
  return s;
}

// ------------------------------------------------------- chart formulas

ChartPartialFt::ChartPartialFt(PolyMap f, MultiPoly p_scalar, MultiPoly omega_density)
    : f_(std::move(f)), p_(std::move(p_scalar)), g_(std::move(omega_density)) {
  std::vector<MultiPoly> gens = f_.components();
  gens.push_back(p_);
  if (!Ideal(f_.source_vars(), gens).IsUnit()) {
    Fail(ErrorKind::kCommonZeroViolation, "f and p have a common zero on the chart");
  }
}

Complex ChartPartialFt::Eval(const std::vector<PadicScalar>& x,
                             const std::vector<PadicScalar>& xi) const {
  if (xi.size() != f_.target_dim()) Fail(ErrorKind::kDimensionMismatch, "xi dimension");
  if (x.empty()) Fail(ErrorKind::kDimensionMismatch, "empty point");
  const int prime = x[0].prime();
  const PadicScalar px = p_.EvalPadic(x, prime);
  if (px.IsZero()) return 0;
  const PadicScalar gx = g_.EvalPadic(x, prime);
  if (gx.IsZero()) return 0;
  PadicScalar pair = PadicScalar::Zero(prime);
  for (std::size_t j = 0; j < xi.size(); ++j) pair = pair + f_[j].EvalPadic(x, prime) * xi[j];
  const Phase ph = FractionalPartOf(pair * px.Inverse());
  return ph.ToComplex() * PadicNorm(gx).get_d();
}

void MonomialSymbol::Validate() const {
  if (alpha.size() != beta.size()) Fail(ErrorKind::kDimensionMismatch, "alpha/beta length");
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] < 0) Fail(ErrorKind::kInvalidArgument, "alpha must be nonnegative");
    if (alpha[i] == 0 && beta[i] < 0) {
      Fail(ErrorKind::kInvalidArgument, "beta_i must be >= 0 where alpha_i = 0");
    }
  }
}

Complex PhaseValue::ToComplex() const {
  if (zero) return 0;
  return phase.ToComplex() * magnitude.get_d();
}

PhaseValue ModelU(const MonomialSymbol& sym, const std::vector<PadicScalar>& x,
                  const PadicScalar& eta) {
  sym.Validate();
  if (x.size() != sym.alpha.size()) Fail(ErrorKind::kDimensionMismatch, "model u point");
  const int prime = eta.prime();
  PhaseValue out;
  int prec = std::max(1, eta.precision());
  for (const auto& xi : x) prec = std::max(prec, xi.precision());
  PadicScalar mono = PadicScalar::FromInteger(1, prime, prec);
  Rational magnitude = 1;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].IsZero()) {
      if (sym.alpha[i] > 0 || sym.beta[i] > 0) return out;
      continue;
    }
    for (int k = 0; k < sym.alpha[i]; ++k) mono = mono * x[i];
    magnitude *= PowP(prime, -sym.beta[i] * x[i].valuation());
  }
  out.zero = false;
  out.magnitude = magnitude;
  out.phase = eta.IsExactZero() ? Phase(prime, 0, 0) : FractionalPartOf(eta * mono.Inverse());
  return out;
}

Complex ModelUEval(const MonomialSymbol& sym, const std::vector<PadicScalar>& x,
                   const PadicScalar& eta) {
  return ModelU(sym, x, eta).ToComplex();
}

QuasiInvarianceReport QuasiInvarianceCheck(const MonomialSymbol& sym, int prime, int samples,
                                           std::uint64_t seed) {
  sym.Validate();
  const std::size_t n = sym.alpha.size();
  const int prec = 40;
  std::mt19937_64 rng(seed);
  auto uniform = [&](long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(rng);
  };
  auto scaled = [&](long lo, long hi, int emin, int emax) {
    Rational q = Rational(uniform(lo, hi)) * PowP(prime, static_cast<int>(uniform(emin, emax)));
    q.canonicalize();
    return q;
  };
  QuasiInvarianceReport rep;
  for (int k = 0; k < samples; ++k) {
    std::vector<Rational> lambda, x;
    for (std::size_t i = 0; i < n; ++i) {
      long unit;
      do {
        unit = uniform(-500, 500);
      } while (unit % prime == 0);
      Rational l = Rational(unit) * PowP(prime, static_cast<int>(uniform(-2, 2)));
      l.canonicalize();
      lambda.push_back(l);
      x.push_back(scaled(-500, 500, -3, 3));
    }
    const Rational eta = scaled(-500, 500, -6, 2);
    std::vector<PadicScalar> px, plx;
    Rational lambda_alpha = eta;
    Rational norm = 1;
    for (std::size_t i = 0; i < n; ++i) {
      px.push_back(PadicScalar::FromRational(x[i], prime, prec));
      plx.push_back(PadicScalar::FromRational(lambda[i] * x[i], prime, prec));
      for (int a = 0; a < sym.alpha[i]; ++a) lambda_alpha *= lambda[i];
      norm *= PowP(prime, -sym.beta[i] * Valuation(lambda[i], prime));
    }
    const PhaseValue lhs =
        ModelU(sym, plx, PadicScalar::FromRational(lambda_alpha, prime, prec));
    PhaseValue rhs = ModelU(sym, px, PadicScalar::FromRational(eta, prime, prec));
    rhs.magnitude *= norm;
    ++rep.samples;
    if (!(lhs == rhs)) {
      if (rep.mismatches++ == 0) {
        for (const auto& q : lambda) rep.first_mismatch.push_back(q.get_str());
        for (const auto& q : x) rep.first_mismatch.push_back(q.get_str());
        rep.first_mismatch.push_back(eta.get_str());
      }
    }
  }
  return rep;
}

}  // namespace mlab
