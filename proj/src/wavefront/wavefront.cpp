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


#include "mlab/wavefront.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <tuple>

#include "mlab/errors.hpp"
#include "mlab/fft.hpp"

namespace mlab {

namespace {

std::uint64_t CheckedCells(std::int64_t side, int dim) {
  std::uint64_t total = 1;
  for (int i = 0; i < dim; ++i) {
    total *= static_cast<std::uint64_t>(side);
    if (total > DefaultGridCap()) {
      Fail(ErrorKind::kResourceBudgetExceeded,
           "wave-front table of " + std::to_string(side) + "^" + std::to_string(dim) +
               " cells exceeds cap " + std::to_string(DefaultGridCap()));
    }
  }
  return total;
}

bool Next(std::vector<std::int64_t>& u, std::int64_t side) {
  for (auto& d : u) {
    if (++d < side) return true;
    d = 0;
  }
  return false;
}

std::int64_t Mod(std::int64_t a, std::int64_t m) {
  a %= m;
  return a < 0 ? a + m : a;
}

int IntValuation(std::int64_t a, int p) {
  if (a == 0) return kInfiniteValuation;
  int v = 0;
  while (a % p == 0) {
    a /= p;
    ++v;
  }
  return v;
}

std::vector<std::int64_t> IntegralResidues(const std::vector<Rational>& x, int p,
                                           std::int64_t mod) {
  std::vector<std::int64_t> out;
  for (const auto& c : x) {
    if (c != 0 && Valuation(c, p) < 0) {
      Fail(ErrorKind::kInvalidArgument, "basepoint must be p-integral for this provider");
    }
    out.push_back(mod == 1 ? 0 : RationalMod(c, mod));
  }
  return out;
}

}  // namespace

// ------------------------------------------------------------ directions

bool Direction::IsZero() const {
  return std::all_of(rep.begin(), rep.end(), [](std::int64_t c) { return c == 0; });
}

std::string Direction::ToString() const {
  std::string s = "(";
  for (std::size_t i = 0; i < rep.size(); ++i) {
    if (i) s += ":";
    s += std::to_string(rep[i]);
  }
  return s + ")";
}

Direction CanonicalDirection(int prime, const std::vector<std::int64_t>& w, int resolution) {
  if (resolution < 1) Fail(ErrorKind::kInvalidArgument, "direction resolution must be >= 1");
  Direction d{prime, resolution, std::vector<std::int64_t>(w.size(), 0)};
  std::vector<std::int64_t> v = w;
  if (std::all_of(v.begin(), v.end(), [](std::int64_t c) { return c == 0; })) return d;
  // Lines are orbits of Q_p^x, so common powers of p can be removed.
  while (std::all_of(v.begin(), v.end(), [&](std::int64_t c) { return c % prime == 0; })) {
    for (auto& c : v) c /= prime;
  }
  const std::int64_t ps = CheckedPow(prime, resolution);
  std::size_t first = 0;
  while (Mod(v[first], prime) == 0) ++first;
  const std::int64_t inv = InverseMod(Mod(v[first], ps), ps);
  for (std::size_t i = 0; i < v.size(); ++i) d.rep[i] = MulMod(Mod(v[i], ps), inv, ps);
  return d;
}

std::vector<Direction> ProjectiveClasses(int prime, int dimension, int resolution) {
  const std::int64_t ps = CheckedPow(prime, resolution);
  CheckedCells(ps, dimension);
  std::set<std::vector<std::int64_t>> seen;
  std::vector<Direction> out;
  std::vector<std::int64_t> w(static_cast<std::size_t>(dimension), 0);
  do {
    if (std::none_of(w.begin(), w.end(), [&](std::int64_t c) { return c % prime != 0; })) {
      continue;
    }
    Direction d = CanonicalDirection(prime, w, resolution);
    if (seen.insert(d.rep).second) out.push_back(d);
  } while (Next(w, ps));
  std::sort(out.begin(), out.end(),
            [](const Direction& a, const Direction& b) { return a.rep < b.rep; });
  return out;
}

// ------------------------------------------------------------ providers

std::vector<Complex> LevelFunctionProvider::BallMasses(const std::vector<Rational>& center,
                                                       int r, int level) const {
  const int d = f_.dimension();
  const int p = f_.prime();
  if (static_cast<int>(center.size()) != d) Fail(ErrorKind::kDimensionMismatch, "basepoint");
  if (level < r) Fail(ErrorKind::kInvalidArgument, "level below cutoff radius");
  const std::int64_t side = CheckedPow(p, level - r);
  const std::size_t total = CheckedCells(side, d);
  const int sub = std::max(0, f_.level_exponent() - level);
  const std::int64_t sub_side = CheckedPow(p, sub);
  const double vol = PowP(p, -d * std::max(level, f_.level_exponent())).get_d();
  std::vector<Complex> out(total);
  std::vector<std::int64_t> t(static_cast<std::size_t>(d), 0);
  std::size_t idx = 0;
  do {
    std::vector<Rational> z(center);
    for (int i = 0; i < d; ++i) z[i] += PowP(p, r) * t[i];
    Complex acc = 0;
    std::vector<std::int64_t> e(static_cast<std::size_t>(d), 0);
    do {
      std::vector<Rational> y(z);
      for (int i = 0; i < d; ++i) y[i] += PowP(p, level) * e[i];
      acc += f_.Eval(y);
    } while (Next(e, sub_side));
    out[idx++] = acc * vol;
  } while (Next(t, side));
  return out;
}

namespace {

struct ModTerm {
  std::vector<int> e;
  std::int64_t c;
};

std::vector<ModTerm> ModTerms(const MultiPoly& poly, int p, std::int64_t mod) {
  std::vector<ModTerm> out;
  for (const auto& [e, c] : poly.terms()) {
    if (Valuation(c, p) < 0) {
      Fail(ErrorKind::kInvalidArgument, "coefficient " + c.get_str() + " is not p-integral");
    }
    const std::int64_t cm = RationalMod(c, mod);
    if (cm != 0) out.push_back({e, cm});
  }
  return out;
}

std::int64_t EvalMod(const std::vector<ModTerm>& terms, const std::vector<std::int64_t>& u,
                     std::int64_t mod) {
  std::int64_t acc = 0;
  for (const auto& t : terms) {
    std::int64_t m = t.c % mod;
    for (std::size_t i = 0; i < u.size(); ++i) {
      for (int k = 0; k < t.e[i]; ++k) m = MulMod(m, u[i], mod);
    }
    acc += m;
    if (acc >= mod) acc -= mod;
  }
  return acc;
}

}  // namespace

PolynomialPushforwardProvider::PolynomialPushforwardProvider(PolyMap phi, int prime)
    : phi_(std::move(phi)), p_(prime) {
  for (const auto& comp : phi_.components()) ModTerms(comp, p_, p_);
}

std::vector<Complex> PolynomialPushforwardProvider::BallMasses(
    const std::vector<Rational>& center, int r, int level) const {
  const int n = static_cast<int>(phi_.source_dim());
  const int m = dimension();
  if (static_cast<int>(center.size()) != m) Fail(ErrorKind::kDimensionMismatch, "basepoint");
  if (level < r) Fail(ErrorKind::kInvalidArgument, "level below cutoff radius");
  const std::int64_t mod = CheckedPow(p_, level);
  const auto c = IntegralResidues(center, p_, mod);
  std::vector<std::vector<ModTerm>> comps;
  for (const auto& comp : phi_.components()) comps.push_back(ModTerms(comp, p_, mod));
  // Residues x mod p^r with phi(x) = c mod p^r, digit by digit; phi(x) mod
  // p^k only depends on x mod p^k.
  std::vector<std::vector<std::int64_t>> nodes = {std::vector<std::int64_t>(n, 0)};
  for (int k = 1; k <= r; ++k) {
    const std::int64_t pk = CheckedPow(p_, k);
    const std::int64_t step = pk / p_;
    std::vector<std::vector<std::int64_t>> next;
    for (const auto& x : nodes) {
      std::vector<std::int64_t> d(static_cast<std::size_t>(n), 0);
      do {
        std::vector<std::int64_t> y(x);
        for (int i = 0; i < n; ++i) y[i] += step * d[i];
        bool ok = true;
        for (int j = 0; j < m && ok; ++j) ok = EvalMod(comps[j], y, pk) == c[j] % pk;
        if (ok) next.push_back(std::move(y));
      } while (Next(d, p_));
    }
    nodes = std::move(next);
  }
  const std::int64_t side = CheckedPow(p_, level - r);
  const std::int64_t pr = CheckedPow(p_, r);
  CheckedCells(side, n);
  std::vector<std::uint64_t> counts(CheckedCells(side, m), 0);
  for (const auto& x : nodes) {
    std::vector<std::int64_t> d(static_cast<std::size_t>(n), 0);
    std::vector<std::int64_t> y(static_cast<std::size_t>(n));
    do {
      for (int i = 0; i < n; ++i) y[i] = x[i] + pr * d[i];
      std::size_t flat = 0;
      for (int j = m; j-- > 0;) {
        const std::int64_t t = Mod(EvalMod(comps[j], y, mod) - c[j], mod) / pr;
        flat = flat * static_cast<std::size_t>(side) + static_cast<std::size_t>(t);
      }
      ++counts[flat];
    } while (Next(d, side));
  }
  const double vol = PowP(p_, -n * level).get_d();
  std::vector<Complex> out(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) out[i] = vol * static_cast<double>(counts[i]);
  return out;
}

MuHatProvider::MuHatProvider(MultiPoly poly, int prime, Rational twist)
    : poly_(std::move(poly)), p_(prime), twist_(std::move(twist)) {
  if (twist_ == 0) Fail(ErrorKind::kInvalidArgument, "twist must be nonzero");
}

std::vector<Complex> MuHatProvider::BallMasses(const std::vector<Rational>& center, int r,
                                               int level) const {
  // Cell mass of c + p^J Z_p^m is p^{-mJ} int psi(b <phi(v), c>) over the v
  // with b phi(v) in p^{-J} Z_p^m, so v in p^{-h} Z_p^n with h = J + v(b).
  const auto& vars = poly_.vars();
  const int n = static_cast<int>(vars.size());
  const int m = n + 1;
  const int vb = Valuation(twist_, p_);
  const int h = level + vb;
  if (h < 0) Fail(ErrorKind::kInvalidArgument, "twist too divisible by p for this level");
  std::vector<MultiPoly> comps;
  for (int i = 0; i < n; ++i) comps.push_back(MultiPoly::Variable(vars, i) * twist_);
  comps.push_back(poly_ * twist_);
  // Refinement L making b phi constant mod Z_p^m on v + p^L Z_p^n.
  int L = -h;
  std::vector<int> deg(m, 0);
  for (int i = 0; i < m; ++i) {
    for (const auto& [e, c] : comps[i].terms()) {
      int k = 0;
      for (int x : e) k += x;
      deg[i] = std::max(deg[i], k);
      if (k == 0) continue;
      L = std::max(L, h * (k - 1) - Valuation(c, p_));
    }
  }
  const std::int64_t wside = CheckedPow(p_, h + L);
  CheckedCells(wside, n);
  if (static_cast<int>(center.size()) != m) Fail(ErrorKind::kDimensionMismatch, "basepoint");
  if (level < r) Fail(ErrorKind::kInvalidArgument, "level below cutoff radius");
  const std::int64_t mod = CheckedPow(p_, level);
  const auto c = IntegralResidues(center, p_, mod);
  const std::int64_t side = CheckedPow(p_, level - r);
  std::vector<Complex> hist(CheckedCells(side, m), 0);
  std::vector<Complex> roots(static_cast<std::size_t>(mod));
  for (std::int64_t k = 0; k < mod; ++k) roots[k] = RootOfUnity(k, mod);
  // Q_i(w) = p^{J + h d_i} c_i(w / p^h) has p-integral coefficients.
  std::vector<std::vector<ModTerm>> qterms(m);
  std::vector<std::int64_t> qmod(m);
  std::vector<std::int64_t> shift(m);
  for (int i = 0; i < m; ++i) {
    shift[i] = CheckedPow(p_, h * deg[i]);
    qmod[i] = CheckedPow(p_, h * deg[i] + level);
    MultiPoly scaled(vars);
    for (const auto& [e, c] : comps[i].terms()) {
      int k = 0;
      for (int x : e) k += x;
      scaled.AddTerm(e, c * PowP(p_, level + h * (deg[i] - k)));
    }
    qterms[i] = ModTerms(scaled, p_, qmod[i]);
  }
  std::vector<std::int64_t> w(static_cast<std::size_t>(n), 0);
  // Cells c + p^r t see the a = p^J b phi(v) mod p^J through
  // psi(<a, c> / p^J) and a mod p^{J-r}.
  do {
    std::size_t flat = 0;
    std::int64_t num = 0;
    bool inside = true;
    for (int i = m; i-- > 0;) {
      const std::int64_t q = EvalMod(qterms[i], w, qmod[i]);
      if (q % shift[i] != 0) {
        inside = false;
        break;
      }
      const std::int64_t a = q / shift[i];
      num = (num + MulMod(a, c[i], mod)) % mod;
      flat = flat * static_cast<std::size_t>(side) + static_cast<std::size_t>(a % side);
    }
    if (inside) hist[flat] += roots[num];
  } while (Next(w, wside));
  std::vector<std::size_t> shape(static_cast<std::size_t>(m), static_cast<std::size_t>(side));
  DftMulti(hist, shape, +1);
  const double scale = PowP(p_, -m * level - n * L).get_d();
  for (auto& x : hist) x *= scale;
  return hist;
}

ModelUProvider::ModelUProvider(MonomialSymbol sym, int prime) : sym_(std::move(sym)), p_(prime) {
  sym_.Validate();
}

namespace {

// One eta-cell eta + p^J Z_p of the model function, with eta integrated out:
// what remains is p^{-J} psi(eta / x^alpha) |x^beta| on {v(x^alpha) <= J}.
// A coordinate with alpha = 1 (the star) is integrated exactly through
// x -> 1/x, which maps a + p^k Z_p onto 1/a + p^{k - 2v(a)} Z_p.
struct ModelCell {
  std::vector<int> alpha;  // phase coordinates only
  std::vector<int> beta;
  int p = 2;
  int level = 0;
  std::int64_t eta = 0;
  int v_eta = 0;
  int star = -1;

  // psi(eta / (p^V w)) for a unit w given by its factors.
  Complex PhaseOf(int V, const std::vector<std::int64_t>& x, const std::vector<int>& v) const {
    if (eta == 0 || V == 0) return 1;
    const std::int64_t mv = CheckedPow(p, V);
    std::int64_t unit = 1;
    for (std::size_t a = 0; a < x.size(); ++a) {
      const std::int64_t ua = Mod(x[a] / CheckedPow(p, v[a]), mv);
      for (int e = 0; e < alpha[a]; ++e) unit = MulMod(unit, ua, mv);
    }
    return RootOfUnity(MulMod(Mod(eta, mv), InverseMod(unit, mv), mv), mv);
  }

  double Weight(const std::vector<int>& v) const {
    int e = 0;
    for (std::size_t a = 0; a < v.size(); ++a) e += beta[a] * v[a];
    return PowP(p, -e).get_d();
  }

  // Average over x + p^k Z_p of the non-star coordinates of the integral
  // over the star ball x_star + p^J Z_p (or of the integrand without a star).
  Complex Rec(std::vector<std::int64_t>& x, int k) const {
    const std::size_t np = alpha.size();
    const std::int64_t pk = CheckedPow(p, k);
    const std::int64_t pJ = CheckedPow(p, level);
    int vlb = 0;
    int vmax = 0;
    bool any_zero = false;
    bool star_zero = false;
    std::vector<int> v(np, 0);
    for (std::size_t a = 0; a < np; ++a) {
      const bool is_star = static_cast<int>(a) == star;
      const std::int64_t mod = is_star ? pJ : pk;
      if (x[a] % mod == 0) {
        (is_star ? star_zero : any_zero) = true;
        v[a] = is_star ? level : k;
      } else {
        v[a] = IntValuation(x[a], p);
        if (!is_star) vmax = std::max(vmax, v[a]);
      }
      vlb += alpha[a] * v[a];
      if (vlb > level) return 0;
    }
    const int need = eta == 0 ? 0 : vlb + (star >= 0 && star_zero ? 0 : vmax) - v_eta;
    if (!any_zero && k >= need) {
      if (star < 0) return Weight(v) * PhaseOf(vlb, x, v);
      const int vs = v[star];
      const int v_rest = vlb - vs;
      if (!star_zero) {
        if (eta != 0 && v_eta - v_rest < 2 * vs - level) return 0;
        return std::pow(static_cast<double>(p), -level) * Weight(v) * PhaseOf(vlb, x, v);
      }
      // x_star in p^J Z_p: only the shell |x_star| = p^{-J} survives, as
      // p - 1 balls p^J u + p^{J+1} Z_p.
      if (eta != 0 && v_eta - v_rest < 2 * level - (level + 1)) return 0;
      Complex acc = 0;
      std::vector<std::int64_t> y(x);
      for (int u = 1; u < p; ++u) {
        y[star] = pJ * u;
        acc += PhaseOf(vlb, y, v);
      }
      return std::pow(static_cast<double>(p), -(level + 1)) * Weight(v) * acc;
    }
    Complex acc = 0;
    std::vector<std::int64_t> d(np, 0);
    std::vector<std::int64_t> y(np);
    const std::int64_t branch = CheckedPow(p, static_cast<int>(np) - (star >= 0 ? 1 : 0));
    do {
      if (star >= 0 && d[star] != 0) continue;
      for (std::size_t a = 0; a < np; ++a) y[a] = x[a] + pk * d[a];
      acc += Rec(y, k + 1);
    } while (Next(d, p));
    return acc / static_cast<double>(branch);
  }
};

}  // namespace

std::vector<Complex> ModelUProvider::BallMasses(const std::vector<Rational>& center, int r,
                                                int level) const {
  const int d = dimension();
  const int n = d - 1;
  if (static_cast<int>(center.size()) != d) Fail(ErrorKind::kDimensionMismatch, "basepoint");
  if (level < r) Fail(ErrorKind::kInvalidArgument, "level below cutoff radius");
  const std::int64_t mod = CheckedPow(p_, level);
  const auto c = IntegralResidues(center, p_, mod);
  const std::int64_t side = CheckedPow(p_, level - r);
  const std::int64_t step = CheckedPow(p_, r);
  ModelCell cell;
  cell.p = p_;
  cell.level = level;
  std::vector<std::size_t> phase_coords, weight_coords;
  for (int i = 0; i < n; ++i) {
    if (sym_.alpha[i] > 0) {
      phase_coords.push_back(static_cast<std::size_t>(i));
      cell.alpha.push_back(sym_.alpha[i]);
      cell.beta.push_back(sym_.beta[i]);
    } else {
      weight_coords.push_back(static_cast<std::size_t>(i));
    }
  }
  const double pinv = 1.0 / p_;
  std::vector<Complex> out(CheckedCells(side, d));
  std::vector<std::int64_t> t(static_cast<std::size_t>(d), 0);
  std::vector<std::int64_t> z(static_cast<std::size_t>(d));
  std::size_t idx = 0;
  do {
    for (int i = 0; i < d; ++i) z[i] = (c[i] + step * t[i]) % mod;
    cell.eta = z[n];
    cell.v_eta = IntValuation(z[n], p_);
    double factor = std::pow(pinv, level);  // the eta-cell
    for (std::size_t i : weight_coords) {
      const int b = sym_.beta[i];
      if (z[i] != 0) {
        factor *= std::pow(pinv, level) * std::pow(pinv, b * IntValuation(z[i], p_));
      } else {
        factor *= (1 - pinv) * std::pow(pinv, level * (1 + b)) / (1 - std::pow(pinv, 1 + b));
      }
    }
    std::vector<std::int64_t> x;
    cell.star = -1;
    int best = -1;
    for (std::size_t a = 0; a < phase_coords.size(); ++a) {
      x.push_back(z[phase_coords[a]]);
      if (cell.alpha[a] != 1) continue;
      const int va = x[a] == 0 ? level : IntValuation(x[a], p_);
      if (va > best) {
        best = va;
        cell.star = static_cast<int>(a);
      }
    }
    const int refined = static_cast<int>(x.size()) - (cell.star >= 0 ? 1 : 0);
    out[idx++] = factor * std::pow(pinv, level * refined) * cell.Rec(x, level);
  } while (Next(t, side));
  return out;
}

// ------------------------------------------------------------ probes

const char* WfVerdictName(WfVerdict v) {
  switch (v) {
    case WfVerdict::kOut: return "OUT";
    case WfVerdict::kInCandidate: return "IN_CANDIDATE";
    case WfVerdict::kUnknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

int BudgetedDepth(int prime, int dimension, std::uint64_t budget) {
  int K = 0;
  std::uint64_t total = 1;
  for (;;) {
    std::uint64_t next = total;
    for (int i = 0; i < dimension; ++i) next *= static_cast<std::uint64_t>(prime);
    if (next > budget) return K;
    total = next;
    ++K;
  }
}

namespace {

// Ball masses and their aggregated spectra for one basepoint, shared by all
// directions probed there.
class SpectrumCache {
 public:
  SpectrumCache(const CellMassProvider& u, const PadicWfQuery& q, std::uint64_t* cells)
      : u_(u),
        x_(q.basepoint),
        J_(q.max_scale),
        s_max_(*std::max_element(q.resolutions.begin(), q.resolutions.end())),
        depth_(BudgetedDepth(u.prime(), u.dimension(), q.cell_budget)),
        cells_(cells) {}

  // J_r for the cutoff of radius p^{-r}.
  int Level(int r) const { return std::min(std::max(J_, r + s_max_ + 1), r + depth_); }

  const std::vector<Complex>& Masses(int r) {
    auto it = masses_.find(r);
    if (it == masses_.end()) {
      it = masses_.emplace(r, u_.BallMasses(x_, r, Level(r))).first;
      if (cells_) *cells_ += it->second.size();
    }
    return it->second;
  }

  double MaxMass(int r) {
    double mx = 0;
    for (const auto& m : Masses(r)) mx = std::max(mx, std::abs(m));
    return mx;
  }

  // Largest cell average of |u|, so thresholds do not depend on the level.
  double MaxDensity(int r) {
    return MaxMass(r) * std::pow(static_cast<double>(u_.prime()),
                                 static_cast<double>(u_.dimension()) * Level(r));
  }

  // max |FT(rho u)(p^{-j} eta)| over primitive eta mod p^{j-r}, per class
  // of eta mod p^s.
  // Indexed by the flattened canonical rep, sum_i rep[i] p^{s i}.
  const std::vector<double>& ClassMaxima(int r, int j, int s) {
    const auto key = std::make_tuple(r, j, s);
    auto it = maxima_.find(key);
    if (it != maxima_.end()) return it->second;
    const auto table = Spectrum(r, j);
    const int d = u_.dimension();
    const int p = u_.prime();
    const std::int64_t side = CheckedPow(p, j - r);
    const std::int64_t ps = CheckedPow(p, s);
    std::vector<std::int64_t> inverse(static_cast<std::size_t>(ps), 0);
    for (std::int64_t a = 1; a < ps; ++a) {
      if (a % p != 0) inverse[a] = InverseMod(a, ps);
    }
    std::vector<double> best(CheckedCells(ps, d), 0.0);
    std::vector<std::int64_t> eta(static_cast<std::size_t>(d), 0);
    std::size_t idx = 0;
    do {
      std::size_t first = eta.size();
      for (std::size_t i = 0; i < eta.size() && first == eta.size(); ++i) {
        if (eta[i] % p != 0) first = i;
      }
      if (first < eta.size()) {
        const std::int64_t inv = inverse[eta[first] % ps];
        std::size_t flat = 0;
        for (std::size_t i = eta.size(); i-- > 0;) {
          flat = flat * static_cast<std::size_t>(ps) +
                 static_cast<std::size_t>((eta[i] % ps) * inv % ps);
        }
        best[flat] = std::max(best[flat], std::abs(table[idx]));
      }
      ++idx;
    } while (Next(eta, side));
    return maxima_.emplace(key, std::move(best)).first->second;
  }

 private:
  // FT of rho u at p^{-j} eta, indexed by eta mod p^{j-r}.
  std::vector<Complex> Spectrum(int r, int j) {
    const auto& masses = Masses(r);
    const int d = u_.dimension();
    const int p = u_.prime();
    const std::int64_t side_J = CheckedPow(p, Level(r) - r);
    const std::int64_t side = CheckedPow(p, j - r);
    std::vector<Complex> table(CheckedCells(side, d), 0);
    std::vector<std::int64_t> t(static_cast<std::size_t>(d), 0);
    std::size_t idx = 0;
    do {
      std::size_t flat = 0;
      for (int i = d; i-- > 0;) flat = flat * side + static_cast<std::size_t>(t[i] % side);
      table[flat] += masses[idx++];
    } while (Next(t, side_J));
    DftMulti(table, std::vector<std::size_t>(d, static_cast<std::size_t>(side)), +1);
    return table;
  }

  const CellMassProvider& u_;
  std::vector<Rational> x_;
  int J_;
  int s_max_;
  int depth_;
  std::uint64_t* cells_;
  std::map<int, std::vector<Complex>> masses_;
  std::map<std::tuple<int, int, int>, std::vector<double>> maxima_;
};

// max over the direction cell of |FT(rho u)(p^{-j} eta)| for j from j_start
// to J_r.
std::vector<double> DirectionalMaxima(SpectrumCache& cache, int p, int r, int j_start,
                                      const Direction& dir, int s) {
  const std::int64_t ps = CheckedPow(p, s);
  std::vector<std::int64_t> w(dir.rep);
  for (auto& c : w) c %= ps;
  const Direction target = CanonicalDirection(p, w, s);
  std::size_t flat = 0;
  for (std::size_t i = w.size(); i-- > 0;) {
    flat = flat * static_cast<std::size_t>(ps) + static_cast<std::size_t>(target.rep[i]);
  }
  std::vector<double> out;
  for (int j = j_start; j <= cache.Level(r); ++j) {
    out.push_back(cache.ClassMaxima(r, j, s)[flat]);
  }
  return out;
}

std::vector<std::string> RationalStrings(const std::vector<Rational>& x) {
  std::vector<std::string> out;
  for (const auto& c : x) out.push_back(c.get_str());
  return out;
}

WfEntry ProbeWithCache(const CellMassProvider& u, const PadicWfQuery& q, SpectrumCache& cache) {
  const int d = u.dimension();
  const int p = u.prime();
  if (static_cast<int>(q.basepoint.size()) != d ||
      static_cast<int>(q.direction.rep.size()) != d) {
    Fail(ErrorKind::kDimensionMismatch, "wave-front query dimension");
  }
  if (q.direction.prime != p) Fail(ErrorKind::kInvalidArgument, "direction over another prime");
  if (q.radii.empty() || q.resolutions.empty() || !(q.epsilon > 0) || q.j0 < 0 ||
      q.max_scale < 0) {
    Fail(ErrorKind::kInvalidArgument, "wave-front query parameters");
  }
  for (int r : q.radii) {
    if (r < 0) Fail(ErrorKind::kInvalidArgument, "cutoff radius exponent must be >= 0");
  }
  for (int s : q.resolutions) {
    if (s < 1) Fail(ErrorKind::kInvalidArgument, "neighborhood resolution must be >= 1");
  }
  WfEntry e;
  e.basepoint = RationalStrings(q.basepoint);
  for (auto c : q.direction.rep) e.direction.push_back(std::to_string(c));
  // A step whose masses all vanish carries no information unless the
  // provider certifies u = 0 on the ball.
  auto vacuous = [&](int r) {
    return cache.MaxDensity(r) <= q.epsilon && !u.ZeroMassesAreExact(cache.Level(r));
  };

  if (q.direction.IsZero()) {
    // The zero covector is in the wave front exactly on the support.
    bool seen = false;
    for (int r : q.radii) {
      if (vacuous(r)) continue;
      const double mx = cache.MaxDensity(r);
      seen = true;
      e.r = r;
      e.j0 = cache.Level(r);
      e.maxval = mx;
      e.values = {mx};
      if (mx <= q.epsilon) {
        e.verdict = WfVerdict::kOut;
        return e;
      }
    }
    e.verdict = seen && e.maxval > 10 * q.epsilon ? WfVerdict::kInCandidate : WfVerdict::kUnknown;
    return e;
  }

  std::vector<double> last_vals;
  int last_r = 0, last_s = 0, last_js = 0;
  for (int r : q.radii) {
    const int J = cache.Level(r);
    for (int s : q.resolutions) {
      const int js = std::max(q.j0, r + s);
      if (js > J - 1 || vacuous(r)) continue;
      auto vals = DirectionalMaxima(cache, p, r, js, q.direction, s);
      // Smallest witness j0 >= js with every later value below epsilon,
      // keeping at least two tested scales.
      int jw = J + 1;
      for (int j = J; j >= js && vals[j - js] <= q.epsilon; --j) jw = j;
      if (jw <= J - 1) {
        e.verdict = WfVerdict::kOut;
        e.r = r;
        e.s = s;
        e.j0 = jw;
        e.values.assign(vals.begin() + (jw - js), vals.end());
        e.maxval = *std::max_element(e.values.begin(), e.values.end());
        return e;
      }
      last_vals = std::move(vals);
      last_r = r;
      last_s = s;
      last_js = js;
    }
  }
  if (last_vals.empty()) return e;  // UNKNOWN: no informative ladder step
  e.r = last_r;
  e.s = last_s;
  e.j0 = last_js;
  e.values = last_vals;
  const std::size_t k = last_vals.size();
  e.maxval = std::max(last_vals[k - 1], k >= 2 ? last_vals[k - 2] : 0.0);
  e.verdict = e.maxval > 10 * q.epsilon ? WfVerdict::kInCandidate : WfVerdict::kUnknown;
  return e;
}

}  // namespace

WfEntry WfProbePadic(const CellMassProvider& u, const PadicWfQuery& q, std::uint64_t* cells_used) {
  SpectrumCache cache(u, q, cells_used);
  return ProbeWithCache(u, q, cache);
}

WaveFrontReport WfScanPadic(const CellMassProvider& u,
                            const std::vector<std::vector<Rational>>& basepoints,
                            const std::vector<Direction>& directions,
                            const PadicWfQuery& defaults) {
  WaveFrontReport rep;
  rep.field = "Q_p";
  rep.prime = u.prime();
  const auto dirs = directions.empty()
                        ? ProjectiveClasses(u.prime(), u.dimension(), defaults.resolutions.at(0))
                        : directions;
  for (const auto& x : basepoints) {
    PadicWfQuery q = defaults;
    q.basepoint = x;
    SpectrumCache cache(u, q, &rep.cells_used);
    for (const auto& w : dirs) {
      q.direction = w;
      rep.entries.push_back(ProbeWithCache(u, q, cache));
    }
  }
  return rep;
}

std::size_t WaveFrontReport::CountVerdict(WfVerdict v) const {
  return static_cast<std::size_t>(
      std::count_if(entries.begin(), entries.end(), [&](const WfEntry& e) { return e.verdict == v; }));
}

std::string WaveFrontReport::ToCsv() const {
  std::string out;
  if (!entries.empty()) {
    const std::size_t d = entries.front().basepoint.size();
    for (std::size_t i = 0; i < d; ++i) out += "x" + std::to_string(i + 1) + ",";
    for (std::size_t i = 0; i < d; ++i) out += "w" + std::to_string(i + 1) + ",";
    out += "verdict,r,s,j0,maxval\n";
  }
  for (const auto& e : entries) {
    for (const auto& x : e.basepoint) out += x + ",";
    for (const auto& w : e.direction) out += w + ",";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6e", e.maxval);
    out += std::string(WfVerdictName(e.verdict)) + "," + std::to_string(e.r) + "," +
           std::to_string(e.s) + "," + std::to_string(e.j0) + "," + buf + "\n";
  }
  return out;
}

}  // namespace mlab
