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

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>
#include <set>

namespace mlab {

CotangentChart CotangentChart::Standard(std::size_t m, const std::string& base_stem,
                                        const std::string& fiber_stem) {
  CotangentChart c;
  for (std::size_t i = 1; i <= m; ++i) {
    c.base.push_back(base_stem + std::to_string(i));
    c.fiber.push_back(fiber_stem + std::to_string(i));
  }
  return c;
}

std::vector<std::string> CotangentChart::AllVars() const {
  std::vector<std::string> v = base;
  v.insert(v.end(), fiber.begin(), fiber.end());
  return v;
}

void CotangentChart::Validate() const {
  if (base.size() != fiber.size()) {
    Fail(ErrorKind::kDimensionMismatch, "cotangent chart: base and fiber sizes differ");
  }
  std::set<std::string> names(base.begin(), base.end());
  names.insert(fiber.begin(), fiber.end());
  if (names.size() != 2 * base.size()) {
    Fail(ErrorKind::kInvalidArgument, "cotangent chart: variable names must be distinct");
  }
}

const char* VerdictName(LagrangianVerdict v) {
  switch (v) {
    case LagrangianVerdict::kLagrangian: return "LAGRANGIAN";
    case LagrangianVerdict::kStrictlyIsotropicCandidate: return "STRICTLY_ISOTROPIC_CANDIDATE";
    case LagrangianVerdict::kInconclusive: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

namespace {

int NonzeroSectionDimension(const Ideal& ideal, const CotangentChart& chart) {
  int best = -1;
  std::vector<std::string> vars = ideal.vars();
  const std::string aux = FreshName(vars, "sat");
  vars.push_back(aux);
  const MultiPoly s = MultiPoly::Variable(vars, vars.size() - 1);
  const MultiPoly one = MultiPoly::Constant(vars, 1);
  for (const auto& xi : chart.fiber) {
    const MultiPoly f = MultiPoly::Variable(vars, xi);
    Ideal j = ideal.Embed(vars).Plus({one - s * f});
    if (j.IsUnit()) continue;
    best = std::max(best, IdealDimension(j));
  }
  return best;
}

}  // namespace

CritResult CritIdealRational(const PolyMap& numerators, const MultiPoly& denominator,
                             const CotangentChart& chart) {
  chart.Validate();
  const std::size_t m = chart.dim();
  if (numerators.target_dim() != m) {
    Fail(ErrorKind::kDimensionMismatch, "crit: map target dimension differs from chart");
  }
  const std::size_t n = numerators.source_dim();
  if (denominator.IsZero()) Fail(ErrorKind::kInvalidArgument, "crit: zero denominator");
  const bool has_den = !denominator.IsConstant();

  // Internal ring: renamed source variables, optional inverse, chart.
  std::vector<std::string> vars;
  const std::vector<std::string> chart_vars = chart.AllVars();
  for (std::size_t i = 0; i < n; ++i) vars.push_back(FreshName(chart_vars, "src" + std::to_string(i)));
  if (has_den) vars.push_back(FreshName(chart_vars, "inv"));
  vars.insert(vars.end(), chart_vars.begin(), chart_vars.end());
  std::vector<MultiPoly> images;
  for (std::size_t i = 0; i < n; ++i) images.push_back(MultiPoly::Variable(vars, i));
  auto lift = [&](const MultiPoly& g) {
    if (n == 0) return MultiPoly::Constant(vars, g.ConstantTerm());
    return g.Compose(images);
  };
  const MultiPoly d = lift(denominator);
  std::vector<MultiPoly> nums;
  for (std::size_t j = 0; j < m; ++j) nums.push_back(lift(numerators[j]));

  std::vector<MultiPoly> eqs;
  for (std::size_t j = 0; j < m; ++j) {
    eqs.push_back(MultiPoly::Variable(vars, chart.base[j]) * d - nums[j]);
  }
  if (has_den) {
    eqs.push_back(MultiPoly::Variable(vars, n) * d - MultiPoly::Constant(vars, 1));
  }
  for (std::size_t i = 0; i < n; ++i) {
    MultiPoly row(vars);
    const MultiPoly di = d.Derivative(i);
    for (std::size_t j = 0; j < m; ++j) {
      row = row + MultiPoly::Variable(vars, chart.fiber[j]) *
                      (d * nums[j].Derivative(i) - nums[j] * di);
    }
    eqs.push_back(row);
  }
  std::vector<std::string> drop(vars.begin(), vars.begin() + n + (has_den ? 1 : 0));
  Ideal full(vars, eqs);
  Ideal elim = drop.empty() ? full : Eliminate(full, drop);

  CritResult r;
  r.chart = chart;
  r.ideal = elim.Embed(chart_vars);
  if (r.ideal.IsUnit()) {
    r.dimension = -1;
    r.nonzero_section_dimension = -1;
    r.verdict = LagrangianVerdict::kInconclusive;
    return r;
  }
  r.dimension = IdealDimension(r.ideal);
  r.nonzero_section_dimension = NonzeroSectionDimension(r.ideal, chart);
  const int mm = static_cast<int>(m);
  if (r.dimension == mm &&
      (r.nonzero_section_dimension == -1 || r.nonzero_section_dimension == mm)) {
    r.verdict = LagrangianVerdict::kLagrangian;
  } else if (r.nonzero_section_dimension >= 0 && r.nonzero_section_dimension < mm &&
             r.dimension <= mm) {
    r.verdict = LagrangianVerdict::kStrictlyIsotropicCandidate;
  } else {
    r.verdict = LagrangianVerdict::kInconclusive;
  }
  return r;
}

CritResult CritIdeal(const PolyMap& f, const CotangentChart& chart) {
  return CritIdealRational(f, MultiPoly::Constant(f.source_vars(), 1), chart);
}

CritResult CritIdeal(const PolyMap& f) {
  return CritIdeal(f, CotangentChart::Standard(f.target_dim()));
}

Ideal ConormalIdeal(const std::vector<std::size_t>& zero_coords, const CotangentChart& chart) {
  const auto vars = chart.AllVars();
  std::vector<MultiPoly> gens;
  for (std::size_t i = 0; i < chart.dim(); ++i) {
    const bool in_s = std::find(zero_coords.begin(), zero_coords.end(), i) != zero_coords.end();
    gens.push_back(MultiPoly::Variable(vars, in_s ? chart.base[i] : chart.fiber[i]));
  }
  return Ideal(vars, gens);
}

bool VarietyContains(const Ideal& inner, const std::vector<Ideal>& outer_union) {
  if (outer_union.empty()) return inner.IsUnit();
  for (const auto& o : outer_union) {
    if (o.IsZero()) return true;
  }
  const auto& vars = inner.vars();
  std::vector<MultiPoly> products = {MultiPoly::Constant(vars, 1)};
  for (const auto& o : outer_union) {
    std::vector<MultiPoly> next;
    for (const auto& p : products) {
      for (const auto& g : o.generators()) next.push_back(p * g.Embed(vars));
    }
    products = std::move(next);
  }
  for (const auto& p : products) {
    if (!RadicalMember(p, inner)) return false;
  }
  return true;
}

bool IsFiberHomogeneous(const Ideal& ideal, const CotangentChart& chart) {
  std::vector<std::size_t> idx;
  for (const auto& xi : chart.fiber) {
    auto it = std::find(ideal.vars().begin(), ideal.vars().end(), xi);
    if (it != ideal.vars().end()) idx.push_back(static_cast<std::size_t>(it - ideal.vars().begin()));
  }
  for (const auto& g : ideal.generators()) {
    if (!g.IsHomogeneousIn(idx)) return false;
  }
  return true;
}

// ------------------------------------------------------------- isotropy

namespace {

struct Compiled {
  std::vector<MultiPoly> gens;
  std::vector<std::vector<MultiPoly>> grads;
};

Eigen::VectorXd EvalAll(const std::vector<MultiPoly>& ps, const std::vector<double>& x) {
  Eigen::VectorXd v(ps.size());
  for (std::size_t i = 0; i < ps.size(); ++i) v[i] = ps[i].EvalDouble(x);
  return v;
}

Eigen::MatrixXd JacobianAt(const Compiled& c, const std::vector<double>& x) {
  Eigen::MatrixXd j(c.gens.size(), x.size());
  for (std::size_t i = 0; i < c.gens.size(); ++i) {
    for (std::size_t k = 0; k < x.size(); ++k) j(i, k) = c.grads[i][k].EvalDouble(x);
  }
  return j;
}

}  // namespace

IsotropyReport IsotropySampleCheck(const Ideal& ideal, const CotangentChart& chart, int samples,
                                   double tol, std::uint64_t seed) {
  chart.Validate();
  const auto vars = chart.AllVars();
  const Ideal in_chart = ideal.Embed(vars);
  IsotropyReport rep;
  rep.seed = seed;
  if (in_chart.IsUnit()) Fail(ErrorKind::kInvalidArgument, "isotropy check on the unit ideal");
  const int dim = IdealDimension(in_chart);
  const std::size_t n = vars.size(), m = chart.dim();

  Compiled c;
  for (const auto& g : in_chart.Basis()) {
    c.gens.push_back(g);
    std::vector<MultiPoly> gr;
    for (std::size_t k = 0; k < n; ++k) gr.push_back(g.Derivative(k));
    c.grads.push_back(std::move(gr));
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int max_attempts = std::max(200, samples * 60);
  while (rep.smooth_points < samples && rep.attempts < max_attempts) {
    const int slice = dim - rep.attempts % (dim + 1);  // cycle dim, dim-1, ..., 0
    ++rep.attempts;
    Eigen::MatrixXd a(slice, n);
    Eigen::VectorXd b(slice);
    for (int r = 0; r < slice; ++r) {
      for (std::size_t k = 0; k < n; ++k) a(r, k) = gauss(rng);
      b[r] = gauss(rng);
    }
    std::vector<double> x(n);
    for (auto& xi : x) xi = gauss(rng);
    bool converged = false;
    for (int it = 0; it < 80; ++it) {
      Eigen::Map<Eigen::VectorXd> xv(x.data(), n);
      Eigen::VectorXd f(c.gens.size() + slice);
      f << EvalAll(c.gens, x), a * xv - b;
      if (f.norm() < 1e-13) {
        converged = true;
        break;
      }
      Eigen::MatrixXd j(c.gens.size() + slice, n);
      j << JacobianAt(c, x), a;
      Eigen::VectorXd step =
          j.jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(-f);
      xv += step;
      if (!xv.allFinite() || xv.norm() > 1e6) break;
    }
    if (!converged) continue;
    // Tangent space: kernel of the generator Jacobian.
    const Eigen::MatrixXd jg = JacobianAt(c, x);
    double scale = 0;
    for (int r = 0; r < jg.rows(); ++r) scale = std::max(scale, jg.row(r).norm());
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(jg, Eigen::ComputeFullV);
    int rank = 0;
    for (int k = 0; k < svd.singularValues().size(); ++k) {
      if (svd.singularValues()[k] > 1e-8 * std::max(scale, 1.0)) ++rank;
    }
    const int kernel = static_cast<int>(n) - rank;
    if (kernel != slice) {
      ++rep.singular_skipped;
      continue;
    }
    const Eigen::MatrixXd basis = svd.matrixV().rightCols(kernel);
    for (int i = 0; i < kernel; ++i) {
      for (int k = i + 1; k < kernel; ++k) {
        double w = 0;
        for (std::size_t q = 0; q < m; ++q) {
          w += basis(m + q, i) * basis(q, k) - basis(q, i) * basis(m + q, k);
        }
        rep.max_residual = std::max(rep.max_residual, std::abs(w));
      }
    }
    ++rep.smooth_points;
    rep.points.push_back(x);
  }
  if (rep.smooth_points < (samples + 1) / 2) {
    Fail(ErrorKind::kSamplingFailed, "isotropy check found only " +
                                         std::to_string(rep.smooth_points) + " smooth points");
  }
  rep.pass = rep.max_residual < tol && rep.smooth_points >= samples;
  return rep;
}

// --------------------------------------------------------------- census

namespace {

// Scales g to a primitive integer polynomial.
MultiPoly Primitive(const MultiPoly& g) {
  Integer l = 1, c = 0;
  for (const auto& [e, q] : g.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den().get_mpz_t());
  MultiPoly h = g * Rational(l);
  for (const auto& [e, q] : h.terms()) mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), q.get_num().get_mpz_t());
  return c == 0 ? h : h * (Rational(1) / Rational(c));
}

Rational Determinant(std::vector<std::vector<Rational>> a) {
  const std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const Rational f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

}  // namespace

FPointCensusResult FPointCensus(const Ideal& ideal, int prime, int box_exponent,
                                std::uint64_t grid_cap) {
  FPointCensusResult res;
  res.prime = prime;
  res.box_exponent = box_exponent;
  const std::size_t n = ideal.vars().size();
  if (n > 4) Fail(ErrorKind::kInvalidArgument, "census supports at most 4 variables");
  const std::int64_t mod = CheckedPow(prime, box_exponent);
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    total *= static_cast<std::uint64_t>(mod);
    if (total > grid_cap) Fail(ErrorKind::kResourceBudgetExceeded, "census grid too large");
  }
  std::vector<MultiPoly> gens;
  for (const auto& g : ideal.generators()) gens.push_back(Primitive(g));
  // Modular coefficient tables.
  struct ModTerm {
    Exponent e;
    std::int64_t c;
  };
  std::vector<std::vector<ModTerm>> mod_gens;
  for (const auto& g : gens) {
    std::vector<ModTerm> t;
    for (const auto& [e, q] : g.terms()) t.push_back({e, RationalMod(q, mod)});
    mod_gens.push_back(std::move(t));
  }
  std::vector<std::vector<MultiPoly>> jac(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t k = 0; k < n; ++k) jac[i].push_back(gens[i].Derivative(k));
  }
  std::vector<std::int64_t> r(n, 0);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t rem = idx;
    for (std::size_t k = 0; k < n; ++k) {
      r[k] = static_cast<std::int64_t>(rem % mod);
      rem /= mod;
    }
    bool ok = true;
    for (const auto& g : mod_gens) {
      std::int64_t s = 0;
      for (const auto& t : g) {
        std::int64_t v = t.c;
        for (std::size_t k = 0; k < n; ++k) {
          for (int q = 0; q < t.e[k]; ++q) v = MulMod(v, r[k], mod);
        }
        s = (s + v) % mod;
      }
      if (s != 0) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    ++res.residue_solutions;
    std::vector<Rational> pt(r.begin(), r.end());
    int min_v = kInfiniteValuation;
    for (const auto& g : gens) min_v = std::min(min_v, Valuation(g.Eval(pt), prime));
    bool verified = min_v == kInfiniteValuation;
    if (!verified && gens.size() <= n) {
      // Hensel: some maximal minor M with v(g) > 2 v(M) for every g.
      const std::size_t c = gens.size();
      std::vector<std::size_t> cols(c);
      std::vector<bool> pick(n, false);
      std::fill(pick.begin(), pick.begin() + c, true);
      do {
        std::size_t q = 0;
        for (std::size_t k = 0; k < n; ++k) {
          if (pick[k]) cols[q++] = k;
        }
        std::vector<std::vector<Rational>> a(c, std::vector<Rational>(c));
        for (std::size_t i = 0; i < c; ++i) {
          for (std::size_t j = 0; j < c; ++j) a[i][j] = jac[i][cols[j]].Eval(pt);
        }
        const Rational det = Determinant(a);
        if (det != 0 && min_v > 2 * Valuation(det, prime)) verified = true;
      } while (!verified && std::prev_permutation(pick.begin(), pick.end()));
    }
    if (verified) {
      std::vector<Integer> z;
      for (auto v : r) z.push_back(Integer(static_cast<long>(v)));
      res.points.push_back(std::move(z));
    }
  }
  return res;
}

}  // namespace mlab
