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

#include "mlab/groebner.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace mlab {

namespace {

std::size_t g_default_step_cap = 50000;

// Internal polynomial: terms sorted by decreasing monomial, exponents stored
// in order position (position 0 is the greatest variable).
struct Term {
  Exponent e;
  Rational c;
};
using IPoly = std::vector<Term>;

class Order {
 public:
  Order(std::size_t nvars, const GroebnerOptions& opt) : kind_(opt.order) {
    if (opt.var_order.empty()) {
      perm_.resize(nvars);
      std::iota(perm_.begin(), perm_.end(), 0);
    } else {
      if (opt.var_order.size() != nvars) {
        Fail(ErrorKind::kDimensionMismatch, "var_order length");
      }
      perm_ = opt.var_order;
      std::vector<std::size_t> sorted = perm_;
      std::sort(sorted.begin(), sorted.end());
      for (std::size_t i = 0; i < nvars; ++i) {
        if (sorted[i] != i) Fail(ErrorKind::kInvalidArgument, "var_order is not a permutation");
      }
    }
  }

  // -1, 0, 1 for a <, ==, > b.
  int Compare(const Exponent& a, const Exponent& b) const {
    if (kind_ == MonomialOrder::kLex) {
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
      }
      return 0;
    }
    int da = 0, db = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      da += a[i];
      db += b[i];
    }
    if (da != db) return da > db ? 1 : -1;
    for (std::size_t i = a.size(); i-- > 0;) {
      if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
    }
    return 0;
  }

  IPoly ToInternal(const MultiPoly& f) const {
    IPoly out;
    out.reserve(f.num_terms());
    for (const auto& [e, c] : f.terms()) {
      Exponent pe(e.size());
      for (std::size_t k = 0; k < e.size(); ++k) pe[k] = e[perm_[k]];
      out.push_back({std::move(pe), c});
    }
    std::sort(out.begin(), out.end(),
              [this](const Term& a, const Term& b) { return Compare(a.e, b.e) > 0; });
    return out;
  }

  MultiPoly ToExternal(const IPoly& f, const std::vector<std::string>& vars) const {
    MultiPoly out(vars);
    for (const auto& t : f) {
      Exponent e(t.e.size());
      for (std::size_t k = 0; k < e.size(); ++k) e[perm_[k]] = t.e[k];
      out.AddTerm(e, t.c);
    }
    return out;
  }

 private:
  MonomialOrder kind_;
  std::vector<std::size_t> perm_;
};

bool Divides(const Exponent& a, const Exponent& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

Exponent Lcm(const Exponent& a, const Exponent& b) {
  Exponent r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

int Deg(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

void MakeMonic(IPoly& f) {
  if (f.empty() || f[0].c == 1) return;
  const Rational inv = 1 / f[0].c;
  for (auto& t : f) t.c *= inv;
}

// Returns a[from..] - coef * x^shift * b[1..].
IPoly SubtractShifted(const IPoly& a, std::size_t from, const IPoly& b, const Rational& coef,
                      const Exponent& shift, const Order& order) {
  IPoly out;
  out.reserve(a.size() - from + b.size());
  std::size_t i = from, j = 1;
  Exponent be(shift.size());
  auto shifted = [&](std::size_t k) {
    for (std::size_t v = 0; v < shift.size(); ++v) be[v] = b[k].e[v] + shift[v];
  };
  if (j < b.size()) shifted(j);
  while (i < a.size() || j < b.size()) {
    int cmp;
    if (i >= a.size()) {
      cmp = -1;
    } else if (j >= b.size()) {
      cmp = 1;
    } else {
      cmp = order.Compare(a[i].e, be);
    }
    if (cmp > 0) {
      out.push_back(a[i++]);
    } else if (cmp < 0) {
      out.push_back({be, -coef * b[j].c});
      if (++j < b.size()) shifted(j);
    } else {
      Rational c = a[i].c - coef * b[j].c;
      if (c != 0) out.push_back({be, std::move(c)});
      ++i;
      if (++j < b.size()) shifted(j);
    }
  }
  return out;
}

IPoly NormalForm(IPoly f, const std::vector<IPoly>& g, const Order& order) {
  IPoly rem;
  while (!f.empty()) {
    const Term& lead = f[0];
    const IPoly* div = nullptr;
    for (const auto& q : g) {
      if (Divides(q[0].e, lead.e)) {
        div = &q;
        break;
      }
    }
    if (div == nullptr) {
      rem.push_back(lead);
      f.erase(f.begin());
      continue;
    }
    Exponent shift(lead.e.size());
    for (std::size_t v = 0; v < shift.size(); ++v) shift[v] = lead.e[v] - (*div)[0].e[v];
    const Rational coef = lead.c / (*div)[0].c;
    f = SubtractShifted(f, 1, *div, coef, shift, order);
  }
  return rem;
}

IPoly SPoly(const IPoly& a, const IPoly& b, const Order& order) {
  const Exponent l = Lcm(a[0].e, b[0].e);
  Exponent sa(l.size()), sb(l.size());
  for (std::size_t v = 0; v < l.size(); ++v) {
    sa[v] = l[v] - a[0].e[v];
    sb[v] = l[v] - b[0].e[v];
  }
  IPoly left;
  left.reserve(a.size());
  for (std::size_t k = 1; k < a.size(); ++k) {
    Exponent e(l.size());
    for (std::size_t v = 0; v < l.size(); ++v) e[v] = a[k].e[v] + sa[v];
    left.push_back({std::move(e), a[k].c / a[0].c});
  }
  return SubtractShifted(left, 0, b, 1 / b[0].c, sb, order);
}

std::vector<IPoly> Buchberger(std::vector<IPoly> input, const Order& order, std::size_t cap) {
  std::vector<IPoly> g;
  for (auto& f : input) {
    IPoly r = NormalForm(std::move(f), g, order);
    if (r.empty()) continue;
    MakeMonic(r);
    if (r[0].e == Exponent(r[0].e.size(), 0)) return {r};
    g.push_back(std::move(r));
  }
  std::set<std::pair<std::size_t, std::size_t>> pending;
  for (std::size_t j = 0; j < g.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) pending.insert({i, j});
  }
  std::size_t steps = 0;
  auto has_pair = [&](std::size_t a, std::size_t b) {
    return pending.count({std::min(a, b), std::max(a, b)}) > 0;
  };
  while (!pending.empty()) {
    // Normal strategy: smallest lcm, ties broken by order then index.
    auto best = pending.begin();
    Exponent best_lcm = Lcm(g[best->first][0].e, g[best->second][0].e);
    for (auto it = std::next(pending.begin()); it != pending.end(); ++it) {
      Exponent l = Lcm(g[it->first][0].e, g[it->second][0].e);
      const int dl = Deg(l), db = Deg(best_lcm);
      if (dl < db || (dl == db && order.Compare(l, best_lcm) < 0)) {
        best = it;
        best_lcm = std::move(l);
      }
    }
    const auto [i, j] = *best;
    pending.erase(best);
    const Exponent& li = g[i][0].e;
    const Exponent& lj = g[j][0].e;
    bool coprime = true;
    for (std::size_t v = 0; v < li.size(); ++v) {
      if (li[v] && lj[v]) coprime = false;
    }
    if (coprime) continue;
    bool chain = false;
    for (std::size_t k = 0; k < g.size() && !chain; ++k) {
      if (k == i || k == j) continue;
      if (Divides(g[k][0].e, best_lcm) && !has_pair(i, k) && !has_pair(j, k)) chain = true;
    }
    if (chain) continue;
    if (++steps > cap) {
      Fail(ErrorKind::kResourceBudgetExceeded,
           "Groebner basis exceeded " + std::to_string(cap) + " S-polynomial reductions");
    }
    IPoly r = NormalForm(SPoly(g[i], g[j], order), g, order);
    if (r.empty()) continue;
    MakeMonic(r);
    if (r[0].e == Exponent(r[0].e.size(), 0)) return {r};
    g.push_back(std::move(r));
    const std::size_t n = g.size() - 1;
    for (std::size_t k = 0; k < n; ++k) pending.insert({k, n});
  }
  // Minimize, then interreduce.
  std::vector<IPoly> minimal;
  for (std::size_t a = 0; a < g.size(); ++a) {
    bool redundant = false;
    for (std::size_t b = 0; b < g.size() && !redundant; ++b) {
      if (a == b || !Divides(g[b][0].e, g[a][0].e)) continue;
      // Equal leading monomials: keep the lower index.
      redundant = g[b][0].e != g[a][0].e || b < a;
    }
    if (!redundant) minimal.push_back(g[a]);
  }
  std::vector<IPoly> reduced;
  for (std::size_t a = 0; a < minimal.size(); ++a) {
    std::vector<IPoly> others;
    for (std::size_t b = 0; b < minimal.size(); ++b) {
      if (b != a) others.push_back(minimal[b]);
    }
    IPoly tail(minimal[a].begin() + 1, minimal[a].end());
    IPoly r = NormalForm(std::move(tail), others, order);
    r.insert(r.begin(), minimal[a][0]);
    reduced.push_back(std::move(r));
  }
  std::sort(reduced.begin(), reduced.end(), [&](const IPoly& x, const IPoly& y) {
    return order.Compare(x[0].e, y[0].e) > 0;
  });
  return reduced;
}

}  // namespace

std::size_t DefaultStepCap() { return g_default_step_cap; }
void SetDefaultStepCap(std::size_t cap) { g_default_step_cap = cap; }

std::vector<MultiPoly> GroebnerBasis(const std::vector<MultiPoly>& generators,
                                     const std::vector<std::string>& vars,
                                     const GroebnerOptions& options) {
  const Order order(vars.size(), options);
  std::vector<IPoly> input;
  for (const auto& f : generators) {
    if (f.vars() != vars) Fail(ErrorKind::kDimensionMismatch, "generator in the wrong ring");
    if (!f.IsZero()) input.push_back(order.ToInternal(f));
  }
  std::vector<MultiPoly> out;
  for (const auto& b : Buchberger(std::move(input), order, options.step_cap)) {
    out.push_back(order.ToExternal(b, vars));
  }
  return out;
}

MultiPoly Reduce(const MultiPoly& f, const std::vector<MultiPoly>& basis,
                 const GroebnerOptions& options) {
  const Order order(f.num_vars(), options);
  std::vector<IPoly> g;
  for (const auto& b : basis) {
    if (!b.IsZero()) g.push_back(order.ToInternal(b));
  }
  return order.ToExternal(NormalForm(order.ToInternal(f), g, order), f.vars());
}

Exponent LeadingExponent(const MultiPoly& f, const GroebnerOptions& options) {
  if (f.IsZero()) Fail(ErrorKind::kInvalidArgument, "leading exponent of zero");
  const Order order(f.num_vars(), options);
  const Exponent* best = nullptr;
  for (const auto& [e, c] : f.terms()) {
    // Compare in original coordinates through a permuted copy.
    if (best == nullptr) {
      best = &e;
      continue;
    }
    MultiPoly a = MultiPoly::Monomial(f.vars(), e, 1);
    MultiPoly b = MultiPoly::Monomial(f.vars(), *best, 1);
    if (order.Compare(order.ToInternal(a)[0].e, order.ToInternal(b)[0].e) > 0) best = &e;
  }
  return *best;
}

bool SatisfiesBuchbergerCriterion(const std::vector<MultiPoly>& basis,
                                  const GroebnerOptions& options) {
  if (basis.empty()) return true;
  const Order order(basis[0].num_vars(), options);
  std::vector<IPoly> g;
  for (const auto& b : basis) g.push_back(order.ToInternal(b));
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      if (!NormalForm(SPoly(g[i], g[j], order), g, order).empty()) return false;
    }
  }
  return true;
}

// ------------------------------------------------------------------ Ideal

Ideal::Ideal(std::vector<std::string> vars, std::vector<MultiPoly> generators)
    : vars_(std::move(vars)) {
  for (auto& g : generators) {
    if (g.vars() != vars_) g = g.Embed(vars_);
    if (!g.IsZero()) generators_.push_back(std::move(g));
  }
}

Ideal Ideal::Parse(const std::vector<std::string>& polys,
                   const std::vector<std::string>& vars) {
  std::vector<MultiPoly> gens;
  for (const auto& s : polys) gens.push_back(ParsePoly(s, vars));
  return Ideal(vars, std::move(gens));
}

const std::vector<MultiPoly>& Ideal::Basis(const GroebnerOptions& options) const {
  auto key = std::make_pair(static_cast<int>(options.order), options.var_order);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  auto basis = GroebnerBasis(generators_, vars_, options);
  return cache_.emplace(key, std::move(basis)).first->second;
}

const std::vector<MultiPoly>& Ideal::Basis() const {
  GroebnerOptions opt;
  opt.step_cap = DefaultStepCap();
  return Basis(opt);
}

bool Ideal::IsUnit() const {
  const auto& b = Basis();
  return b.size() == 1 && b[0].IsConstant();
}

bool Ideal::IsZero() const { return generators_.empty(); }

bool Ideal::Contains(const MultiPoly& g) const {
  GroebnerOptions opt;
  opt.step_cap = DefaultStepCap();
  const MultiPoly h = g.vars() == vars_ ? g : g.Embed(vars_);
  return Reduce(h, Basis(opt), opt).IsZero();
}

Ideal Ideal::Plus(const std::vector<MultiPoly>& more) const {
  std::vector<std::string> vars = vars_;
  for (const auto& m : more) {
    for (const auto& v : m.vars()) {
      if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
    }
  }
  std::vector<MultiPoly> gens = generators_;
  gens.insert(gens.end(), more.begin(), more.end());
  return Ideal(vars, std::move(gens));
}

Ideal Ideal::Embed(const std::vector<std::string>& new_vars) const {
  return Ideal(new_vars, generators_);
}

std::vector<std::string> Ideal::ToStrings() const {
  std::vector<std::string> out;
  for (const auto& g : generators_) out.push_back(g.ToString());
  return out;
}

// ----------------------------------------------------------- operations

Ideal Eliminate(const Ideal& ideal, const std::vector<std::string>& drop_vars) {
  const auto& vars = ideal.vars();
  std::vector<std::size_t> order;
  std::vector<std::string> kept;
  for (const auto& d : drop_vars) {
    auto it = std::find(vars.begin(), vars.end(), d);
    if (it == vars.end()) Fail(ErrorKind::kInvalidArgument, "eliminate: unknown variable " + d);
    order.push_back(static_cast<std::size_t>(it - vars.begin()));
  }
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (std::find(order.begin(), order.end(), i) == order.end()) {
      order.push_back(i);
      kept.push_back(vars[i]);
    }
  }
  GroebnerOptions opt;
  opt.order = MonomialOrder::kLex;
  opt.var_order = order;
  opt.step_cap = DefaultStepCap();
  std::vector<MultiPoly> out;
  for (const auto& b : ideal.Basis(opt)) {
    bool uses_dropped = false;
    for (std::size_t k = 0; k < drop_vars.size(); ++k) {
      if (b.Involves(order[k])) uses_dropped = true;
    }
    if (!uses_dropped) out.push_back(b.Embed(kept));
  }
  return Ideal(kept, std::move(out));
}

int IdealDimension(const Ideal& ideal) {
  const auto& basis = ideal.Basis();
  if (basis.size() == 1 && basis[0].IsConstant()) {
    Fail(ErrorKind::kEmptyVariety, "ideal is the unit ideal");
  }
  const std::size_t n = ideal.vars().size();
  GroebnerOptions opt;
  std::vector<Exponent> leads;
  for (const auto& b : basis) leads.push_back(LeadingExponent(b, opt));
  int best = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    const int size = __builtin_popcountll(mask);
    if (size <= best) continue;
    bool independent = true;
    for (const auto& e : leads) {
      bool inside = true;
      for (std::size_t v = 0; v < n; ++v) {
        if (e[v] > 0 && !(mask >> v & 1)) inside = false;
      }
      if (inside) {
        independent = false;
        break;
      }
    }
    if (independent) best = size;
  }
  return best;
}

std::string FreshName(const std::vector<std::string>& vars, const std::string& stem) {
  std::string name = stem;
  for (int k = 1; std::find(vars.begin(), vars.end(), name) != vars.end(); ++k) {
    name = stem + std::to_string(k);
  }
  return name;
}

bool RadicalMember(const MultiPoly& g, const Ideal& ideal) {
  if (g.IsZero()) return true;
  std::vector<std::string> vars = ideal.vars();
  vars.push_back(FreshName(vars, "aux"));
  const MultiPoly t = MultiPoly::Variable(vars, vars.size() - 1);
  const MultiPoly one = MultiPoly::Constant(vars, 1);
  Ideal ext = ideal.Embed(vars).Plus({one - t * g.Embed(vars)});
  return ext.IsUnit();
}

}  // namespace mlab
