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

#include "mlab/resolution.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "mlab/errors.hpp"

namespace mlab {

namespace {

std::string Trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::string Join(const std::vector<std::string>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ", ";
    out += xs[i];
  }
  return out;
}

[[noreturn]] void Inconsistent(const std::string& what) {
  Fail(ErrorKind::kAtlasInconsistency, "atlas: " + what);
}

// Index of the ')' matching the '(' at position open, or npos.
std::size_t MatchParen(const std::string& s, std::size_t open) {
  int depth = 0;
  for (std::size_t i = open; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')' && --depth == 0) return i;
  }
  return std::string::npos;
}

// "(num)/(den)" or a plain polynomial.
std::pair<MultiPoly, MultiPoly> ParseRationalFunction(const std::string& text,
                                                      const std::vector<std::string>& vars) {
  const std::string t = Trim(text);
  if (!t.empty() && t[0] == '(') {
    const std::size_t close = MatchParen(t, 0);
    if (close != std::string::npos) {
      const std::string rest = Trim(std::string_view(t).substr(close + 1));
      if (!rest.empty() && rest[0] == '/') {
        const std::string den = Trim(std::string_view(rest).substr(1));
        if (den.size() >= 2 && den.front() == '(' && MatchParen(den, 0) == den.size() - 1) {
          return {ParsePoly(t.substr(1, close - 1), vars),
                  ParsePoly(den.substr(1, den.size() - 2), vars)};
        }
      }
    }
  }
  return {ParsePoly(t, vars), MultiPoly::Constant(vars, 1)};
}

std::string RationalFunctionText(const MultiPoly& num, const MultiPoly& den) {
  if (den.IsConstant() && den.ConstantTerm() == 1) return num.ToString();
  return "(" + num.ToString() + ")/(" + den.ToString() + ")";
}

// p restricted to {x_i = 0, i in zero}, re-expressed in the remaining variables.
MultiPoly Restrict(const MultiPoly& f, const std::vector<std::size_t>& zero,
                   const std::vector<std::string>& free_vars) {
  MultiPoly out(free_vars);
  for (const auto& [e, c] : f.terms()) {
    bool vanishes = false;
    for (auto z : zero) vanishes = vanishes || e[z] > 0;
    if (vanishes) continue;
    Exponent g;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (std::find(zero.begin(), zero.end(), i) == zero.end()) g.push_back(e[i]);
    }
    out.AddTerm(g, c);
  }
  return out;
}

std::string Indexed(const std::string& stem, std::size_t i) { return stem + std::to_string(i + 1); }

// Proportionality of two vectors of rationals.
bool Proportional(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      if (a[i] * b[j] != a[j] * b[i]) return false;
    }
  }
  return true;
}

std::vector<Rational> Homogeneous(const Chart& c, const std::vector<Rational>& x) {
  auto v = c.f.Eval(x);
  v.push_back(c.p.Eval(x));
  return v;
}

}  // namespace

// ------------------------------------------------------------------ atlas

const Chart& ChartAtlas::FindChart(const std::string& name) const {
  for (const auto& c : charts) {
    if (c.name == name) return c;
  }
  Inconsistent("no chart named " + name);
}

void ChartAtlas::Validate() const {
  if (charts.empty()) Inconsistent("no charts");
  if (w_dimension < 2) Inconsistent("W_dimension must be at least 2");
  std::set<std::string> names;
  for (const auto& c : charts) {
    if (!names.insert(c.name).second) Inconsistent("duplicate chart " + c.name);
    if (std::set<std::string>(c.coords.begin(), c.coords.end()).size() != c.coords.size()) {
      Inconsistent("repeated coordinate in chart " + c.name);
    }
    if (c.f.source_vars() != c.coords || c.p.vars() != c.coords ||
        c.omega_unit.vars() != c.coords) {
      Inconsistent("chart " + c.name + " data not over its coordinates");
    }
    if (static_cast<int>(c.f.target_dim()) != w_dimension) {
      Inconsistent("chart " + c.name + " has f of the wrong dimension");
    }
    if (c.omega_beta.size() != c.coords.size()) {
      Inconsistent("chart " + c.name + " omega_beta length");
    }
    if (c.p.IsZero()) Inconsistent("chart " + c.name + " lies in X_inf");
    if (c.omega_unit.IsZero()) Inconsistent("chart " + c.name + " omega_unit is zero");
    std::set<std::string> seen;
    for (const auto& d : c.divisor) {
      const int idx = c.p.VarIndex(d.coord);
      if (idx < 0) Inconsistent("divisor " + d.coord + " is not a coordinate of " + c.name);
      if (!seen.insert(d.coord).second) Inconsistent("divisor " + d.coord + " listed twice");
      if (d.multiplicity < 1) Inconsistent("divisor multiplicity must be positive");
      if (d.at_infinity &&
          !c.p.SubstituteConstants({{static_cast<std::size_t>(idx), Rational(0)}}).IsZero()) {
        Inconsistent("p does not vanish on " + d.coord + " = 0 in " + c.name);
      }
      if (!d.at_infinity &&
          c.p.SubstituteConstants({{static_cast<std::size_t>(idx), Rational(0)}}).IsZero()) {
        Inconsistent("component " + d.coord + " = 0 of " + c.name + " lies in X_inf");
      }
    }
    std::vector<MultiPoly> gens = c.f.components();
    gens.push_back(c.p);
    if (!Ideal(c.coords, gens).IsUnit()) {
      Fail(ErrorKind::kCommonZeroViolation, "atlas: f and p share a zero in chart " + c.name);
    }
  }
  // Gluing: (f : p) must agree at sample points where both charts are defined.
  std::mt19937_64 rng(7);
  for (const auto& g : gluing) {
    const Chart& a = FindChart(g.from);
    const Chart& b = FindChart(g.to);
    if (g.numerators.size() != b.coords.size() || g.denominators.size() != b.coords.size()) {
      Inconsistent("glue " + g.from + "->" + g.to + " does not cover the target coordinates");
    }
    int checked = 0;
    for (int attempt = 0; attempt < 64 && checked < 8; ++attempt) {
      std::vector<Rational> x;
      for (std::size_t i = 0; i < a.coords.size(); ++i) {
        x.push_back(Rational(static_cast<long>(rng() % 19) - 9) / static_cast<long>(1 + rng() % 4));
        x.back().canonicalize();
      }
      std::vector<Rational> y;
      bool ok = true;
      for (std::size_t i = 0; i < b.coords.size() && ok; ++i) {
        const Rational den = g.denominators[i].Eval(x);
        if (den == 0) {
          ok = false;
        } else {
          y.push_back(g.numerators[i].Eval(x) / den);
        }
      }
      if (!ok) continue;
      const auto ha = Homogeneous(a, x);
      const auto hb = Homogeneous(b, y);
      if (std::all_of(ha.begin(), ha.end(), [](const Rational& q) { return q == 0; }) ||
          std::all_of(hb.begin(), hb.end(), [](const Rational& q) { return q == 0; })) {
        continue;
      }
      if (!Proportional(ha, hb)) {
        Inconsistent("glue " + g.from + "->" + g.to + " does not intertwine (f : p)");
      }
      ++checked;
    }
  }
}

ChartAtlas ChartAtlas::Parse(const std::string& text) {
  ChartAtlas atlas;
  enum { kTop, kChart, kGlue } section = kTop;
  struct RawChart {
    std::string name;
    std::map<std::string, std::string> keys;
    std::vector<std::string> divisors;
  };
  std::vector<RawChart> raw;
  struct RawGlue {
    std::string from, to;
    std::vector<std::pair<std::string, std::string>> entries;
  };
  std::vector<RawGlue> raw_glue;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto bad = [&](const std::string& what) {
    Fail(ErrorKind::kParseError, "atlas line " + std::to_string(lineno) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = Trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.front() == '[') {
      if (t.back() != ']') bad("unterminated section header");
      const std::string inner = Trim(std::string_view(t).substr(1, t.size() - 2));
      if (inner.rfind("chart ", 0) == 0) {
        section = kChart;
        raw.push_back({Trim(std::string_view(inner).substr(6)), {}, {}});
      } else if (inner.rfind("glue ", 0) == 0) {
        const std::string body = Trim(std::string_view(inner).substr(5));
        const auto arrow = body.find("->");
        if (arrow == std::string::npos) bad("glue section needs a->b");
        section = kGlue;
        raw_glue.push_back({Trim(body.substr(0, arrow)), Trim(body.substr(arrow + 2)), {}});
      } else {
        bad("unknown section " + inner);
      }
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos) bad("expected key=value");
    const std::string key = Trim(t.substr(0, eq));
    const std::string value = Trim(t.substr(eq + 1));
    if (section == kTop) {
      if (key == "W_dimension") {
        try {
          atlas.w_dimension = std::stoi(value);
        } catch (const std::exception&) {
          bad("W_dimension is not an integer");
        }
      } else if (key == "provenance") {
        atlas.provenance = value;
      } else if (key == "source_vars") {
        atlas.source_vars = ParseNameList(value);
      } else if (key == "source_poly") {
        atlas.source_poly = value;
      } else {
        bad("unknown key " + key);
      }
    } else if (section == kChart) {
      if (key == "divisor") {
        raw.back().divisors.push_back(value);
      } else if (key == "coords" || key == "f" || key == "p" || key == "omega_beta" ||
                 key == "omega_unit") {
        if (!raw.back().keys.emplace(key, value).second) bad("repeated key " + key);
      } else {
        bad("unknown chart key " + key);
      }
    } else {
      raw_glue.back().entries.emplace_back(key, value);
    }
  }
  for (const auto& rc : raw) {
    Chart c;
    c.name = rc.name;
    auto need = [&](const std::string& k) -> const std::string& {
      auto it = rc.keys.find(k);
      if (it == rc.keys.end()) Fail(ErrorKind::kParseError, "atlas chart " + c.name + ": missing " + k);
      return it->second;
    };
    c.coords = ParseNameList(need("coords"));
    c.f = PolyMap::Parse(need("f"), c.coords);
    c.p = ParsePoly(need("p"), c.coords);
    for (const auto& b : SplitTopLevel(need("omega_beta"))) {
      try {
        c.omega_beta.push_back(std::stoi(Trim(b)));
      } catch (const std::exception&) {
        Fail(ErrorKind::kParseError, "atlas chart " + c.name + ": bad omega_beta");
      }
    }
    c.omega_unit = ParsePoly(need("omega_unit"), c.coords);
    for (const auto& d : rc.divisors) {
      std::vector<std::string> parts;
      std::stringstream ss(d);
      std::string part;
      while (std::getline(ss, part, ':')) parts.push_back(Trim(part));
      if (parts.size() != 3 || (parts[2] != "inf" && parts[2] != "fin")) {
        Fail(ErrorKind::kParseError, "atlas chart " + c.name + ": divisor is coord:mult:inf|fin");
      }
      DivisorComponent comp;
      comp.coord = parts[0];
      try {
        comp.multiplicity = std::stoi(parts[1]);
      } catch (const std::exception&) {
        Fail(ErrorKind::kParseError, "atlas chart " + c.name + ": bad multiplicity");
      }
      comp.at_infinity = parts[2] == "inf";
      c.divisor.push_back(comp);
    }
    atlas.charts.push_back(std::move(c));
  }
  for (const auto& rg : raw_glue) {
    Gluing g;
    g.from = rg.from;
    g.to = rg.to;
    const Chart& a = atlas.FindChart(g.from);
    const Chart& b = atlas.FindChart(g.to);
    for (const auto& coord : b.coords) {
      auto it = std::find_if(rg.entries.begin(), rg.entries.end(),
                             [&](const auto& e) { return e.first == coord; });
      if (it == rg.entries.end()) {
        Fail(ErrorKind::kParseError, "atlas glue " + g.from + "->" + g.to + ": missing " + coord);
      }
      auto [num, den] = ParseRationalFunction(it->second, a.coords);
      if (den.IsZero()) Fail(ErrorKind::kParseError, "atlas glue: zero denominator");
      g.numerators.push_back(num);
      g.denominators.push_back(den);
    }
    if (rg.entries.size() != b.coords.size()) {
      Fail(ErrorKind::kParseError, "atlas glue " + g.from + "->" + g.to + ": unknown coordinate");
    }
    atlas.gluing.push_back(std::move(g));
  }
  return atlas;
}

std::string ChartAtlas::Serialize() const {
  std::ostringstream out;
  out << "W_dimension=" << w_dimension << "\n";
  if (!provenance.empty()) out << "provenance=" << provenance << "\n";
  if (!source_vars.empty()) out << "source_vars=" << Join(source_vars) << "\n";
  if (!source_poly.empty()) out << "source_poly=" << source_poly << "\n";
  for (const auto& c : charts) {
    out << "\n[chart " << c.name << "]\n";
    out << "coords=" << Join(c.coords) << "\n";
    out << "f=" << c.f.ToString() << "\n";
    out << "p=" << c.p.ToString() << "\n";
    std::vector<std::string> beta;
    for (int b : c.omega_beta) beta.push_back(std::to_string(b));
    out << "omega_beta=" << Join(beta) << "\n";
    out << "omega_unit=" << c.omega_unit.ToString() << "\n";
    for (const auto& d : c.divisor) {
      out << "divisor=" << d.coord << ":" << d.multiplicity << ":"
          << (d.at_infinity ? "inf" : "fin") << "\n";
    }
  }
  for (const auto& g : gluing) {
    out << "\n[glue " << g.from << "->" << g.to << "]\n";
    const Chart& b = FindChart(g.to);
    for (std::size_t i = 0; i < b.coords.size(); ++i) {
      out << b.coords[i] << "=" << RationalFunctionText(g.numerators[i], g.denominators[i])
          << "\n";
    }
  }
  return out.str();
}

// ------------------------------------------------------------------ strata

std::vector<Stratum> EnumerateStrata(const ChartAtlas& atlas) {
  atlas.Validate();
  std::vector<const Chart*> order;
  for (const auto& c : atlas.charts) order.push_back(&c);
  std::sort(order.begin(), order.end(),
            [](const Chart* a, const Chart* b) { return a->name < b->name; });
  std::vector<Stratum> out;
  for (const Chart* c : order) {
    const std::size_t nd = c->divisor.size();
    for (std::size_t r = 1; r <= nd; ++r) {
      // Subsets of size r of the divisor list, lexicographic in its order.
      std::vector<std::size_t> pick(r);
      for (std::size_t i = 0; i < r; ++i) pick[i] = i;
      while (true) {
        std::vector<std::size_t> zero;
        Stratum st;
        st.r = static_cast<int>(r);
        st.chart = c->name;
        for (auto i : pick) {
          st.zero_coords.push_back(c->divisor[i].coord);
          zero.push_back(static_cast<std::size_t>(c->p.VarIndex(c->divisor[i].coord)));
        }
        std::sort(zero.begin(), zero.end());
        for (std::size_t i = 0; i < c->coords.size(); ++i) {
          if (!std::binary_search(zero.begin(), zero.end(), i)) st.free_coords.push_back(c->coords[i]);
        }
        // Components not declared at infinity never lie in X_inf (Validate),
        // so D_S lies in X_inf iff p restricts to zero; one inf entry suffices.
        if (Restrict(c->p, zero, st.free_coords).IsZero()) {
          std::vector<MultiPoly> phi;
          for (const auto& fi : c->f.components()) phi.push_back(Restrict(fi, zero, st.free_coords));
          st.phi = PolyMap(st.free_coords, phi);
          out.push_back(std::move(st));
        }
        std::size_t i = r;
        while (i > 0 && pick[i - 1] == nd - r + i - 1) --i;
        if (i == 0) break;
        ++pick[i - 1];
        for (std::size_t j = i; j < r; ++j) pick[j] = pick[j - 1] + 1;
      }
    }
  }
  return out;
}

std::vector<CritPiece> CritUnionIprime(const std::vector<Stratum>& strata, int w_dimension) {
  const std::size_t m = static_cast<std::size_t>(w_dimension);
  std::vector<CritPiece> out;
  for (std::size_t s = 0; s < strata.size(); ++s) {
    const auto& st = strata[s];
    if (st.phi.target_dim() != m) Fail(ErrorKind::kDimensionMismatch, "stratum map dimension");
    for (std::size_t k = 0; k < m; ++k) {
      if (st.phi[k].IsZero()) continue;  // the stratum misses {w_k != 0}
      CotangentChart chart;
      std::vector<MultiPoly> nums;
      for (std::size_t i = 0; i < m; ++i) {
        if (i == k) continue;
        chart.base.push_back(Indexed("u", i));
        chart.fiber.push_back(Indexed("zeta", i));
        nums.push_back(st.phi[i]);
      }
      CritPiece piece;
      piece.stratum = s;
      piece.w_chart = k;
      piece.crit = CritIdealRational(PolyMap(st.free_coords, nums), st.phi[k], chart);
      if (piece.crit.ideal.IsUnit()) continue;
      out.push_back(std::move(piece));
    }
  }
  return out;
}

namespace {

std::vector<std::string> XiNames(std::size_t m) {
  std::vector<std::string> v;
  for (std::size_t i = 0; i < m; ++i) v.push_back(Indexed("xi", i));
  return v;
}

std::vector<std::string> WNames(std::size_t m) {
  std::vector<std::string> v;
  for (std::size_t i = 0; i < m; ++i) v.push_back(Indexed("w", i));
  return v;
}

}  // namespace

AssembledI AssembleI(const std::vector<CritPiece>& iprime, int w_dimension) {
  const std::size_t m = static_cast<std::size_t>(w_dimension);
  AssembledI out;
  out.chart.base = XiNames(m);
  out.chart.fiber = WNames(m);
  const auto kept = out.chart.AllVars();
  for (const auto& piece : iprime) {
    const auto& cc = piece.crit.chart;
    std::vector<std::string> ring = cc.base;
    ring.insert(ring.end(), cc.fiber.begin(), cc.fiber.end());
    const std::string t = FreshName(ring, "t");
    std::vector<std::string> drop = ring;
    drop.push_back(t);
    ring.push_back(t);
    ring.insert(ring.end(), kept.begin(), kept.end());
    auto var = [&](const std::string& name) { return MultiPoly::Variable(ring, name); };
    const std::size_t k = piece.w_chart;
    const MultiPoly wk = var(Indexed("w", k));
    std::vector<MultiPoly> gens;
    for (const auto& g : piece.crit.ideal.generators()) gens.push_back(g.Embed(ring));
    MultiPoly euler(ring);
    for (std::size_t i = 0, j = 0; i < m; ++i) {
      euler = euler + var(Indexed("w", i)) * var(Indexed("xi", i));
      if (i == k) continue;
      // u_i = w_i / w_k; zeta_i is xi_i scaled by w_k.
      gens.push_back(wk * var(cc.base[j]) - var(Indexed("w", i)));
      gens.push_back(var(cc.fiber[j]) - var(Indexed("xi", i)) * wk);
      ++j;
    }
    gens.push_back(euler);
    gens.push_back(var(t) * wk - MultiPoly::Constant(ring, 1));
    out.pieces.push_back(Eliminate(Ideal(ring, gens), drop));
  }
  // W* x {0} and {0} x W.
  std::vector<MultiPoly> w_axis, xi_axis;
  for (std::size_t i = 0; i < m; ++i) {
    w_axis.push_back(MultiPoly::Variable(kept, Indexed("w", i)));
    xi_axis.push_back(MultiPoly::Variable(kept, Indexed("xi", i)));
  }
  out.pieces.emplace_back(kept, w_axis);
  out.pieces.emplace_back(kept, xi_axis);
  return out;
}

BadLocus ComputeU(const std::vector<Stratum>& strata, const std::vector<CritPiece>& iprime,
                  int w_dimension) {
  const std::size_t m = static_cast<std::size_t>(w_dimension);
  BadLocus out;
  out.vars = XiNames(m);
  // Route 1: (w, zeta) in T*W_inf with zeta != 0 gives the hyperplane
  // xi_i = zeta_i (i != k), xi_k = -sum zeta_i u_i through w.
  for (const auto& piece : iprime) {
    const auto& cc = piece.crit.chart;
    std::vector<std::string> ring = cc.base;
    ring.insert(ring.end(), cc.fiber.begin(), cc.fiber.end());
    const std::string t = FreshName(ring, "t");
    std::vector<std::string> drop = ring;
    drop.push_back(t);
    ring.push_back(t);
    ring.insert(ring.end(), out.vars.begin(), out.vars.end());
    auto var = [&](const std::string& name) { return MultiPoly::Variable(ring, name); };
    std::vector<MultiPoly> gens;
    for (const auto& g : piece.crit.ideal.generators()) gens.push_back(g.Embed(ring));
    MultiPoly xk = var(Indexed("xi", piece.w_chart));
    for (std::size_t i = 0, j = 0; i < m; ++i) {
      if (i == piece.w_chart) continue;
      gens.push_back(var(Indexed("xi", i)) - var(cc.fiber[j]));
      xk = xk + var(cc.fiber[j]) * var(cc.base[j]);
      ++j;
    }
    gens.push_back(xk);
    for (const auto& z : cc.fiber) {
      auto g = gens;
      g.push_back(var(t) * var(z) - MultiPoly::Constant(ring, 1));
      Ideal e = Eliminate(Ideal(ring, g), drop);
      if (!e.IsUnit()) out.from_crit.push_back(std::move(e));
    }
  }
  // Route 2: H = {sum xi_i w_i = 0} fails to cut a stratum transversally
  // where h = xi . phi and all its partials vanish.
  for (const auto& st : strata) {
    std::vector<std::string> ring = st.free_coords;
    ring.insert(ring.end(), out.vars.begin(), out.vars.end());
    MultiPoly h(ring);
    for (std::size_t i = 0; i < m; ++i) {
      h = h + st.phi[i].Embed(ring) * MultiPoly::Variable(ring, out.vars[i]);
    }
    std::vector<MultiPoly> gens{h};
    for (std::size_t j = 0; j < st.free_coords.size(); ++j) gens.push_back(h.Derivative(j));
    Ideal e = Eliminate(Ideal(ring, gens), st.free_coords);
    // xi = 0 is always singular; a locus that is only the origin is empty.
    bool only_origin = true;
    for (std::size_t i = 0; i < m && only_origin; ++i) {
      only_origin = RadicalMember(MultiPoly::Variable(out.vars, i), e);
    }
    if (!e.IsUnit() && !only_origin) out.from_transversality.push_back(std::move(e));
  }
  auto covered = [](const std::vector<Ideal>& inner, const std::vector<Ideal>& outer) {
    for (const auto& i : inner) {
      if (!VarietyContains(i, outer)) return false;
    }
    return true;
  };
  out.routes_agree = covered(out.from_crit, out.from_transversality) &&
                     covered(out.from_transversality, out.from_crit);
  return out;
}

bool BadLocus::InU(const std::vector<Rational>& xi) const {
  if (xi.size() != vars.size()) Fail(ErrorKind::kDimensionMismatch, "InU: point dimension");
  if (std::all_of(xi.begin(), xi.end(), [](const Rational& q) { return q == 0; })) return false;
  for (const auto& piece : from_crit) {
    bool on = true;
    for (const auto& g : piece.generators()) on = on && g.Eval(xi) == 0;
    if (on) return false;
  }
  return true;
}

bool CheckTransversal(const Stratum& stratum, const std::vector<Rational>& xi) {
  if (xi.size() != stratum.phi.target_dim()) {
    Fail(ErrorKind::kDimensionMismatch, "CheckTransversal: hyperplane dimension");
  }
  if (std::all_of(xi.begin(), xi.end(), [](const Rational& q) { return q == 0; })) {
    Fail(ErrorKind::kInvalidArgument, "CheckTransversal: zero linear form");
  }
  MultiPoly h(stratum.free_coords);
  for (std::size_t i = 0; i < xi.size(); ++i) h = h + stratum.phi[i] * xi[i];
  std::vector<MultiPoly> gens{h};
  for (std::size_t j = 0; j < stratum.free_coords.size(); ++j) gens.push_back(h.Derivative(j));
  return Ideal(stratum.free_coords, gens).IsUnit();
}

bool InAssembledI(const AssembledI& i, const std::vector<Rational>& basepoint,
                  const std::vector<Rational>& direction, int prime, int precision) {
  if (basepoint.size() != i.chart.base.size() || direction.size() != i.chart.fiber.size()) {
    Fail(ErrorKind::kDimensionMismatch, "InAssembledI: point dimension");
  }
  std::vector<Rational> pt = basepoint;
  pt.insert(pt.end(), direction.begin(), direction.end());
  for (const auto& piece : i.pieces) {
    bool on = true;
    for (const auto& g : piece.generators()) {
      if (!on) break;
      const Rational v = g.Eval(pt);
      if (precision <= 0 || v == 0) {
        on = v == 0;
        continue;
      }
      int vmin = kInfiniteValuation;
      for (const auto& [e, c] : g.terms()) vmin = std::min(vmin, Valuation(c, prime));
      on = Valuation(v, prime) - vmin >= precision;
    }
    if (on) return true;
  }
  return false;
}

// ------------------------------------------------------------ validation

namespace {

// The transform's cell masses enumerate v mod p^{deg P * J}; radii whose
// deepest ladder scale J would overflow the grid cap are dropped.
PadicWfQuery ScanQuery(const MultiPoly& poly, int p, const ValidationConfig& config) {
  PadicWfQuery q = config.scan_defaults;
  const int d = static_cast<int>(poly.vars().size()) + 1;
  const int depth = BudgetedDepth(p, d, q.cell_budget);
  const int s_max = *std::max_element(q.resolutions.begin(), q.resolutions.end());
  const int deg = std::max(1, poly.TotalDegree());
  const double cap = std::log(static_cast<double>(DefaultGridCap()));
  std::vector<int> radii;
  for (int r : q.radii) {
    const int level = std::min(std::max(q.max_scale, r + s_max + 1), r + depth);
    if (deg * level * std::log(static_cast<double>(p)) <= cap) radii.push_back(r);
  }
  if (radii.empty()) {
    Fail(ErrorKind::kResourceBudgetExceeded,
         "cross_validate: no wave-front radius fits the grid cap at p = " + std::to_string(p));
  }
  q.radii = radii;
  return q;
}

}  // namespace

ValidationReport CrossValidate(const ChartAtlas& atlas, const ValidationConfig& config) {
  if (atlas.source_poly.empty()) {
    Fail(ErrorKind::kInvalidArgument, "cross_validate: atlas has no source_poly");
  }
  const MultiPoly poly = ParsePoly(atlas.source_poly, atlas.source_vars);
  const std::size_t n = atlas.source_vars.size();
  if (static_cast<std::size_t>(atlas.w_dimension) != n + 1) {
    Fail(ErrorKind::kDimensionMismatch, "cross_validate: W_dimension must be 1 + #source_vars");
  }
  const auto strata = EnumerateStrata(atlas);
  const auto iprime = CritUnionIprime(strata, atlas.w_dimension);
  const auto big_i = AssembleI(iprime, atlas.w_dimension);
  const auto bad = ComputeU(strata, iprime, atlas.w_dimension);

  ValidationReport rep;
  if (!bad.routes_agree) rep.failures.push_back({"bad_locus", 0, "", {}, {}});
  for (int p : config.primes) {
    // Stabilization grid on the slice eta = 1 of W*.
    std::vector<Rational> coords;
    for (int k = 0; k <= 2; ++k) {
      for (int a = -config.stab_numerators; a <= config.stab_numerators; ++a) {
        if (k > 0 && a % p == 0) continue;
        Rational q = Rational(a) / PowP(p, k);
        q.canonicalize();
        coords.push_back(q);
      }
    }
    std::vector<std::vector<Rational>> grid(1);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::vector<Rational>> next;
      for (const auto& g : grid) {
        for (const auto& c : coords) {
          auto h = g;
          h.push_back(c);
          next.push_back(std::move(h));
        }
      }
      grid.swap(next);
    }
    int nmax = config.stab_nmax;
    while (nmax > 1 && std::max(1, poly.TotalDegree()) * nmax * std::log(static_cast<double>(p)) >
                           std::log(static_cast<double>(config.stab_cells))) {
      --nmax;
    }
    std::optional<std::vector<bool>> reference;
    for (const auto& b : config.twists) {
      std::vector<bool> verdicts;
      for (const auto& xi : grid) {
        auto w = xi;
        w.push_back(1);
        const bool in_u = bad.InU(w);
        const auto probe =
            FtPsiPProbe({poly, p, b}, xi, nmax, config.stab_tolerance);
        const bool stable = probe.stabilization_level.has_value();
        verdicts.push_back(stable);
        if (!in_u) continue;
        ++rep.stabilization_points;
        if (stable) {
          ++rep.stabilized;
        } else {
          ValidationFinding f;
          f.kind = "stabilization";
          f.prime = p;
          f.twist = b.get_str();
          for (const auto& c : w) f.basepoint.push_back(c.get_str());
          rep.failures.push_back(std::move(f));
        }
      }
      if (!reference) {
        reference = verdicts;
      } else if (*reference != verdicts) {
        rep.twist_verdicts_identical = false;
      }

      // Wave-front scan of the transform over integer basepoints.
      std::vector<std::vector<Rational>> basepoints(1);
      for (std::size_t i = 0; i <= n; ++i) {
        std::vector<std::vector<Rational>> next;
        for (const auto& g : basepoints) {
          for (int a = 0; a < config.scan_side; ++a) {
            auto h = g;
            h.push_back(Rational(a));
            next.push_back(std::move(h));
          }
        }
        basepoints.swap(next);
      }
      const auto scan = WfScanPadic(MuHatProvider(poly, p, b), basepoints, {}, ScanQuery(poly, p, config));
      rep.cells_used += scan.cells_used;
      for (const auto& e : scan.entries) {
        if (e.verdict != WfVerdict::kInCandidate) continue;
        ++rep.wf_in_candidates;
        std::vector<Rational> x, w;
        for (const auto& s : e.basepoint) x.emplace_back(s);
        for (const auto& s : e.direction) w.emplace_back(s);
        for (auto& q : x) q.canonicalize();
        for (auto& q : w) q.canonicalize();
        if (InAssembledI(big_i, x, w, p, config.scan_defaults.resolutions.at(0))) continue;
        ValidationFinding f;
        f.kind = "wave_front";
        f.prime = p;
        f.twist = b.get_str();
        f.basepoint = e.basepoint;
        f.direction = e.direction;
        rep.failures.push_back(std::move(f));
      }
    }
  }
  rep.pass = rep.failures.empty() && rep.twist_verdicts_identical;
  return rep;
}

}  // namespace mlab
