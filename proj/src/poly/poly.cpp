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

#include "mlab/poly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace mlab {

namespace {

int Degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

// Print order: higher total degree first, then lexicographically larger.
bool PrintBefore(const Exponent& a, const Exponent& b) {
  const int da = Degree(a), db = Degree(b);
  if (da != db) return da > db;
  return a > b;
}

}  // namespace

MultiPoly MultiPoly::Constant(std::vector<std::string> vars, const Rational& c) {
  MultiPoly p(std::move(vars));
  p.AddTerm(Exponent(p.num_vars(), 0), c);
  return p;
}

MultiPoly MultiPoly::Variable(std::vector<std::string> vars, std::size_t index) {
  if (index >= vars.size()) Fail(ErrorKind::kDimensionMismatch, "variable index");
  MultiPoly p(std::move(vars));
  Exponent e(p.num_vars(), 0);
  e[index] = 1;
  p.AddTerm(e, Rational(1));
  return p;
}

MultiPoly MultiPoly::Variable(std::vector<std::string> vars, const std::string& name) {
  auto it = std::find(vars.begin(), vars.end(), name);
  if (it == vars.end()) Fail(ErrorKind::kParseError, "unknown variable '" + name + "'");
  const std::size_t idx = static_cast<std::size_t>(it - vars.begin());
  return Variable(std::move(vars), idx);
}

MultiPoly MultiPoly::Monomial(std::vector<std::string> vars, Exponent e,
                              const Rational& c) {
  if (e.size() != vars.size()) Fail(ErrorKind::kDimensionMismatch, "exponent length");
  MultiPoly p(std::move(vars));
  p.AddTerm(e, c);
  return p;
}

bool MultiPoly::IsConstant() const {
  return terms_.empty() ||
         (terms_.size() == 1 && Degree(terms_.begin()->first) == 0);
}

Rational MultiPoly::ConstantTerm() const {
  auto it = terms_.find(Exponent(num_vars(), 0));
  return it == terms_.end() ? Rational(0) : it->second;
}

int MultiPoly::TotalDegree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, Degree(e));
  return d;
}

int MultiPoly::DegreeIn(std::size_t var) const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
  return d;
}

int MultiPoly::VarIndex(const std::string& name) const {
  auto it = std::find(vars_.begin(), vars_.end(), name);
  return it == vars_.end() ? -1 : static_cast<int>(it - vars_.begin());
}

void MultiPoly::AddTerm(const Exponent& e, const Rational& c) {
  if (c == 0) return;
  if (e.size() != vars_.size()) Fail(ErrorKind::kDimensionMismatch, "exponent length");
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void MultiPoly::CheckRing(const MultiPoly& o) const {
  if (vars_ != o.vars_) {
    Fail(ErrorKind::kDimensionMismatch, "polynomials live in different rings");
  }
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  CheckRing(o);
  MultiPoly r = *this;
  for (const auto& [e, c] : o.terms_) r.AddTerm(e, c);
  return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
  CheckRing(o);
  MultiPoly r = *this;
  for (const auto& [e, c] : o.terms_) r.AddTerm(e, -c);
  return r;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r(vars_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

MultiPoly MultiPoly::operator*(const Rational& c) const {
  MultiPoly r(vars_);
  if (c == 0) return r;
  for (const auto& [e, k] : terms_) r.terms_.emplace(e, k * c);
  return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  CheckRing(o);
  MultiPoly r(vars_);
  Exponent e(num_vars());
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.AddTerm(e, ca * cb);
    }
  }
  return r;
}

MultiPoly MultiPoly::Pow(int k) const {
  if (k < 0) Fail(ErrorKind::kInvalidArgument, "negative power");
  MultiPoly result = Constant(vars_, Rational(1));
  MultiPoly base = *this;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

MultiPoly MultiPoly::Derivative(std::size_t var) const {
  MultiPoly r(vars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponent d = e;
    d[var] -= 1;
    r.AddTerm(d, c * e[var]);
  }
  return r;
}

MultiPoly MultiPoly::Compose(const std::vector<MultiPoly>& images) const {
  if (images.size() != num_vars()) {
    Fail(ErrorKind::kDimensionMismatch, "Compose: wrong number of images");
  }
  std::vector<std::string> target_vars =
      images.empty() ? std::vector<std::string>{} : images.front().vars();
  MultiPoly result(target_vars);
  // Cache powers per variable.
  std::vector<std::vector<MultiPoly>> powers(num_vars());
  for (const auto& [e, c] : terms_) {
    MultiPoly term = Constant(target_vars, c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      auto& pw = powers[i];
      if (pw.empty()) pw.push_back(Constant(target_vars, Rational(1)));
      while (static_cast<int>(pw.size()) <= e[i]) pw.push_back(pw.back() * images[i]);
      term = term * pw[e[i]];
    }
    result = result + term;
  }
  return result;
}

MultiPoly MultiPoly::SubstituteConstants(
    const std::map<std::size_t, Rational>& values) const {
  MultiPoly r(vars_);
  for (const auto& [e, c] : terms_) {
    Exponent d = e;
    Rational k = c;
    for (const auto& [idx, val] : values) {
      if (d[idx] == 0) continue;
      Rational pw = 1;
      for (int j = 0; j < d[idx]; ++j) pw *= val;
      k *= pw;
      d[idx] = 0;
    }
    r.AddTerm(d, k);
  }
  return r;
}

MultiPoly MultiPoly::Embed(const std::vector<std::string>& new_vars) const {
  std::vector<std::size_t> map(num_vars());
  for (std::size_t i = 0; i < num_vars(); ++i) {
    auto it = std::find(new_vars.begin(), new_vars.end(), vars_[i]);
    if (it == new_vars.end()) {
      if (DegreeIn(i) == 0) {
        map[i] = new_vars.size();  // unused variable, dropped
        continue;
      }
      Fail(ErrorKind::kDimensionMismatch, "Embed: variable '" + vars_[i] + "' missing");
    }
    map[i] = static_cast<std::size_t>(it - new_vars.begin());
  }
  MultiPoly r(new_vars);
  for (const auto& [e, c] : terms_) {
    Exponent d(new_vars.size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i]) d[map[i]] += e[i];
    }
    r.AddTerm(d, c);
  }
  return r;
}

Rational MultiPoly::Eval(const std::vector<Rational>& point) const {
  if (point.size() != num_vars()) Fail(ErrorKind::kDimensionMismatch, "Eval: point length");
  Rational s = 0;
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (int j = 0; j < e[i]; ++j) t *= point[i];
    }
    s += t;
  }
  return s;
}

double MultiPoly::EvalDouble(const std::vector<double>& point) const {
  if (point.size() != num_vars()) Fail(ErrorKind::kDimensionMismatch, "Eval: point length");
  double s = 0;
  for (const auto& [e, c] : terms_) {
    double t = c.get_d();
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (int j = 0; j < e[i]; ++j) t *= point[i];
    }
    s += t;
  }
  return s;
}

PadicScalar MultiPoly::EvalPadic(const std::vector<PadicScalar>& point, int prime) const {
  if (point.size() != num_vars()) Fail(ErrorKind::kDimensionMismatch, "Eval: point length");
  // Working precision: enough digits to carry every input.
  int prec = 1;
  for (const auto& x : point) prec = std::max(prec, x.precision());
  PadicScalar s = PadicScalar::Zero(prime);
  for (const auto& [e, c] : terms_) {
    PadicScalar t = PadicScalar::FromRational(c, prime, prec);
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (int j = 0; j < e[i]; ++j) t = t * point[i];
    }
    s = s + t;
  }
  return s;
}

bool MultiPoly::IsHomogeneousIn(const std::vector<std::size_t>& var_subset) const {
  int deg = -1;
  for (const auto& [e, c] : terms_) {
    int d = 0;
    for (std::size_t v : var_subset) d += e[v];
    if (deg < 0) deg = d;
    if (d != deg) return false;
  }
  return true;
}

std::string MultiPoly::ToString() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<Exponent, Rational>> ordered(terms_.begin(), terms_.end());
  std::sort(ordered.begin(), ordered.end(),
            [](const auto& a, const auto& b) { return PrintBefore(a.first, b.first); });
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : ordered) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += vars_[i];
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty()) {
      os << mag.get_str();
    } else if (mag == 1) {
      os << mono;
    } else {
      os << mag.get_str() << "*" << mono;
    }
  }
  return os.str();
}

// ----------------------------------------------------------------- parser

namespace {

class Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string>& vars)
      : text_(text), vars_(vars) {}

  MultiPoly ParseAll() {
    MultiPoly p = Expr();
    SkipSpace();
    if (pos_ != text_.size()) Error("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void Error(const std::string& msg) {
    Fail(ErrorKind::kParseError, "poly parse error at " + std::to_string(pos_) +
                                     " in '" + std::string(text_) + "': " + msg);
  }

  void SkipSpace() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool Accept(char c) {
    SkipSpace();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  MultiPoly Expr() {
    MultiPoly acc(vars_);
    bool neg = false;
    if (Accept('-')) {
      neg = true;
    } else {
      Accept('+');
    }
    MultiPoly t = Term();
    acc = neg ? -t : t;
    while (true) {
      if (Accept('+')) {
        acc = acc + Term();
      } else if (Accept('-')) {
        acc = acc - Term();
      } else {
        break;
      }
    }
    return acc;
  }

  MultiPoly Term() {
    MultiPoly acc = Factor();
    while (true) {
      if (Accept('*')) {
        acc = acc * Factor();
      } else if (Accept('/')) {
        MultiPoly d = Factor();
        if (!d.IsConstant() || d.IsZero()) Error("division only by nonzero constants");
        acc = acc * (Rational(1) / d.ConstantTerm());
      } else {
        break;
      }
    }
    return acc;
  }

  MultiPoly Factor() {
    MultiPoly base = Atom();
    if (Accept('^')) {
      SkipSpace();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      }
      if (start == pos_) Error("expected exponent");
      base = base.Pow(std::stoi(std::string(text_.substr(start, pos_ - start))));
    }
    return base;
  }

  MultiPoly Atom() {
    SkipSpace();
    if (pos_ >= text_.size()) Error("unexpected end");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      MultiPoly e = Expr();
      if (!Accept(')')) Error("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      }
      Integer z(std::string(text_.substr(start, pos_ - start)));
      return MultiPoly::Constant(vars_, Rational(z));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      std::string name(text_.substr(start, pos_ - start));
      auto it = std::find(vars_.begin(), vars_.end(), name);
      if (it == vars_.end()) Error("unknown variable '" + name + "'");
      return MultiPoly::Variable(vars_, static_cast<std::size_t>(it - vars_.begin()));
    }
    Error(std::string("unexpected '") + c + "'");
  }

  std::string_view text_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
};

std::string Trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

}  // namespace

MultiPoly ParsePoly(std::string_view text, const std::vector<std::string>& vars) {
  return Parser(text, vars).ParseAll();
}

std::vector<std::string> SplitTopLevel(std::string_view text) {
  std::string t = Trim(text);
  // Strip one pair of wrapping parentheses if they enclose everything.
  if (t.size() >= 2 && t.front() == '(' && t.back() == ')') {
    int depth = 0;
    bool wraps = true;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (t[i] == '(') ++depth;
      if (t[i] == ')') --depth;
      if (depth == 0 && i + 1 < t.size()) {
        wraps = false;
        break;
      }
    }
    if (wraps) t = t.substr(1, t.size() - 2);
  }
  std::vector<std::string> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] == '(') ++depth;
    if (t[i] == ')') --depth;
    if (t[i] == ',' && depth == 0) {
      out.push_back(Trim(std::string_view(t).substr(start, i - start)));
      start = i + 1;
    }
  }
  std::string last = Trim(std::string_view(t).substr(start));
  if (!last.empty() || !out.empty()) out.push_back(last);
  return out;
}

std::vector<std::string> ParseNameList(std::string_view text) {
  std::vector<std::string> names = SplitTopLevel(text);
  for (const auto& n : names) {
    if (n.empty()) Fail(ErrorKind::kParseError, "empty variable name");
  }
  return names;
}

// ---------------------------------------------------------------- PolyMap

PolyMap::PolyMap(std::vector<std::string> source_vars, std::vector<MultiPoly> components)
    : source_vars_(std::move(source_vars)), components_(std::move(components)) {
  for (const auto& c : components_) {
    if (c.vars() != source_vars_) {
      Fail(ErrorKind::kDimensionMismatch, "PolyMap component in the wrong ring");
    }
  }
}

PolyMap PolyMap::Identity(std::vector<std::string> vars) {
  std::vector<MultiPoly> comps;
  for (std::size_t i = 0; i < vars.size(); ++i) comps.push_back(MultiPoly::Variable(vars, i));
  return PolyMap(std::move(vars), std::move(comps));
}

PolyMap PolyMap::Parse(std::string_view text, const std::vector<std::string>& vars) {
  std::vector<MultiPoly> comps;
  for (const auto& piece : SplitTopLevel(text)) comps.push_back(ParsePoly(piece, vars));
  return PolyMap(vars, std::move(comps));
}

std::vector<std::vector<MultiPoly>> PolyMap::Jacobian() const {
  std::vector<std::vector<MultiPoly>> j(target_dim());
  for (std::size_t i = 0; i < target_dim(); ++i) {
    for (std::size_t k = 0; k < source_dim(); ++k) {
      j[i].push_back(components_[i].Derivative(k));
    }
  }
  return j;
}

std::vector<Rational> PolyMap::Eval(const std::vector<Rational>& x) const {
  std::vector<Rational> y;
  y.reserve(target_dim());
  for (const auto& c : components_) y.push_back(c.Eval(x));
  return y;
}

std::string PolyMap::ToString() const {
  std::string s = "(";
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (i) s += ", ";
    s += components_[i].ToString();
  }
  return s + ")";
}

std::vector<std::vector<MultiPoly>> Jacobian(const PolyMap& f) { return f.Jacobian(); }

}  // namespace mlab
