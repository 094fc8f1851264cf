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

// Sparse multivariate polynomials over Q and polynomial maps.

#ifndef MLAB_POLY_HPP_
#define MLAB_POLY_HPP_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "mlab/localfield.hpp"

namespace mlab {

using Exponent = std::vector<int>;

class MultiPoly {
 public:
  MultiPoly() = default;
  explicit MultiPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

  static MultiPoly Constant(std::vector<std::string> vars, const Rational& c);
  static MultiPoly Variable(std::vector<std::string> vars, std::size_t index);
  static MultiPoly Variable(std::vector<std::string> vars, const std::string& name);
  static MultiPoly Monomial(std::vector<std::string> vars, Exponent e,
                            const Rational& c);

  const std::vector<std::string>& vars() const { return vars_; }
  std::size_t num_vars() const { return vars_.size(); }
  const std::map<Exponent, Rational>& terms() const { return terms_; }
  std::size_t num_terms() const { return terms_.size(); }

  bool IsZero() const { return terms_.empty(); }
  bool IsConstant() const;
  Rational ConstantTerm() const;
  int TotalDegree() const;  // -1 for the zero polynomial
  int DegreeIn(std::size_t var) const;
  bool Involves(std::size_t var) const { return DegreeIn(var) > 0; }
  int VarIndex(const std::string& name) const;  // -1 when absent

  // Adds c * x^e; drops the term if the coefficient cancels.
  void AddTerm(const Exponent& e, const Rational& c);

  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly operator-() const;
  MultiPoly operator*(const Rational& c) const;
  MultiPoly Pow(int k) const;
  bool operator==(const MultiPoly& o) const {
    return vars_ == o.vars_ && terms_ == o.terms_;
  }

  MultiPoly Derivative(std::size_t var) const;

  // Replaces variable i by images[i]; all images share one ring.
  MultiPoly Compose(const std::vector<MultiPoly>& images) const;
  // Sets the listed variables to constants, keeping the ring.
  MultiPoly SubstituteConstants(const std::map<std::size_t, Rational>& values) const;
  // Re-expresses the polynomial in a ring whose variable names contain ours.
  MultiPoly Embed(const std::vector<std::string>& new_vars) const;

  Rational Eval(const std::vector<Rational>& point) const;
  double EvalDouble(const std::vector<double>& point) const;
  PadicScalar EvalPadic(const std::vector<PadicScalar>& point, int prime) const;

  // True iff every term has the same total degree in the listed variables.
  bool IsHomogeneousIn(const std::vector<std::size_t>& var_subset) const;

  // Canonical text in the grammar accepted by ParsePoly.
  std::string ToString() const;

 private:
  void CheckRing(const MultiPoly& o) const;

  std::vector<std::string> vars_;
  std::map<Exponent, Rational> terms_;
};

// Parses the polynomial grammar over the declared variables.
//   expr := term (('+'|'-') term)* ; term := factor (('*'|'/') factor)*
//   factor := atom ('^' nat)? ; atom := int | var | '(' expr ')'
// Division is only by nonzero constants.
MultiPoly ParsePoly(std::string_view text, const std::vector<std::string>& vars);

// Splits a comma-separated list (optionally wrapped in parentheses) at top
// level, i.e. ignoring commas nested inside parentheses.
std::vector<std::string> SplitTopLevel(std::string_view text);

// Parses "a, b, c" into trimmed names.
std::vector<std::string> ParseNameList(std::string_view text);

class PolyMap {
 public:
  PolyMap() = default;
  PolyMap(std::vector<std::string> source_vars, std::vector<MultiPoly> components);

  static PolyMap Identity(std::vector<std::string> vars);
  static PolyMap Parse(std::string_view text, const std::vector<std::string>& vars);

  std::size_t source_dim() const { return source_vars_.size(); }
  std::size_t target_dim() const { return components_.size(); }
  const std::vector<std::string>& source_vars() const { return source_vars_; }
  const std::vector<MultiPoly>& components() const { return components_; }
  const MultiPoly& operator[](std::size_t i) const { return components_[i]; }

  // Entry (i, j) = d f_i / d x_j.
  std::vector<std::vector<MultiPoly>> Jacobian() const;

  std::vector<Rational> Eval(const std::vector<Rational>& x) const;
  std::string ToString() const;

 private:
  std::vector<std::string> source_vars_;
  std::vector<MultiPoly> components_;
};

// Jacobian as a free function, matching the operation list.
std::vector<std::vector<MultiPoly>> Jacobian(const PolyMap& f);

}  // namespace mlab

#endif  // MLAB_POLY_HPP_
