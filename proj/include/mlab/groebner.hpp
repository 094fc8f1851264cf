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

// Buchberger's algorithm over Q and the ideal operations built on it.

#ifndef MLAB_GROEBNER_HPP_
#define MLAB_GROEBNER_HPP_

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "mlab/poly.hpp"

namespace mlab {

enum class MonomialOrder { kLex, kDegRevLex };

struct GroebnerOptions {
  MonomialOrder order = MonomialOrder::kDegRevLex;
  // Variable indices from greatest to smallest; empty means ring order.
  std::vector<std::size_t> var_order;
  // Maximum number of S-polynomial reductions.
  std::size_t step_cap = 50000;
};

// Process-wide default for the step cap (the CLI scales it).
std::size_t DefaultStepCap();
void SetDefaultStepCap(std::size_t cap);

// Reduced, monic Groebner basis, sorted by decreasing leading monomial.
// The zero ideal gives an empty basis; the unit ideal gives {1}.
std::vector<MultiPoly> GroebnerBasis(const std::vector<MultiPoly>& generators,
                                     const std::vector<std::string>& vars,
                                     const GroebnerOptions& options);

// Normal form of f with respect to a Groebner basis for the same order.
MultiPoly Reduce(const MultiPoly& f, const std::vector<MultiPoly>& basis,
                 const GroebnerOptions& options);

// Leading exponent of a nonzero polynomial under the order.
Exponent LeadingExponent(const MultiPoly& f, const GroebnerOptions& options);

// True iff every S-polynomial of the basis reduces to zero.
bool SatisfiesBuchbergerCriterion(const std::vector<MultiPoly>& basis,
                                  const GroebnerOptions& options);

class Ideal {
 public:
  Ideal() = default;
  Ideal(std::vector<std::string> vars, std::vector<MultiPoly> generators);

  static Ideal Parse(const std::vector<std::string>& polys,
                     const std::vector<std::string>& vars);

  const std::vector<std::string>& vars() const { return vars_; }
  const std::vector<MultiPoly>& generators() const { return generators_; }

  // Cached reduced basis for the given order.
  const std::vector<MultiPoly>& Basis(const GroebnerOptions& options) const;
  // Basis for degrevlex in ring order.
  const std::vector<MultiPoly>& Basis() const;

  bool IsUnit() const;
  bool IsZero() const;
  bool Contains(const MultiPoly& g) const;  // ideal membership

  // Sum with extra generators, possibly in a larger ring.
  Ideal Plus(const std::vector<MultiPoly>& more) const;
  Ideal Embed(const std::vector<std::string>& new_vars) const;

  std::vector<std::string> ToStrings() const;

 private:
  std::vector<std::string> vars_;
  std::vector<MultiPoly> generators_;
  mutable std::map<std::pair<int, std::vector<std::size_t>>, std::vector<MultiPoly>> cache_;
};

// I ∩ Q[kept variables], computed by lex with the dropped variables greatest.
Ideal Eliminate(const Ideal& ideal, const std::vector<std::string>& drop_vars);

// Krull dimension of V(I); throws kEmptyVariety for the unit ideal.
int IdealDimension(const Ideal& ideal);

// True iff g vanishes on V(I), via 1 ∈ I + (1 - t g).
bool RadicalMember(const MultiPoly& g, const Ideal& ideal);

// Fresh variable name not among vars, built from a stem.
std::string FreshName(const std::vector<std::string>& vars, const std::string& stem);

}  // namespace mlab

#endif  // MLAB_GROEBNER_HPP_
