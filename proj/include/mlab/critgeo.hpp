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

// Critical loci of polynomial maps in cotangent bundles, conormal ideals,
// variety containment, isotropy sampling and F-point census.

#ifndef MLAB_CRITGEO_HPP_
#define MLAB_CRITGEO_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "mlab/groebner.hpp"
#include "mlab/poly.hpp"

namespace mlab {

// Coordinates (y_1..y_m, xi_1..xi_m) on T*A^m; the ring order is base then
// fiber.
struct CotangentChart {
  std::vector<std::string> base;
  std::vector<std::string> fiber;

  static CotangentChart Standard(std::size_t m, const std::string& base_stem = "y",
                                 const std::string& fiber_stem = "xi");
  std::size_t dim() const { return base.size(); }
  std::vector<std::string> AllVars() const;
  void Validate() const;
};

enum class LagrangianVerdict { kLagrangian, kStrictlyIsotropicCandidate, kInconclusive };
const char* VerdictName(LagrangianVerdict v);

struct CritResult {
  Ideal ideal;  // in chart.AllVars()
  CotangentChart chart;
  int dimension = 0;
  int nonzero_section_dimension = -1;  // -1: Crit lies in the zero section
  LagrangianVerdict verdict = LagrangianVerdict::kInconclusive;
};

// Closure of Crit_f for a polynomial map f: A^n -> A^m.
CritResult CritIdeal(const PolyMap& f);
CritResult CritIdeal(const PolyMap& f, const CotangentChart& chart);

// Same for the rational map x -> numerators(x) / denominator(x). The
// denominator is inverted through an auxiliary variable.
CritResult CritIdealRational(const PolyMap& numerators, const MultiPoly& denominator,
                             const CotangentChart& chart);

// Ideal of the conormal bundle of {y_i = 0, i in zero_coords}.
Ideal ConormalIdeal(const std::vector<std::size_t>& zero_coords, const CotangentChart& chart);

// True iff V(inner) is contained in the union of the V(outer_k).
bool VarietyContains(const Ideal& inner, const std::vector<Ideal>& outer_union);

// True iff every generator is homogeneous in the fiber variables.
bool IsFiberHomogeneous(const Ideal& ideal, const CotangentChart& chart);

struct IsotropyReport {
  bool pass = false;
  double max_residual = 0;
  int smooth_points = 0;
  int singular_skipped = 0;
  int attempts = 0;
  std::uint64_t seed = 0;
  std::vector<std::vector<double>> points;  // in chart.AllVars() order
};

// Samples smooth real points of V(ideal) and evaluates the canonical
// symplectic form on their tangent spaces.
IsotropyReport IsotropySampleCheck(const Ideal& ideal, const CotangentChart& chart, int samples,
                                   double tol, std::uint64_t seed = 1);

struct FPointCensusResult {
  int prime = 0;
  int box_exponent = 0;
  std::size_t residue_solutions = 0;         // residues with all g = 0 mod p^k
  std::vector<std::vector<Integer>> points;  // verified representatives
};

// Scans (Z/p^k)^n for residues solving the generators mod p^k and keeps
// those certified by an exact zero or by Hensel's lemma.
FPointCensusResult FPointCensus(const Ideal& ideal, int prime, int box_exponent,
                                std::uint64_t grid_cap = 20000000);

}  // namespace mlab

#endif  // MLAB_CRITGEO_HPP_
