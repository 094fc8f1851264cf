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

// Chart atlases of a compactified proper map X -> W with an SNC boundary,
// the boundary strata, the isotropic set I in T*W* and the open set U in
// W* on which the transform of the pushforward measure is smooth.

#ifndef MLAB_RESOLUTION_HPP_
#define MLAB_RESOLUTION_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mlab/critgeo.hpp"
#include "mlab/groebner.hpp"
#include "mlab/poly.hpp"
#include "mlab/wavefront.hpp"

namespace mlab {

struct DivisorComponent {
  std::string coord;  // local equation
  int multiplicity = 1;
  bool at_infinity = false;
};

// Chart of the compactification: x -> (f(x) : p(x)) in P(W + F), with
// omega = unit * x^beta * dx.
struct Chart {
  std::string name;
  std::vector<std::string> coords;
  PolyMap f;
  MultiPoly p;
  std::vector<int> omega_beta;
  MultiPoly omega_unit;
  std::vector<DivisorComponent> divisor;
};

// Coordinates of chart `to` as rational functions num / den of chart `from`.
struct Gluing {
  std::string from;
  std::string to;
  std::vector<MultiPoly> numerators;
  std::vector<MultiPoly> denominators;
};

struct ChartAtlas {
  std::vector<Chart> charts;
  int w_dimension = 0;
  std::vector<Gluing> gluing;
  std::string provenance;
  // The polynomial P of the oscillatory problem this atlas resolves, when
  // it comes from the reduction v -> (v, P(v)); empty otherwise.
  std::vector<std::string> source_vars;
  std::string source_poly;

  // Checks the invariants; throws kAtlasInconsistency, or kCommonZeroViolation
  // when f and p have a common zero in some chart.
  void Validate() const;
  const Chart& FindChart(const std::string& name) const;

  static ChartAtlas Parse(const std::string& text);
  std::string Serialize() const;
};

// D_S: the coordinates in S set to zero; phi is f restricted to D_S,
// homogeneous coordinates on W_inf, in the ring of the free coordinates.
struct Stratum {
  int r = 0;
  std::string chart;
  std::vector<std::string> zero_coords;
  std::vector<std::string> free_coords;
  PolyMap phi;
};

// Every D_S (S a set of divisor coordinates, |S| = r) that lies in
// X_inf = {p = 0}, in (chart, S) lexicographic order.
std::vector<Stratum> EnumerateStrata(const ChartAtlas& atlas);

// Crit of one stratum map in the affine chart {w_k != 0} of W_inf, with base
// u_i = w_i / w_k and fiber zeta_i (i != k, 1-based names).
struct CritPiece {
  std::size_t stratum = 0;
  std::size_t w_chart = 0;  // k, 0-based
  CritResult crit;
};

std::vector<CritPiece> CritUnionIprime(const std::vector<Stratum>& strata, int w_dimension);

// Pieces of I in T*W* with base xi_1..xi_m and fiber w_1..w_m: the lifts of
// I' through the incidence relation, then W* x {0} and {0} x W.
struct AssembledI {
  CotangentChart chart;
  std::vector<Ideal> pieces;
};

AssembledI AssembleI(const std::vector<CritPiece>& iprime, int w_dimension);

// Bad locus W* \ U as a union of homogeneous ideals in xi_1..xi_m (the
// cone, zero included). Both routes must agree as sets.
struct BadLocus {
  std::vector<std::string> vars;
  std::vector<Ideal> from_crit;          // incidence projection of I'
  std::vector<Ideal> from_transversality;  // Jacobian criterion per stratum
  bool routes_agree = false;

  // xi != 0 and outside every piece (checks the first route).
  bool InU(const std::vector<Rational>& xi) const;
};

BadLocus ComputeU(const std::vector<Stratum>& strata, const std::vector<CritPiece>& iprime,
                  int w_dimension);

// Whether H = {sum xi_i w_i = 0} meets the stratum in a smooth divisor.
bool CheckTransversal(const Stratum& stratum, const std::vector<Rational>& xi);

// True iff all generators of some piece vanish at (basepoint, direction).
// With precision s > 0 the direction is a representative known mod p^s and
// vanishing means valuation >= s after making each generator p-primitive.
bool InAssembledI(const AssembledI& i, const std::vector<Rational>& basepoint,
                  const std::vector<Rational>& direction, int prime = 0, int precision = 0);

struct ValidationConfig {
  std::vector<int> primes = {3};
  std::vector<Rational> twists = {1};
  // Stabilization grid: xi = a / p^k for |a| <= stab_numerators, k in 0..2.
  int stab_numerators = 10;
  // The probe enumerates p^{deg P * N} cells at level N; N stops at
  // stab_nmax or where that count would pass stab_cells.
  int stab_nmax = 6;
  std::uint64_t stab_cells = 1 << 20;
  double stab_tolerance = 1e-9;
  // Wave-front scan basepoints, integer coordinates 0..scan_side-1.
  int scan_side = 3;
  PadicWfQuery scan_defaults;
};

struct ValidationFinding {
  std::string kind;  // "stabilization" or "wave_front"
  int prime = 0;
  std::string twist;
  std::vector<std::string> basepoint;
  std::vector<std::string> direction;
};

struct ValidationReport {
  bool pass = false;
  int stabilization_points = 0;
  int stabilized = 0;
  int wf_in_candidates = 0;
  // Per (prime, twist): stabilization verdicts per grid point, for the
  // twist-independence comparison.
  bool twist_verdicts_identical = true;
  std::vector<ValidationFinding> failures;
  std::uint64_t cells_used = 0;
};

// Runs the full pipeline on the atlas and cross-checks it against the
// stabilization probe and the wave-front scan of the transform.
ValidationReport CrossValidate(const ChartAtlas& atlas, const ValidationConfig& config);

}  // namespace mlab

#endif  // MLAB_RESOLUTION_HPP_
