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


// Directional smoothness probes for generalized functions over Q_p (exact
// cell masses and finite Fourier transforms) and over R (sampled grids).

#ifndef MLAB_WAVEFRONT_HPP_
#define MLAB_WAVEFRONT_HPP_

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mlab/distribution.hpp"
#include "mlab/localfield.hpp"
#include "mlab/poly.hpp"

namespace mlab {

// A line through the origin in Q_p^n, up to units, known mod p^s. The
// representative has entries in [0, p^s) and its first unit entry is 1.
// The zero direction has an all-zero representative.
struct Direction {
  int prime = 2;
  int resolution = 1;
  std::vector<std::int64_t> rep;

  bool IsZero() const;
  std::string ToString() const;
  bool operator==(const Direction& o) const = default;
};

// Throws kInvalidArgument unless w is zero or has an entry prime to p.
Direction CanonicalDirection(int prime, const std::vector<std::int64_t>& w, int resolution);
// All classes of P^{n-1}(Z / p^s), in lexicographic order of representatives.
std::vector<Direction> ProjectiveClasses(int prime, int dimension, int resolution);

// Source of exact cell integrals of a generalized function u on Q_p^d.
class CellMassProvider {
 public:
  virtual ~CellMassProvider() = default;
  virtual int prime() const = 0;
  virtual int dimension() const = 0;
  virtual std::string name() const = 0;
  // Integrals of u over the cells c + p^r t + p^J Z_p^d, t in [0, p^{J-r})^d,
  // flat in t_1 + side * (t_2 + ...).
  virtual std::vector<Complex> BallMasses(const std::vector<Rational>& center, int r,
                                          int level) const = 0;
  // Whether vanishing level-J masses on a ball imply u = 0 there. When they
  // do not, an all-zero table says nothing and the ladder step is skipped.
  virtual bool ZeroMassesAreExact(int /*level*/) const { return false; }
};

// Masses of a LevelFunction.
class LevelFunctionProvider : public CellMassProvider {
 public:
  explicit LevelFunctionProvider(LevelFunction f) : f_(std::move(f)) {}
  int prime() const override { return f_.prime(); }
  int dimension() const override { return f_.dimension(); }
  std::string name() const override { return "level_function"; }
  std::vector<Complex> BallMasses(const std::vector<Rational>& center, int r,
                                  int level) const override;
  bool ZeroMassesAreExact(int level) const override { return level >= f_.level_exponent(); }

 private:
  LevelFunction f_;
};

// phi_*(dx) for dx the Haar measure on Z_p^n and phi: Z_p^n -> Z_p^d with
// p-integral coefficients; masses are exact counts of residues mod p^J.
class PolynomialPushforwardProvider : public CellMassProvider {
 public:
  PolynomialPushforwardProvider(PolyMap phi, int prime);
  int prime() const override { return p_; }
  int dimension() const override { return static_cast<int>(phi_.target_dim()); }
  std::string name() const override { return "pushforward"; }
  std::vector<Complex> BallMasses(const std::vector<Rational>& center, int r,
                                  int level) const override;
  bool ZeroMassesAreExact(int) const override { return true; }

 private:
  PolyMap phi_;
  int p_;
};

// The transform of phi_*(dv) for phi(v) = (v, P(v)) on Q_p^n, a generalized
// function on Q_p^{n+1}; b is the character twist applied to P.
class MuHatProvider : public CellMassProvider {
 public:
  MuHatProvider(MultiPoly poly, int prime, Rational twist = 1);
  int prime() const override { return p_; }
  int dimension() const override { return static_cast<int>(poly_.vars().size()) + 1; }
  std::string name() const override { return "mu_hat"; }
  std::vector<Complex> BallMasses(const std::vector<Rational>& center, int r,
                                  int level) const override;

 private:
  MultiPoly poly_;
  int p_;
  Rational twist_;
};

// u(x, eta) = psi(eta / x^alpha) |x^beta| on Q_p^{n+1}, eta last.
class ModelUProvider : public CellMassProvider {
 public:
  ModelUProvider(MonomialSymbol sym, int prime);
  int prime() const override { return p_; }
  int dimension() const override { return static_cast<int>(sym_.alpha.size()) + 1; }
  std::string name() const override { return "model_u"; }
  std::vector<Complex> BallMasses(const std::vector<Rational>& center, int r,
                                  int level) const override;

 private:
  MonomialSymbol sym_;
  int p_;
};

enum class WfVerdict { kOut, kInCandidate, kUnknown };
const char* WfVerdictName(WfVerdict v);

// The cutoff at radius p^{-r} is probed on scales j0..J_r with
// J_r = min(max(J, r + s_max + 1), r + K), where p^{dK} <= cell_budget.
struct PadicWfQuery {
  std::vector<Rational> basepoint;
  Direction direction;
  std::vector<int> radii = {1, 2, 3, 4, 5};
  std::vector<int> resolutions = {1, 2};
  int j0 = 2;
  int max_scale = 6;
  double epsilon = 1e-9;
  std::uint64_t cell_budget = 1 << 20;
};

struct WfEntry {
  std::vector<std::string> basepoint;
  std::vector<std::string> direction;
  WfVerdict verdict = WfVerdict::kUnknown;
  int r = 0;
  int s = 0;
  int j0 = 0;
  double maxval = 0;
  // Max over the direction cell at the witness, indexed by j - j0.
  std::vector<double> values;
  // Real probes: fitted order (infinite when negligible after localization),
  // fit residual and the per-scale floor from the two-grid comparison.
  std::optional<double> decay_order;
  double fit_residual = 0;
  std::vector<double> floors;
};

struct WaveFrontReport {
  std::string field;  // "Q_p" or "R"
  int prime = 0;
  std::vector<WfEntry> entries;
  std::uint64_t cells_used = 0;

  // Rows "x..., w..., verdict, r, s, j0, maxval".
  std::string ToCsv() const;
  std::size_t CountVerdict(WfVerdict v) const;
};

// Largest K with p^{dK} <= budget.
int BudgetedDepth(int prime, int dimension, std::uint64_t budget);

WfEntry WfProbePadic(const CellMassProvider& u, const PadicWfQuery& q,
                     std::uint64_t* cells_used = nullptr);

// Every (basepoint, direction) pair in order; an empty direction list means
// all classes mod p^{resolutions[0]}. Defaults for the ladder come from
// `defaults`, whose basepoint and direction are ignored.
WaveFrontReport WfScanPadic(const CellMassProvider& u,
                            const std::vector<std::vector<Rational>>& basepoints,
                            const std::vector<Direction>& directions,
                            const PadicWfQuery& defaults = {});

// ---------------------------------------------------------------- real

// Cell averages of u on a uniform grid over a box in R^2.
struct RealGrid {
  double lo[2] = {-1, -1};
  double hi[2] = {1, 1};
  std::size_t n = 1024;
  std::vector<double> values;  // values[i + n * j] at x = lo0 + (i + 1/2) h0, ...
  double spacing(int axis) const { return (hi[axis] - lo[axis]) / static_cast<double>(n); }
};

// Midpoint samples of a closed-form function.
RealGrid SampleGrid(const std::function<double(double, double)>& u, std::size_t n,
                    double lo0, double hi0, double lo1, double hi1);

// Cell averages of u(t, y) = |t|^{-k} phi(y / t^k) with phi the standard
// Gaussian exp(-s^2 / 2): the y-integral is exact and t uses Gauss-Legendre.
RealGrid MonomialGaussianGrid(int k, std::size_t n, double lo0, double hi0, double lo1,
                              double hi1);

struct RealWfQuery {
  double basepoint[2] = {0, 0};
  double direction[2] = {1, 0};
  std::vector<int> radii = {3, 4};
  int resolution = 1;
  double min_order = 4;
  double max_residual = 0.5;
};

WfEntry WfProbeReal(const RealGrid& grid, const RealWfQuery& q);

// `directions` empty means 32 equi-angular lines.
WaveFrontReport WfScanReal(const RealGrid& grid,
                           const std::vector<std::array<double, 2>>& basepoints,
                           const std::vector<std::array<double, 2>>& directions,
                           const RealWfQuery& defaults = {});

}  // namespace mlab

#endif  // MLAB_WAVEFRONT_HPP_
