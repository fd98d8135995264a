#pragma once

// Numerical scattering solver for any localized complex potential.
//
// The stationary equation psi'' = (2m/hbar^2)(V(x) - E) psi is integrated with
// fixed-step classical RK4 from a pure outgoing wave at x = +L back to x = -L,
// where the solution is split into incident and reflected plane waves. Right
// incidence reuses the same path on the mirrored potential V(-x).

#include <vector>

#include "ptscatter/core.hpp"

namespace ptscat::engine {

struct NumericOptions {
  double step = 0.0;             // integration step; 0 selects 1e-3 * a
  double truncation_tol = 1e-10; // feeds support_radius
  long max_steps = 20'000'000;
  bool verify_step = false;      // Richardson check against a solve at twice the step
  double verify_tol = 1e-6;      // bound on the estimated amplitude error when verifying

  void validate() const;
};

/// Step actually used: the largest h <= requested that divides a exactly, so
/// that -a, 0 and a are grid nodes.
double effective_step(const PotentialSpec& spec, const NumericOptions& opts);

/// Half-width of the integration window: support radius rounded up to a whole
/// multiple of a (and at least a).
double domain_half_width(const PotentialSpec& spec, const NumericOptions& opts);

/// The potential tabulated on the half-step grid x_m = L - m h / 2,
/// m = 0 .. 2 * steps. Built once per (spec, options) and shared by every
/// energy and both sides; immutable after construction.
class Discretization {
 public:
  Discretization(const PotentialSpec& spec, const NumericOptions& opts);

  const PotentialSpec& spec() const { return spec_; }
  const NumericOptions& options() const { return opts_; }
  double step() const { return h_; }
  double half_width() const { return L_; }
  long steps() const { return steps_; }

  /// Potential seen from `side` at half-step index m.
  cplx at(long m, Side side) const {
    return side == Side::left ? values_[static_cast<size_t>(m)]
                              : values_[static_cast<size_t>(2 * steps_ - m)];
  }

 private:
  PotentialSpec spec_;
  NumericOptions opts_;
  double h_ = 0.0;
  double L_ = 0.0;
  long steps_ = 0;
  std::vector<cplx> values_;
};

struct Sample {
  double x = 0.0;
  cplx value;
};

struct ScatteringSolution {
  double E = 0.0;
  Side side = Side::left;
  double k = 0.0;
  cplx r;
  cplx t;
  /// Physical-frame wavefunction on [-L, L], ascending x, scaled to a unit
  /// incident wave.
  std::vector<Sample> psi;

  double reflection() const { return std::norm(r); }
  double transmission() const { return std::norm(t); }
};

ScatteringSolution solve_scattering(const PotentialSpec& spec, double E, Side side,
                                    const NumericOptions& opts = {});
ScatteringSolution solve_scattering(const Discretization& grid, double E, Side side);

/// Same as solve_scattering but without storing the wavefunction.
ScatteringSolution solve_amplitudes(const PotentialSpec& spec, double E, Side side,
                                    const NumericOptions& opts = {});
ScatteringSolution solve_amplitudes(const Discretization& grid, double E, Side side);

struct NumericCoefficients {
  Coefficients coefficients;
  double reciprocity_residual = 0.0;  // |T_left - T_right|
};

inline constexpr double kReciprocityLimit = 1e-6;

/// Solves both sides. T comes from the left solve; a reciprocity residual
/// above kReciprocityLimit is reported as a numeric failure.
NumericCoefficients coefficients_numeric(const PotentialSpec& spec, double E,
                                         const NumericOptions& opts = {});
NumericCoefficients coefficients_numeric(const Discretization& grid, double E);

/// -(2m / (hbar^2 k)) * integral of Im V |psi|^2 over the stored samples
/// (composite Simpson, split at the potential's breakpoints).
double absorption_integral(const PotentialSpec& spec, const ScatteringSolution& solution);

}  // namespace ptscat::engine
