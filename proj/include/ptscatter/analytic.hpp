#pragma once

// Closed-form scattering probabilities for the two solvable barriers: the
// two-segment rectangular optical potential and the complex Scarf barrier.

#include "ptscatter/core.hpp"

namespace ptscat::analytic {

struct RectWavenumbers {
  double k = 0.0;  // free region
  cplx p;          // segment (-a, 0)
  cplx q;          // segment (0, a)
};

RectWavenumbers rect_wavenumbers(const PotentialSpec& spec, double E);
double rect_reflection(const PotentialSpec& spec, double E, Side side);
double rect_transmission(const PotentialSpec& spec, double E);

struct ScarfParams {
  double delta = 0.0;  // hbar^2 / (2 m a^2)
  double kappa = 0.0;  // k a
  cplx f;              // sqrt((V1 + V2)/delta - 1/4)
  cplx g;              // sqrt((V1 - V2)/delta - 1/4)
};

ScarfParams scarf_params(const PotentialSpec& spec, double E);

/// Left-incidence amplitude factor with R_l = |F_l|^2 T.
cplx scarf_amplitude_factor(const ScarfParams& p);

double scarf_transmission(const PotentialSpec& spec, double E);
double scarf_reflection(const PotentialSpec& spec, double E, Side side);

/// True for the models that have a closed form here.
bool supports(Model m);

/// Full coefficient record for rect or scarf; Error(backend_mismatch) otherwise.
Coefficients coefficients(const PotentialSpec& spec, double E);

}  // namespace ptscat::analytic
