#pragma once

// Potential models, unit constants and the shared coefficient record used by
// every backend.

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ptscat {

using cplx = std::complex<double>;

enum class ErrorCode {
  invalid_argument = 1,
  backend_mismatch = 2,
  numeric_failure = 3,
  degenerate_energy = 4,
  step_too_large = 5,
  overflow = 6,
  no_crossing = 7,
  io = 8,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Energy at which a computation broke down; carried so callers can report it.
class EnergyError : public Error {
 public:
  EnergyError(ErrorCode code, double energy, const std::string& what)
      : Error(code, what), energy_(energy) {}
  double energy() const noexcept { return energy_; }

 private:
  double energy_;
};

enum class Model { rect, scarf, rational_odd, exp_linear };
enum class Side { left, right };

std::string_view to_string(Model m);
std::string_view to_string(Side s);
/// Parses "rect", "scarf", "rational_odd", "exp_linear"; throws on anything else.
Model parse_model(std::string_view name);

struct Units {
  double two_m = 1.0;  // 2m
  double hbar = 1.0;

  /// 2m / hbar^2, the factor converting energies into squared wavenumbers.
  double k2_per_energy() const { return two_m / (hbar * hbar); }
};

/// Immutable description of one barrier. The imaginary strength v2 is kept
/// non-negative; the absorptive side of the smooth models is always x < 0 and
/// right incidence is obtained by reflecting the potential.
struct PotentialSpec {
  Model model = Model::scarf;
  double v1 = 0.0;
  double v2 = 0.0;
  double a = 1.0;
  int s1 = -1;  // rect only: sign of the imaginary part on (-a, 0)
  int s2 = +1;  // rect only: sign of the imaginary part on (0, a)
  Units units{};

  /// Throws Error(invalid_argument) when a field is out of range.
  void validate() const;

  /// hbar^2 / (2 m a^2), the natural energy scale of the barrier.
  double delta() const { return units.hbar * units.hbar / (units.two_m * a * a); }
};

/// One energy's worth of scattering probabilities. The absorptions are defined
/// from the other three, so A may be negative when scattering is anomalous.
struct Coefficients {
  double E = 0.0;
  double T = 0.0;
  double R_l = 0.0;
  double R_r = 0.0;
  double A_l = 0.0;
  double A_r = 0.0;

  static Coefficients from(double E, double T, double R_l, double R_r) {
    return {E, T, R_l, R_r, 1.0 - R_l - T, 1.0 - R_r - T};
  }
};

cplx evaluate_potential(const PotentialSpec& spec, double x);

/// Potential seen by a particle incident from `side`: V(x) for left, V(-x) for right.
cplx evaluate_potential(const PotentialSpec& spec, double x, Side side);

/// Smallest L with |V(x)| < tol * max(|V1|, |V2|) for all |x| >= L. Exactly `a`
/// for the rectangular barrier, 0 for a vanishing potential.
double support_radius(const PotentialSpec& spec, double tol);

/// True iff V(-x) == conj(V(x)) within 1e-12 on `n_samples` points of [-L, L].
bool check_pt_symmetry(const PotentialSpec& spec, int n_samples);

}  // namespace ptscat
