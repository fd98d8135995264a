#include "ptscatter/analytic.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace ptscat::analytic {

namespace {

constexpr double kTiny = 1e-300;
constexpr double kPi = std::numbers::pi;

// Principal branch with the negative real axis mapped to +i (a signed zero in
// the imaginary part would otherwise select -i).
cplx principal_sqrt(double re, double im) { return std::sqrt(cplx{re, im + 0.0}); }

cplx sinc(cplx z) {
  if (std::abs(z) < 1e-4) {
    const cplx z2 = z * z;
    return 1.0 - z2 / 6.0 + z2 * z2 / 120.0;
  }
  return std::sin(z) / z;
}

void require_model(const PotentialSpec& spec, Model m) {
  spec.validate();
  if (spec.model != m)
    throw Error(ErrorCode::backend_mismatch,
                "closed form for " + std::string(to_string(m)) + " called with model " +
                    std::string(to_string(spec.model)));
}

void require_energy(double E) {
  if (!(E > 0.0) || !std::isfinite(E))
    throw EnergyError(ErrorCode::invalid_argument, E, "energy must be positive and finite");
}

// Both amplitudes of the two-segment barrier share this denominator. Every
// term of the textbook expressions carries a factor p or sin(pa) (and q or
// sin(qa)); dividing through by p q keeps the form regular at p = 0 or q = 0.
struct RectAmplitudeParts {
  cplx numerator_r;
  cplx numerator_t;
  cplx denominator;
};

RectAmplitudeParts rect_parts(double k, cplx p, cplx q, double a) {
  const cplx I{0.0, 1.0};
  const cplx cp = std::cos(p * a);
  const cplx cq = std::cos(q * a);
  const cplx sp = a * sinc(p * a);
  const cplx sq = a * sinc(q * a);
  const double k2 = k * k;
  const cplx p2 = p * p;
  const cplx q2 = q * q;

  RectAmplitudeParts parts;
  parts.numerator_r = (k2 - p2) * sp * cq + (k2 - q2) * cp * sq + I * k * (p2 - q2) * sp * sq;
  parts.numerator_t = 2.0 * I * k;
  parts.denominator = 2.0 * I * k * cp * cq + (k2 + q2) * cp * sq + (p2 + k2) * sp * cq -
                      I * k * (p2 + q2) * sp * sq;
  return parts;
}

RectAmplitudeParts rect_parts_checked(const PotentialSpec& spec, double E, Side side) {
  const RectWavenumbers w = rect_wavenumbers(spec, E);
  // Incidence from the right sees the segments in the opposite order.
  const auto parts = side == Side::left ? rect_parts(w.k, w.p, w.q, spec.a)
                                        : rect_parts(w.k, w.q, w.p, spec.a);
  if (std::abs(parts.denominator) < kTiny)
    throw EnergyError(ErrorCode::degenerate_energy, E, "rectangular-barrier denominator vanishes");
  return parts;
}

}  // namespace

RectWavenumbers rect_wavenumbers(const PotentialSpec& spec, double E) {
  require_model(spec, Model::rect);
  require_energy(E);
  const double c = spec.units.k2_per_energy();
  RectWavenumbers w;
  w.k = std::sqrt(c * E);
  w.p = principal_sqrt(c * (E - spec.v1), -c * spec.s1 * spec.v2);
  w.q = principal_sqrt(c * (E - spec.v1), -c * spec.s2 * spec.v2);
  return w;
}

double rect_reflection(const PotentialSpec& spec, double E, Side side) {
  const auto parts = rect_parts_checked(spec, E, side);
  return std::norm(parts.numerator_r / parts.denominator);
}

double rect_transmission(const PotentialSpec& spec, double E) {
  const auto parts = rect_parts_checked(spec, E, Side::left);
  return std::norm(parts.numerator_t / parts.denominator);
}

ScarfParams scarf_params(const PotentialSpec& spec, double E) {
  require_model(spec, Model::scarf);
  require_energy(E);
  ScarfParams p;
  p.delta = spec.delta();
  p.kappa = std::sqrt(E / p.delta);
  p.f = principal_sqrt((spec.v1 + spec.v2) / p.delta - 0.25, 0.0);
  p.g = principal_sqrt((spec.v1 - spec.v2) / p.delta - 0.25, 0.0);
  return p;
}

cplx scarf_amplitude_factor(const ScarfParams& p) {
  // [e^{-pi kappa} cosh(pi f) + e^{pi kappa} cosh(pi g)] / sinh(2 pi kappa),
  // rewritten in decaying exponentials.
  const double w = std::exp(-2.0 * kPi * p.kappa);
  const double s = -std::expm1(-4.0 * kPi * p.kappa);
  if (s < kTiny)
    throw EnergyError(ErrorCode::degenerate_energy, p.kappa * p.kappa * p.delta,
                      "sinh(2 pi kappa) underflows");
  return (2.0 / s) * std::exp(-kPi * p.kappa) * (w * std::cosh(kPi * p.f) + std::cosh(kPi * p.g));
}

namespace {

double scarf_transmission_from(const ScarfParams& p, double E) {
  // 2 sinh^2(2 pi kappa) / [2 cosh^2(2 pi kappa) + 4 cosh(2 pi kappa) cosh(pi f) cosh(pi g)
  //                         + cosh(2 pi f) + cosh(2 pi g)], numerator and
  // denominator divided by cosh^2(2 pi kappa).
  const double C = std::cosh(2.0 * kPi * p.kappa);
  const double th = std::tanh(2.0 * kPi * p.kappa);
  const cplx den = 2.0 + 4.0 * std::cosh(kPi * p.f) * std::cosh(kPi * p.g) / C +
                   (std::cosh(2.0 * kPi * p.f) + std::cosh(2.0 * kPi * p.g)) / (C * C);
  if (std::abs(den) < kTiny) throw EnergyError(ErrorCode::degenerate_energy, E, "Scarf denominator vanishes");
  const cplx T = 2.0 * th * th / den;
  if (!std::isfinite(T.real())) throw EnergyError(ErrorCode::overflow, E, "Scarf transmission overflows");
  // f and g are real or purely imaginary, so T is real up to rounding.
  return T.real();
}

}  // namespace

double scarf_transmission(const PotentialSpec& spec, double E) {
  return scarf_transmission_from(scarf_params(spec, E), E);
}

double scarf_reflection(const PotentialSpec& spec, double E, Side side) {
  ScarfParams p = scarf_params(spec, E);
  const double T = scarf_transmission_from(p, E);
  // Right incidence is left incidence on the reflected barrier, V2 -> -V2.
  if (side == Side::right) std::swap(p.f, p.g);
  return std::norm(scarf_amplitude_factor(p)) * T;
}

bool supports(Model m) { return m == Model::rect || m == Model::scarf; }

Coefficients coefficients(const PotentialSpec& spec, double E) {
  switch (spec.model) {
    case Model::rect:
      return Coefficients::from(E, rect_transmission(spec, E), rect_reflection(spec, E, Side::left),
                                rect_reflection(spec, E, Side::right));
    case Model::scarf:
      return Coefficients::from(E, scarf_transmission(spec, E), scarf_reflection(spec, E, Side::left),
                                scarf_reflection(spec, E, Side::right));
    default:
      throw Error(ErrorCode::backend_mismatch,
                  "no closed form for model " + std::string(to_string(spec.model)));
  }
}

}  // namespace ptscat::analytic
