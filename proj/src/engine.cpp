#include "ptscatter/engine.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <sstream>

namespace ptscat::engine {

namespace {

constexpr double kOverflow2 = 1e300;  // squared modulus bound on psi, psi'

struct Amplitudes {
  cplx r;
  cplx t;
  cplx incident;  // c+, amplitude of e^{ikx} at -L before normalization
};

// Integrates from x = +L to x = -L over the tabulated potential, taking
// steps of `stride` grid steps, and matches plane waves at -L. When `psi` is
// non-null it receives the raw (unnormalized) solution at every visited node
// in integration order.
Amplitudes integrate(const Discretization& grid, double E, Side side, long stride,
                     std::vector<cplx>* psi) {
  const PotentialSpec& spec = grid.spec();
  const double c = spec.units.k2_per_energy();
  const double k = std::sqrt(c * E);
  const double h = grid.step() * static_cast<double>(stride);
  const double L = grid.half_width();
  const long steps = grid.steps() / stride;
  const double h4 = h * h * h * h;
  const cplx I{0.0, 1.0};
  const bool piecewise_constant = spec.model == Model::rect;
  auto coupling = [&](long m) { return c * (grid.at(m, side) - E); };

  // Outgoing unit wave on the transmitted side.
  cplx y0 = std::exp(I * k * L);
  cplx y1 = I * k * y0;
  if (psi) {
    psi->clear();
    psi->reserve(static_cast<size_t>(steps) + 1);
    psi->push_back(y0);
  }

  cplx w_start = coupling(0);
  for (long n = 0; n < steps; ++n) {
    const long m0 = 2 * stride * n;
    cplx w_beg = w_start;
    cplx w_mid = coupling(m0 + stride);
    cplx w_end;
    if (piecewise_constant) {
      // Jumps sit on nodes, so each step lies inside one segment.
      w_beg = w_end = w_mid;
    } else {
      w_end = coupling(m0 + 2 * stride);
    }
    if (std::norm(w_mid) * h4 > 1.0) {
      std::ostringstream msg;
      msg << "step " << h << " does not resolve the local wavelength near x = "
          << L - static_cast<double>(n) * h;
      throw EnergyError(ErrorCode::step_too_large, E, msg.str());
    }

    // Classical RK4 for (psi, psi') with step -h.
    const double s = -h;
    const cplx k1a = y1;
    const cplx k1b = w_beg * y0;
    const cplx k2a = y1 + 0.5 * s * k1b;
    const cplx k2b = w_mid * (y0 + 0.5 * s * k1a);
    const cplx k3a = y1 + 0.5 * s * k2b;
    const cplx k3b = w_mid * (y0 + 0.5 * s * k2a);
    const cplx k4a = y1 + s * k3b;
    const cplx k4b = w_end * (y0 + s * k3a);
    y0 += s / 6.0 * (k1a + 2.0 * k2a + 2.0 * k3a + k4a);
    y1 += s / 6.0 * (k1b + 2.0 * k2b + 2.0 * k3b + k4b);

    if (!(std::norm(y0) < kOverflow2 && std::norm(y1) < kOverflow2)) {
      std::ostringstream msg;
      msg << "wavefunction overflow near x = " << L - static_cast<double>(n + 1) * h
          << "; try a larger step or truncation tolerance";
      throw EnergyError(ErrorCode::overflow, E, msg.str());
    }
    if (psi) psi->push_back(y0);
    if (!piecewise_constant) w_start = w_end;
  }

  const double xl = -L;
  const cplx d = y1 / (I * k);
  const cplx c_plus = 0.5 * (y0 + d) * std::exp(-I * k * xl);
  const cplx c_minus = 0.5 * (y0 - d) * std::exp(I * k * xl);
  if (std::abs(c_plus) < 1e-300) throw EnergyError(ErrorCode::degenerate_energy, E, "incident amplitude vanishes");
  return {c_minus / c_plus, 1.0 / c_plus, c_plus};
}

ScatteringSolution solve(const Discretization& grid, double E, Side side, bool keep_psi) {
  if (!(E > 0.0) || !std::isfinite(E))
    throw EnergyError(ErrorCode::invalid_argument, E, "energy must be positive and finite");

  const PotentialSpec& spec = grid.spec();
  const NumericOptions& opts = grid.options();
  std::vector<cplx> raw;
  const Amplitudes amp = integrate(grid, E, side, 1, keep_psi ? &raw : nullptr);

  // A coarse pass needs every jump of the rectangular barrier on a coarse node.
  const bool coarse_ok = spec.model != Model::rect || std::lround(spec.a / grid.step()) % 2 == 0;
  if (opts.verify_step && coarse_ok) {
    const Amplitudes coarse = integrate(grid, E, side, 2, nullptr);
    const double estimate = std::max(std::abs(coarse.t - amp.t), std::abs(coarse.r - amp.r)) / 15.0;
    if (estimate > opts.verify_tol) {
      std::ostringstream msg;
      msg << "step " << grid.step() << " fails the step-doubling check (estimated error " << estimate << ")";
      throw EnergyError(ErrorCode::step_too_large, E, msg.str());
    }
  }

  ScatteringSolution sol;
  sol.E = E;
  sol.side = side;
  sol.k = std::sqrt(spec.units.k2_per_energy() * E);
  sol.r = amp.r;
  sol.t = amp.t;
  if (keep_psi) {
    // Integration runs from +L down to -L in the frame of the incident
    // particle; for right incidence that frame is mirrored, so the order is
    // already ascending in physical x.
    const size_t n = raw.size();
    const double L = grid.half_width();
    sol.psi.resize(n);
    for (size_t j = 0; j < n; ++j) {
      const size_t src = side == Side::left ? n - 1 - j : j;
      sol.psi[j] = {-L + static_cast<double>(j) * grid.step(), raw[src] / amp.incident};
    }
  }
  return sol;
}

double simpson(std::span<const double> f, double h) {
  const size_t intervals = f.size() - 1;
  if (intervals == 1) return 0.5 * h * (f[0] + f[1]);
  size_t even = intervals % 2 == 0 ? intervals : intervals - 3;
  double sum = 0.0;
  for (size_t i = 0; i + 2 <= even; i += 2) sum += f[i] + 4.0 * f[i + 1] + f[i + 2];
  sum *= h / 3.0;
  if (even != intervals) {
    const size_t i = even;
    sum += 3.0 * h / 8.0 * (f[i] + 3.0 * f[i + 1] + 3.0 * f[i + 2] + f[i + 3]);
  }
  return sum;
}

std::vector<double> breakpoints(const PotentialSpec& spec) {
  switch (spec.model) {
    case Model::rect: return {-spec.a, 0.0, spec.a};
    case Model::exp_linear: return {0.0};
    default: return {};
  }
}

}  // namespace

void NumericOptions::validate() const {
  if (!(step >= 0.0) || !std::isfinite(step)) throw Error(ErrorCode::invalid_argument, "step must be positive");
  if (!(truncation_tol > 0.0 && truncation_tol < 1.0))
    throw Error(ErrorCode::invalid_argument, "truncation_tol must lie in (0, 1)");
  if (max_steps < 2) throw Error(ErrorCode::invalid_argument, "max_steps must be at least 2");
  if (verify_step && !(verify_tol > 0.0)) throw Error(ErrorCode::invalid_argument, "verify_tol must be positive");
}

double effective_step(const PotentialSpec& spec, const NumericOptions& opts) {
  const double requested = opts.step > 0.0 ? opts.step : 1e-3 * spec.a;
  const double per_a = std::ceil(spec.a / requested - 1e-9);
  return spec.a / std::max(1.0, per_a);
}

double domain_half_width(const PotentialSpec& spec, const NumericOptions& opts) {
  const double radius = support_radius(spec, opts.truncation_tol);
  return spec.a * std::max(1.0, std::ceil(radius / spec.a - 1e-12));
}

Discretization::Discretization(const PotentialSpec& spec, const NumericOptions& opts)
    : spec_(spec), opts_(opts) {
  spec_.validate();
  opts_.validate();
  h_ = effective_step(spec_, opts_);
  L_ = domain_half_width(spec_, opts_);
  steps_ = std::lround(2.0 * L_ / h_);
  if (steps_ > opts_.max_steps) {
    std::ostringstream msg;
    msg << "integration needs " << steps_ << " steps, above max_steps = " << opts_.max_steps;
    throw Error(ErrorCode::invalid_argument, msg.str());
  }
  values_.resize(static_cast<size_t>(2 * steps_ + 1));
  for (long m = 0; m <= 2 * steps_; ++m)
    values_[static_cast<size_t>(m)] = evaluate_potential(spec_, L_ - 0.5 * static_cast<double>(m) * h_);
}

ScatteringSolution solve_scattering(const Discretization& grid, double E, Side side) {
  return solve(grid, E, side, true);
}

ScatteringSolution solve_scattering(const PotentialSpec& spec, double E, Side side,
                                    const NumericOptions& opts) {
  return solve(Discretization(spec, opts), E, side, true);
}

ScatteringSolution solve_amplitudes(const Discretization& grid, double E, Side side) {
  return solve(grid, E, side, false);
}

ScatteringSolution solve_amplitudes(const PotentialSpec& spec, double E, Side side,
                                    const NumericOptions& opts) {
  return solve(Discretization(spec, opts), E, side, false);
}

NumericCoefficients coefficients_numeric(const Discretization& grid, double E) {
  const auto left = solve_amplitudes(grid, E, Side::left);
  const auto right = solve_amplitudes(grid, E, Side::right);
  NumericCoefficients out;
  const double T = left.transmission();
  out.coefficients = Coefficients::from(E, T, left.reflection(), right.reflection());
  out.reciprocity_residual = std::abs(T - right.transmission());
  if (out.reciprocity_residual > kReciprocityLimit) {
    std::ostringstream msg;
    msg << "reciprocity residual " << out.reciprocity_residual << " exceeds " << kReciprocityLimit;
    throw EnergyError(ErrorCode::numeric_failure, E, msg.str());
  }
  return out;
}

NumericCoefficients coefficients_numeric(const PotentialSpec& spec, double E, const NumericOptions& opts) {
  return coefficients_numeric(Discretization(spec, opts), E);
}

double absorption_integral(const PotentialSpec& spec, const ScatteringSolution& solution) {
  const auto& psi = solution.psi;
  if (psi.size() < 3) throw Error(ErrorCode::invalid_argument, "need at least 3 wavefunction samples");
  const double h = psi[1].x - psi[0].x;
  const double x0 = psi.front().x;
  const long last = static_cast<long>(psi.size()) - 1;

  // Split at jumps/kinks of V so that every Simpson panel sees a smooth
  // integrand; piece endpoints use the one-sided limit of V.
  std::vector<long> cuts{0};
  for (double b : breakpoints(spec)) {
    const long idx = std::lround((b - x0) / h);
    if (idx > cuts.back() && idx < last) cuts.push_back(idx);
  }
  cuts.push_back(last);

  double integral = 0.0;
  std::vector<double> f;
  for (size_t p = 0; p + 1 < cuts.size(); ++p) {
    const long i0 = cuts[p];
    const long i1 = cuts[p + 1];
    f.clear();
    for (long i = i0; i <= i1; ++i) {
      double x = psi[i].x;
      if (i == i0) x += 1e-9 * h;
      if (i == i1) x -= 1e-9 * h;
      f.push_back(evaluate_potential(spec, x).imag() * std::norm(psi[i].value));
    }
    integral += simpson(f, h);
  }
  return -spec.units.k2_per_energy() / solution.k * integral;
}

}  // namespace ptscat::engine
