#include "ptscatter/core.hpp"

#include <algorithm>
#include <cmath>

namespace ptscat {

std::string_view to_string(Model m) {
  switch (m) {
    case Model::rect: return "rect";
    case Model::scarf: return "scarf";
    case Model::rational_odd: return "rational_odd";
    case Model::exp_linear: return "exp_linear";
  }
  throw Error(ErrorCode::invalid_argument, "unknown model tag");
}

std::string_view to_string(Side s) { return s == Side::left ? "left" : "right"; }

Model parse_model(std::string_view name) {
  if (name == "rect") return Model::rect;
  if (name == "scarf") return Model::scarf;
  if (name == "rational_odd") return Model::rational_odd;
  if (name == "exp_linear") return Model::exp_linear;
  throw Error(ErrorCode::invalid_argument, "unknown model '" + std::string(name) + "'");
}

void PotentialSpec::validate() const {
  auto fail = [](const std::string& msg) { throw Error(ErrorCode::invalid_argument, msg); };
  if (!(a > 0.0) || !std::isfinite(a)) fail("width scale a must be positive");
  if (!std::isfinite(v1) || !std::isfinite(v2)) fail("V1 and V2 must be finite");
  if (v2 < 0.0) fail("V2 must be non-negative; use the side of incidence to flip orientation");
  if (!(units.two_m > 0.0) || !(units.hbar > 0.0)) fail("2m and hbar must be positive");
  auto sign_ok = [](int s) { return s == -1 || s == 0 || s == 1; };
  if (!sign_ok(s1) || !sign_ok(s2)) fail("s1 and s2 must be -1, 0 or +1");
  switch (model) {
    case Model::rect:
    case Model::scarf:
    case Model::rational_odd:
    case Model::exp_linear: break;
    default: fail("unknown model tag");
  }
}

namespace {

cplx rect_value(const PotentialSpec& s, double x) {
  const cplx left{s.v1, s.s1 * s.v2};
  const cplx right{s.v1, s.s2 * s.v2};
  const double ax = std::abs(x);
  if (ax > s.a) return 0.0;
  // Jumps take the mean of the one-sided limits.
  if (ax == s.a) return 0.5 * (x < 0 ? left : right);
  if (x == 0.0) return 0.5 * (left + right);
  return x < 0 ? left : right;
}

}  // namespace

cplx evaluate_potential(const PotentialSpec& spec, double x) {
  const double z = x / spec.a;
  switch (spec.model) {
    case Model::rect: return rect_value(spec, x);
    case Model::scarf: {
      // sech and tanh from a single exponential of -|z|.
      const double e2 = std::exp(-2.0 * std::abs(z));
      const double sech = 2.0 * std::sqrt(e2) / (1.0 + e2);
      const double tanh = std::copysign((1.0 - e2) / (1.0 + e2), z);
      return {spec.v1 * sech * sech, spec.v2 * sech * tanh};
    }
    case Model::rational_odd: {
      double d = 1.0 + z * z;
      d *= d;
      d *= d;
      return cplx{spec.v1, spec.v2 * z} / d;
    }
    case Model::exp_linear: return cplx{spec.v1, spec.v2 * z} * std::exp(-std::abs(z));
  }
  throw Error(ErrorCode::invalid_argument, "unknown model tag");
}

cplx evaluate_potential(const PotentialSpec& spec, double x, Side side) {
  return evaluate_potential(spec, side == Side::left ? x : -x);
}

double support_radius(const PotentialSpec& spec, double tol) {
  if (!(tol > 0.0 && tol < 1.0)) throw Error(ErrorCode::invalid_argument, "tol must lie in (0, 1)");
  if (spec.model == Model::rect) return spec.a;

  const double scale = std::max(std::abs(spec.v1), std::abs(spec.v2));
  if (scale == 0.0) return 0.0;
  const double threshold = tol * scale;
  // |V| is even for every smooth model and strictly decreasing for |x| > a.
  auto above = [&](double x) { return std::abs(evaluate_potential(spec, x)) >= threshold; };

  double lo = 0.0;
  double hi = 0.0;
  if (above(spec.a)) {
    lo = spec.a;
    hi = 2.0 * spec.a;
    while (above(hi)) {
      lo = hi;
      hi *= 2.0;
    }
  } else {
    // Inside the core the modulus need not be monotone: walk inward to the
    // outermost sample still above threshold.
    constexpr int n = 10000;
    int i = n;
    while (i > 0 && !above(spec.a * i / n)) --i;
    if (i == 0 && !above(0.0)) return 0.0;
    lo = spec.a * i / n;
    hi = spec.a * (i + 1) / n;
  }
  while (hi - lo > 1e-13 * std::max(1.0, hi)) {
    const double mid = 0.5 * (lo + hi);
    (above(mid) ? lo : hi) = mid;
  }
  return hi;
}

bool check_pt_symmetry(const PotentialSpec& spec, int n_samples) {
  if (n_samples < 3) throw Error(ErrorCode::invalid_argument, "need at least 3 samples");
  const double extent = std::max(support_radius(spec, 1e-6), spec.a) * 1.5;
  for (int j = 0; j < n_samples; ++j) {
    const double x = -extent + 2.0 * extent * j / (n_samples - 1);
    if (std::abs(evaluate_potential(spec, -x) - std::conj(evaluate_potential(spec, x))) > 1e-12)
      return false;
  }
  return true;
}

}  // namespace ptscat
