#include <cmath>

#include "doctest.h"
#include "ptscatter/core.hpp"
#include "support.hpp"

using namespace ptscat;
using testing_support::Gen;
using testing_support::kAllModels;
using testing_support::make;

TEST_CASE("potential values at reference points") {
  const cplx scarf = evaluate_potential(make(Model::scarf, 4, 2), 0.0);
  CHECK(scarf.real() == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(scarf.imag() == 0.0);

  const cplx rect = evaluate_potential(make(Model::rect, 4, 1), -0.5);
  CHECK(rect == cplx(4.0, -1.0));
  CHECK(evaluate_potential(make(Model::rect, 4, 1), 0.5) == cplx(4.0, 1.0));
  CHECK(evaluate_potential(make(Model::rect, 4, 1), 1.5) == cplx(0.0, 0.0));

  const cplx rat = evaluate_potential(make(Model::rational_odd, 5, 4), 1.0);
  CHECK(std::abs(rat - cplx(5.0, 4.0) / 16.0) < 1e-15);

  // Scarf against the textbook hyperbolic functions.
  const auto s = make(Model::scarf, 3, 1.5, 0.7);
  for (double x : {-3.1, -0.4, 0.2, 1.9, 6.0}) {
    const double z = x / s.a;
    const double sech = 1.0 / std::cosh(z);
    const cplx want{3.0 * sech * sech, 1.5 * sech * std::tanh(z)};
    CHECK(std::abs(evaluate_potential(s, x) - want) < 1e-14);
  }
  const auto e = make(Model::exp_linear, 4, 8, 2.0);
  CHECK(std::abs(evaluate_potential(e, -3.0) - cplx(4.0, -12.0) * std::exp(-1.5)) < 1e-14);
}

TEST_CASE("rect jumps take the mean of the one-sided limits") {
  const auto s = make(Model::rect, 2, 1);
  CHECK(evaluate_potential(s, 0.0) == cplx(2.0, 0.0));
  CHECK(evaluate_potential(s, -1.0) == cplx(1.0, -0.5));
  CHECK(evaluate_potential(s, 1.0) == cplx(1.0, 0.5));
}

TEST_CASE("right incidence sees the mirrored potential") {
  const auto s = make(Model::exp_linear, 4, 3);
  for (double x : {-2.0, -0.3, 0.0, 0.8}) CHECK(evaluate_potential(s, x, Side::right) == evaluate_potential(s, -x));
}

TEST_CASE("spec validation") {
  auto s = make(Model::scarf, 4, 2);
  CHECK_NOTHROW(s.validate());
  s.v2 = -1;
  CHECK_THROWS_AS(s.validate(), Error);
  s = make(Model::scarf, 4, 2, 0.0);
  CHECK_THROWS_AS(s.validate(), Error);
  s = make(Model::rect, 4, 2, 1.0, 2, 1);
  CHECK_THROWS_AS(s.validate(), Error);
  s = make(Model::scarf, NAN, 2);
  CHECK_THROWS_AS(s.validate(), Error);
  s = make(Model::scarf, 4, 2);
  s.units.hbar = 0;
  CHECK_THROWS_AS(s.validate(), Error);
  CHECK(parse_model("exp_linear") == Model::exp_linear);
  CHECK_THROWS_AS(parse_model("gaussian"), Error);
  CHECK(make(Model::scarf, 1, 1, 2.0).delta() == doctest::Approx(0.25));
}

TEST_CASE("support radius of the rectangular barrier is its half-width") {
  for (double a : {0.5, 1.0, 3.0}) CHECK(support_radius(make(Model::rect, 2, 1, a), 1e-12) == a);
  CHECK(support_radius(make(Model::scarf, 0, 0), 1e-10) == 0.0);
}

TEST_CASE("support radius meets its post-condition") {
  // Scarf: the imaginary sech*tanh term decays like 2 V2 e^{-x}, slower than
  // the real sech^2 term, so it sets the radius.
  const auto scarf = make(Model::scarf, 4, 2);
  const double L = support_radius(scarf, 1e-10);
  const double thr = 4e-10;
  auto mod = [&](double x) {
    const double sech = 1.0 / std::cosh(x);
    return std::hypot(4.0 * sech * sech, 2.0 * sech * std::tanh(x));
  };
  CHECK(mod(L) < thr * (1 + 1e-9));
  CHECK(mod(L * (1 - 1e-9)) >= thr * (1 - 1e-6));
  CHECK(L == doctest::Approx(std::log(1e10)).epsilon(1e-3));

  // exp_linear: scalar root of sqrt(V1^2 + V2^2 x^2) e^{-x} = tol * V2.
  const auto el = make(Model::exp_linear, 4, 8);
  auto g = [](double x) { return std::hypot(4.0, 8.0 * x) * std::exp(-x) - 8e-10; };
  double lo = 1.0, hi = 100.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) > 0 ? lo : hi) = mid;
  }
  CHECK(support_radius(el, 1e-10) == doctest::Approx(hi).epsilon(1e-10));
}

TEST_CASE("support radius is non-increasing in tol (property)") {
  Gen gen(0xC0FFEEu);
  for (auto m : kAllModels) {
    for (int draw = 0; draw < 10; ++draw) {
      const auto s = gen.spec(m);
      double prev = INFINITY;
      for (double tol : {1e-14, 1e-12, 1e-10, 1e-8, 1e-6, 1e-4, 1e-2, 0.5}) {
        const double L = support_radius(s, tol);
        INFO("model ", to_string(m), " V1 ", s.v1, " V2 ", s.v2, " a ", s.a, " tol ", tol);
        CHECK(L <= prev);
        prev = L;
      }
    }
  }
}

TEST_CASE("PT symmetry examples") {
  CHECK(check_pt_symmetry(make(Model::scarf, 4, 2), 101));
  CHECK(check_pt_symmetry(make(Model::rect, 4, 2, 1, -1, +1), 101));
  CHECK_FALSE(check_pt_symmetry(make(Model::rect, 4, 2, 1, -1, -1), 101));
  CHECK(check_pt_symmetry(make(Model::rect, 4, 0, 1, -1, -1), 101));
}

TEST_CASE("even real part and odd imaginary part (property)") {
  Gen gen(17);
  for (auto m : kAllModels) {
    for (int draw = 0; draw < 20; ++draw) {
      auto s = gen.spec(m);
      if (m == Model::rect) s.s2 = -s.s1;
      const double L = 1.5 * std::max(s.a, support_radius(s, 1e-8));
      for (int j = 0; j <= 200; ++j) {
        const double x = -L + 2.0 * L * j / 200;
        const cplx v = evaluate_potential(s, x);
        const cplx w = evaluate_potential(s, -x);
        INFO("model ", to_string(m), " x ", x);
        CHECK(std::abs(v.real() - w.real()) <= 1e-12 * std::max(1.0, std::abs(v)));
        CHECK(std::abs(v.imag() + w.imag()) <= 1e-12 * std::max(1.0, std::abs(v)));
      }
      CHECK(check_pt_symmetry(s, 101));
    }
  }
}

TEST_CASE("smooth models absorb on the left (property)") {
  Gen gen(99);
  for (auto m : {Model::scarf, Model::rational_odd, Model::exp_linear}) {
    for (int draw = 0; draw < 20; ++draw) {
      const auto s = gen.spec(m);
      for (int j = 1; j <= 400; ++j) {
        const double x = -10.0 * s.a * j / 400;
        CHECK(evaluate_potential(s, x).imag() <= 0.0);
      }
    }
  }
}
