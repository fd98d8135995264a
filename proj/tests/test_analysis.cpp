#include <cmath>

#include "doctest.h"
#include "ptscatter/analysis.hpp"
#include "ptscatter/analytic.hpp"
#include "support.hpp"

using namespace ptscat;
using namespace ptscat::analysis;
using testing_support::Gen;
using testing_support::kAllModels;
using testing_support::make;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode{};
}

// First V2 on a uniform scan where max_E T(E) > 1 + eps on the given grid.
double scan_onset(Model m, double v1, const std::vector<double>& grid, double lo, double hi, double dv) {
  for (double v2 = lo; v2 <= hi; v2 += dv) {
    const auto s = make(m, v1, v2);
    for (double E : grid) {
      const double T = m == Model::scarf ? analytic::scarf_transmission(s, E)
                                         : engine::solve_amplitudes(s, E, Side::left).transmission();
      if (T > 1.0 + kAnomalyEps) return v2;
    }
  }
  return NAN;
}

void check_interval_shape(const AnomalyReport& rep, const SweepTable& t) {
  for (Column c : kColumns) {
    const auto& ivs = rep.of(c);
    for (size_t i = 0; i < ivs.size(); ++i) {
      CHECK(ivs[i].lo <= ivs[i].hi);
      CHECK(ivs[i].lo >= t.grid.front());
      CHECK(ivs[i].hi <= t.grid.back());
      if (i > 0) CHECK(ivs[i].lo > ivs[i - 1].hi);
    }
  }
}

}  // namespace

TEST_CASE("linear grid") {
  const auto g = linear_grid(0.1, 12.0, 200);
  CHECK(g.size() == 200);
  CHECK(g.front() == 0.1);
  CHECK(g.back() == 12.0);
  CHECK(linear_grid(1.0, 1.0, 1).size() == 1);
  CHECK_THROWS_AS(linear_grid(2.0, 1.0, 5), Error);
}

TEST_CASE("sweep rows follow the grid") {
  const auto s = make(Model::scarf, 4, 2);
  const auto grid = linear_grid(0.1, 12.0, 100);
  const auto t = sweep(s, grid, Backend::analytic);
  REQUIRE(t.rows.size() == 100);
  for (size_t i = 0; i < t.rows.size(); ++i) {
    const auto& r = t.rows[i];
    CHECK(r.E == grid[i]);
    CHECK(r.R_l < r.R_r);
    CHECK(r.R_l <= 1.0);
    CHECK(r.T > 0.0);
    CHECK(r.T < 1.0);
    CHECK(r.A_l == 1.0 - r.R_l - r.T);
    CHECK(r.A_r == 1.0 - r.R_r - r.T);
  }
  CHECK(t.reciprocity_residual == 0.0);

  const double one[] = {1.0};
  CHECK(sweep(s, one, Backend::analytic).rows.size() == 1);
  CHECK(sweep(make(Model::exp_linear, 4, 2), one, Backend::numeric).rows.size() == 1);
}

TEST_CASE("sweep input errors") {
  const auto s = make(Model::rational_odd, 5, 4);
  const double ok[] = {1.0, 2.0};
  const double unsorted[] = {2.0, 1.0};
  const double nonpositive[] = {0.0, 1.0};
  CHECK(code_of([&] { sweep(s, ok, Backend::analytic); }) == ErrorCode::backend_mismatch);
  CHECK(code_of([&] { sweep(s, unsorted, Backend::numeric); }) == ErrorCode::invalid_argument);
  CHECK(code_of([&] { sweep(s, nonpositive, Backend::numeric); }) == ErrorCode::invalid_argument);
  CHECK(code_of([&] { sweep(s, std::span<const double>{}, Backend::numeric); }) == ErrorCode::invalid_argument);
  CHECK(parse_backend("numeric") == Backend::numeric);
  CHECK_THROWS_AS(parse_backend("fast"), Error);
}

TEST_CASE("scarf below onset absorbs from the left") {
  const auto t = sweep(make(Model::scarf, 4, 2), linear_grid(0.1, 12.0, 200), Backend::analytic);
  const auto rep = detect_anomalies(t);
  REQUIRE(rep.of(Column::R_r).size() == 1);
  const auto iv = rep.of(Column::R_r)[0];
  CHECK(iv.lo == 0.1);
  CHECK(iv.hi > 1.0);
  CHECK(iv.hi < 12.0);
  // The refined edge sits where R_r crosses one.
  CHECK(analytic::scarf_reflection(t.spec, iv.hi - 1e-3, Side::right) > 1.0);
  CHECK(analytic::scarf_reflection(t.spec, iv.hi + 1e-3, Side::right) < 1.0);
  CHECK(rep.of(Column::T).empty());
  CHECK(rep.of(Column::R_l).empty());
  CHECK(rep.physical_left);
  CHECK_FALSE(rep.physical_right);
  CHECK(rep.handedness == Handedness::left_absorptive);
  check_interval_shape(rep, t);

  const auto h = handedness_summary(t);
  CHECK(h.monotone_claim);
  CHECK(h.min_gap > 0.0);
}

TEST_CASE("real tables have no anomalies (property)") {
  Gen gen(8);
  for (auto m : kAllModels) {
    for (int draw = 0; draw < 3; ++draw) {
      auto s = gen.spec(m);
      s.v2 = 0.0;
      const Backend b = analytic::supports(m) ? Backend::analytic : Backend::numeric;
      const auto t = sweep(s, linear_grid(0.1, 12.0, 40), b);
      const auto rep = detect_anomalies(t);
      INFO("model ", to_string(m), " V1 ", s.v1, " a ", s.a);
      for (Column c : kColumns) CHECK(rep.of(c).empty());
      CHECK(rep.physical_left);
      CHECK(rep.physical_right);
      CHECK(rep.handedness == Handedness::none);
      if (b == Backend::analytic) {
        const auto h = handedness_summary(t);
        CHECK(h.min_gap == 0.0);
        CHECK(h.max_gap == 0.0);
        CHECK_FALSE(h.monotone_claim);
      }
    }
  }
}

TEST_CASE("anomaly intervals are well formed (property)") {
  Gen gen(1234);
  for (int draw = 0; draw < 30; ++draw) {
    auto s = gen.spec(draw % 2 ? Model::scarf : Model::rect);
    const auto t = sweep(s, linear_grid(0.1, 12.0, 60), Backend::analytic);
    const auto rep = detect_anomalies(t);
    INFO("model ", to_string(s.model), " V1 ", s.v1, " V2 ", s.v2, " a ", s.a, " s ", s.s1, s.s2);
    check_interval_shape(rep, t);
    // A side is physical exactly when every one of its columns stays in bounds.
    bool left_ok = true;
    for (const auto& r : t.rows)
      left_ok &= r.T <= 1 + kAnomalyEps && r.R_l <= 1 + kAnomalyEps && r.A_l >= -kAnomalyEps;
    CHECK(rep.physical_left == left_ok);
  }
}

TEST_CASE("anomaly report is backend stable") {
  for (double v2 : {2.0, 5.0}) {
    const auto s = make(Model::scarf, 4, v2);
    const auto grid = linear_grid(0.1, 12.0, 100);
    const auto ra = detect_anomalies(sweep(s, grid, Backend::analytic));
    const auto rn = detect_anomalies(sweep(s, grid, Backend::numeric));
    CHECK(ra.physical_left == rn.physical_left);
    CHECK(ra.physical_right == rn.physical_right);
    CHECK(ra.handedness == rn.handedness);
    for (Column c : kColumns) {
      REQUIRE(ra.of(c).size() == rn.of(c).size());
      for (size_t i = 0; i < ra.of(c).size(); ++i) {
        CHECK(std::abs(ra.of(c)[i].lo - rn.of(c)[i].lo) < 1e-3);
        CHECK(std::abs(ra.of(c)[i].hi - rn.of(c)[i].hi) < 1e-3);
      }
    }
  }
}

TEST_CASE("smooth numeric models at V1 = 5, V2 = 4 scatter physically from the left") {
  for (auto m : {Model::rational_odd, Model::exp_linear}) {
    const auto t = sweep(make(m, 5, 4), linear_grid(0.1, 12.0, 100), Backend::numeric);
    const auto rep = detect_anomalies(t);
    CHECK(rep.physical_left);
    CHECK(rep.handedness == Handedness::left_absorptive);
    CHECK(handedness_summary(t).monotone_claim);
  }
}

TEST_CASE("rect absorbing on the left reflects less below E = 5") {
  const auto s = make(Model::rect, 2, 1, 1, -1, +1);
  CHECK(handedness_summary(sweep(s, linear_grid(0.1, 5.0, 200), Backend::analytic)).monotone_claim);
  const auto mirrored = sweep(make(Model::rect, 2, 1, 1, +1, -1), linear_grid(0.1, 5.0, 200), Backend::analytic);
  CHECK(handedness_summary(mirrored).max_gap < 0.0);

  // Measured: the ordering reverses on roughly (5.12, 11.26).
  const auto wide = handedness_summary(sweep(s, linear_grid(0.1, 12.0, 200), Backend::analytic));
  CHECK_FALSE(wide.monotone_claim);
  CHECK(wide.min_gap < -0.05);
  const auto n = engine::coefficients_numeric(s, 8.0).coefficients;
  CHECK(n.R_r < n.R_l);
  CHECK(analytic::rect_reflection(s, 5.0, Side::right) > analytic::rect_reflection(s, 5.0, Side::left));
  CHECK(analytic::rect_reflection(s, 5.3, Side::right) < analytic::rect_reflection(s, 5.3, Side::left));
}

TEST_CASE("critical search matches a dense scan") {
  for (double v1 : {2.0, 4.0, 8.0}) {
    CriticalSearch cs;
    cs.model = Model::scarf;
    cs.v1 = v1;
    const auto res = find_critical_v2(cs);
    const double onset = scan_onset(Model::scarf, v1, linear_grid(0.2 * v1, 3.0 * v1, 200), v1 - 1.0, v1 + 1.0, 1e-3);
    INFO("V1 ", v1);
    CHECK(res.bracket.second - res.bracket.first <= cs.tol);
    CHECK(res.bracket.first < onset + 1e-3);
    CHECK(res.bracket.second >= onset - 1e-3);
    // cos(pi gamma) < 0 with gamma^2 = (V2 - V1)/delta + 1/4 puts the onset at V2 = V1.
    CHECK(std::abs(res.v2_critical - v1) <= 2 * cs.tol);
  }
}

TEST_CASE("critical search on the numeric backend") {
  CriticalSearch cs;
  cs.model = Model::rational_odd;
  cs.v1 = 4.0;
  cs.v2_range = {6.0, 9.0};
  cs.tol = 0.05;
  const auto res = find_critical_v2(cs);
  const double onset = scan_onset(Model::rational_odd, 4.0, linear_grid(0.8, 12.0, 200), 6.0, 7.0, 0.02);
  CHECK(res.bracket.first < onset + 0.02);
  CHECK(res.bracket.second >= onset - 0.02);
  CHECK(res.predicate_evals >= 2);
}

TEST_CASE("critical search errors") {
  CriticalSearch cs;
  cs.v2_range = {0.0, 3.0};
  CHECK(code_of([&] { find_critical_v2(cs); }) == ErrorCode::no_crossing);
  cs.v2_range = {5.0, 1.0};
  CHECK(code_of([&] { find_critical_v2(cs); }) == ErrorCode::invalid_argument);
  // V2 = V1 + 2 delta is the far edge of the Scarf anomaly window.
  cs.v2_range = {0.0, 6.0};
  CHECK(code_of([&] { find_critical_v2(cs); }) == ErrorCode::no_crossing);
  cs.model = Model::exp_linear;
  cs.backend = Backend::analytic;
  CHECK(code_of([&] { find_critical_v2(cs); }) == ErrorCode::backend_mismatch);
}

TEST_CASE("backend comparison") {
  const auto grid = linear_grid(0.1, 12.0, 100);
  const auto good = compare_backends(make(Model::scarf, 4, 2), grid);
  CHECK(good.worst() < 1e-4);
  engine::NumericOptions coarse;
  coarse.step = 0.1;
  const auto bad = compare_backends(make(Model::scarf, 4, 2), grid, coarse);
  CHECK(bad.worst() > 1e-4);
  CHECK(bad.T.worst_energy > 0.0);
  CHECK(code_of([&] { compare_backends(make(Model::exp_linear, 4, 2), grid); }) == ErrorCode::backend_mismatch);
}
