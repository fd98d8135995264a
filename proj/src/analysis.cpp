#include "ptscatter/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "ptscatter/analytic.hpp"

namespace ptscat::analysis {

std::string_view to_string(Backend b) { return b == Backend::analytic ? "analytic" : "numeric"; }

std::string_view to_string(Handedness h) {
  switch (h) {
    case Handedness::left_absorptive: return "left_absorptive";
    case Handedness::right_absorptive: return "right_absorptive";
    case Handedness::none: break;
  }
  return "none";
}

Backend parse_backend(std::string_view name) {
  if (name == "analytic") return Backend::analytic;
  if (name == "numeric") return Backend::numeric;
  throw Error(ErrorCode::invalid_argument, "unknown backend '" + std::string(name) + "'");
}

std::string_view to_string(Column c) {
  switch (c) {
    case Column::T: return "T";
    case Column::R_l: return "R_l";
    case Column::R_r: return "R_r";
    case Column::A_l: return "A_l";
    case Column::A_r: return "A_r";
  }
  return "?";
}

double value(const Coefficients& c, Column col) {
  switch (col) {
    case Column::T: return c.T;
    case Column::R_l: return c.R_l;
    case Column::R_r: return c.R_r;
    case Column::A_l: return c.A_l;
    case Column::A_r: return c.A_r;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

std::vector<double> linear_grid(double lo, double hi, int n) {
  if (n < 1) throw Error(ErrorCode::invalid_argument, "grid needs at least one point");
  if (n == 1) return {lo};
  if (!(hi > lo)) throw Error(ErrorCode::invalid_argument, "grid upper bound must exceed lower bound");
  std::vector<double> grid(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) grid[static_cast<size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  grid.back() = hi;
  return grid;
}

namespace {

void validate_grid(std::span<const double> grid) {
  if (grid.empty()) throw Error(ErrorCode::invalid_argument, "energy grid is empty");
  for (size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0) || !std::isfinite(grid[i]))
      throw EnergyError(ErrorCode::invalid_argument, grid[i], "grid energies must be positive");
    if (i > 0 && !(grid[i] > grid[i - 1]))
      throw Error(ErrorCode::invalid_argument, "energy grid must be strictly increasing");
  }
}

void require_analytic(const PotentialSpec& spec) {
  if (!analytic::supports(spec.model))
    throw Error(ErrorCode::backend_mismatch,
                "analytic backend is not available for model " + std::string(to_string(spec.model)));
}

// Evaluates rows at arbitrary energies with whatever the backend needs
// prepared once up front.
class RowEvaluator {
 public:
  RowEvaluator(const PotentialSpec& spec, Backend backend, const engine::NumericOptions& opts)
      : spec_(spec), backend_(backend) {
    spec_.validate();
    if (backend_ == Backend::analytic)
      require_analytic(spec_);
    else
      grid_.emplace(spec_, opts);
  }

  Coefficients operator()(double E) {
    if (backend_ == Backend::analytic) return analytic::coefficients(spec_, E);
    const auto result = engine::coefficients_numeric(*grid_, E);
    worst_residual_ = std::max(worst_residual_, result.reciprocity_residual);
    return result.coefficients;
  }

  double worst_residual() const { return worst_residual_; }

 private:
  PotentialSpec spec_;
  Backend backend_;
  std::optional<engine::Discretization> grid_;
  double worst_residual_ = 0.0;
};

bool outside(double v, double eps) { return v < -eps || v > 1.0 + eps; }

constexpr double kRefineResolution = 1e-4;
constexpr double kTie = 1e-12;

// Bisects between an energy where the column is in bounds and one where it
// is not; returns the midpoint of the final bracket.
double refine_edge(RowEvaluator& eval, Column col, double eps, double inside_E, double outside_E) {
  while (std::abs(outside_E - inside_E) > kRefineResolution) {
    const double mid = 0.5 * (inside_E + outside_E);
    (outside(value(eval(mid), col), eps) ? outside_E : inside_E) = mid;
  }
  return 0.5 * (inside_E + outside_E);
}

}  // namespace

Coefficients evaluate(const PotentialSpec& spec, double E, Backend backend, const engine::NumericOptions& opts) {
  RowEvaluator eval(spec, backend, opts);
  return eval(E);
}

SweepTable sweep(const PotentialSpec& spec, std::span<const double> grid, Backend backend,
                 const engine::NumericOptions& opts) {
  validate_grid(grid);
  RowEvaluator eval(spec, backend, opts);
  SweepTable table;
  table.spec = spec;
  table.backend = backend;
  table.grid.assign(grid.begin(), grid.end());
  table.rows.reserve(grid.size());
  for (double E : grid) table.rows.push_back(eval(E));
  table.reciprocity_residual = eval.worst_residual();
  return table;
}

AnomalyReport detect_anomalies(const SweepTable& table, double eps, const engine::NumericOptions& opts) {
  if (!(eps >= 0.0)) throw Error(ErrorCode::invalid_argument, "eps must be non-negative");
  AnomalyReport report;
  const auto& rows = table.rows;
  const size_t n = rows.size();
  std::optional<RowEvaluator> eval;

  for (Column col : kColumns) {
    auto& out = report.intervals[static_cast<size_t>(col)];
    size_t i = 0;
    while (i < n) {
      if (!outside(value(rows[i], col), eps)) {
        ++i;
        continue;
      }
      size_t j = i;
      while (j + 1 < n && outside(value(rows[j + 1], col), eps)) ++j;
      if (!eval && (i > 0 || j + 1 < n)) eval.emplace(table.spec, table.backend, opts);
      Interval iv{table.grid[i], table.grid[j]};
      if (i > 0) iv.lo = refine_edge(*eval, col, eps, table.grid[i - 1], table.grid[i]);
      if (j + 1 < n) iv.hi = refine_edge(*eval, col, eps, table.grid[j + 1], table.grid[j]);
      out.push_back(iv);
      i = j + 1;
    }
  }

  auto physical = [&](Column R, Column A) {
    return report.of(Column::T).empty() && report.of(R).empty() && report.of(A).empty();
  };
  report.physical_left = physical(Column::R_l, Column::A_l);
  report.physical_right = physical(Column::R_r, Column::A_r);

  const auto summary = handedness_summary(table);
  if (report.physical_left && !report.physical_right && summary.min_gap > kTie)
    report.handedness = Handedness::left_absorptive;
  else if (report.physical_right && !report.physical_left && summary.max_gap < -kTie)
    report.handedness = Handedness::right_absorptive;
  return report;
}

HandednessSummary handedness_summary(const SweepTable& table) {
  if (table.rows.empty()) throw Error(ErrorCode::invalid_argument, "empty sweep table");
  HandednessSummary s;
  s.min_gap = std::numeric_limits<double>::infinity();
  s.max_gap = -std::numeric_limits<double>::infinity();
  for (const auto& row : table.rows) {
    const double gap = row.R_r - row.R_l;
    s.min_gap = std::min(s.min_gap, gap);
    s.max_gap = std::max(s.max_gap, gap);
  }
  s.monotone_claim = s.min_gap > kTie;
  return s;
}

CriticalResult find_critical_v2(const CriticalSearch& search, const engine::NumericOptions& opts) {
  PotentialSpec spec;
  spec.model = search.model;
  spec.v1 = search.v1;
  spec.a = search.a;
  spec.units = search.units;
  auto [lo, hi] = search.v2_range.value_or(std::pair{0.0, search.v1 + spec.delta()});
  if (!(lo >= 0.0 && hi > lo)) throw Error(ErrorCode::invalid_argument, "V2 range must satisfy 0 <= low < high");
  if (!(search.tol > 0.0)) throw Error(ErrorCode::invalid_argument, "tolerance must be positive");

  std::vector<double> grid = search.grid;
  if (grid.empty()) {
    if (!(search.v1 > 0.0)) throw Error(ErrorCode::invalid_argument, "default grid needs V1 > 0");
    grid = linear_grid(0.2 * search.v1, 3.0 * search.v1, 200);
  }
  validate_grid(grid);

  const Backend backend =
      search.backend.value_or(analytic::supports(search.model) ? Backend::analytic : Backend::numeric);
  if (backend == Backend::analytic) require_analytic(spec);

  CriticalResult result;
  auto anomalous = [&](double v2) {
    ++result.predicate_evals;
    spec.v2 = v2;
    spec.validate();
    std::optional<engine::Discretization> disc;
    if (backend == Backend::analytic) {
      for (double E : grid) {
        const double T = spec.model == Model::scarf ? analytic::scarf_transmission(spec, E)
                                                    : analytic::rect_transmission(spec, E);
        if (T > 1.0 + search.eps) return true;
      }
      return false;
    }
    disc.emplace(spec, opts);
    for (double E : grid)
      if (engine::solve_amplitudes(*disc, E, Side::left).transmission() > 1.0 + search.eps) return true;
    return false;
  };

  const bool at_lo = anomalous(lo);
  const bool at_hi = anomalous(hi);
  if (at_lo || !at_hi) {
    std::ostringstream msg;
    msg << "no onset of anomalous transmission in V2 range [" << lo << ", " << hi << "] (predicate "
        << at_lo << " at low end, " << at_hi << " at high end)";
    throw Error(ErrorCode::no_crossing, msg.str());
  }
  while (hi - lo > search.tol) {
    const double mid = 0.5 * (lo + hi);
    (anomalous(mid) ? hi : lo) = mid;
  }
  result.bracket = {lo, hi};
  result.v2_critical = 0.5 * (lo + hi);
  return result;
}

double BackendComparison::worst() const { return std::max({T.max_relative, R_l.max_relative, R_r.max_relative}); }

BackendComparison compare_backends(const PotentialSpec& spec, std::span<const double> grid,
                                   const engine::NumericOptions& opts) {
  validate_grid(grid);
  spec.validate();
  require_analytic(spec);
  const engine::Discretization disc(spec, opts);
  BackendComparison out;
  auto track = [](ColumnDiscrepancy& d, double numeric, double exact, double E) {
    const double rel = std::abs(numeric - exact) / std::max(std::abs(exact), kDiscrepancyFloor);
    if (rel > d.max_relative || std::isnan(rel)) {
      d.max_relative = std::isnan(rel) ? std::numeric_limits<double>::infinity() : rel;
      d.worst_energy = E;
    }
  };
  for (double E : grid) {
    const Coefficients exact = analytic::coefficients(spec, E);
    // No reciprocity guard: a coarse step surfaces as a discrepancy.
    const auto left = engine::solve_amplitudes(disc, E, Side::left);
    const auto right = engine::solve_amplitudes(disc, E, Side::right);
    track(out.T, left.transmission(), exact.T, E);
    track(out.R_l, left.reflection(), exact.R_l, E);
    track(out.R_r, right.reflection(), exact.R_r, E);
  }
  return out;
}

}  // namespace ptscat::analysis
