#pragma once

// Energy sweeps and what is read off them: anomalous intervals, which side
// (if any) scatters physically, and the critical imaginary strength above
// which the transmission itself turns anomalous.

#include <array>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ptscatter/core.hpp"
#include "ptscatter/engine.hpp"

namespace ptscat::analysis {

enum class Backend { analytic, numeric };
enum class Handedness { none, left_absorptive, right_absorptive };

std::string_view to_string(Backend b);
std::string_view to_string(Handedness h);
Backend parse_backend(std::string_view name);

/// n equally spaced energies on [lo, hi], endpoints included.
std::vector<double> linear_grid(double lo, double hi, int n);

struct SweepTable {
  PotentialSpec spec;
  std::vector<double> grid;
  std::vector<Coefficients> rows;
  Backend backend = Backend::analytic;
  double reciprocity_residual = 0.0;  // worst |T_left - T_right|, numeric backend only
};

/// Coefficients at one energy from the requested backend.
Coefficients evaluate(const PotentialSpec& spec, double E, Backend backend,
                      const engine::NumericOptions& opts = {});

SweepTable sweep(const PotentialSpec& spec, std::span<const double> grid, Backend backend,
                 const engine::NumericOptions& opts = {});

enum class Column { T, R_l, R_r, A_l, A_r };
inline constexpr std::array<Column, 5> kColumns{Column::T, Column::R_l, Column::R_r, Column::A_l,
                                                Column::A_r};
std::string_view to_string(Column c);
double value(const Coefficients& c, Column col);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

inline constexpr double kAnomalyEps = 1e-9;

/// A coefficient is anomalous where it leaves [-eps, 1 + eps]: R or T above
/// one, or A below zero.
struct AnomalyReport {
  std::array<std::vector<Interval>, 5> intervals;  // indexed by Column
  bool physical_left = true;
  bool physical_right = true;
  Handedness handedness = Handedness::none;

  const std::vector<Interval>& of(Column c) const { return intervals[static_cast<size_t>(c)]; }
};

/// Interval endpoints are refined by bisection on the table's backend to
/// 1e-4 in energy and never leave the grid range.
AnomalyReport detect_anomalies(const SweepTable& table, double eps = kAnomalyEps,
                               const engine::NumericOptions& opts = {});

struct HandednessSummary {
  double min_gap = 0.0;  // min over grid of R_r - R_l
  double max_gap = 0.0;
  bool monotone_claim = false;  // R_l < R_r at every grid point
};

HandednessSummary handedness_summary(const SweepTable& table);

struct CriticalResult {
  double v2_critical = 0.0;
  std::pair<double, double> bracket;  // predicate false at .first, true at .second
  int predicate_evals = 0;
};

struct CriticalSearch {
  Model model = Model::scarf;
  double v1 = 4.0;
  double a = 1.0;
  Units units{};
  /// Unset selects [0, V1 + delta]; the Scarf anomaly window is
  /// V1 < V2 < V1 + 2 delta, so wider brackets can straddle its far edge.
  std::optional<std::pair<double, double>> v2_range;
  std::vector<double> grid;  // empty selects 200 points on [0.2 V1, 3 V1]
  double tol = 0.01;
  double eps = kAnomalyEps;
  /// Analytic for models with a closed form unless set.
  std::optional<Backend> backend;
};

/// Bisection on V2 for the onset of "max over grid of T > 1 + eps".
/// Error(no_crossing) when the predicate does not go false -> true across
/// the range.
CriticalResult find_critical_v2(const CriticalSearch& search, const engine::NumericOptions& opts = {});

struct ColumnDiscrepancy {
  double max_relative = 0.0;
  double worst_energy = 0.0;
};

/// Worst relative disagreement of the numeric backend against the closed
/// form on T, R_l and R_r; the scale is max(|analytic|, kDiscrepancyFloor).
struct BackendComparison {
  ColumnDiscrepancy T;
  ColumnDiscrepancy R_l;
  ColumnDiscrepancy R_r;

  double worst() const;
};

inline constexpr double kDiscrepancyFloor = 1e-6;

BackendComparison compare_backends(const PotentialSpec& spec, std::span<const double> grid,
                                   const engine::NumericOptions& opts = {});

}  // namespace ptscat::analysis
