#pragma once

// Text formats for sweep results. CSV and JSON are locale-independent and
// carry 17 significant digits, so a table read back is bit-identical.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "ptscatter/analysis.hpp"

namespace ptscat::io {

inline constexpr std::string_view kCsvHeader = "E,T,R_l,R_r,A_l,A_r";

/// Shortest-round-trip-safe decimal form (17 significant digits).
std::string format_double(double v);

void write_csv(const analysis::SweepTable& table, std::ostream& out);

/// Rows of a CSV produced by write_csv; throws Error(io) on malformed input.
std::vector<Coefficients> read_csv(std::istream& in);

nlohmann::json to_json(const PotentialSpec& spec);
nlohmann::json to_json(const analysis::AnomalyReport& report);

/// {spec, grid, rows, backend, anomalies, handedness, reciprocity_residual,
///  config}; `config` is echoed verbatim.
nlohmann::json sweep_document(const analysis::SweepTable& table, const analysis::AnomalyReport& report,
                              const nlohmann::json& config);

/// gnuplot commands drawing T, R_l and R_r against E from `csv_path`, with a
/// dashed guide at 1.
void write_plot_script(std::string_view csv_path, std::string_view title, std::ostream& out);

/// Writes `content` to `path` byte-for-byte; Error(io) on failure.
void write_file(const std::string& path, std::string_view content);

}  // namespace ptscat::io
