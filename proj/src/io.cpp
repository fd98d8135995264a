#include "ptscatter/io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

namespace ptscat::io {

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
  return {buf.data(), res.ptr};
}

void write_csv(const analysis::SweepTable& table, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const auto& r : table.rows) {
    out << format_double(r.E) << ',' << format_double(r.T) << ',' << format_double(r.R_l) << ','
        << format_double(r.R_r) << ',' << format_double(r.A_l) << ',' << format_double(r.A_r) << '\n';
  }
}

std::vector<Coefficients> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader)
    throw Error(ErrorCode::io, "CSV header must be '" + std::string(kCsvHeader) + "'");
  std::vector<Coefficients> rows;
  size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::array<double, 6> v{};
    const char* p = line.data();
    const char* end = line.data() + line.size();
    for (size_t i = 0; i < v.size(); ++i) {
      const auto res = std::from_chars(p, end, v[i]);
      const bool sep_ok = i + 1 < v.size() ? (res.ptr != end && *res.ptr == ',') : res.ptr == end;
      if (res.ec != std::errc{} || !sep_ok)
        throw Error(ErrorCode::io, "malformed CSV row at line " + std::to_string(line_no));
      p = res.ptr + 1;
    }
    rows.push_back({v[0], v[1], v[2], v[3], v[4], v[5]});
  }
  return rows;
}

nlohmann::json to_json(const PotentialSpec& spec) {
  nlohmann::json j{
      {"model", std::string(to_string(spec.model))},
      {"V1", spec.v1},
      {"V2", spec.v2},
      {"a", spec.a},
      {"two_m", spec.units.two_m},
      {"hbar", spec.units.hbar},
  };
  if (spec.model == Model::rect) {
    j["s1"] = spec.s1;
    j["s2"] = spec.s2;
  }
  return j;
}

nlohmann::json to_json(const analysis::AnomalyReport& report) {
  nlohmann::json intervals = nlohmann::json::object();
  for (auto col : analysis::kColumns) {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& iv : report.of(col)) list.push_back({iv.lo, iv.hi});
    intervals[std::string(analysis::to_string(col))] = std::move(list);
  }
  return {{"intervals", std::move(intervals)},
          {"physical_left", report.physical_left},
          {"physical_right", report.physical_right}};
}

nlohmann::json sweep_document(const analysis::SweepTable& table, const analysis::AnomalyReport& report,
                              const nlohmann::json& config) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : table.rows)
    rows.push_back({{"E", r.E}, {"T", r.T}, {"R_l", r.R_l}, {"R_r", r.R_r}, {"A_l", r.A_l}, {"A_r", r.A_r}});
  return {
      {"spec", to_json(table.spec)},
      {"grid", table.grid},
      {"rows", std::move(rows)},
      {"backend", std::string(analysis::to_string(table.backend))},
      {"anomalies", to_json(report)},
      {"handedness", std::string(analysis::to_string(report.handedness))},
      {"reciprocity_residual", table.reciprocity_residual},
      {"config", config},
  };
}

void write_plot_script(std::string_view csv_path, std::string_view title, std::ostream& out) {
  const std::string file(csv_path);
  out << "# gnuplot -persist <this file>\n"
      << "set datafile separator ','\n"
      << "set title '" << title << "'\n"
      << "set xlabel 'E'\n"
      << "set ylabel 'probability'\n"
      << "set key top right\n"
      << "set grid\n"
      << "plot '" << file << "' using 1:2 skip 1 with lines lw 2 title 'T', \\\n"
      << "     '" << file << "' using 1:3 skip 1 with lines lw 2 title 'R_l', \\\n"
      << "     '" << file << "' using 1:4 skip 1 with lines lw 2 title 'R_r', \\\n"
      << "     1.0 with lines dashtype 2 lc rgb 'black' title '1'\n";
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorCode::io, "cannot open '" + path + "' for writing");
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!f) throw Error(ErrorCode::io, "write to '" + path + "' failed");
}

}  // namespace ptscat::io
