// ptscat: command-line front end over the ptscatter C interface.
//
//   ptscat sweep    --model scarf --v1 4 --v2 2 --emin 0.1 --emax 12 --n 200
//   ptscat check    --model scarf --v1 4 --v2 2 --n 100
//   ptscat critical --model scarf --v1 4
//   ptscat report   fig1
//
// Exit codes: 0 success, 1 invalid configuration, 2 backend/model mismatch,
// 3 numeric failure, 4 backend discrepancy above threshold, 5 no critical
// crossing in range, 6 output file error.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ptscatter/ptscatter.h"

namespace {

constexpr double kCheckThreshold = 1e-4;

enum Exit : int {
  kOk = 0,
  kInvalidConfig = 1,
  kBackendMismatch = 2,
  kNumericFailure = 3,
  kDiscrepancy = 4,
  kNoCrossing = 5,
  kOutputError = 6,
};

struct RunConfig {
  std::string model = "scarf";
  double v1 = 4.0;
  double v2 = 2.0;
  double a = 1.0;
  int s1 = -1;
  int s2 = +1;
  double two_m = 1.0;
  double hbar = 1.0;
  double e_min = 0.1;
  double e_max = 12.0;
  int n_points = 200;
  std::string backend = "auto";
  double step = 0.0;
  double truncation_tol = 1e-10;
  std::string output_path;
  std::string format = "csv";
};

struct PotentialDeleter {
  void operator()(ptscat_potential* p) const { ptscat_potential_destroy(p); }
};
struct SweepDeleter {
  void operator()(ptscat_sweep* s) const { ptscat_sweep_destroy(s); }
};
struct ReportDeleter {
  void operator()(ptscat_report* r) const { ptscat_report_destroy(r); }
};
using PotentialPtr = std::unique_ptr<ptscat_potential, PotentialDeleter>;
using SweepPtr = std::unique_ptr<ptscat_sweep, SweepDeleter>;
using ReportPtr = std::unique_ptr<ptscat_report, ReportDeleter>;

// Thrown to unwind to main with a chosen exit status.
struct ExitRequest {
  int code;
};

int exit_code_for(ptscat_status s) {
  switch (s) {
    case PTSCAT_OK: return kOk;
    case PTSCAT_INVALID_ARGUMENT: return kInvalidConfig;
    case PTSCAT_BACKEND_MISMATCH: return kBackendMismatch;
    case PTSCAT_NO_CROSSING: return kNoCrossing;
    case PTSCAT_IO_ERROR: return kOutputError;
    default: return kNumericFailure;
  }
}

void check(ptscat_status s) {
  if (s == PTSCAT_OK) return;
  std::fprintf(stderr, "error (%s): %s\n", ptscat_status_name(s), ptscat_last_error());
  const double E = ptscat_last_error_energy();
  if (!std::isnan(E)) std::fprintf(stderr, "offending energy: E = %.17g\n", E);
  throw ExitRequest{exit_code_for(s)};
}

[[noreturn]] void invalid(const std::string& msg) {
  std::fprintf(stderr, "error: %s\n", msg.c_str());
  throw ExitRequest{kInvalidConfig};
}

void validate(const RunConfig& cfg) {
  if (!(cfg.e_min > 0.0 && cfg.e_max > cfg.e_min)) invalid("need 0 < emin < emax");
  if (cfg.n_points < 2) invalid("need n >= 2");
  if (cfg.format != "csv" && cfg.format != "json") invalid("format must be csv or json");
  if (cfg.step < 0.0) invalid("step must be positive");
}

ptscat_model model_of(const RunConfig& cfg) {
  ptscat_model m;
  check(ptscat_model_from_name(cfg.model.c_str(), &m));
  return m;
}

bool has_closed_form(ptscat_model m) { return m == PTSCAT_MODEL_RECT || m == PTSCAT_MODEL_SCARF; }

ptscat_backend backend_of(const RunConfig& cfg) {
  if (cfg.backend == "auto")
    return has_closed_form(model_of(cfg)) ? PTSCAT_BACKEND_ANALYTIC : PTSCAT_BACKEND_NUMERIC;
  ptscat_backend b;
  check(ptscat_backend_from_name(cfg.backend.c_str(), &b));
  return b;
}

PotentialPtr make_potential(const RunConfig& cfg) {
  ptscat_potential_params p;
  ptscat_potential_params_init(&p);
  p.model = model_of(cfg);
  p.v1 = cfg.v1;
  p.v2 = cfg.v2;
  p.a = cfg.a;
  p.s1 = cfg.s1;
  p.s2 = cfg.s2;
  p.two_m = cfg.two_m;
  p.hbar = cfg.hbar;
  ptscat_potential* pot = nullptr;
  check(ptscat_potential_create(&p, &pot));
  return PotentialPtr(pot);
}

ptscat_numeric_options numeric_options(const RunConfig& cfg) {
  ptscat_numeric_options o;
  ptscat_numeric_options_init(&o);
  o.step = cfg.step;
  o.truncation_tol = cfg.truncation_tol;
  return o;
}

std::vector<double> energy_grid(const RunConfig& cfg) {
  std::vector<double> grid(static_cast<size_t>(cfg.n_points));
  for (int i = 0; i < cfg.n_points; ++i)
    grid[static_cast<size_t>(i)] = cfg.e_min + (cfg.e_max - cfg.e_min) * i / (cfg.n_points - 1);
  grid.back() = cfg.e_max;
  return grid;
}

nlohmann::json config_echo(const RunConfig& cfg) {
  return {{"model", cfg.model}, {"v1", cfg.v1},     {"v2", cfg.v2},        {"a", cfg.a},
          {"s1", cfg.s1},       {"s2", cfg.s2},     {"two_m", cfg.two_m},  {"hbar", cfg.hbar},
          {"emin", cfg.e_min},  {"emax", cfg.e_max}, {"n", cfg.n_points},  {"backend", cfg.backend},
          {"step", cfg.step},   {"truncation_tol", cfg.truncation_tol},    {"out", cfg.output_path},
          {"format", cfg.format}};
}

void print_summary(const ptscat_sweep* sweep, const ptscat_report* report, ptscat_backend backend) {
  std::printf("rows: %zu\n", ptscat_sweep_size(sweep));
  std::printf("backend: %s\n", ptscat_backend_name(backend));
  if (backend == PTSCAT_BACKEND_NUMERIC)
    std::printf("reciprocity_residual: %.3g\n", ptscat_sweep_reciprocity_residual(sweep));
  for (int c = PTSCAT_COLUMN_T; c <= PTSCAT_COLUMN_A_R; ++c) {
    const auto col = static_cast<ptscat_column>(c);
    const size_t count = ptscat_report_interval_count(report, col);
    std::printf("anomalous %s:", ptscat_column_name(col));
    if (count == 0) std::printf(" none");
    for (size_t i = 0; i < count; ++i) {
      ptscat_interval iv;
      check(ptscat_report_interval(report, col, i, &iv));
      std::printf(" [%.6g, %.6g]", iv.lo, iv.hi);
    }
    std::printf("\n");
  }
  std::printf("physical_left: %s\n", ptscat_report_physical_left(report) ? "yes" : "no");
  std::printf("physical_right: %s\n", ptscat_report_physical_right(report) ? "yes" : "no");
  ptscat_handedness_summary hs;
  check(ptscat_sweep_handedness(sweep, &hs));
  std::printf("R_r - R_l: min %.6g, max %.6g, R_l < R_r everywhere: %s\n", hs.min_gap, hs.max_gap,
              hs.monotone ? "yes" : "no");
  std::printf("handedness: %s\n", ptscat_handedness_name(ptscat_report_handedness(report)));
}

// Sweep, classify, write the table; returns the output path.
std::string run_sweep(const RunConfig& cfg) {
  validate(cfg);
  const auto pot = make_potential(cfg);
  const ptscat_backend backend = backend_of(cfg);
  const auto opts = numeric_options(cfg);
  const auto grid = energy_grid(cfg);

  ptscat_sweep* raw_sweep = nullptr;
  check(ptscat_sweep_run(pot.get(), grid.data(), grid.size(), backend, &opts, &raw_sweep));
  const SweepPtr sweep(raw_sweep);
  ptscat_report* raw_report = nullptr;
  check(ptscat_report_create(sweep.get(), 1e-9, &opts, &raw_report));
  const ReportPtr report(raw_report);

  std::string out = cfg.output_path;
  if (out.empty()) out = cfg.format == "json" ? "sweep.json" : "sweep.csv";
  if (cfg.format == "json") {
    auto echo = config_echo(cfg);
    echo["out"] = out;
    check(ptscat_sweep_write_json(sweep.get(), report.get(), echo.dump().c_str(), out.c_str()));
  } else {
    check(ptscat_sweep_write_csv(sweep.get(), out.c_str()));
  }
  std::printf("wrote %s\n", out.c_str());
  print_summary(sweep.get(), report.get(), backend);
  return out;
}

int cmd_sweep(const RunConfig& cfg) {
  run_sweep(cfg);
  return kOk;
}

int cmd_check(const RunConfig& cfg) {
  validate(cfg);
  if (!has_closed_form(model_of(cfg))) {
    std::fprintf(stderr, "error: check needs a model with a closed form (rect or scarf)\n");
    return kBackendMismatch;
  }
  const auto pot = make_potential(cfg);
  const auto opts = numeric_options(cfg);
  const auto grid = energy_grid(cfg);
  ptscat_comparison c;
  check(ptscat_compare_backends(pot.get(), grid.data(), grid.size(), &opts, &c));

  struct Row {
    const char* name;
    double rel;
    double E;
  };
  const Row rows[] = {{"T", c.max_rel_T, c.worst_E_T}, {"R_l", c.max_rel_R_l, c.worst_E_R_l},
                      {"R_r", c.max_rel_R_r, c.worst_E_R_r}};
  const Row* worst = &rows[0];
  for (const auto& r : rows) {
    std::printf("max relative discrepancy %-3s: %.3e (at E = %.6g)\n", r.name, r.rel, r.E);
    if (r.rel > worst->rel) worst = &r;
  }
  if (worst->rel > kCheckThreshold) {
    std::printf("FAIL: %s discrepancy %.3e exceeds %.0e at E = %.17g\n", worst->name, worst->rel, kCheckThreshold,
                worst->E);
    return kDiscrepancy;
  }
  std::printf("PASS: analytic and numeric backends agree within %.0e\n", kCheckThreshold);
  return kOk;
}

struct CriticalArgs {
  std::vector<double> range;
  double tol = 0.01;
};

int cmd_critical(const RunConfig& cfg, const CriticalArgs& args) {
  ptscat_critical_params p;
  ptscat_critical_params_init(&p);
  p.model = model_of(cfg);
  p.v1 = cfg.v1;
  p.a = cfg.a;
  p.two_m = cfg.two_m;
  p.hbar = cfg.hbar;
  p.tol = args.tol;
  if (!args.range.empty()) {
    p.v2_low = args.range[0];
    p.v2_high = args.range[1];
  }
  p.backend = cfg.backend == "auto" ? PTSCAT_BACKEND_AUTO : backend_of(cfg);
  const auto opts = numeric_options(cfg);
  ptscat_critical_result r;
  check(ptscat_find_critical_v2(&p, &opts, &r));
  std::printf("model: %s, V1 = %g, a = %g\n", cfg.model.c_str(), cfg.v1, cfg.a);
  std::printf("V2_critical = %.6f, bracket [%.6f, %.6f], %d predicate evaluations\n", r.v2_critical, r.bracket_low,
              r.bracket_high, r.predicate_evals);
  std::printf("V2_CRITICAL=%.17g\n", r.v2_critical);
  return kOk;
}

struct Preset {
  const char* title;
  const char* model;
  double v1;
  double v2;
  const char* backend;
};

const std::map<std::string, Preset>& presets() {
  static const std::map<std::string, Preset> table{
      {"fig1", {"complex Scarf barrier, V1 = 4, V2 = 2", "scarf", 4.0, 2.0, "analytic"}},
      {"fig2", {"complex Scarf barrier above critical coupling, V1 = 4, V2 = 5", "scarf", 4.0, 5.0, "analytic"}},
      {"fig3", {"rational odd barrier, V1 = 5, V2 = 4", "rational_odd", 5.0, 4.0, "numeric"}},
      {"fig4", {"exponential-linear barrier, V1 = 5, V2 = 4", "exp_linear", 5.0, 4.0, "numeric"}},
  };
  return table;
}

int cmd_report(RunConfig cfg, const std::string& name, const std::string& out_dir) {
  const auto it = presets().find(name);
  if (it == presets().end()) invalid("unknown preset '" + name + "' (expected fig1, fig2, fig3 or fig4)");
  const Preset& p = it->second;
  cfg.model = p.model;
  cfg.v1 = p.v1;
  cfg.v2 = p.v2;
  cfg.a = 1.0;
  cfg.backend = p.backend;
  cfg.format = "csv";
  const std::filesystem::path dir = out_dir.empty() ? "." : out_dir;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    std::fprintf(stderr, "error: cannot create %s: %s\n", dir.string().c_str(), ec.message().c_str());
    return kOutputError;
  }
  cfg.output_path = (dir / (name + ".csv")).string();
  std::printf("preset %s: %s\n", name.c_str(), p.title);
  run_sweep(cfg);
  const std::string script = (dir / (name + ".gp")).string();
  check(ptscat_write_plot_script((name + ".csv").c_str(), p.title, script.c_str()));
  std::printf("wrote %s\n", script.c_str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scattering from one-dimensional complex PT-symmetric barriers", "ptscat"};
  app.set_version_flag("--version", ptscat_version());
  app.require_subcommand(1);
  app.set_config("--config", "", "Read `key = value` settings (flags override)");

  RunConfig cfg;
  // Shared options live on the top-level app so that config-file keys reach
  // them; subcommands fall through.
  app.add_option("--model", cfg.model, "rect | scarf | rational_odd | exp_linear")
      ->check(CLI::IsMember({"rect", "scarf", "rational_odd", "exp_linear"}));
  app.add_option("--v1", cfg.v1, "real strength V1");
  app.add_option("--v2", cfg.v2, "imaginary strength V2 (>= 0)");
  app.add_option("--a", cfg.a, "width scale a");
  app.add_option("--s1", cfg.s1, "rect: sign of Im V on (-a, 0)");
  app.add_option("--s2", cfg.s2, "rect: sign of Im V on (0, a)");
  app.add_option("--two-m", cfg.two_m, "2m");
  app.add_option("--hbar", cfg.hbar, "hbar");
  app.add_option("--emin", cfg.e_min, "lowest energy");
  app.add_option("--emax", cfg.e_max, "highest energy");
  app.add_option("--n", cfg.n_points, "number of energies");
  app.add_option("--backend", cfg.backend, "auto | analytic | numeric")
      ->check(CLI::IsMember({"auto", "analytic", "numeric"}));
  app.add_option("--step", cfg.step, "integration step (0: 1e-3 * a)");
  app.add_option("--truncation-tol", cfg.truncation_tol, "relative |V| below which the domain is cut");
  app.add_option("--out", cfg.output_path, "output file (report: output directory)");
  app.add_option("--format", cfg.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));

  auto* sweep = app.add_subcommand("sweep", "coefficients over an energy grid")->fallthrough();
  auto* check_cmd = app.add_subcommand("check", "analytic vs numeric agreement")->fallthrough();
  auto* critical = app.add_subcommand("critical", "critical imaginary strength V2")->fallthrough();
  CriticalArgs crit;
  critical->add_option("--range", crit.range, "V2 bracket: low high")->expected(2);
  critical->add_option("--tol", crit.tol, "bracket width at which bisection stops");
  auto* report = app.add_subcommand("report", "figure preset: sweep CSV plus plot script")->fallthrough();
  std::string preset;
  report->add_option("preset", preset, "fig1 | fig2 | fig3 | fig4")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalidConfig;
  }

  try {
    if (*sweep) return cmd_sweep(cfg);
    if (*check_cmd) return cmd_check(cfg);
    if (*critical) return cmd_critical(cfg, crit);
    if (*report) return cmd_report(cfg, preset, cfg.output_path);
  } catch (const ExitRequest& e) {
    return e.code;
  }
  return kInvalidConfig;
}
