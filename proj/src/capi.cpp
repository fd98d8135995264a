#include "ptscatter/ptscatter.h"

#include <cmath>
#include <limits>
#include <new>
#include <sstream>
#include <string>

#include "ptscatter/analysis.hpp"
#include "ptscatter/analytic.hpp"
#include "ptscatter/core.hpp"
#include "ptscatter/engine.hpp"
#include "ptscatter/io.hpp"

struct ptscat_potential {
  ptscat::PotentialSpec spec;
};

struct ptscat_sweep {
  ptscat::analysis::SweepTable table;
};

struct ptscat_report {
  ptscat::analysis::AnomalyReport report;
};

namespace {

using namespace ptscat;

thread_local std::string g_last_error;
thread_local double g_last_energy = std::numeric_limits<double>::quiet_NaN();

void clear_error() {
  g_last_error.clear();
  g_last_energy = std::numeric_limits<double>::quiet_NaN();
}

ptscat_status fail(ptscat_status status, const std::string& msg) {
  g_last_error = msg;
  return status;
}

// Runs `body` and converts any exception into a status code.
template <class F>
ptscat_status guarded(F&& body) {
  clear_error();
  try {
    body();
    return PTSCAT_OK;
  } catch (const EnergyError& e) {
    g_last_energy = e.energy();
    return fail(static_cast<ptscat_status>(e.code()), e.what());
  } catch (const Error& e) {
    return fail(static_cast<ptscat_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(PTSCAT_INTERNAL_ERROR, "out of memory");
  } catch (const std::exception& e) {
    return fail(PTSCAT_INTERNAL_ERROR, e.what());
  } catch (...) {
    return fail(PTSCAT_INTERNAL_ERROR, "unknown exception");
  }
}

void require(const void* p, const char* what) {
  if (!p) throw Error(ErrorCode::invalid_argument, std::string(what) + " must not be NULL");
}

Model to_model(ptscat_model m) {
  switch (m) {
    case PTSCAT_MODEL_RECT: return Model::rect;
    case PTSCAT_MODEL_SCARF: return Model::scarf;
    case PTSCAT_MODEL_RATIONAL_ODD: return Model::rational_odd;
    case PTSCAT_MODEL_EXP_LINEAR: return Model::exp_linear;
  }
  throw Error(ErrorCode::invalid_argument, "unknown model tag " + std::to_string(static_cast<int>(m)));
}

Side to_side(ptscat_side s) {
  if (s == PTSCAT_SIDE_LEFT) return Side::left;
  if (s == PTSCAT_SIDE_RIGHT) return Side::right;
  throw Error(ErrorCode::invalid_argument, "unknown side");
}

analysis::Backend to_backend(ptscat_backend b) {
  if (b == PTSCAT_BACKEND_ANALYTIC) return analysis::Backend::analytic;
  if (b == PTSCAT_BACKEND_NUMERIC) return analysis::Backend::numeric;
  throw Error(ErrorCode::invalid_argument, "backend must be analytic or numeric here");
}

analysis::Column to_column(ptscat_column c) {
  if (c < PTSCAT_COLUMN_T || c > PTSCAT_COLUMN_A_R) throw Error(ErrorCode::invalid_argument, "unknown column");
  return analysis::kColumns[static_cast<size_t>(c)];
}

engine::NumericOptions to_options(const ptscat_numeric_options* opts) {
  engine::NumericOptions o;
  if (opts) {
    o.step = opts->step;
    o.truncation_tol = opts->truncation_tol;
    o.max_steps = opts->max_steps;
    o.verify_step = opts->verify_step != 0;
    o.verify_tol = opts->verify_tol;
  }
  return o;
}

ptscat_coefficients to_c(const Coefficients& c) { return {c.E, c.T, c.R_l, c.R_r, c.A_l, c.A_r}; }

}  // namespace

extern "C" {

const char* ptscat_version(void) { return "1.0.0"; }
const char* ptscat_last_error(void) { return g_last_error.c_str(); }
double ptscat_last_error_energy(void) { return g_last_energy; }

const char* ptscat_status_name(ptscat_status status) {
  switch (status) {
    case PTSCAT_OK: return "ok";
    case PTSCAT_INVALID_ARGUMENT: return "invalid_argument";
    case PTSCAT_BACKEND_MISMATCH: return "backend_mismatch";
    case PTSCAT_NUMERIC_FAILURE: return "numeric_failure";
    case PTSCAT_DEGENERATE_ENERGY: return "degenerate_energy";
    case PTSCAT_STEP_TOO_LARGE: return "step_too_large";
    case PTSCAT_OVERFLOW: return "overflow";
    case PTSCAT_NO_CROSSING: return "no_crossing";
    case PTSCAT_IO_ERROR: return "io_error";
    case PTSCAT_INTERNAL_ERROR: return "internal_error";
  }
  return "unknown";
}

void ptscat_potential_params_init(ptscat_potential_params* params) {
  if (!params) return;
  const PotentialSpec d;
  *params = {PTSCAT_MODEL_SCARF, d.v1, d.v2, d.a, d.s1, d.s2, d.units.two_m, d.units.hbar};
}

void ptscat_numeric_options_init(ptscat_numeric_options* opts) {
  if (!opts) return;
  const engine::NumericOptions d;
  *opts = {d.step, d.truncation_tol, d.max_steps, d.verify_step ? 1 : 0, d.verify_tol};
}

void ptscat_critical_params_init(ptscat_critical_params* params) {
  if (!params) return;
  const analysis::CriticalSearch d;
  *params = {PTSCAT_MODEL_SCARF, d.v1, d.a, d.units.two_m, d.units.hbar, 0.0, 0.0,
             d.tol, d.eps, nullptr, 0, PTSCAT_BACKEND_AUTO};
}

ptscat_status ptscat_model_from_name(const char* name, ptscat_model* out) {
  return guarded([&] {
    require(name, "name");
    require(out, "out");
    *out = static_cast<ptscat_model>(parse_model(name));
  });
}

const char* ptscat_model_name(ptscat_model model) {
  switch (model) {
    case PTSCAT_MODEL_RECT: return "rect";
    case PTSCAT_MODEL_SCARF: return "scarf";
    case PTSCAT_MODEL_RATIONAL_ODD: return "rational_odd";
    case PTSCAT_MODEL_EXP_LINEAR: return "exp_linear";
  }
  return "unknown";
}

ptscat_status ptscat_backend_from_name(const char* name, ptscat_backend* out) {
  return guarded([&] {
    require(name, "name");
    require(out, "out");
    *out = analysis::parse_backend(name) == analysis::Backend::analytic ? PTSCAT_BACKEND_ANALYTIC
                                                                        : PTSCAT_BACKEND_NUMERIC;
  });
}

const char* ptscat_backend_name(ptscat_backend backend) {
  switch (backend) {
    case PTSCAT_BACKEND_AUTO: return "auto";
    case PTSCAT_BACKEND_ANALYTIC: return "analytic";
    case PTSCAT_BACKEND_NUMERIC: return "numeric";
  }
  return "unknown";
}

const char* ptscat_handedness_name(ptscat_handedness handedness) {
  switch (handedness) {
    case PTSCAT_HANDEDNESS_NONE: return "none";
    case PTSCAT_HANDEDNESS_LEFT_ABSORPTIVE: return "left_absorptive";
    case PTSCAT_HANDEDNESS_RIGHT_ABSORPTIVE: return "right_absorptive";
  }
  return "unknown";
}

const char* ptscat_column_name(ptscat_column column) {
  if (column < PTSCAT_COLUMN_T || column > PTSCAT_COLUMN_A_R) return "unknown";
  return analysis::to_string(analysis::kColumns[static_cast<size_t>(column)]).data();
}

ptscat_status ptscat_potential_create(const ptscat_potential_params* params, ptscat_potential** out) {
  return guarded([&] {
    require(params, "params");
    require(out, "out");
    *out = nullptr;
    PotentialSpec spec;
    spec.model = to_model(params->model);
    spec.v1 = params->v1;
    spec.v2 = params->v2;
    spec.a = params->a;
    spec.s1 = params->s1;
    spec.s2 = params->s2;
    spec.units = {params->two_m, params->hbar};
    spec.validate();
    *out = new ptscat_potential{spec};
  });
}

void ptscat_potential_destroy(ptscat_potential* pot) { delete pot; }

ptscat_status ptscat_potential_evaluate(const ptscat_potential* pot, double x, double* re, double* im) {
  return guarded([&] {
    require(pot, "potential");
    require(re, "re");
    require(im, "im");
    const cplx v = evaluate_potential(pot->spec, x);
    *re = v.real();
    *im = v.imag();
  });
}

ptscat_status ptscat_potential_support_radius(const ptscat_potential* pot, double tol, double* out) {
  return guarded([&] {
    require(pot, "potential");
    require(out, "out");
    *out = support_radius(pot->spec, tol);
  });
}

ptscat_status ptscat_potential_is_pt_symmetric(const ptscat_potential* pot, int n_samples, int* out) {
  return guarded([&] {
    require(pot, "potential");
    require(out, "out");
    *out = check_pt_symmetry(pot->spec, n_samples) ? 1 : 0;
  });
}

ptscat_status ptscat_coefficients_compute(const ptscat_potential* pot, double E, ptscat_backend backend,
                                          const ptscat_numeric_options* opts, ptscat_coefficients* out) {
  return guarded([&] {
    require(pot, "potential");
    require(out, "out");
    *out = to_c(analysis::evaluate(pot->spec, E, to_backend(backend), to_options(opts)));
  });
}

ptscat_status ptscat_absorption_integral(const ptscat_potential* pot, double E, ptscat_side side,
                                         const ptscat_numeric_options* opts, double* out) {
  return guarded([&] {
    require(pot, "potential");
    require(out, "out");
    const auto sol = engine::solve_scattering(pot->spec, E, to_side(side), to_options(opts));
    *out = engine::absorption_integral(pot->spec, sol);
  });
}

ptscat_status ptscat_sweep_run(const ptscat_potential* pot, const double* grid, size_t n, ptscat_backend backend,
                               const ptscat_numeric_options* opts, ptscat_sweep** out) {
  return guarded([&] {
    require(pot, "potential");
    require(grid, "grid");
    require(out, "out");
    *out = nullptr;
    auto table = analysis::sweep(pot->spec, {grid, n}, to_backend(backend), to_options(opts));
    *out = new ptscat_sweep{std::move(table)};
  });
}

void ptscat_sweep_destroy(ptscat_sweep* sweep) { delete sweep; }

size_t ptscat_sweep_size(const ptscat_sweep* sweep) { return sweep ? sweep->table.rows.size() : 0; }

ptscat_status ptscat_sweep_row(const ptscat_sweep* sweep, size_t i, ptscat_coefficients* out) {
  return guarded([&] {
    require(sweep, "sweep");
    require(out, "out");
    if (i >= sweep->table.rows.size()) throw Error(ErrorCode::invalid_argument, "row index out of range");
    *out = to_c(sweep->table.rows[i]);
  });
}

double ptscat_sweep_reciprocity_residual(const ptscat_sweep* sweep) {
  return sweep ? sweep->table.reciprocity_residual : std::numeric_limits<double>::quiet_NaN();
}

ptscat_status ptscat_sweep_handedness(const ptscat_sweep* sweep, ptscat_handedness_summary* out) {
  return guarded([&] {
    require(sweep, "sweep");
    require(out, "out");
    const auto s = analysis::handedness_summary(sweep->table);
    *out = {s.min_gap, s.max_gap, s.monotone_claim ? 1 : 0};
  });
}

ptscat_status ptscat_sweep_write_csv(const ptscat_sweep* sweep, const char* path) {
  return guarded([&] {
    require(sweep, "sweep");
    require(path, "path");
    std::ostringstream os;
    io::write_csv(sweep->table, os);
    io::write_file(path, os.str());
  });
}

ptscat_status ptscat_sweep_write_json(const ptscat_sweep* sweep, const ptscat_report* report, const char* config_json,
                                      const char* path) {
  return guarded([&] {
    require(sweep, "sweep");
    require(report, "report");
    require(path, "path");
    nlohmann::json config = nlohmann::json::object();
    if (config_json) {
      config = nlohmann::json::parse(config_json, nullptr, false);
      if (config.is_discarded()) throw Error(ErrorCode::invalid_argument, "config_json is not valid JSON");
    }
    io::write_file(path, io::sweep_document(sweep->table, report->report, config).dump(2) + "\n");
  });
}

ptscat_status ptscat_report_create(const ptscat_sweep* sweep, double eps, const ptscat_numeric_options* opts,
                                   ptscat_report** out) {
  return guarded([&] {
    require(sweep, "sweep");
    require(out, "out");
    *out = nullptr;
    auto report = analysis::detect_anomalies(sweep->table, eps, to_options(opts));
    *out = new ptscat_report{std::move(report)};
  });
}

void ptscat_report_destroy(ptscat_report* report) { delete report; }

ptscat_handedness ptscat_report_handedness(const ptscat_report* report) {
  if (!report) return PTSCAT_HANDEDNESS_NONE;
  switch (report->report.handedness) {
    case analysis::Handedness::left_absorptive: return PTSCAT_HANDEDNESS_LEFT_ABSORPTIVE;
    case analysis::Handedness::right_absorptive: return PTSCAT_HANDEDNESS_RIGHT_ABSORPTIVE;
    case analysis::Handedness::none: break;
  }
  return PTSCAT_HANDEDNESS_NONE;
}

int ptscat_report_physical_left(const ptscat_report* report) { return report && report->report.physical_left; }
int ptscat_report_physical_right(const ptscat_report* report) { return report && report->report.physical_right; }

size_t ptscat_report_interval_count(const ptscat_report* report, ptscat_column column) {
  if (!report || column < PTSCAT_COLUMN_T || column > PTSCAT_COLUMN_A_R) return 0;
  return report->report.of(analysis::kColumns[static_cast<size_t>(column)]).size();
}

ptscat_status ptscat_report_interval(const ptscat_report* report, ptscat_column column, size_t i,
                                     ptscat_interval* out) {
  return guarded([&] {
    require(report, "report");
    require(out, "out");
    const auto& list = report->report.of(to_column(column));
    if (i >= list.size()) throw Error(ErrorCode::invalid_argument, "interval index out of range");
    *out = {list[i].lo, list[i].hi};
  });
}

ptscat_status ptscat_find_critical_v2(const ptscat_critical_params* params, const ptscat_numeric_options* opts,
                                      ptscat_critical_result* out) {
  return guarded([&] {
    require(params, "params");
    require(out, "out");
    analysis::CriticalSearch search;
    search.model = to_model(params->model);
    search.v1 = params->v1;
    search.a = params->a;
    search.units = {params->two_m, params->hbar};
    if (params->v2_low != 0.0 || params->v2_high != 0.0) search.v2_range = std::pair{params->v2_low, params->v2_high};
    search.tol = params->tol;
    search.eps = params->eps;
    if (params->grid) search.grid.assign(params->grid, params->grid + params->grid_size);
    if (params->backend != PTSCAT_BACKEND_AUTO) search.backend = to_backend(params->backend);
    const auto r = analysis::find_critical_v2(search, to_options(opts));
    *out = {r.v2_critical, r.bracket.first, r.bracket.second, r.predicate_evals};
  });
}

ptscat_status ptscat_compare_backends(const ptscat_potential* pot, const double* grid, size_t n,
                                      const ptscat_numeric_options* opts, ptscat_comparison* out) {
  return guarded([&] {
    require(pot, "potential");
    require(grid, "grid");
    require(out, "out");
    const auto c = analysis::compare_backends(pot->spec, {grid, n}, to_options(opts));
    *out = {c.T.max_relative,   c.T.worst_energy,   c.R_l.max_relative,
            c.R_l.worst_energy, c.R_r.max_relative, c.R_r.worst_energy};
  });
}

ptscat_status ptscat_write_plot_script(const char* csv_path, const char* title, const char* script_path) {
  return guarded([&] {
    require(csv_path, "csv_path");
    require(script_path, "script_path");
    std::ostringstream os;
    io::write_plot_script(csv_path, title ? title : "", os);
    io::write_file(script_path, os.str());
  });
}

}  // extern "C"
