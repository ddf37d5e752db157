// extern "C" surface over the C++ core. Exceptions never cross this boundary.

#include "bellkcc/bellkcc.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "chsh.hpp"
#include "io.hpp"
#include "kcc_model.hpp"
#include "oracles.hpp"
#include "quadrature.hpp"
#include "sweep.hpp"

using namespace bellkcc;

struct bk_state {
  TwoQubitState value;
};

struct bk_series {
  sweep::SweepSeries value;
};

struct bk_ground_state {
  oracles::GroundStateVector value;
};

struct bk_comparison {
  oracles::ComparisonReport value;
};

namespace {

thread_local std::string last_error;

bk_status fail(bk_status status, const std::string& message) {
  last_error = message;
  return status;
}

template <typename F>
bk_status guarded(F&& body) {
  try {
    body();
    return BK_OK;
  } catch (const Error& e) {
    return fail(static_cast<bk_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(BK_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(BK_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(BK_ERR_INTERNAL, "unknown failure");
  }
}

void require(const void* p, const char* what) {
  if (p == nullptr) throw Error(ErrorCode::InvalidArgument, std::string(what) + " must not be NULL");
}

Matrix4c matrix_from(const double* entries) {
  Matrix4c m{};
  for (int k = 0; k < 16; ++k) m[k] = {entries[2 * k], entries[2 * k + 1]};
  return m;
}

char* duplicate(const std::string& s) {
  auto* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

void copy3(const Vec3& v, double* out) {
  for (int k = 0; k < 3; ++k) out[k] = v[k];
}

Vec3 vec3(const double* in) { return {in[0], in[1], in[2]}; }

bk_settings to_c(const MeasurementSettings& s) {
  bk_settings c{};
  copy3(s.a1, c.a1);
  copy3(s.a2, c.a2);
  copy3(s.b1, c.b1);
  copy3(s.b2, c.b2);
  return c;
}

bk_bfv to_c(const BfvResult& r) {
  bk_bfv c{};
  c.value = r.value;
  c.upsilon1 = r.upsilon1;
  c.upsilon2 = r.upsilon2;
  c.has_settings = r.settings.has_value() ? 1 : 0;
  if (r.settings) c.settings = to_c(*r.settings);
  return c;
}

kcc::PairKind to_kind(bk_pair_kind k) {
  switch (k) {
    case BK_PAIR_NEAREST: return kcc::PairKind::Nearest;
    case BK_PAIR_NEXT_TO_NEAREST: return kcc::PairKind::NextToNearest;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown pair kind");
}

sweep::SweepConfig to_cpp(const bk_sweep_config& c) {
  sweep::SweepConfig s;
  s.beta_min = c.beta_min;
  s.beta_max = c.beta_max;
  s.steps = c.steps;
  s.delta_beta = c.delta_beta;
  s.kind = to_kind(c.kind);
  switch (c.method) {
    case BK_METHOD_FINITE_DIFFERENCE: s.method = sweep::Method::FiniteDifference; break;
    case BK_METHOD_ANALYTIC: s.method = sweep::Method::Analytic; break;
    default: throw Error(ErrorCode::InvalidArgument, "unknown derivative method");
  }
  s.threads = c.threads;
  return s;
}

bk_critical_estimate to_c(const sweep::CriticalEstimate& e) {
  return {e.beta_hat, e.peak_value, e.delta_beta,
          e.method == sweep::Method::Analytic ? BK_METHOD_ANALYTIC : BK_METHOD_FINITE_DIFFERENCE};
}

template <typename F>
bk_status scalar(double* out, F&& f) {
  return guarded([&] {
    require(out, "out");
    *out = f();
  });
}

}  // namespace

extern "C" {

const char* bk_status_name(bk_status status) {
  if (status == BK_OK) return "Ok";
  if (status == BK_ERR_INTERNAL) return "Internal";
  return error_code_name(static_cast<ErrorCode>(status));
}

const char* bk_last_error(void) { return last_error.c_str(); }

const char* bk_version(void) { return "1.0.0"; }

void bk_string_free(char* s) { std::free(s); }

bk_status bk_validate(const double entries[32], bk_validation* out) {
  return guarded([&] {
    require(entries, "entries");
    require(out, "out");
    const auto r = validate_state(matrix_from(entries));
    *out = {r.hermitian_residual, r.trace_residual, r.min_eigenvalue, 0, 0, 0};
    for (const auto& v : r.violations) {
      if (v.code == ErrorCode::InvalidArgument) throw Error(v.code, "matrix has non-finite entries");
      if (v.code == ErrorCode::NonHermitian) out->non_hermitian = 1;
      if (v.code == ErrorCode::TraceNotOne) out->trace_not_one = 1;
      if (v.code == ErrorCode::NotPositive) out->not_positive = 1;
    }
  });
}

bk_status bk_state_create(const double entries[32], bk_state** out) {
  return guarded([&] {
    require(entries, "entries");
    require(out, "out");
    *out = new bk_state{TwoQubitState::make(matrix_from(entries))};
  });
}

bk_status bk_state_from_json(const char* text, bk_state** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new bk_state{io::parse_state(text)};
  });
}

bk_status bk_state_load(const char* path, bk_state** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new bk_state{io::parse_state(io::read_file(path))};
  });
}

bk_status bk_state_random(uint64_t seed, bk_state** out) {
  return guarded([&] {
    require(out, "out");
    *out = new bk_state{random_state(seed)};
  });
}

bk_status bk_state_entries(const bk_state* state, double out[32]) {
  return guarded([&] {
    require(state, "state");
    require(out, "out");
    const auto& m = state->value.entries();
    for (int k = 0; k < 16; ++k) {
      out[2 * k] = m[k].real();
      out[2 * k + 1] = m[k].imag();
    }
  });
}

bk_status bk_state_to_json(const bk_state* state, char** out) {
  return guarded([&] {
    require(state, "state");
    require(out, "out");
    *out = duplicate(io::state_to_json(state->value));
  });
}

void bk_state_free(bk_state* state) { delete state; }

bk_status bk_correlation_matrix(const bk_state* state, double out[9]) {
  return guarded([&] {
    require(state, "state");
    require(out, "out");
    const Mat3 L = correlation_matrix(state->value);
    for (int k = 0; k < 9; ++k) out[k] = L[k];
  });
}

void bk_optimizer_config_default(bk_optimizer_config* config) {
  if (config == nullptr) return;
  const OptimizerConfig d;
  *config = {d.restarts, d.grid_points, d.simplex_tolerance, d.max_evaluations, d.seed};
}

bk_status bk_chsh_value(const bk_state* state, const bk_settings* settings, double* out) {
  return guarded([&] {
    require(state, "state");
    require(settings, "settings");
    require(out, "out");
    const MeasurementSettings s{vec3(settings->a1), vec3(settings->a2), vec3(settings->b1), vec3(settings->b2)};
    *out = chsh_value(state->value, s);
  });
}

bk_status bk_horodecki_bfv(const bk_state* state, bk_bfv* out) {
  return guarded([&] {
    require(state, "state");
    require(out, "out");
    *out = to_c(horodecki_bfv(state->value));
  });
}

bk_status bk_maximize_chsh(const bk_state* state, const bk_optimizer_config* config, bk_bfv* out) {
  return guarded([&] {
    require(state, "state");
    require(out, "out");
    OptimizerConfig c;
    if (config != nullptr)
      c = {config->restarts, config->grid_points, config->simplex_tolerance, config->max_evaluations, config->seed};
    *out = to_c(maximize_chsh(state->value, c));
  });
}

bk_status bk_optimal_settings(const bk_state* state, bk_settings* out) {
  return guarded([&] {
    require(state, "state");
    require(out, "out");
    *out = to_c(optimal_settings(state->value));
  });
}

bk_status bk_integrate(bk_integrand f, void* user, double lo, double hi, double rel_tol,
                       bk_quadrature_result* out) {
  if (f == nullptr || out == nullptr) return fail(BK_ERR_INVALID_ARGUMENT, "integrand and out must not be NULL");
  try {
    const auto r = integrate([f, user](double x) { return f(x, user); }, lo, hi, rel_tol);
    *out = {r.value, r.error_estimate, r.subdivisions};
    return BK_OK;
  } catch (const QuadratureError& e) {
    const auto& b = e.best_estimate();
    *out = {b.value, b.error_estimate, b.subdivisions};
    return fail(static_cast<bk_status>(e.code()), e.what());
  } catch (const Error& e) {
    return fail(static_cast<bk_status>(e.code()), e.what());
  } catch (const std::exception& e) {
    return fail(BK_ERR_INTERNAL, e.what());
  }
}

bk_status bk_elliptic_x(double chi, double* out) {
  return scalar(out, [&] { return elliptic_X(chi); });
}

double bk_critical_beta(void) { return kcc::critical_beta(); }

bk_status bk_kcc_dual_params(double beta, bk_dual_params* out) {
  return guarded([&] {
    require(out, "out");
    const auto d = kcc::dual_params(beta);
    *out = {d.beta, d.chi, d.beta_star, d.gamma, d.xi};
  });
}

bk_status bk_magnetization(double beta, double* out) {
  return scalar(out, [&] { return kcc::magnetization(beta); });
}

bk_status bk_corr_nearest(double beta, double* out) {
  return scalar(out, [&] { return kcc::corr_nearest(beta); });
}

bk_status bk_t_kappa(double beta, int kappa, double* out) {
  return scalar(out, [&] { return kcc::t_kappa(beta, kappa); });
}

bk_status bk_corr_next_nearest(double beta, double* out) {
  return scalar(out, [&] { return kcc::corr_next_nearest(beta); });
}

bk_status bk_correlators(double beta, bk_kcc_point* out) {
  return guarded([&] {
    require(out, "out");
    const auto p = kcc::correlators(beta);
    *out = {p.beta, p.m, p.c_nn, p.c_nnn};
  });
}

bk_status bk_reduced_density(double beta, bk_pair_kind kind, bk_state** out) {
  return guarded([&] {
    require(out, "out");
    *out = new bk_state{kcc::reduced_density(beta, to_kind(kind))};
  });
}

bk_status bk_kcc_bfv(double beta, bk_pair_kind kind, double* out) {
  return scalar(out, [&] { return kcc::bfv(beta, to_kind(kind)); });
}

bk_status bk_dbfv_dbeta_analytic(double beta, double* out) {
  return scalar(out, [&] { return kcc::dbfv_dbeta_analytic(beta); });
}

bk_status bk_pure_state_bfv(double beta, double* out) {
  return scalar(out, [&] { return kcc::pure_state_bfv(beta); });
}

void bk_sweep_config_default(bk_sweep_config* config) {
  if (config == nullptr) return;
  const sweep::SweepConfig d;
  *config = {d.beta_min, d.beta_max, d.steps, d.delta_beta, BK_PAIR_NEAREST, BK_METHOD_FINITE_DIFFERENCE, d.threads};
}

bk_status bk_bfv_curve(const bk_sweep_config* config, bk_series** out) {
  return guarded([&] {
    require(config, "config");
    require(out, "out");
    *out = new bk_series{sweep::bfv_curve(to_cpp(*config))};
  });
}

size_t bk_series_size(const bk_series* series) { return series == nullptr ? 0 : series->value.betas.size(); }

bk_status bk_series_point(const bk_series* series, size_t index, double* beta, double* bfv, double* dbfv,
                          int* divergent) {
  return guarded([&] {
    require(series, "series");
    const auto& s = series->value;
    if (index >= s.betas.size()) throw Error(ErrorCode::IndexOutOfRange, "series index out of range");
    if (beta) *beta = s.betas[index];
    if (bfv) *bfv = s.bfv[index];
    if (dbfv) *dbfv = s.dbfv[index];
    if (divergent) *divergent = s.divergent[index] ? 1 : 0;
  });
}

bk_status bk_series_csv(const bk_series* series, char** out) {
  return guarded([&] {
    require(series, "series");
    require(out, "out");
    *out = duplicate(io::series_csv(series->value));
  });
}

bk_status bk_series_json(const bk_series* series, char** out) {
  return guarded([&] {
    require(series, "series");
    require(out, "out");
    *out = duplicate(io::series_json(series->value));
  });
}

bk_status bk_series_svg(const bk_series* series, char** out) {
  return guarded([&] {
    require(series, "series");
    require(out, "out");
    *out = duplicate(io::series_svg(series->value));
  });
}

bk_status bk_series_estimate_critical(const bk_series* series, bk_critical_estimate* out) {
  return guarded([&] {
    require(series, "series");
    require(out, "out");
    *out = to_c(sweep::estimate_critical(series->value));
  });
}

void bk_series_free(bk_series* series) { delete series; }

bk_status bk_estimate_critical(const bk_sweep_config* config, bk_critical_estimate* out) {
  return guarded([&] {
    require(config, "config");
    require(out, "out");
    *out = to_c(sweep::estimate_critical(to_cpp(*config)));
  });
}

bk_status bk_convergence_study(const bk_sweep_config* base, const double* deltas, size_t n,
                               bk_critical_estimate* out) {
  return guarded([&] {
    require(base, "base");
    require(deltas, "deltas");
    require(out, "out");
    const auto table = sweep::convergence_study(to_cpp(*base), std::span<const double>(deltas, n));
    for (std::size_t i = 0; i < table.size(); ++i) out[i] = to_c(table[i]);
  });
}

bk_status bk_ising_expectation(int side, double beta, const int* sites_xy, size_t n_sites, int threads,
                               double* out) {
  return guarded([&] {
    require(out, "out");
    if (n_sites > 0) require(sites_xy, "sites_xy");
    std::vector<oracles::Site> sites(n_sites);
    for (std::size_t i = 0; i < n_sites; ++i) sites[i] = {sites_xy[2 * i], sites_xy[2 * i + 1]};
    *out = oracles::ising_expectation({side, beta}, sites, threads);
  });
}

bk_status bk_ising_displacement(int side, double beta, int dx, int dy, int threads, double* out) {
  return scalar(out, [&] { return oracles::ising_displacement_correlator({side, beta}, {dx, dy}, threads); });
}

bk_status bk_kcc_edge_index(int side, int x, int y, int vertical, int* out) {
  return guarded([&] {
    require(out, "out");
    if (side < 2 || side > oracles::kMaxKccSide)
      throw Error(ErrorCode::LatticeTooLarge, "KCC torus side must lie in [2, 3]");
    const oracles::KccTorus t{side};
    *out = vertical ? t.vertical_edge({x, y}) : t.horizontal_edge({x, y});
  });
}

bk_status bk_kcc_ground_state(int side, double beta, bk_ground_state** out) {
  return guarded([&] {
    require(out, "out");
    *out = new bk_ground_state{oracles::kcc_ground_state({side}, beta)};
  });
}

size_t bk_ground_state_size(const bk_ground_state* state) {
  return state == nullptr ? 0 : state->value.amplitudes.size();
}

bk_status bk_ground_state_amplitudes(const bk_ground_state* state, double* out, size_t n) {
  return guarded([&] {
    require(state, "state");
    require(out, "out");
    const auto& a = state->value.amplitudes;
    if (n < a.size()) throw Error(ErrorCode::InvalidArgument, "output buffer too small");
    std::memcpy(out, a.data(), a.size() * sizeof(double));
  });
}

bk_status bk_ground_state_reduce_pair(const bk_ground_state* state, int i, int j, bk_state** out) {
  return guarded([&] {
    require(state, "state");
    require(out, "out");
    *out = new bk_state{oracles::reduce_pair(state->value, i, j)};
  });
}

void bk_ground_state_free(bk_ground_state* state) { delete state; }

const char* bk_observable_name(int observable) {
  if (observable < 0 || observable >= static_cast<int>(oracles::kObservables.size())) return nullptr;
  return oracles::observable_name(oracles::kObservables[observable]);
}

bk_status bk_compare_formulas(double beta, const int* sides, size_t n_sides, int threads, bk_comparison** out) {
  return guarded([&] {
    require(out, "out");
    require(sides, "sides");
    *out = new bk_comparison{oracles::compare_formulas(beta, std::span<const int>(sides, n_sides), threads)};
  });
}

size_t bk_comparison_rows(const bk_comparison* report) {
  return report == nullptr ? 0 : report->value.rows.size();
}

bk_status bk_comparison_row(const bk_comparison* report, size_t row, int* side, double enumerated[5]) {
  return guarded([&] {
    require(report, "report");
    const auto& rows = report->value.rows;
    if (row >= rows.size()) throw Error(ErrorCode::IndexOutOfRange, "comparison row out of range");
    if (side) *side = rows[row].side;
    if (enumerated)
      for (int o = 0; o < 5; ++o) enumerated[o] = rows[row].enumerated[o];
  });
}

bk_status bk_comparison_match(const bk_comparison* report, int formula, size_t row, double* value,
                              int* best_observable, double* deviation) {
  return guarded([&] {
    require(report, "report");
    if (formula < 0 || formula > 2) throw Error(ErrorCode::IndexOutOfRange, "formula index must be 0, 1 or 2");
    const auto& m = report->value.matches[formula];
    if (row >= m.best.size()) throw Error(ErrorCode::IndexOutOfRange, "comparison row out of range");
    if (value) *value = m.value;
    if (best_observable) *best_observable = static_cast<int>(m.best[row]);
    if (deviation) *deviation = m.deviation[row];
  });
}

bk_status bk_comparison_csv(const bk_comparison* report, char** out) {
  return guarded([&] {
    require(report, "report");
    require(out, "out");
    *out = duplicate(io::comparison_csv(report->value));
  });
}

void bk_comparison_free(bk_comparison* report) { delete report; }

bk_status bk_write_text_file(const char* path, const char* text) {
  return guarded([&] {
    require(path, "path");
    require(text, "text");
    io::write_file(path, text);
  });
}

}  // extern "C"
