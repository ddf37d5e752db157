#include "sweep.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

namespace bellkcc::sweep {

void validate(const SweepConfig& c) {
  if (!(c.beta_min > 0.0 && c.beta_min < c.beta_max) || !std::isfinite(c.beta_max))
    throw Error(ErrorCode::InvalidArgument, "need 0 < beta_min < beta_max");
  if (c.steps < 8) throw Error(ErrorCode::InvalidArgument, "steps must be >= 8");
  if (!(c.delta_beta > 0.0) || !std::isfinite(c.delta_beta))
    throw Error(ErrorCode::InvalidArgument, "delta_beta must be positive");
  if (c.method == Method::FiniteDifference && !(c.beta_min - c.delta_beta > 0.0))
    throw Error(ErrorCode::InvalidArgument, "beta_min - delta_beta must stay positive");
  if (c.threads < 1) throw Error(ErrorCode::InvalidArgument, "threads must be >= 1");
}

double central_difference(const std::function<double(double)>& f, double beta, double h) {
  return (f(beta + h) - f(beta - h)) / (2.0 * h);
}

SweepSeries bfv_curve(const SweepConfig& config) {
  validate(config);
  const int n = config.steps + 1;
  SweepSeries s;
  s.config = config;
  s.betas.resize(n);
  s.bfv.resize(n);
  s.dbfv.resize(n);
  s.divergent.assign(n, false);
  const double spacing = (config.beta_max - config.beta_min) / config.steps;
  for (int k = 0; k < n; ++k) s.betas[k] = k == config.steps ? config.beta_max : config.beta_min + k * spacing;

  const auto kind = config.kind;
  const auto b = [kind](double beta) { return kcc::bfv(beta, kind); };
  std::vector<char> divergent(n, 0);

  auto evaluate = [&](int k) {
    const double beta = s.betas[k];
    s.bfv[k] = b(beta);
    if (config.method == Method::FiniteDifference) {
      s.dbfv[k] = central_difference(b, beta, config.delta_beta);
      return;
    }
    try {
      s.dbfv[k] = std::abs(kcc::dbfv_dbeta_analytic(beta));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DivergentAtCritical) throw;
      s.dbfv[k] = std::numeric_limits<double>::infinity();
      divergent[k] = 1;
    }
  };

  const int workers = std::min(config.threads, n);
  if (workers <= 1) {
    for (int k = 0; k < n; ++k) evaluate(k);
  } else {
    std::vector<std::exception_ptr> failures(workers);
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (int k = w; k < n; k += workers) evaluate(k);
        } catch (...) {
          failures[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (const auto& f : failures)
      if (f) std::rethrow_exception(f);
  }
  for (int k = 0; k < n; ++k) s.divergent[k] = divergent[k] != 0;
  return s;
}

CriticalEstimate estimate_critical(const SweepSeries& series) {
  const auto& y = series.dbfv;
  const int n = static_cast<int>(y.size());
  if (n < 33) throw Error(ErrorCode::InvalidArgument, "critical-point estimation needs steps >= 32");

  CriticalEstimate est;
  est.delta_beta = series.config.delta_beta;
  est.method = series.config.method;

  for (int k = 0; k < n; ++k) {
    if (series.divergent[k]) {
      est.beta_hat = series.betas[k];
      est.peak_value = std::numeric_limits<double>::infinity();
      return est;
    }
  }

  int top = 0;
  for (int k = 1; k < n; ++k)
    if (y[k] > y[top]) top = k;
  if (top == 0 || top == n - 1)
    throw Error(ErrorCode::NoInteriorPeak, "derivative maximum sits on the grid boundary");

  const double y0 = y[top - 1], y1 = y[top], y2 = y[top + 1];
  const double curvature = y0 - 2.0 * y1 + y2;
  double offset = curvature < 0.0 ? 0.5 * (y0 - y2) / curvature : 0.0;
  offset = std::clamp(offset, -0.5, 0.5);
  const double spacing = series.betas[top + 1] - series.betas[top];
  est.beta_hat = series.betas[top] + offset * spacing;
  est.peak_value = y1;
  return est;
}

CriticalEstimate estimate_critical(const SweepConfig& config) {
  if (config.steps < 32) throw Error(ErrorCode::InvalidArgument, "critical-point estimation needs steps >= 32");
  return estimate_critical(bfv_curve(config));
}

std::vector<CriticalEstimate> convergence_study(const SweepConfig& base, std::span<const double> deltas) {
  if (deltas.empty()) throw Error(ErrorCode::InvalidArgument, "no finite-difference steps given");
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (!(deltas[i] > 0.0)) throw Error(ErrorCode::InvalidArgument, "finite-difference steps must be positive");
    if (i > 0 && !(deltas[i] < deltas[i - 1]))
      throw Error(ErrorCode::InvalidArgument, "finite-difference steps must be strictly decreasing");
  }
  std::vector<CriticalEstimate> table;
  for (double d : deltas) {
    SweepConfig c = base;
    c.delta_beta = d;
    table.push_back(estimate_critical(c));
  }
  return table;
}

}  // namespace bellkcc::sweep
