#pragma once

#include <functional>
#include <span>
#include <vector>

#include "kcc_model.hpp"

namespace bellkcc::sweep {

enum class Method { FiniteDifference, Analytic };

struct SweepConfig {
  double beta_min = 0.40;
  double beta_max = 0.50;
  int steps = 100;
  double delta_beta = 1e-3;
  kcc::PairKind kind = kcc::PairKind::Nearest;
  Method method = Method::FiniteDifference;
  int threads = 1;
};

struct SweepSeries {
  std::vector<double> betas;
  std::vector<double> bfv;
  std::vector<double> dbfv;      // +inf where divergent[k] is set
  std::vector<bool> divergent;   // analytic derivative inside the beta_c window
  SweepConfig config;
};

struct CriticalEstimate {
  double beta_hat = 0.0;
  double peak_value = 0.0;
  double delta_beta = 0.0;
  Method method = Method::FiniteDifference;
};

// Throws InvalidArgument on a malformed config.
void validate(const SweepConfig& config);

// (f(beta + h) - f(beta - h)) / (2h)
double central_difference(const std::function<double(double)>& f, double beta, double h);

// Grid of steps + 1 points; each point is independent, so workers may split
// the index range without changing any value.
SweepSeries bfv_curve(const SweepConfig& config);

// Parabolic refinement around the discrete maximum of dbfv (first index wins
// ties). A divergent grid point is the peak itself. Needs steps >= 32.
CriticalEstimate estimate_critical(const SweepConfig& config);
CriticalEstimate estimate_critical(const SweepSeries& series);

// One estimate per delta_beta; deltas must be positive and strictly decreasing.
std::vector<CriticalEstimate> convergence_study(const SweepConfig& base, std::span<const double> deltas);

}  // namespace bellkcc::sweep
