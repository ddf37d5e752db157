#include "kcc_model.hpp"

#include <cmath>
#include <numbers>

namespace bellkcc::kcc {

namespace {

using std::numbers::pi;

void require_positive(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw Error(ErrorCode::NonPositiveBeta, "beta must be positive and finite, got " + std::to_string(beta));
}

// csch^2(x); zero once sinh(x)^2 would overflow.
double csch2(double x) {
  if (x > 350.0) return 0.0;
  const double s = std::sinh(x);
  return 1.0 / (s * s);
}

// coth(x) for x > 0.
double coth(double x) {
  if (x > 20.0) return 1.0;
  return 1.0 / std::tanh(x);
}

double sin_half_sq(double phi) {
  const double s = std::sin(0.5 * phi);
  return s * s;
}

}  // namespace

double critical_beta() noexcept { return 0.5 * std::log1p(std::numbers::sqrt2); }

DualParams dual_params(double beta) {
  require_positive(beta);
  DualParams d;
  d.beta = beta;
  const double x = 2.0 * beta;
  // chi = 2s/(1+s^2) with s = sinh(2b); rewritten through 1/s to stay finite.
  if (x > 350.0) {
    d.chi = 0.0;
  } else {
    const double s = std::sinh(x);
    d.chi = s < 1.0 ? 2.0 * s / (1.0 + s * s) : 2.0 / (s + 1.0 / s);
  }
  const double q = std::exp(-x);
  d.beta_star = 0.5 * (std::log1p(q) - std::log1p(-q));
  d.gamma = 1.0 / std::cosh(2.0 * d.beta_star);
  // sqrt(1 - gamma^2) = tanh(2 beta_star) exactly, without the cancellation.
  d.xi = std::tanh(2.0 * d.beta_star) / std::tanh(x);
  return d;
}

double magnetization(double beta) {
  require_positive(beta);
  const double x = 2.0 * beta;
  if (std::abs(beta - critical_beta()) <= kMagnetizationWindow) {
    // 4 tanh^2(2b_c) - 2 = 0 cancels the log-divergent elliptic factor.
    return -coth(x) * pi / (2.0 * pi);
  }
  if (x > 350.0) return -1.0;
  const double s = std::sinh(x);
  const double s2 = s * s;
  // 4 tanh^2 - 2 = 2(s^2 - 1)/(1 + s^2); chi' = |1 - s^2|/(1 + s^2).
  const double coefficient = 2.0 * (s2 - 1.0) / (1.0 + s2);
  const double chi_prime = std::abs(1.0 - s2) / (1.0 + s2);
  const double X = elliptic_X_complementary(chi_prime);
  return -coth(x) * (pi + coefficient * X) / (2.0 * pi);
}

double corr_nearest(double beta, double rel_tol) {
  require_positive(beta);
  const double a = csch2(2.0 * beta);
  const auto integrand = [a](double phi) {
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    const double num = (a - c) * c - s * s;
    // sin^2 + (a - cos)^2 = (1 - a)^2 + 4a sin^2(phi/2)
    const double den = std::sqrt((1.0 - a) * (1.0 - a) + 4.0 * a * sin_half_sq(phi));
    return num / den;
  };
  return integrate(integrand, 0.0, pi, rel_tol).value / pi;
}

namespace {

double t_kappa_with(const DualParams& d, int kappa, double rel_tol) {
  const double gamma = d.gamma;
  const double xi_minus_one = d.xi - 1.0;
  const auto integrand = [=](double phi) {
    // xi - cos(phi) = (xi - 1) + 2 sin^2(phi/2)
    const double u = xi_minus_one + 2.0 * sin_half_sq(phi);
    const double gs = gamma * std::sin(phi);
    const double num = u * std::cos(kappa * phi) + gs * std::sin(kappa * phi);
    return num / std::sqrt(gs * gs + u * u);
  };
  return integrate(integrand, 0.0, pi, rel_tol).value / pi;
}

}  // namespace

double t_kappa(double beta, int kappa, double rel_tol) {
  if (kappa < -2 || kappa > 2) throw Error(ErrorCode::InvalidArgument, "kappa must lie in {-2,...,2}");
  return t_kappa_with(dual_params(beta), kappa, rel_tol);
}

double corr_next_nearest(double beta, double rel_tol) {
  const DualParams d = dual_params(beta);
  std::array<double, 5> t{};
  for (int k = -2; k <= 2; ++k) t[k + 2] = t_kappa_with(d, k, rel_tol);
  const double ch = std::cosh(d.beta_star);
  const double sh = std::sinh(d.beta_star);
  const double tm2 = t[0], tm1 = t[1], t0 = t[2], tp1 = t[3], tp2 = t[4];
  return ch * ch * (tm1 * tm1 - tm2 * t0) - sh * sh * (tp1 * tp1 - tp2 * t0);
}

KccPoint correlators(double beta, double rel_tol) {
  return {beta, magnetization(beta), corr_nearest(beta, rel_tol), corr_next_nearest(beta, rel_tol)};
}

TwoQubitState reduced_density(double beta, PairKind kind, double rel_tol) {
  const double m = std::abs(magnetization(beta));
  const double c = std::abs(kind == PairKind::Nearest ? corr_nearest(beta, rel_tol)
                                                      : corr_next_nearest(beta, rel_tol));
  return TwoQubitState::diagonal((1.0 + 2.0 * m + c) / 4.0, (1.0 - c) / 4.0, (1.0 - c) / 4.0,
                                 (1.0 - 2.0 * m + c) / 4.0);
}

double bfv(double beta, PairKind kind, double rel_tol) {
  return horodecki_bfv(reduced_density(beta, kind, rel_tol)).value;
}

double dbfv_dbeta_analytic(double beta, double rel_tol) {
  require_positive(beta);
  if (std::abs(beta - critical_beta()) <= kDerivativeExclusion)
    throw Error(ErrorCode::DivergentAtCritical, "analytic derivative diverges at beta_c");
  const double x = 2.0 * beta;
  const double c = csch2(x);
  if (c == 0.0) return 0.0;
  const double prefactor = 8.0 * coth(x) * c * c;
  const auto integrand = [=](double phi) {
    // 1 - 2 cos(phi) c + c^2 = (1 - c)^2 + 4c sin^2(phi/2)
    const double d = (1.0 - c) * (1.0 - c) + 4.0 * c * sin_half_sq(phi);
    const double s = std::sin(phi);
    return prefactor * s * s / (d * std::sqrt(d));
  };
  return integrate(integrand, 0.0, pi, rel_tol).value / pi;
}

double pure_state_bfv(double beta) {
  if (!(beta >= 0.0) || !std::isfinite(beta))
    throw Error(ErrorCode::InvalidArgument, "beta must be non-negative and finite");
  const double c0 = beta == 0.0 ? 0.0 : magnetization(beta);
  return 2.0 * std::sqrt(2.0 - c0 * c0);
}

}  // namespace bellkcc::kcc
