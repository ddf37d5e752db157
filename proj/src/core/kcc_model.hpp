#pragma once

#include "chsh.hpp"
#include "quadrature.hpp"

namespace bellkcc::kcc {

enum class PairKind { Nearest, NextToNearest };

// Couplings derived from beta. chi is the elliptic modulus of the
// magnetization formula; beta_star, gamma and xi enter the T_kappa integrals.
struct DualParams {
  double beta = 0.0;
  double chi = 0.0;        // 2 sinh(2b) / cosh^2(2b)
  double beta_star = 0.0;  // tanh(beta_star) = exp(-2b)
  double gamma = 0.0;      // 1 / cosh(2 beta_star)
  double xi = 0.0;         // sqrt(1 - gamma^2) / tanh(2b)
};

// Signed correlators exactly as the closed formulas produce them.
struct KccPoint {
  double beta = 0.0;
  double m = 0.0;
  double c_nn = 0.0;
  double c_nnn = 0.0;
};

// Exclusion half-width around beta_c for the analytic derivative.
inline constexpr double kDerivativeExclusion = 1e-7;
// Half-width around beta_c where the magnetization takes its closed value.
inline constexpr double kMagnetizationWindow = 1e-8;

// 1/2 ln(1 + sqrt 2).
double critical_beta() noexcept;

DualParams dual_params(double beta);

// <sigma^z_i> = -coth(2b)[pi + (4 tanh^2(2b) - 2) X(chi)] / (2 pi)
double magnetization(double beta);

// Nearest-pair <sigma^z_i sigma^z_j> from the one-dimensional phi integral
// with a = sinh^{-2}(2b).
double corr_nearest(double beta, double rel_tol = kDefaultRelTol);

// T_kappa for kappa in {-2,...,2}.
double t_kappa(double beta, int kappa, double rel_tol = kDefaultRelTol);

// cosh^2(b*)(T_{-1}^2 - T_{-2}T_0) - sinh^2(b*)(T_1^2 - T_2 T_0)
double corr_next_nearest(double beta, double rel_tol = kDefaultRelTol);

KccPoint correlators(double beta, double rel_tol = kDefaultRelTol);

// rho_ij = 1/4 [I + m (Z_i + Z_j) + c Z_i Z_j] with the magnitudes |m| and
// |c|; the printed formulas carry a negative overall sign for m and c_nn.
TwoQubitState reduced_density(double beta, PairKind kind, double rel_tol = kDefaultRelTol);

// Horodecki BFV of reduced_density; equals 2|c| for this diagonal family.
double bfv(double beta, PairKind kind, double rel_tol = kDefaultRelTol);

// dB/dbeta = (1/pi) int_0^pi csch^2(2b) sin^2(phi) Y(phi, b) dphi with
// Y = 8 coth(2b) csch^2(2b) / (1 - 2 cos(phi) csch^2(2b) + csch^4(2b))^{3/2}.
// Throws DivergentAtCritical within kDerivativeExclusion of beta_c.
double dbfv_dbeta_analytic(double beta, double rel_tol = 1e-9);

// BFV of one qubit against the rest of the lattice, 2 sqrt(2 - c0^2) with
// c0 the nearest-neighbour Ising correlator (0 at beta = 0).
double pure_state_bfv(double beta);

}  // namespace bellkcc::kcc
