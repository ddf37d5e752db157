#pragma once

#include <functional>

#include "error.hpp"

namespace bellkcc {

inline constexpr double kDefaultRelTol = 1e-10;
inline constexpr int kMaxQuadratureDepth = 60;

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int subdivisions = 0;
};

// Raised on non-convergence; best_estimate holds the partial result.
class QuadratureError : public Error {
 public:
  QuadratureError(ErrorCode code, const std::string& what, QuadratureResult best)
      : Error(code, what), best_(best) {}
  [[nodiscard]] const QuadratureResult& best_estimate() const noexcept { return best_; }

 private:
  QuadratureResult best_;
};

// Globally adaptive Gauss-Kronrod (7/15) bisection. The panel with the
// largest |K15 - G7| is split until the summed estimate is below
// max(rel_tol * |value|, 1e-14). Nodes are interior, so f is never sampled
// at lo or hi.
QuadratureResult integrate(const std::function<double(double)>& f, double lo, double hi,
                           double rel_tol = kDefaultRelTol);

// Complete elliptic integral of the first kind,
// X(chi) = int_0^{pi/2} (1 - chi^2 sin^2 t)^{-1/2} dt, by the AGM.
double elliptic_X(double chi);

// Same integral given the complementary modulus sqrt(1 - chi^2) directly,
// which keeps precision when chi is within rounding of 1.
double elliptic_X_complementary(double chi_prime);

}  // namespace bellkcc
