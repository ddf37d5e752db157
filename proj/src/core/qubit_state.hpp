#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "error.hpp"
#include "linalg.hpp"

namespace bellkcc {

inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kTraceTolerance = 1e-12;
// Quadrature-built states carry ~1e-12 noise on zero eigenvalues.
inline constexpr double kPsdTolerance = -1e-10;

struct Violation {
  ErrorCode code;
  double residual;
};

struct ValidationReport {
  double hermitian_residual = 0.0;  // max |rho - rho^dagger|
  double trace_residual = 0.0;      // |Tr rho - 1|
  double min_eigenvalue = 0.0;
  std::vector<Violation> violations;

  [[nodiscard]] bool ok() const noexcept { return violations.empty(); }
  [[nodiscard]] std::string describe() const;
};

// Checks a raw matrix against the density-matrix invariants. Non-finite
// entries are reported as InvalidArgument.
ValidationReport validate_state(const Matrix4c& entries);

// A validated two-qubit density matrix. Immutable once built.
class TwoQubitState {
 public:
  // Throws Error with the first violated invariant.
  static TwoQubitState make(const Matrix4c& entries);
  static TwoQubitState diagonal(double p00, double p01, double p10, double p11);
  static TwoQubitState from_pure(const std::array<std::complex<double>, 4>& psi);

  [[nodiscard]] const Matrix4c& entries() const noexcept { return entries_; }
  [[nodiscard]] std::complex<double> operator()(int row, int col) const {
    return entries_[row * 4 + col];
  }

 private:
  explicit TwoQubitState(const Matrix4c& entries) : entries_(entries) {}
  Matrix4c entries_;
};

// (L)_{st} = Re Tr[rho sigma_s (x) sigma_t], s,t over x,y,z.
Mat3 correlation_matrix(const TwoQubitState& rho);

// G G^dagger / Tr, with G a 4x4 matrix of standard complex Gaussians drawn
// from a generator seeded with `seed`.
TwoQubitState random_state(std::uint64_t seed);

// p*a + (1-p)*b
TwoQubitState mix(const TwoQubitState& a, const TwoQubitState& b, double p);

}  // namespace bellkcc
