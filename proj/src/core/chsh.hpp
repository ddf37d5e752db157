#pragma once

#include <cstdint>
#include <optional>

#include "qubit_state.hpp"

namespace bellkcc {

// Two measurement directions per observer; a* act on qubit 1, b* on qubit 2.
struct MeasurementSettings {
  Vec3 a1{}, a2{}, b1{}, b2{};
};

struct BfvResult {
  double value = 0.0;
  double upsilon1 = 0.0;  // largest eigenvalue of L^T L
  double upsilon2 = 0.0;  // second largest
  std::optional<MeasurementSettings> settings;
};

struct OptimizerConfig {
  int restarts = 8;
  int grid_points = 12;           // per scanned angle
  double simplex_tolerance = 1e-8;
  int max_evaluations = 20000;    // per restart
  std::uint64_t seed = 0;
};

// Throws UnnormalizedSetting when any vector's norm is off by more than 1e-12.
void check_settings(const MeasurementSettings& s);

// Q11 + Q12 + Q21 - Q22 with Q_ij = Tr[(a_i.sigma)(x)(b_j.sigma) rho],
// evaluated directly on the density matrix.
double chsh_value(const TwoQubitState& rho, const MeasurementSettings& s);

// Same functional through the correlation matrix, sum of a_i^T L b_j.
double chsh_value_from_correlations(const Mat3& L, const MeasurementSettings& s);

// 2 sqrt(u1 + u2) with u1 >= u2 the top eigenvalues of L^T L.
BfvResult horodecki_bfv(const TwoQubitState& rho);

// Settings attaining the Horodecki value, built from the top two
// eigenvectors of L^T L. Degenerate eigenvalues resolve to the lowest index.
MeasurementSettings optimal_settings(const TwoQubitState& rho);

// Direct maximization over the eight polar/azimuthal angles: per restart a
// 12x12 scan over the polar angles of a1 and b1, then Nelder-Mead.
BfvResult maximize_chsh(const TwoQubitState& rho, const OptimizerConfig& config = {});

}  // namespace bellkcc
