#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qubit_state.hpp"

namespace bellkcc::oracles {

inline constexpr int kMaxIsingSide = 5;
inline constexpr int kMaxKccSide = 3;

struct Site {
  int x = 0;
  int y = 0;
};

// Classical Ising model on an L x L torus with weight exp(beta sum theta theta').
// Site (x, y) is bit y*L + x of a configuration mask; bit 1 means theta = -1.
struct IsingTorus {
  int side = 2;
  double beta = 0.0;
};

// <prod_{v} theta_v> by full enumeration of all 2^{L^2} configurations.
// Duplicate sites cancel in pairs.
double ising_expectation(const IsingTorus& torus, std::span<const Site> vertices, int threads = 1);

// Translation-averaged <theta_r theta_{r+d}>.
double ising_displacement_correlator(const IsingTorus& torus, Site displacement, int threads = 1);

// Edge e of the KCC torus: horizontal edge from r to r+x at 2(r.y*L + r.x),
// vertical edge from r to r+y at 2(r.y*L + r.x) + 1.
struct KccTorus {
  int side = 2;

  [[nodiscard]] int qubits() const noexcept { return 2 * side * side; }
  [[nodiscard]] int vertices() const noexcept { return side * side; }
  [[nodiscard]] int horizontal_edge(Site r) const noexcept;
  [[nodiscard]] int vertical_edge(Site r) const noexcept;
  // Edges touched by the vertex operator at r (sigma^x on each).
  [[nodiscard]] std::uint32_t vertex_flip_mask(Site r) const noexcept;
  // Edges bounding the face whose lower-left corner is r.
  [[nodiscard]] std::uint32_t face_mask(Site r) const noexcept;
};

// Real, non-negative amplitudes in the computational basis; bit e of the
// basis index set means edge e is spin down.
struct GroundStateVector {
  KccTorus torus;
  std::vector<double> amplitudes;
};

// Normalized exp(beta sum_j sigma^z_j(g)/2) g|0> summed over the 2^{L^2-1}
// group elements generated by all but one vertex operator.
GroundStateVector kcc_ground_state(const KccTorus& torus, double beta);

// Exact partial trace onto edges i (first qubit) and j (second qubit).
TwoQubitState reduce_pair(const GroundStateVector& state, int i, int j);

// <psi| P_mask |psi> for the Pauli-X string on `mask`.
double flip_overlap(const GroundStateVector& state, std::uint32_t mask);

// Ising observables tabulated by compare_formulas.
enum class Observable { D10, D11, D20, D21, Plaquette };
inline constexpr std::array<Observable, 5> kObservables = {
    Observable::D10, Observable::D11, Observable::D20, Observable::D21, Observable::Plaquette};
const char* observable_name(Observable o) noexcept;

struct ComparisonRow {
  int side = 0;
  std::array<double, 5> enumerated{};  // indexed like kObservables
};

struct FormulaMatch {
  std::string formula;                 // "magnetization", "corr_nearest", "corr_next_nearest"
  double value = 0.0;                  // thermodynamic-limit magnitude
  std::vector<Observable> best;        // per side
  std::vector<double> deviation;       // per side, |enumerated(best) - value|
};

struct ComparisonReport {
  double beta = 0.0;
  std::vector<ComparisonRow> rows;
  std::array<FormulaMatch, 3> matches;
};

// Enumerated correlators against |m|, |c_nn| and |c_nnn| at the same beta.
ComparisonReport compare_formulas(double beta, std::span<const int> sides, int threads = 1);

}  // namespace bellkcc::oracles
