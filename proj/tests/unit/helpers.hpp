#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <random>

#include <doctest.h>

#include "chsh.hpp"
#include "linalg.hpp"
#include "qubit_state.hpp"

namespace testing {

using bellkcc::Matrix4c;
using bellkcc::TwoQubitState;
using cd = std::complex<double>;

inline TwoQubitState bell_phi_plus() {
  const double r = 1.0 / std::sqrt(2.0);
  return TwoQubitState::from_pure({cd{r, 0}, cd{0, 0}, cd{0, 0}, cd{r, 0}});
}

inline TwoQubitState product_00() { return TwoQubitState::diagonal(1, 0, 0, 0); }

inline TwoQubitState maximally_mixed() { return TwoQubitState::diagonal(0.25, 0.25, 0.25, 0.25); }

// 2x2 unitary exp(-i angle/2 n.sigma), row-major.
inline std::array<cd, 4> su2(const bellkcc::Vec3& n, double angle) {
  const double c = std::cos(angle / 2), s = std::sin(angle / 2);
  const cd i{0, 1};
  return {c - i * s * n[2], -i * s * (n[0] - i * n[1]), -i * s * (n[0] + i * n[1]), c + i * s * n[2]};
}

// (U (x) V) rho (U (x) V)^dagger
inline Matrix4c local_rotate(const Matrix4c& rho, const std::array<cd, 4>& u, const std::array<cd, 4>& v) {
  std::array<cd, 16> w{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) w[(i * 2 + j) * 4 + (k * 2 + l)] = u[i * 2 + k] * v[j * 2 + l];
  Matrix4c tmp{}, out{};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c) tmp[a * 4 + b] += w[a * 4 + c] * rho[c * 4 + b];
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c) out[a * 4 + b] += tmp[a * 4 + c] * std::conj(w[b * 4 + c]);
  return out;
}

inline bellkcc::Vec3 random_unit(std::mt19937_64& gen) {
  std::normal_distribution<double> n(0, 1);
  bellkcc::Vec3 v{n(gen), n(gen), n(gen)};
  const double r = bellkcc::norm(v);
  return {v[0] / r, v[1] / r, v[2] / r};
}

// Runs fn and returns the ErrorCode it threw, or nullopt.
template <class F>
std::optional<bellkcc::ErrorCode> thrown_code(F&& fn) {
  try {
    fn();
  } catch (const bellkcc::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace testing
