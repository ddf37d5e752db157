#include "linalg.hpp"

#include <algorithm>
#include <numbers>
#include <numeric>

namespace bellkcc {

Mat3 gram(const Mat3& m) {
  Mat3 g{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += m[k * 3 + i] * m[k * 3 + j];
      g[i * 3 + j] = s;
    }
  }
  return g;
}

template <std::size_t N>
SymmetricEigen<N> jacobi_eigen(std::array<double, N * N> a) {
  std::array<double, N * N> v{};
  for (std::size_t i = 0; i < N; ++i) v[i * N + i] = 1.0;

  double scale = 0.0;
  for (double x : a) scale = std::max(scale, std::abs(x));

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < N; ++p)
      for (std::size_t q = p + 1; q < N; ++q) off += a[p * N + q] * a[p * N + q];
    if (off <= 1e-64 * scale * scale || off == 0.0) break;

    for (std::size_t p = 0; p < N; ++p) {
      for (std::size_t q = p + 1; q < N; ++q) {
        const double apq = a[p * N + q];
        if (apq == 0.0) continue;
        const double app = a[p * N + p];
        const double aqq = a[q * N + q];
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < N; ++k) {
          const double akp = a[k * N + p];
          const double akq = a[k * N + q];
          a[k * N + p] = c * akp - s * akq;
          a[k * N + q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < N; ++k) {
          const double apk = a[p * N + k];
          const double aqk = a[q * N + k];
          a[p * N + k] = c * apk - s * aqk;
          a[q * N + k] = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < N; ++k) {
          const double vkp = v[k * N + p];
          const double vkq = v[k * N + q];
          v[k * N + p] = c * vkp - s * vkq;
          v[k * N + q] = s * vkp + c * vkq;
        }
      }
    }
  }

  std::array<std::size_t, N> order{};
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a[i * N + i] > a[j * N + j];
  });

  SymmetricEigen<N> out{};
  for (std::size_t k = 0; k < N; ++k) {
    const std::size_t src = order[k];
    out.values[k] = a[src * N + src];
    for (std::size_t r = 0; r < N; ++r) out.vectors[r * N + k] = v[r * N + src];
  }
  return out;
}

template SymmetricEigen<3> jacobi_eigen<3>(std::array<double, 9>);
template SymmetricEigen<8> jacobi_eigen<8>(std::array<double, 64>);

Vec3 symmetric3_eigenvalues(const Mat3& a) {
  const double p1 = a[1] * a[1] + a[2] * a[2] + a[5] * a[5];
  if (p1 == 0.0) {
    Vec3 d{a[0], a[4], a[8]};
    std::sort(d.begin(), d.end(), std::greater<>());
    return d;
  }
  const double q = (a[0] + a[4] + a[8]) / 3.0;
  const double d0 = a[0] - q, d1 = a[4] - q, d2 = a[8] - q;
  const double p2 = d0 * d0 + d1 * d1 + d2 * d2 + 2.0 * p1;
  const double p = std::sqrt(p2 / 6.0);

  // B = (A - qI)/p has characteristic polynomial x^3 - 3x - 2r.
  const double b00 = d0 / p, b11 = d1 / p, b22 = d2 / p;
  const double b01 = a[1] / p, b02 = a[2] / p, b12 = a[5] / p;
  const double det_b = b00 * (b11 * b22 - b12 * b12) - b01 * (b01 * b22 - b12 * b02) +
                       b02 * (b01 * b12 - b11 * b02);
  const double r = std::clamp(det_b / 2.0, -1.0, 1.0);

  // acos loses half the digits as |r| -> 1 (a nearly repeated root).
  if (1.0 - r * r < 1e-6) return jacobi_eigen<3>(a).values;

  const double phi = std::acos(r) / 3.0;
  const double e1 = q + 2.0 * p * std::cos(phi);
  const double e3 = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
  const double e2 = 3.0 * q - e1 - e3;
  Vec3 out{e1, e2, e3};
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

std::array<double, 4> hermitian4_eigenvalues(const Matrix4c& h) {
  std::array<double, 64> embed{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      // Symmetrize first so tiny anti-Hermitian noise cannot leak in.
      const std::complex<double> hij = 0.5 * (h[i * 4 + j] + std::conj(h[j * 4 + i]));
      embed[i * 8 + j] = hij.real();
      embed[(i + 4) * 8 + (j + 4)] = hij.real();
      embed[i * 8 + (j + 4)] = -hij.imag();
      embed[(i + 4) * 8 + j] = hij.imag();
    }
  }
  const auto eig = jacobi_eigen<8>(embed);
  // Doubled spectrum: take every other value.
  return {eig.values[0], eig.values[2], eig.values[4], eig.values[6]};
}

}  // namespace bellkcc
