#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

namespace bellkcc {

using Vec3 = std::array<double, 3>;
// Row-major 3x3.
using Mat3 = std::array<double, 9>;
// Row-major 4x4, basis |00>,|01>,|10>,|11>.
using Matrix4c = std::array<std::complex<double>, 16>;

inline double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

inline Vec3 mat_vec(const Mat3& m, const Vec3& v) {
  return {m[0] * v[0] + m[1] * v[1] + m[2] * v[2],
          m[3] * v[0] + m[4] * v[1] + m[5] * v[2],
          m[6] * v[0] + m[7] * v[1] + m[8] * v[2]};
}

// m^T m
Mat3 gram(const Mat3& m);

template <std::size_t N>
struct SymmetricEigen {
  std::array<double, N> values;          // descending
  std::array<double, N * N> vectors;     // column k is the eigenvector of values[k]
};

// Cyclic Jacobi rotations on a real symmetric matrix. Converges to machine
// precision for the small sizes used here (3 and 8). Ties in the sorted
// output keep the original column order.
template <std::size_t N>
SymmetricEigen<N> jacobi_eigen(std::array<double, N * N> a);

// Eigenvalues of a real symmetric 3x3 matrix, descending. Uses the
// trigonometric solution of the characteristic cubic and falls back to
// Jacobi when two roots nearly coincide (1 - r^2 < 1e-6 in the normalized
// cubic x^3 - 3x - 2r).
Vec3 symmetric3_eigenvalues(const Mat3& a);

// Eigenvalues of a 4x4 complex Hermitian matrix, descending, via its 8x8
// real embedding [[Re, -Im], [Im, Re]] (each eigenvalue appears twice there).
std::array<double, 4> hermitian4_eigenvalues(const Matrix4c& h);

}  // namespace bellkcc
