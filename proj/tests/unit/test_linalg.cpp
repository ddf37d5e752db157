#include <doctest.h>

#include <random>

#include "linalg.hpp"

using namespace bellkcc;

TEST_SUITE("linalg") {
  TEST_CASE("jacobi recovers a known spectrum") {
    // Q diag(3, 1, -2) Q^T for a rotation Q about (1,1,1)/sqrt3 by 0.7 rad.
    const double c = std::cos(0.7), s = std::sin(0.7), t = 1 - c, k = 1 / std::sqrt(3.0);
    const Mat3 q{c + k * k * t,     k * k * t - k * s, k * k * t + k * s,
                 k * k * t + k * s, c + k * k * t,     k * k * t - k * s,
                 k * k * t - k * s, k * k * t + k * s, c + k * k * t};
    const Vec3 d{3, 1, -2};
    Mat3 a{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int m = 0; m < 3; ++m) a[i * 3 + j] += q[i * 3 + m] * d[m] * q[j * 3 + m];

    const auto eig = jacobi_eigen<3>(a);
    CHECK(eig.values[0] == doctest::Approx(3).epsilon(1e-14));
    CHECK(eig.values[1] == doctest::Approx(1).epsilon(1e-14));
    CHECK(eig.values[2] == doctest::Approx(-2).epsilon(1e-14));
    const auto cubic = symmetric3_eigenvalues(a);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(cubic[i] - d[i]) < 1e-12);
  }

  TEST_CASE("closed-form cubic agrees with jacobi on random symmetric matrices") {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int trial = 0; trial < 500; ++trial) {
      Mat3 a{};
      for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) a[i * 3 + j] = a[j * 3 + i] = u(gen);
      const auto j = jacobi_eigen<3>(a).values;
      const auto c = symmetric3_eigenvalues(a);
      for (int i = 0; i < 3; ++i) CHECK(std::abs(j[i] - c[i]) < 1e-12);
    }
  }

  TEST_CASE("degenerate spectra take the fallback and stay exact") {
    const Mat3 a{2, 0, 0, 0, 2, 0, 0, 0, 2};
    const auto e = symmetric3_eigenvalues(a);
    for (double v : e) CHECK(v == doctest::Approx(2));
    // Rank one: u u^T with u = (1,2,2)/3, eigenvalues 1, 0, 0.
    Mat3 r{};
    const Vec3 v{1.0 / 3, 2.0 / 3, 2.0 / 3};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r[i * 3 + j] = v[i] * v[j];
    const auto er = symmetric3_eigenvalues(r);
    CHECK(std::abs(er[0] - 1) < 1e-12);
    CHECK(std::abs(er[1]) < 1e-12);
    CHECK(std::abs(er[2]) < 1e-12);
  }

  TEST_CASE("hermitian 4x4 eigenvalues through the real embedding") {
    using cd = std::complex<double>;
    // Block [[1, i],[-i, 1]] has eigenvalues 0 and 2.
    Matrix4c h{};
    h[0] = 1;
    h[1] = cd{0, 1};
    h[4] = cd{0, -1};
    h[5] = 1;
    h[10] = 0.5;
    h[15] = -0.25;
    const auto e = hermitian4_eigenvalues(h);
    CHECK(e[0] == doctest::Approx(2).epsilon(1e-13));
    CHECK(e[1] == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(std::abs(e[2]) < 1e-13);
    CHECK(e[3] == doctest::Approx(-0.25).epsilon(1e-13));
  }
}
