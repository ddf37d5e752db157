#include <doctest.h>

#include "helpers.hpp"

using namespace bellkcc;
using namespace testing;

TEST_SUITE("qubit_state") {
  TEST_CASE("validate_state accepts physical states") {
    Matrix4c mixed{};
    for (int i = 0; i < 4; ++i) mixed[i * 4 + i] = 0.25;
    CHECK(validate_state(mixed).ok());

    Matrix4c pure{};
    pure[0] = 1;
    CHECK(validate_state(pure).ok());
  }

  TEST_CASE("validate_state names each violated invariant") {
    Matrix4c m{};
    m[0] = 0.6;
    m[5] = 0.6;
    m[10] = -0.1;
    m[15] = -0.1;
    auto r = validate_state(m);
    REQUIRE(r.violations.size() == 1);
    CHECK(r.violations[0].code == ErrorCode::NotPositive);
    CHECK(r.violations[0].residual == doctest::Approx(-0.1));
    CHECK_THROWS_AS(TwoQubitState::make(m), Error);

    Matrix4c nh{};
    nh[0] = 1;
    nh[1] = 0.1;  // no matching conjugate entry
    r = validate_state(nh);
    CHECK(std::any_of(r.violations.begin(), r.violations.end(),
                      [](const Violation& v) { return v.code == ErrorCode::NonHermitian; }));

    Matrix4c tr{};
    tr[0] = 0.5;
    r = validate_state(tr);
    REQUIRE(r.violations.size() == 1);
    CHECK(r.violations[0].code == ErrorCode::TraceNotOne);
    CHECK(r.violations[0].residual == doctest::Approx(0.5));
    CHECK(r.describe().find("TraceNotOne") != std::string::npos);
  }

  TEST_CASE("non-finite entries are rejected") {
    Matrix4c m{};
    m[0] = std::nan("");
    CHECK_FALSE(validate_state(m).ok());
  }

  TEST_CASE("correlation matrix of canonical states") {
    const Mat3 bell = correlation_matrix(bell_phi_plus());
    const Mat3 expect{1, 0, 0, 0, -1, 0, 0, 0, 1};
    for (int k = 0; k < 9; ++k) CHECK(std::abs(bell[k] - expect[k]) < 1e-15);

    const Mat3 up = correlation_matrix(product_00());
    const Mat3 expect_up{0, 0, 0, 0, 0, 0, 0, 0, 1};
    for (int k = 0; k < 9; ++k) CHECK(up[k] == expect_up[k]);
  }

  TEST_CASE("diagonal states have diagonal L with vanishing xx and yy") {
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> u(0, 1);
    for (int trial = 0; trial < 50; ++trial) {
      double p[4], s = 0;
      for (double& x : p) s += (x = u(gen));
      const auto rho = TwoQubitState::diagonal(p[0] / s, p[1] / s, p[2] / s, p[3] / s);
      const Mat3 L = correlation_matrix(rho);
      for (int k = 0; k < 8; ++k) CHECK(L[k] == 0.0);
      CHECK(L[8] == doctest::Approx((p[0] - p[1] - p[2] + p[3]) / s));
    }
  }

  TEST_CASE("random_state is deterministic, seed-sensitive and physical") {
    const auto a = random_state(1);
    const auto b = random_state(1);
    const auto c = random_state(2);
    CHECK(a.entries() == b.entries());
    CHECK(a.entries() != c.entries());
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const auto r = validate_state(random_state(seed).entries());
      CHECK(r.trace_residual <= 1e-12);
      CHECK(r.min_eigenvalue >= -1e-14);
      CHECK(r.ok());
    }
  }

  TEST_CASE("property: correlation entries bounded for random states") {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
      const Mat3 L = correlation_matrix(random_state(seed));
      for (double x : L) CHECK(std::abs(x) <= 1 + 1e-9);
      const auto g = symmetric3_eigenvalues(gram(L));
      CHECK(g[0] + g[1] + g[2] <= 3 + 1e-6);
    }
  }

  TEST_CASE("property: correlation_matrix is linear under mixing") {
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> u(0, 1);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const auto r1 = random_state(seed);
      const auto r2 = random_state(seed + 1000);
      const double p = u(gen);
      const Mat3 lm = correlation_matrix(mix(r1, r2, p));
      const Mat3 l1 = correlation_matrix(r1);
      const Mat3 l2 = correlation_matrix(r2);
      for (int k = 0; k < 9; ++k) CHECK(std::abs(lm[k] - (p * l1[k] + (1 - p) * l2[k])) <= 1e-12);
    }
  }
}
