#include <doctest.h>

#include "helpers.hpp"

using namespace bellkcc;
using namespace testing;

namespace {

const double kTsirelson = 2 * std::sqrt(2.0);

MeasurementSettings tsirelson_settings() {
  const double r = 1 / std::sqrt(2.0);
  return {{0, 0, 1}, {1, 0, 0}, {r, 0, r}, {-r, 0, r}};
}

}  // namespace

TEST_SUITE("chsh") {
  TEST_CASE("chsh_value at canonical settings") {
    // b1 = (z + x)/sqrt2, b2 = (z - x)/sqrt2 written as (x, y, z).
    CHECK(chsh_value(bell_phi_plus(), tsirelson_settings()) == doctest::Approx(kTsirelson).epsilon(1e-14));

    const MeasurementSettings z{{0, 0, 1}, {0, 0, 1}, {0, 0, 1}, {0, 0, 1}};
    CHECK(chsh_value(product_00(), z) == doctest::Approx(2.0));
  }

  TEST_CASE("chsh_value with repeated settings is twice Q11") {
    std::mt19937_64 gen(9);
    for (int trial = 0; trial < 20; ++trial) {
      const auto rho = random_state(trial);
      const Vec3 a = random_unit(gen), b = random_unit(gen);
      const MeasurementSettings s{a, a, b, b};
      const Mat3 L = correlation_matrix(rho);
      CHECK(chsh_value(rho, s) == doctest::Approx(2 * dot(a, mat_vec(L, b))).epsilon(1e-12));
    }
  }

  TEST_CASE("density-matrix and correlation-matrix routes agree") {
    std::mt19937_64 gen(21);
    for (int trial = 0; trial < 200; ++trial) {
      const auto rho = random_state(trial + 77);
      const MeasurementSettings s{random_unit(gen), random_unit(gen), random_unit(gen), random_unit(gen)};
      CHECK(std::abs(chsh_value(rho, s) - chsh_value_from_correlations(correlation_matrix(rho), s)) <= 1e-12);
    }
  }

  TEST_CASE("unnormalized settings are rejected") {
    MeasurementSettings s = tsirelson_settings();
    s.b2 = {0, 0, 1.001};
    CHECK_THROWS_AS(chsh_value(bell_phi_plus(), s), Error);
    try {
      chsh_value(bell_phi_plus(), s);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::UnnormalizedSetting);
    }
  }

  TEST_CASE("horodecki closed form on canonical states") {
    const auto bell = horodecki_bfv(bell_phi_plus());
    CHECK(bell.value == doctest::Approx(kTsirelson).epsilon(1e-14));
    CHECK(bell.upsilon1 == doctest::Approx(1.0));
    CHECK(bell.upsilon2 == doctest::Approx(1.0));
    CHECK_FALSE(bell.settings.has_value());

    const auto up = horodecki_bfv(product_00());
    CHECK(up.value == doctest::Approx(2.0));
    CHECK(up.upsilon1 == doctest::Approx(1.0));
    CHECK(up.upsilon2 == 0.0);

    CHECK(horodecki_bfv(maximally_mixed()).value == 0.0);
  }

  TEST_CASE("BfvResult invariants hold for random states") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      const auto r = horodecki_bfv(random_state(seed));
      CHECK(std::abs(r.value - 2 * std::sqrt(r.upsilon1 + r.upsilon2)) <= 1e-12);
      CHECK(r.upsilon2 >= 0);
      CHECK(r.upsilon2 <= r.upsilon1);
      CHECK(r.upsilon1 <= 1 + 1e-9);
      CHECK(r.value <= kTsirelson + 1e-9);
    }
  }

  TEST_CASE("property: no setting beats the closed form") {
    std::mt19937_64 gen(31);
    for (int trial = 0; trial < 300; ++trial) {
      const auto rho = random_state(trial + 500);
      const double h = horodecki_bfv(rho).value;
      const MeasurementSettings s{random_unit(gen), random_unit(gen), random_unit(gen), random_unit(gen)};
      CHECK(chsh_value(rho, s) <= h + 1e-9);
    }
  }

  TEST_CASE("property: diagonal states stay at or below the classical bound") {
    std::mt19937_64 gen(41);
    std::uniform_real_distribution<double> u(0, 1);
    for (int trial = 0; trial < 100; ++trial) {
      double p[4], s = 0;
      for (double& x : p) s += (x = u(gen));
      const auto rho = TwoQubitState::diagonal(p[0] / s, p[1] / s, p[2] / s, p[3] / s);
      const double lzz = correlation_matrix(rho)[8];
      const double v = horodecki_bfv(rho).value;
      CHECK(v == doctest::Approx(2 * std::abs(lzz)).epsilon(1e-12));
      CHECK(v <= 2 + 1e-12);
    }
  }

  TEST_CASE("property: local rotations leave the BFV unchanged") {
    std::mt19937_64 gen(51);
    std::uniform_real_distribution<double> ang(0, 2 * std::numbers::pi);
    for (int trial = 0; trial < 100; ++trial) {
      const auto rho = random_state(trial + 900);
      const auto rotated =
          TwoQubitState::make(local_rotate(rho.entries(), su2(random_unit(gen), ang(gen)), su2(random_unit(gen), ang(gen))));
      CHECK(std::abs(horodecki_bfv(rho).value - horodecki_bfv(rotated).value) <= 1e-9);
    }
  }

  TEST_CASE("optimal_settings attain the closed form") {
    for (const auto& rho : {bell_phi_plus(), product_00()}) {
      const auto s = optimal_settings(rho);
      check_settings(s);
      CHECK(chsh_value(rho, s) >= horodecki_bfv(rho).value - 1e-6);
    }
    CHECK(chsh_value(bell_phi_plus(), optimal_settings(bell_phi_plus())) >= kTsirelson - 1e-6);
    CHECK(chsh_value(product_00(), optimal_settings(product_00())) >= 2 - 1e-6);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const auto rho = random_state(seed);
      CHECK(std::abs(chsh_value(rho, optimal_settings(rho)) - horodecki_bfv(rho).value) <= 1e-6);
    }
  }

  TEST_CASE("maximize_chsh reproduces known optima") {
    const auto bell = maximize_chsh(bell_phi_plus());
    CHECK(std::abs(bell.value - kTsirelson) <= 1e-6);
    REQUIRE(bell.settings.has_value());
    CHECK(chsh_value(bell_phi_plus(), *bell.settings) == doctest::Approx(bell.value).epsilon(1e-12));

    CHECK(std::abs(maximize_chsh(maximally_mixed()).value) <= 1e-9);
  }

  TEST_CASE("maximize_chsh matches the closed form on seeded random states") {
    double worst = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      const auto rho = random_state(seed);
      const double h = horodecki_bfv(rho).value;
      const auto m = maximize_chsh(rho);
      CHECK(m.value <= h + 1e-9);
      worst = std::max(worst, std::abs(m.value - h));
    }
    CHECK(worst <= 1e-3);
  }

  TEST_CASE("optimizer budget is checked") {
    OptimizerConfig c;
    c.restarts = 0;
    CHECK_THROWS_AS(maximize_chsh(bell_phi_plus(), c), Error);
    try {
      maximize_chsh(bell_phi_plus(), c);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::BudgetTooSmall);
    }
  }

  TEST_CASE("maximize_chsh is deterministic for a fixed seed") {
    const auto rho = random_state(3);
    CHECK(maximize_chsh(rho).value == maximize_chsh(rho).value);
  }
}
