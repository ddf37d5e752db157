#include <doctest.h>

#include "helpers.hpp"
#include "kcc_model.hpp"
#include "quadrature.hpp"
#include "sweep.hpp"

using namespace bellkcc;
using namespace bellkcc::kcc;
using testing::thrown_code;
using std::numbers::pi;

namespace {

const double kBc = critical_beta();

// m written with the elliptic integral evaluated by quadrature instead of the AGM.
double magnetization_by_quadrature(double beta) {
  const double chi = 2 * std::sinh(2 * beta) / std::pow(std::cosh(2 * beta), 2);
  const double X =
      integrate([chi](double t) { return 1 / std::sqrt(1 - chi * chi * std::sin(t) * std::sin(t)); }, 0, pi / 2, 1e-13)
          .value;
  const double th = std::tanh(2 * beta);
  return -(pi + (4 * th * th - 2) * X) / (2 * pi * th);
}

}  // namespace

TEST_SUITE("kcc_model") {
  TEST_CASE("critical coupling") {
    CHECK(kBc == doctest::Approx(0.4406867935097715).epsilon(1e-15));
    CHECK(std::abs(std::sinh(2 * kBc) - 1) <= 1e-15);
    // Self-dual point: tanh(b) = exp(-2b).
    CHECK(std::abs(dual_params(kBc).beta_star - kBc) <= 1e-14);
    CHECK(std::abs(dual_params(kBc).chi - 1) <= 1e-15);
  }

  TEST_CASE("dual parameters obey their identities") {
    for (double b = 0.05; b < 3; b += 0.05) {
      const auto d = dual_params(b);
      CHECK(std::abs(std::tanh(d.beta_star) - std::exp(-2 * b)) <= 1e-14);
      CHECK(std::abs(d.gamma - std::tanh(2 * b)) <= 1e-14);
      CHECK(std::abs(d.xi - 1 / std::sinh(2 * b)) <= 1e-13 * std::max(1.0, d.xi));
      CHECK(std::abs(d.chi - 2 * std::sinh(2 * b) / std::pow(std::cosh(2 * b), 2)) <= 1e-15);
      CHECK(d.chi >= 0);
      CHECK(d.chi <= 1);
    }
  }

  TEST_CASE("non-positive beta is rejected") {
    for (double b : {0.0, -0.1, std::nan(""), double(INFINITY)}) {
      CHECK(thrown_code([b] { dual_params(b); }) == ErrorCode::NonPositiveBeta);
      CHECK(thrown_code([b] { magnetization(b); }) == ErrorCode::NonPositiveBeta);
      CHECK(thrown_code([b] { corr_nearest(b); }) == ErrorCode::NonPositiveBeta);
      CHECK(thrown_code([b] { corr_next_nearest(b); }) == ErrorCode::NonPositiveBeta);
      CHECK(thrown_code([b] { dbfv_dbeta_analytic(b); }) == ErrorCode::NonPositiveBeta);
    }
    CHECK(thrown_code([] { t_kappa(0.5, 3); }) == ErrorCode::InvalidArgument);
  }

  TEST_CASE("magnetization: closed values and limits") {
    CHECK(std::abs(magnetization(kBc) + std::sqrt(2.0) / 2) <= 1e-12);
    CHECK(std::abs(magnetization(kBc + 0.5e-8) + std::sqrt(2.0) / 2) <= 1e-7);
    CHECK(std::abs(magnetization(20.0) + 1) <= 1e-12);
    CHECK(magnetization(400.0) == -1.0);
    // High-temperature series -(t + 2t^3 + ...).
    for (double b : {0.01, 0.05, 0.1}) {
      const double t = std::tanh(b);
      CHECK(std::abs(magnetization(b) + t + 2 * t * t * t) <= 5 * std::pow(t, 5));
    }
  }

  TEST_CASE("magnetization: AGM route agrees with direct quadrature") {
    for (double b : {0.1, 0.2, 0.3, 0.4, 0.43, 0.45, 0.5, 0.7, 1.0}) {
      CHECK(std::abs(magnetization(b) - magnetization_by_quadrature(b)) <= 1e-11);
    }
  }

  TEST_CASE("magnetization is continuous across the critical window") {
    const double inside = magnetization(kBc);
    for (double eps : {1e-7, 1e-6, 1e-5}) {
      CHECK(std::abs(magnetization(kBc - eps) - inside) <= 50 * eps);
      CHECK(std::abs(magnetization(kBc + eps) - inside) <= 50 * eps);
    }
  }

  TEST_CASE("nearest correlator: closed values and limits") {
    CHECK(std::abs(corr_nearest(kBc) + 2 / pi) <= 1e-12);
    CHECK(std::abs(corr_nearest(10.0) + 1) <= 1e-12);
    for (double b : {0.01, 0.05, 0.1}) {
      const double t = std::tanh(b);
      CHECK(std::abs(corr_nearest(b) + 2 * t * t) <= 5 * std::pow(t, 4));
    }
  }

  TEST_CASE("T_kappa deep in the ordered phase") {
    for (int k = -2; k <= 2; ++k) {
      const double expect = k == -1 ? -1.0 : 0.0;
      CHECK(std::abs(t_kappa(10.0, k) - expect) <= 1e-8);
    }
  }

  TEST_CASE("property: T_kappa stays in [-1, 1]") {
    for (double b = 0.05; b <= 2.0; b += 0.07)
      for (int k = -2; k <= 2; ++k) CHECK(std::abs(t_kappa(b, k)) <= 1 + 1e-12);
  }

  TEST_CASE("next-to-nearest correlator: limits and bounds") {
    CHECK(std::abs(corr_next_nearest(10.0) - 1) <= 1e-8);
    for (double b : {0.01, 0.05, 0.1}) {
      const double t = std::tanh(b);
      CHECK(std::abs(corr_next_nearest(b) - t * t) <= 10 * std::pow(t, 4));
    }
    for (double b = 0.05; b <= 2.0; b += 0.05) {
      const auto p = correlators(b);
      CHECK(std::abs(p.m) <= 1 + 1e-12);
      CHECK(std::abs(p.c_nn) <= 1 + 1e-12);
      CHECK(std::abs(p.c_nnn) <= 1 + 1e-12);
      CHECK(p.beta == b);
    }
  }

  TEST_CASE("reduced density at the critical point") {
    const auto rho = reduced_density(kBc, PairKind::Nearest);
    const double m = std::sqrt(2.0) / 2, c = 2 / pi;
    CHECK(std::abs(rho(0, 0).real() - (1 + 2 * m + c) / 4) <= 1e-12);
    CHECK(std::abs(rho(1, 1).real() - (1 - c) / 4) <= 1e-12);
    CHECK(std::abs(rho(2, 2).real() - (1 - c) / 4) <= 1e-12);
    CHECK(std::abs(rho(3, 3).real() - (1 - 2 * m + c) / 4) <= 1e-12);
    CHECK(std::abs(bfv(kBc, PairKind::Nearest) - 4 / pi) <= 1e-12);
  }

  TEST_CASE("reduced density is a valid state and its BFV is 2|c|") {
    for (double b = 0.05; b <= 1.5; b += 0.05) {
      for (auto kind : {PairKind::Nearest, PairKind::NextToNearest}) {
        const auto rho = reduced_density(b, kind);
        CHECK(validate_state(rho.entries()).ok());
        const double c = kind == PairKind::Nearest ? corr_nearest(b) : corr_next_nearest(b);
        CHECK(std::abs(bfv(b, kind) - 2 * std::abs(c)) <= 1e-12);
        CHECK(bfv(b, kind) <= 2 + 1e-12);
      }
    }
  }

  TEST_CASE("property: BFV is monotone in beta") {
    for (auto kind : {PairKind::Nearest, PairKind::NextToNearest}) {
      double prev = bfv(0.01, kind);
      for (int k = 1; k < 200; ++k) {
        const double v = bfv(0.01 + k * 0.01, kind);
        CHECK(v >= prev - 1e-12);
        prev = v;
      }
    }
  }

  TEST_CASE("analytic derivative matches central differences") {
    for (double b : {0.2, 0.3, 0.35, 0.5, 0.6}) {
      const double fd = sweep::central_difference([](double x) { return bfv(x, PairKind::Nearest); }, b, 1e-4);
      CHECK(std::abs(dbfv_dbeta_analytic(b) - fd) <= 1e-4);
    }
  }

  TEST_CASE("analytic derivative grows toward the critical point") {
    double prev = 0;
    for (double eps : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
      const double v = std::min(dbfv_dbeta_analytic(kBc - eps), dbfv_dbeta_analytic(kBc + eps));
      CHECK(v > prev);
      prev = v;
    }
    CHECK(thrown_code([] { dbfv_dbeta_analytic(kBc); }) == ErrorCode::DivergentAtCritical);
    CHECK(thrown_code([] { dbfv_dbeta_analytic(kBc + 0.5e-7); }) == ErrorCode::DivergentAtCritical);
    CHECK(dbfv_dbeta_analytic(400.0) == 0.0);
  }

  TEST_CASE("pure-state BFV") {
    CHECK(pure_state_bfv(0) == doctest::Approx(2 * std::sqrt(2.0)).epsilon(1e-15));
    CHECK(std::abs(pure_state_bfv(kBc) - std::sqrt(6.0)) <= 1e-12);
    CHECK(std::abs(pure_state_bfv(50) - 2) <= 1e-12);
    double prev = pure_state_bfv(0);
    for (double b = 0.02; b < 2; b += 0.02) {
      const double v = pure_state_bfv(b);
      CHECK(v <= prev + 1e-12);
      CHECK(v >= 2 - 1e-12);
      prev = v;
    }
    CHECK(thrown_code([] { pure_state_bfv(-1); }) == ErrorCode::InvalidArgument);
  }
}
