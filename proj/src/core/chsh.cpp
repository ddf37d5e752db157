#include "chsh.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "nelder_mead.hpp"

namespace bellkcc {

namespace {

using cd = std::complex<double>;

// n . sigma as a row-major 2x2 matrix.
std::array<cd, 4> spin_operator(const Vec3& n) {
  return {cd{n[2], 0.0}, cd{n[0], -n[1]}, cd{n[0], n[1]}, cd{-n[2], 0.0}};
}

double correlation(const TwoQubitState& rho, const Vec3& a, const Vec3& b) {
  const auto A = spin_operator(a);
  const auto B = spin_operator(b);
  const auto& r = rho.entries();
  cd acc{};
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k)
      for (int j = 0; j < 2; ++j)
        for (int l = 0; l < 2; ++l)
          acc += A[i * 2 + k] * B[j * 2 + l] * r[(k * 2 + l) * 4 + (i * 2 + j)];
  return acc.real();
}

Vec3 unit_from_angles(double polar, double azimuth) {
  return {std::sin(polar) * std::cos(azimuth), std::sin(polar) * std::sin(azimuth), std::cos(polar)};
}

using Angles = std::array<double, 8>;

MeasurementSettings settings_from_angles(const Angles& x) {
  return {unit_from_angles(x[0], x[1]), unit_from_angles(x[2], x[3]),
          unit_from_angles(x[4], x[5]), unit_from_angles(x[6], x[7])};
}

Vec3 top_two_spectrum(const Mat3& L) {
  Vec3 ev = symmetric3_eigenvalues(gram(L));
  for (double& v : ev) v = std::max(v, 0.0);
  return ev;
}

}  // namespace

void check_settings(const MeasurementSettings& s) {
  for (const Vec3* v : {&s.a1, &s.a2, &s.b1, &s.b2}) {
    const double n = norm(*v);
    if (!(std::abs(n - 1.0) <= 1e-12))
      throw Error(ErrorCode::UnnormalizedSetting,
                  "measurement direction has norm " + std::to_string(n));
  }
}

double chsh_value(const TwoQubitState& rho, const MeasurementSettings& s) {
  check_settings(s);
  return correlation(rho, s.a1, s.b1) + correlation(rho, s.a1, s.b2) +
         correlation(rho, s.a2, s.b1) - correlation(rho, s.a2, s.b2);
}

double chsh_value_from_correlations(const Mat3& L, const MeasurementSettings& s) {
  const Vec3 sum{s.b1[0] + s.b2[0], s.b1[1] + s.b2[1], s.b1[2] + s.b2[2]};
  const Vec3 diff{s.b1[0] - s.b2[0], s.b1[1] - s.b2[1], s.b1[2] - s.b2[2]};
  return dot(s.a1, mat_vec(L, sum)) + dot(s.a2, mat_vec(L, diff));
}

BfvResult horodecki_bfv(const TwoQubitState& rho) {
  const Vec3 ev = top_two_spectrum(correlation_matrix(rho));
  BfvResult out;
  out.upsilon1 = ev[0];
  out.upsilon2 = ev[1];
  out.value = 2.0 * std::sqrt(ev[0] + ev[1]);
  return out;
}

MeasurementSettings optimal_settings(const TwoQubitState& rho) {
  const Mat3 L = correlation_matrix(rho);
  const auto eig = jacobi_eigen<3>(gram(L));
  const double u1 = std::max(eig.values[0], 0.0);
  const double u2 = std::max(eig.values[1], 0.0);

  const Vec3 c{eig.vectors[0], eig.vectors[3], eig.vectors[6]};
  const Vec3 cp{eig.vectors[1], eig.vectors[4], eig.vectors[7]};

  MeasurementSettings s;
  if (u1 <= 0.0) {
    s.a1 = s.a2 = s.b1 = s.b2 = {0.0, 0.0, 1.0};
    return s;
  }
  const double theta = std::atan2(std::sqrt(u2), std::sqrt(u1));
  const double ct = std::cos(theta), st = std::sin(theta);
  for (int k = 0; k < 3; ++k) {
    s.b1[k] = ct * c[k] + st * cp[k];
    s.b2[k] = ct * c[k] - st * cp[k];
  }
  const Vec3 lc = mat_vec(L, c);
  const double nlc = norm(lc);
  for (int k = 0; k < 3; ++k) s.a1[k] = lc[k] / nlc;
  const Vec3 lcp = mat_vec(L, cp);
  const double nlcp = norm(lcp);
  if (nlcp > 1e-300) {
    for (int k = 0; k < 3; ++k) s.a2[k] = lcp[k] / nlcp;
  } else {
    s.a2 = s.a1;  // weight sin(theta) is zero, any direction works
  }
  return s;
}

BfvResult maximize_chsh(const TwoQubitState& rho, const OptimizerConfig& config) {
  if (config.restarts < 1) throw Error(ErrorCode::BudgetTooSmall, "optimizer needs at least one restart");
  if (config.grid_points < 1 || config.max_evaluations < 16)
    throw Error(ErrorCode::BudgetTooSmall, "optimizer grid or evaluation budget too small");

  const Mat3 L = correlation_matrix(rho);
  const std::function<double(const Angles&)> objective = [&L](const Angles& x) {
    return -chsh_value_from_correlations(L, settings_from_angles(x));
  };

  std::mt19937_64 gen(config.seed);
  std::uniform_real_distribution<double> polar(0.0, std::numbers::pi);
  std::uniform_real_distribution<double> azimuth(0.0, 2.0 * std::numbers::pi);

  Angles best_x{};
  double best = std::numeric_limits<double>::infinity();

  for (int restart = 0; restart < config.restarts; ++restart) {
    Angles x{};
    for (int k = 0; k < 8; k += 2) {
      x[k] = polar(gen);
      x[k + 1] = azimuth(gen);
    }

    // Coarse scan over the polar angles of a1 and b1.
    Angles start = x;
    double start_value = objective(x);
    const int n = config.grid_points;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        Angles y = x;
        y[0] = (i + 0.5) * std::numbers::pi / n;
        y[4] = (j + 0.5) * std::numbers::pi / n;
        const double v = objective(y);
        if (v < start_value) {
          start_value = v;
          start = y;
        }
      }
    }

    auto result = nelder_mead<8>(objective, start, 0.5, config.simplex_tolerance, config.max_evaluations);
    // Re-seed the simplex until it stops improving; collapsed simplices stall.
    for (int polish = 0; polish < 4; ++polish) {
      auto again = nelder_mead<8>(objective, result.x, 0.05, config.simplex_tolerance,
                                  config.max_evaluations);
      const bool improved = again.value < result.value - 1e-13;
      if (again.value < result.value) result = again;
      if (!improved) break;
    }
    if (result.value < best) {
      best = result.value;
      best_x = result.x;
    }
  }

  const Vec3 ev = top_two_spectrum(L);
  BfvResult out;
  out.value = -best;
  out.upsilon1 = ev[0];
  out.upsilon2 = ev[1];
  out.settings = settings_from_angles(best_x);
  return out;
}

}  // namespace bellkcc
