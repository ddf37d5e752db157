#include "qubit_state.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

namespace bellkcc {

namespace {

using cd = std::complex<double>;

// Pauli matrices, row-major 2x2.
constexpr std::array<std::array<cd, 4>, 3> kPauli = {{
    {cd{0, 0}, cd{1, 0}, cd{1, 0}, cd{0, 0}},
    {cd{0, 0}, cd{0, -1}, cd{0, 1}, cd{0, 0}},
    {cd{1, 0}, cd{0, 0}, cd{0, 0}, cd{-1, 0}},
}};

}  // namespace

std::string ValidationReport::describe() const {
  if (violations.empty()) return "valid";
  std::string out;
  char buf[128];
  for (const auto& v : violations) {
    if (!out.empty()) out += "; ";
    std::snprintf(buf, sizeof buf, "%s (residual %.3e)", error_code_name(v.code), v.residual);
    out += buf;
  }
  return out;
}

ValidationReport validate_state(const Matrix4c& entries) {
  ValidationReport report;
  for (const auto& z : entries) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      report.violations.push_back({ErrorCode::InvalidArgument, NAN});
      return report;
    }
  }

  double herm = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      herm = std::max(herm, std::abs(entries[i * 4 + j] - std::conj(entries[j * 4 + i])));
  report.hermitian_residual = herm;

  cd trace{};
  for (int i = 0; i < 4; ++i) trace += entries[i * 4 + i];
  report.trace_residual = std::abs(trace - cd{1.0, 0.0});

  report.min_eigenvalue = hermitian4_eigenvalues(entries)[3];

  if (herm > kHermitianTolerance) report.violations.push_back({ErrorCode::NonHermitian, herm});
  if (report.trace_residual > kTraceTolerance)
    report.violations.push_back({ErrorCode::TraceNotOne, report.trace_residual});
  if (report.min_eigenvalue < kPsdTolerance)
    report.violations.push_back({ErrorCode::NotPositive, report.min_eigenvalue});
  return report;
}

TwoQubitState TwoQubitState::make(const Matrix4c& entries) {
  const auto report = validate_state(entries);
  if (!report.ok()) throw Error(report.violations.front().code, report.describe());
  return TwoQubitState(entries);
}

TwoQubitState TwoQubitState::diagonal(double p00, double p01, double p10, double p11) {
  Matrix4c m{};
  m[0] = p00;
  m[5] = p01;
  m[10] = p10;
  m[15] = p11;
  return make(m);
}

TwoQubitState TwoQubitState::from_pure(const std::array<cd, 4>& psi) {
  double n2 = 0.0;
  for (const auto& a : psi) n2 += std::norm(a);
  if (!(n2 > 0.0)) throw Error(ErrorCode::InvalidArgument, "zero state vector");
  Matrix4c m{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m[i * 4 + j] = psi[i] * std::conj(psi[j]) / n2;
  return make(m);
}

Mat3 correlation_matrix(const TwoQubitState& rho) {
  const auto& r = rho.entries();
  Mat3 out{};
  for (int s = 0; s < 3; ++s) {
    for (int t = 0; t < 3; ++t) {
      // Tr[rho (A (x) B)] = sum_{ij,kl} rho_{(kl),(ij)} A_{ik} B_{jl}
      cd acc{};
      for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k) {
          const cd a = kPauli[s][i * 2 + k];
          if (a == cd{}) continue;
          for (int j = 0; j < 2; ++j)
            for (int l = 0; l < 2; ++l) {
              const cd b = kPauli[t][j * 2 + l];
              if (b == cd{}) continue;
              acc += a * b * r[(k * 2 + l) * 4 + (i * 2 + j)];
            }
        }
      out[s * 3 + t] = acc.real();
    }
  }
  return out;
}

TwoQubitState random_state(std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::array<cd, 16> g{};
  for (auto& z : g) {
    const double re = normal(gen);
    const double im = normal(gen);
    z = cd{re, im};
  }
  Matrix4c m{};
  double trace = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      cd s{};
      for (int k = 0; k < 4; ++k) s += g[i * 4 + k] * std::conj(g[j * 4 + k]);
      m[i * 4 + j] = s;
    }
    trace += m[i * 4 + i].real();
  }
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) m[i * 4 + j] /= trace;
    m[i * 4 + i] = cd{m[i * 4 + i].real(), 0.0};
  }
  // Exact Hermitian symmetry after rounding.
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) m[j * 4 + i] = std::conj(m[i * 4 + j]);
  return TwoQubitState::make(m);
}

TwoQubitState mix(const TwoQubitState& a, const TwoQubitState& b, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::InvalidArgument, "mixing weight outside [0,1]");
  Matrix4c m{};
  for (int k = 0; k < 16; ++k) m[k] = p * a.entries()[k] + (1.0 - p) * b.entries()[k];
  return TwoQubitState::make(m);
}

}  // namespace bellkcc
