#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>

namespace bellkcc {

template <std::size_t N>
struct SimplexResult {
  std::array<double, N> x;
  double value;
  int evaluations;
};

// Minimizes f from `start` with a simplex of edge `step`. Stops when the
// simplex diameter drops below `tolerance` or the budget runs out.
template <std::size_t N>
SimplexResult<N> nelder_mead(const std::function<double(const std::array<double, N>&)>& f,
                             const std::array<double, N>& start, double step,
                             double tolerance, int max_evaluations) {
  using Point = std::array<double, N>;
  std::array<Point, N + 1> pts{};
  std::array<double, N + 1> vals{};
  int evals = 0;
  auto eval = [&](const Point& p) {
    ++evals;
    return f(p);
  };

  pts[0] = start;
  vals[0] = eval(start);
  for (std::size_t i = 0; i < N; ++i) {
    pts[i + 1] = start;
    pts[i + 1][i] += step;
    vals[i + 1] = eval(pts[i + 1]);
  }

  while (evals < max_evaluations) {
    // order: best first
    std::array<std::size_t, N + 1> idx{};
    for (std::size_t i = 0; i <= N; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    {
      std::array<Point, N + 1> p2{};
      std::array<double, N + 1> v2{};
      for (std::size_t i = 0; i <= N; ++i) {
        p2[i] = pts[idx[i]];
        v2[i] = vals[idx[i]];
      }
      pts = p2;
      vals = v2;
    }

    double diameter = 0.0;
    for (std::size_t i = 1; i <= N; ++i)
      for (std::size_t k = 0; k < N; ++k) diameter = std::max(diameter, std::abs(pts[i][k] - pts[0][k]));
    if (diameter < tolerance) break;

    Point centroid{};
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t k = 0; k < N; ++k) centroid[k] += pts[i][k] / static_cast<double>(N);

    auto along = [&](double t) {
      Point p{};
      for (std::size_t k = 0; k < N; ++k) p[k] = centroid[k] + t * (pts[N][k] - centroid[k]);
      return p;
    };

    const Point xr = along(-1.0);
    const double fr = eval(xr);
    if (fr < vals[0]) {
      const Point xe = along(-2.0);
      const double fe = eval(xe);
      if (fe < fr) {
        pts[N] = xe;
        vals[N] = fe;
      } else {
        pts[N] = xr;
        vals[N] = fr;
      }
      continue;
    }
    if (fr < vals[N - 1]) {
      pts[N] = xr;
      vals[N] = fr;
      continue;
    }
    const bool outside = fr < vals[N];
    const Point xc = along(outside ? -0.5 : 0.5);
    const double fc = eval(xc);
    if (fc < (outside ? fr : vals[N])) {
      pts[N] = xc;
      vals[N] = fc;
      continue;
    }
    // shrink toward the best vertex
    for (std::size_t i = 1; i <= N; ++i) {
      for (std::size_t k = 0; k < N; ++k) pts[i][k] = pts[0][k] + 0.5 * (pts[i][k] - pts[0][k]);
      vals[i] = eval(pts[i]);
    }
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i <= N; ++i)
    if (vals[i] < vals[best]) best = i;
  return {pts[best], vals[best], evals};
}

}  // namespace bellkcc
