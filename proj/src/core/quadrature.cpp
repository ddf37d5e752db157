#include "quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <vector>

namespace bellkcc {

namespace {

// Kronrod 15-point abscissae on [-1,1] (positive half, descending) and
// weights; odd indices are the embedded Gauss 7-point nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double lo, hi, value, error;
  int depth;
};

struct ByError {
  bool operator()(const Panel& a, const Panel& b) const { return a.error < b.error; }
};

double sample(const std::function<double(double)>& f, double x) {
  const double y = f(x);
  if (!std::isfinite(y))
    throw QuadratureError(ErrorCode::NonFiniteSample,
                          "integrand is not finite at x = " + std::to_string(x), {});
  return y;
}

Panel kronrod(const std::function<double(double)>& f, double lo, double hi, int depth) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = sample(f, center);
  double k = fc * kWgk[7];
  double g = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = sample(f, center - dx);
    const double f2 = sample(f, center + dx);
    k += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) g += kWg[j / 2] * (f1 + f2);
  }
  return {lo, hi, k * half, std::abs((k - g) * half), depth};
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double lo, double hi,
                           double rel_tol) {
  if (!(lo < hi)) throw Error(ErrorCode::InvalidArgument, "integration requires lo < hi");
  if (!(rel_tol >= 1e-13)) throw Error(ErrorCode::InvalidArgument, "rel_tol must be >= 1e-13");

  std::priority_queue<Panel, std::vector<Panel>, ByError> heap;
  heap.push(kronrod(f, lo, hi, 0));
  double value = heap.top().value;
  double error = heap.top().error;
  int subdivisions = 0;

  auto collect = [&]() {
    // Sum in a fixed left-to-right order so results do not depend on heap layout.
    std::vector<Panel> panels;
    panels.reserve(heap.size());
    auto copy = heap;
    while (!copy.empty()) {
      panels.push_back(copy.top());
      copy.pop();
    }
    std::sort(panels.begin(), panels.end(), [](const Panel& a, const Panel& b) { return a.lo < b.lo; });
    QuadratureResult r{0.0, 0.0, subdivisions};
    for (const auto& p : panels) {
      r.value += p.value;
      r.error_estimate += p.error;
    }
    return r;
  };

  while (error > std::max(rel_tol * std::abs(value), 1e-14)) {
    const Panel worst = heap.top();
    if (worst.depth >= kMaxQuadratureDepth) {
      auto best = collect();
      throw QuadratureError(ErrorCode::MaxDepthExceeded,
                            "adaptive quadrature did not converge within depth 60", best);
    }
    heap.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    const Panel left = kronrod(f, worst.lo, mid, worst.depth + 1);
    const Panel right = kronrod(f, mid, worst.hi, worst.depth + 1);
    heap.push(left);
    heap.push(right);
    ++subdivisions;
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    // Running sums drift; refresh periodically.
    if (subdivisions % 64 == 0) {
      const auto r = collect();
      value = r.value;
      error = r.error_estimate;
    }
  }
  return collect();
}

double elliptic_X_complementary(double chi_prime) {
  if (!(chi_prime > 0.0 && chi_prime <= 1.0))
    throw Error(ErrorCode::ModulusOutOfRange, "complementary modulus must lie in (0, 1]");
  double a = 1.0;
  double b = chi_prime;
  for (int i = 0; i < 64 && std::abs(a - b) > 1e-16 * a; ++i) {
    const double next = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = next;
  }
  return std::numbers::pi / (2.0 * a);
}

double elliptic_X(double chi) {
  if (!(chi >= 0.0 && chi < 1.0))
    throw Error(ErrorCode::ModulusOutOfRange, "elliptic modulus must lie in [0, 1)");
  return elliptic_X_complementary(std::sqrt((1.0 - chi) * (1.0 + chi)));
}

}  // namespace bellkcc
