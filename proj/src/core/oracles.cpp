#include "oracles.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <thread>

#include "kcc_model.hpp"

namespace bellkcc::oracles {

namespace {

void check_ising(const IsingTorus& t) {
  if (t.side > kMaxIsingSide)
    throw Error(ErrorCode::LatticeTooLarge, "Ising enumeration supports side <= 5");
  if (t.side < 2) throw Error(ErrorCode::InvalidArgument, "Ising torus side must be >= 2");
  if (!(t.beta >= 0.0) || !std::isfinite(t.beta))
    throw Error(ErrorCode::NonPositiveBeta, "Ising beta must be non-negative and finite");
}

// Bit shifts that move the value at site r + d onto site r.
struct TorusShifts {
  int side;
  std::uint32_t all;
  std::uint32_t last_column;

  explicit TorusShifts(int L) : side(L) {
    const int n = L * L;
    all = n == 32 ? ~0u : ((1u << n) - 1u);
    last_column = 0;
    for (int y = 0; y < L; ++y) last_column |= 1u << (y * L + L - 1);
  }

  [[nodiscard]] std::uint32_t x(std::uint32_t m) const noexcept {
    return ((m >> 1) & ~last_column) | ((m << (side - 1)) & last_column);
  }
  [[nodiscard]] std::uint32_t y(std::uint32_t m) const noexcept {
    const int n = side * side;
    return ((m >> side) | (m << (n - side))) & all;
  }
  [[nodiscard]] std::uint32_t by(std::uint32_t m, Site d) const noexcept {
    const int dx = ((d.x % side) + side) % side;
    const int dy = ((d.y % side) + side) % side;
    for (int i = 0; i < dx; ++i) m = x(m);
    for (int i = 0; i < dy; ++i) m = y(m);
    return m;
  }
};

// Integer sums binned by the number of broken bonds k; the Boltzmann weight
// of bin k is exp(-2 beta k) relative to the ground state.
struct Histogram {
  std::vector<std::int64_t> count;
  std::vector<std::vector<std::int64_t>> sums;  // [observable][k]
};

template <typename Observe>
Histogram enumerate(int L, std::size_t n_observables, int threads, Observe observe) {
  const TorusShifts sh(L);
  const int bins = 2 * L * L + 1;
  const std::uint64_t total = std::uint64_t{1} << (L * L);
  threads = std::max(1, threads);

  std::vector<Histogram> partial(threads);
  auto worker = [&](int w) {
    Histogram& h = partial[w];
    h.count.assign(bins, 0);
    h.sums.assign(n_observables, std::vector<std::int64_t>(bins, 0));
    std::vector<std::int64_t> values(n_observables);
    const std::uint64_t begin = total * w / threads;
    const std::uint64_t end = total * (w + 1) / threads;
    for (std::uint64_t c = begin; c < end; ++c) {
      const auto m = static_cast<std::uint32_t>(c);
      const int k = std::popcount(m ^ sh.x(m)) + std::popcount(m ^ sh.y(m));
      ++h.count[k];
      observe(m, sh, values);
      for (std::size_t o = 0; o < n_observables; ++o) h.sums[o][k] += values[o];
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) pool.emplace_back(worker, w);
    for (auto& t : pool) t.join();
  }

  // Integer partials combine exactly in any order.
  Histogram out = std::move(partial[0]);
  for (int w = 1; w < threads; ++w) {
    for (int k = 0; k < bins; ++k) {
      out.count[k] += partial[w].count[k];
      for (std::size_t o = 0; o < n_observables; ++o) out.sums[o][k] += partial[w].sums[o][k];
    }
  }
  return out;
}

std::vector<double> expectations(const Histogram& h, double beta) {
  long double z = 0.0L;
  std::vector<long double> acc(h.sums.size(), 0.0L);
  for (std::size_t k = 0; k < h.count.size(); ++k) {
    const long double w = std::exp(-2.0L * beta * static_cast<long double>(k));
    z += w * static_cast<long double>(h.count[k]);
    for (std::size_t o = 0; o < h.sums.size(); ++o) acc[o] += w * static_cast<long double>(h.sums[o][k]);
  }
  std::vector<double> out(acc.size());
  for (std::size_t o = 0; o < acc.size(); ++o) out[o] = static_cast<double>(acc[o] / z);
  return out;
}

std::int64_t translation_sum(std::uint32_t m, std::uint32_t shifted, int sites) {
  return sites - 2 * std::popcount(m ^ shifted);
}

}  // namespace

double ising_expectation(const IsingTorus& torus, std::span<const Site> vertices, int threads) {
  check_ising(torus);
  const int L = torus.side;
  std::uint32_t parity = 0;
  for (const Site& s : vertices) {
    if (s.x < 0 || s.y < 0 || s.x >= L || s.y >= L)
      throw Error(ErrorCode::IndexOutOfRange, "Ising site outside the torus");
    parity ^= 1u << (s.y * L + s.x);
  }
  const auto h = enumerate(L, 1, threads, [parity](std::uint32_t m, const TorusShifts&, auto& v) {
    v[0] = (std::popcount(m & parity) & 1) ? -1 : 1;
  });
  return expectations(h, torus.beta)[0];
}

double ising_displacement_correlator(const IsingTorus& torus, Site d, int threads) {
  check_ising(torus);
  const int n = torus.side * torus.side;
  const auto h = enumerate(torus.side, 1, threads, [d, n](std::uint32_t m, const TorusShifts& sh, auto& v) {
    v[0] = translation_sum(m, sh.by(m, d), n);
  });
  return expectations(h, torus.beta)[0] / n;
}

int KccTorus::horizontal_edge(Site r) const noexcept {
  const int x = ((r.x % side) + side) % side;
  const int y = ((r.y % side) + side) % side;
  return 2 * (y * side + x);
}

int KccTorus::vertical_edge(Site r) const noexcept { return horizontal_edge(r) + 1; }

std::uint32_t KccTorus::vertex_flip_mask(Site r) const noexcept {
  std::uint32_t m = 0;
  m ^= 1u << horizontal_edge(r);
  m ^= 1u << horizontal_edge({r.x - 1, r.y});
  m ^= 1u << vertical_edge(r);
  m ^= 1u << vertical_edge({r.x, r.y - 1});
  return m;
}

std::uint32_t KccTorus::face_mask(Site r) const noexcept {
  std::uint32_t m = 0;
  m ^= 1u << horizontal_edge(r);
  m ^= 1u << horizontal_edge({r.x, r.y + 1});
  m ^= 1u << vertical_edge(r);
  m ^= 1u << vertical_edge({r.x + 1, r.y});
  return m;
}

GroundStateVector kcc_ground_state(const KccTorus& torus, double beta) {
  if (torus.side > kMaxKccSide)
    throw Error(ErrorCode::LatticeTooLarge, "KCC ground state supports side <= 3");
  if (torus.side < 2) throw Error(ErrorCode::InvalidArgument, "KCC torus side must be >= 2");
  if (!(beta >= 0.0) || !std::isfinite(beta))
    throw Error(ErrorCode::InvalidArgument, "beta must be non-negative and finite");

  const int L = torus.side;
  const int generators = L * L - 1;
  std::vector<std::uint32_t> flips(generators);
  for (int v = 0; v < generators; ++v) flips[v] = torus.vertex_flip_mask({v % L, v / L});

  GroundStateVector state{torus, std::vector<double>(std::size_t{1} << torus.qubits(), 0.0)};
  // sum_j sigma^z_j = 2L^2 - 2 popcount, so the amplitude relative to |0> is exp(-beta popcount).
  long double norm2 = 0.0L;
  for (std::uint32_t subset = 0; subset < (1u << generators); ++subset) {
    std::uint32_t g = 0;
    for (int v = 0; v < generators; ++v)
      if (subset & (1u << v)) g ^= flips[v];
    const double a = std::exp(-beta * std::popcount(g));
    state.amplitudes[g] += a;
    norm2 += static_cast<long double>(a) * a;
  }
  const double inv = static_cast<double>(1.0L / std::sqrt(norm2));
  for (double& a : state.amplitudes) a *= inv;
  return state;
}

TwoQubitState reduce_pair(const GroundStateVector& state, int i, int j) {
  const int n = state.torus.qubits();
  if (i < 0 || j < 0 || i >= n || j >= n)
    throw Error(ErrorCode::IndexOutOfRange, "edge index outside the torus");
  if (i == j) throw Error(ErrorCode::InvalidArgument, "pair needs two distinct edges");

  const std::uint32_t bi = 1u << i;
  const std::uint32_t bj = 1u << j;
  std::array<long double, 16> acc{};
  const auto& psi = state.amplitudes;
  for (std::uint32_t s = 0; s < psi.size(); ++s) {
    if (psi[s] == 0.0) continue;
    const int row = ((s & bi) ? 2 : 0) + ((s & bj) ? 1 : 0);
    const std::uint32_t rest = s & ~(bi | bj);
    for (int col = 0; col < 4; ++col) {
      const std::uint32_t t = rest | ((col & 2) ? bi : 0u) | ((col & 1) ? bj : 0u);
      acc[row * 4 + col] += static_cast<long double>(psi[s]) * psi[t];
    }
  }
  Matrix4c m{};
  for (int k = 0; k < 16; ++k) m[k] = static_cast<double>(acc[k]);
  return TwoQubitState::make(m);
}

double flip_overlap(const GroundStateVector& state, std::uint32_t mask) {
  long double acc = 0.0L;
  const auto& psi = state.amplitudes;
  for (std::uint32_t s = 0; s < psi.size(); ++s) acc += static_cast<long double>(psi[s]) * psi[s ^ mask];
  return static_cast<double>(acc);
}

const char* observable_name(Observable o) noexcept {
  switch (o) {
    case Observable::D10: return "d10";
    case Observable::D11: return "d11";
    case Observable::D20: return "d20";
    case Observable::D21: return "d21";
    case Observable::Plaquette: return "plaquette";
  }
  return "?";
}

ComparisonReport compare_formulas(double beta, std::span<const int> sides, int threads) {
  if (sides.empty()) throw Error(ErrorCode::InvalidArgument, "no lattice sides given");
  for (int L : sides) check_ising({L, beta});

  ComparisonReport report;
  report.beta = beta;
  const bool zero = beta == 0.0;
  report.matches[0] = {"magnetization", zero ? 0.0 : std::abs(kcc::magnetization(beta)), {}, {}};
  report.matches[1] = {"corr_nearest", zero ? 0.0 : std::abs(kcc::corr_nearest(beta)), {}, {}};
  report.matches[2] = {"corr_next_nearest", zero ? 0.0 : std::abs(kcc::corr_next_nearest(beta)), {}, {}};

  for (int L : sides) {
    const int n = L * L;
    const auto h = enumerate(L, 5, threads, [n](std::uint32_t m, const TorusShifts& sh, auto& v) {
      const std::uint32_t mx = sh.x(m);
      const std::uint32_t mxx = sh.x(mx);
      v[0] = translation_sum(m, mx, n);
      v[1] = translation_sum(m, sh.y(mx), n);
      v[2] = translation_sum(m, mxx, n);
      v[3] = translation_sum(m, sh.y(mxx), n);
      // theta_r theta_{r+x} theta_{r+y} theta_{r+x+y}: parity of broken
      // horizontal bonds on two stacked rows.
      const std::uint32_t broken = m ^ mx;
      v[4] = translation_sum(broken, sh.y(broken), n);
    });
    const auto e = expectations(h, beta);
    ComparisonRow row;
    row.side = L;
    for (int o = 0; o < 5; ++o) row.enumerated[o] = e[o] / n;
    report.rows.push_back(row);

    for (auto& match : report.matches) {
      int best = 0;
      for (int o = 1; o < 5; ++o)
        if (std::abs(row.enumerated[o] - match.value) < std::abs(row.enumerated[best] - match.value)) best = o;
      match.best.push_back(kObservables[best]);
      match.deviation.push_back(std::abs(row.enumerated[best] - match.value));
    }
  }
  return report;
}

}  // namespace bellkcc::oracles
