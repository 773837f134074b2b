#pragma once

// Independent reference computations. None of these call into the solver
// under test beyond graph construction.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <optional>
#include <vector>

#include "orc/graph.hpp"
#include "orc/random_walk.hpp"
#include "orc/scalar.hpp"

namespace orc::testing {

/// Dense rational transition matrix P(x, y) = w_xy / d_x.
inline std::vector<Scalar> transition_matrix(const WeightedGraph& g) {
  const std::size_t n = g.size();
  std::vector<Scalar> p(n * n, Scalar(0));
  for (VertexId x = 0; x < n; ++x)
    for (VertexId y = 0; y < n; ++y) p[x * n + y] = g.weight(x, y) / g.degree(x);
  return p;
}

inline std::vector<Scalar> matmul(const std::vector<Scalar>& a, const std::vector<Scalar>& b, std::size_t n) {
  std::vector<Scalar> c(n * n, Scalar(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (sgn(a[i * n + k]) == 0) continue;
      for (std::size_t j = 0; j < n; ++j) c[i * n + j] += a[i * n + k] * b[k * n + j];
    }
  return c;
}

inline std::vector<Scalar> matrix_power(const WeightedGraph& g, std::size_t t) {
  const std::size_t n = g.size();
  auto p = transition_matrix(g);
  std::vector<Scalar> r(n * n, Scalar(0));
  for (std::size_t i = 0; i < n; ++i) r[i * n + i] = 1;
  for (std::size_t s = 0; s < t; ++s) r = matmul(r, p, n);
  return r;
}

/// Boolean reachability in exactly t steps, by repeated boolean products.
inline std::vector<char> boolean_power(const WeightedGraph& g, std::size_t t) {
  const std::size_t n = g.size();
  std::vector<char> r(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) r[i * n + i] = 1;
  for (std::size_t s = 0; s < t; ++s) {
    std::vector<char> next(n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        if (r[i * n + k])
          for (std::size_t j = 0; j < n; ++j)
            if (g.adjacent(k, j)) next[i * n + j] = 1;
    r = std::move(next);
  }
  return r;
}

/// Floyd-Warshall hop distances; -1 for unreachable.
inline std::vector<long> floyd_hops(const WeightedGraph& g) {
  const std::size_t n = g.size();
  const long inf = 1L << 40;
  std::vector<long> d(n * n, inf);
  for (std::size_t i = 0; i < n; ++i) {
    d[i * n + i] = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && g.adjacent(i, j)) d[i * n + j] = 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i * n + j] = std::min(d[i * n + j], d[i * n + k] + d[k * n + j]);
  for (auto& v : d)
    if (v >= inf) v = -1;
  return d;
}

/// Closed forms: cycle C_n has lambda = 1 - cos(2 pi j / n).
inline std::vector<double> cycle_spectrum(std::size_t n) {
  std::vector<double> out;
  for (std::size_t j = 0; j < n; ++j) out.push_back(1.0 - std::cos(2.0 * std::numbers::pi * j / n));
  std::sort(out.begin(), out.end());
  return out;
}

/// Path P_n: lambda = 1 - cos(pi j / (n - 1)).
inline std::vector<double> path_spectrum(std::size_t n) {
  std::vector<double> out;
  for (std::size_t j = 0; j < n; ++j) out.push_back(1.0 - std::cos(std::numbers::pi * j / (n - 1)));
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<double> complete_spectrum(std::size_t n) {
  std::vector<double> out(n, static_cast<double>(n) / (n - 1));
  out[0] = 0.0;
  return out;
}

/// Petersen: adjacency eigenvalues 3, 1 (x5), -2 (x4); lambda = 1 - theta / 3.
inline std::vector<double> petersen_spectrum() {
  std::vector<double> out{0.0};
  for (int i = 0; i < 5; ++i) out.push_back(2.0 / 3.0);
  for (int i = 0; i < 4; ++i) out.push_back(5.0 / 3.0);
  return out;
}

/// Brute-force optimal transport by vertex enumeration: every basic feasible
/// solution of the transportation polytope is supported on a spanning tree
/// of the m x n bipartite cell graph (m + n - 1 cells). Enumerate all such
/// trees, solve each by leaf peeling, keep nonnegative ones, take the minimum.
struct BruteForceResult {
  Scalar cost;
  std::size_t bases = 0;
};

inline std::optional<BruteForceResult> brute_force_transport(const std::vector<Scalar>& supply,
                                                             const std::vector<Scalar>& demand,
                                                             const std::vector<long>& cost) {
  const std::size_t m = supply.size(), n = demand.size(), cells = m * n, k = m + n - 1;
  if (k > cells) return std::nullopt;
  std::vector<std::size_t> pick(k);
  std::iota(pick.begin(), pick.end(), 0);
  std::optional<BruteForceResult> best;
  std::size_t bases = 0;

  auto find = [](std::vector<std::size_t>& parent, std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };

  while (true) {
    std::vector<std::size_t> parent(m + n);
    std::iota(parent.begin(), parent.end(), 0);
    bool tree = true;
    for (std::size_t c : pick) {
      std::size_t a = find(parent, c / n), b = find(parent, m + c % n);
      if (a == b) {
        tree = false;
        break;
      }
      parent[a] = b;
    }
    if (tree) {
      ++bases;
      // Peel leaves: a row or column with a single unresolved cell fixes it.
      std::vector<Scalar> rem_s = supply, rem_d = demand;
      std::vector<char> done(k, 0);
      std::vector<Scalar> flow(k);
      bool progress = true;
      std::size_t resolved = 0;
      while (progress && resolved < k) {
        progress = false;
        for (std::size_t node = 0; node < m + n; ++node) {
          std::size_t count = 0, which = 0;
          for (std::size_t i = 0; i < k; ++i) {
            if (done[i]) continue;
            bool touches = node < m ? pick[i] / n == node : pick[i] % n == node - m;
            if (touches) {
              ++count;
              which = i;
            }
          }
          if (count != 1) continue;
          std::size_t r = pick[which] / n, c = pick[which] % n;
          flow[which] = node < m ? rem_s[r] : rem_d[c];
          rem_s[r] -= flow[which];
          rem_d[c] -= flow[which];
          done[which] = 1;
          ++resolved;
          progress = true;
        }
      }
      bool feasible = resolved == k;
      for (std::size_t i = 0; feasible && i < k; ++i) feasible = sgn(flow[i]) >= 0;
      for (std::size_t i = 0; feasible && i < m; ++i) feasible = sgn(rem_s[i]) == 0;
      for (std::size_t j = 0; feasible && j < n; ++j) feasible = sgn(rem_d[j]) == 0;
      if (feasible) {
        Scalar total = 0;
        for (std::size_t i = 0; i < k; ++i) total += flow[i] * cost[pick[i]];
        if (!best || total < best->cost) best = BruteForceResult{total, 0};
      }
    }
    // next combination
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == cells - k + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  if (best) best->bases = bases;
  return best;
}

}  // namespace orc::testing
