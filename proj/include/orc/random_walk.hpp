#pragma once

// Random-walk measures m_x, t-step distributions, neighborhood graphs G[t],
// the heat kernel and lazy walks.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "orc/error.hpp"
#include "orc/graph.hpp"
#include "orc/scalar.hpp"

namespace orc {

/// Point mass at a vertex.
struct Atom {
  VertexId vertex = 0;
  Scalar mass;

  friend bool operator==(const Atom&, const Atom&) = default;
};

/// Finitely supported probability measure with exact masses. Atoms are sorted
/// by vertex and every stored mass is strictly positive.
class ProbMeasure {
 public:
  ProbMeasure() = default;

  /// Merges duplicate vertices. Every mass must be > 0 and the total must be 1.
  static ProbMeasure from_atoms(std::vector<Atom> atoms) {
    std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.vertex < b.vertex; });
    std::vector<Atom> merged;
    Scalar total = 0;
    for (Atom& a : atoms) {
      a.mass.canonicalize();
      if (sgn(a.mass) <= 0) throw Error(ErrorCode::InvalidMeasure, "non-positive mass at vertex " + std::to_string(a.vertex));
      total += a.mass;
      if (!merged.empty() && merged.back().vertex == a.vertex)
        merged.back().mass += a.mass;
      else
        merged.push_back(std::move(a));
    }
    if (total != 1) throw Error(ErrorCode::InvalidMeasure, "total mass is " + to_string(total) + ", expected 1");
    ProbMeasure m;
    m.atoms_ = std::move(merged);
    return m;
  }

  static ProbMeasure dirac(VertexId x) {
    ProbMeasure m;
    m.atoms_.push_back({x, Scalar(1)});
    return m;
  }

  std::span<const Atom> atoms() const noexcept { return atoms_; }
  std::size_t support_size() const noexcept { return atoms_.size(); }

  Scalar mass(VertexId v) const {
    auto it = std::lower_bound(atoms_.begin(), atoms_.end(), v, [](const Atom& a, VertexId id) { return a.vertex < id; });
    return (it != atoms_.end() && it->vertex == v) ? it->mass : Scalar(0);
  }

  friend bool operator==(const ProbMeasure&, const ProbMeasure&) = default;

 private:
  std::vector<Atom> atoms_;
};

/// m_x(y) = w_xy / d_x. Includes x itself iff x has a loop.
inline ProbMeasure one_step_measure(const WeightedGraph& g, VertexId x) {
  std::vector<Atom> atoms;
  const Scalar& dx = g.degree(x);
  for (VertexId y : g.neighbors(x)) atoms.push_back({y, g.weight(x, y) / dx});
  return ProbMeasure::from_atoms(std::move(atoms));
}

/// mu -> mu P, one exact step of the walk.
inline ProbMeasure push_forward(const WeightedGraph& g, const ProbMeasure& mu) {
  std::vector<Scalar> dense(g.size());
  std::vector<bool> reached(g.size(), false);
  for (const Atom& a : mu.atoms()) {
    Scalar share = a.mass / g.degree(a.vertex);
    for (VertexId y : g.neighbors(a.vertex)) {
      dense[y] += share * g.weight(a.vertex, y);
      reached[y] = true;
    }
  }
  std::vector<Atom> atoms;
  for (VertexId y = 0; y < g.size(); ++y)
    if (reached[y]) atoms.push_back({y, std::move(dense[y])});
  return ProbMeasure::from_atoms(std::move(atoms));
}

/// delta_x P^t by t successive pushforwards.
inline ProbMeasure t_step_measure(const WeightedGraph& g, VertexId x, std::size_t t) {
  if (t == 0) throw Error(ErrorCode::InvalidStep, "walk length must be at least 1");
  if (x >= g.size()) throw Error(ErrorCode::InvalidVertex, "vertex " + std::to_string(x) + " out of range");
  ProbMeasure mu = ProbMeasure::dirac(x);
  for (std::size_t s = 0; s < t; ++s) mu = push_forward(g, mu);
  return mu;
}

/// Boolean walk-existence matrix: entry (x, y) is true iff a walk of exactly t
/// edges joins x to y. Row-major n*n.
inline std::vector<char> walk_support(const WeightedGraph& g, std::size_t t) {
  if (t == 0) throw Error(ErrorCode::InvalidStep, "walk length must be at least 1");
  const std::size_t n = g.size();
  std::vector<char> current(n * n, 0);
  for (VertexId x = 0; x < n; ++x) current[x * n + x] = 1;
  for (std::size_t s = 0; s < t; ++s) {
    std::vector<char> next(n * n, 0);
    for (VertexId x = 0; x < n; ++x)
      for (VertexId z = 0; z < n; ++z)
        if (current[x * n + z])
          for (VertexId y : g.neighbors(z)) next[x * n + y] = 1;
    current = std::move(next);
  }
  return current;
}

/// G[t] together with the step it was built for.
struct NeighborhoodGraph {
  WeightedGraph graph;
  std::size_t step = 1;
};

/// w_xy[t] = delta_x P^t(y) * d_x. The edge set comes from walk_support; the
/// exact masses must agree with it and the result must be symmetric.
inline NeighborhoodGraph neighborhood_graph(const WeightedGraph& g, std::size_t t) {
  const std::size_t n = g.size();
  std::vector<char> support = walk_support(g, t);
  std::vector<Scalar> weights(n * n);
  for (VertexId x = 0; x < n; ++x) {
    ProbMeasure walk = t_step_measure(g, x, t);
    std::size_t expected = 0;
    for (VertexId y = 0; y < n; ++y) expected += support[x * n + y] ? 1 : 0;
    if (walk.support_size() != expected)
      throw Error(ErrorCode::InvalidMeasure, "walk support disagrees with path structure at vertex " + std::to_string(x));
    for (const Atom& a : walk.atoms()) {
      if (!support[x * n + a.vertex])
        throw Error(ErrorCode::InvalidMeasure, "walk support disagrees with path structure at vertex " + std::to_string(x));
      weights[x * n + a.vertex] = a.mass * g.degree(x);
    }
  }
  return {WeightedGraph::from_matrix(n, std::move(weights)), t};
}

/// p_t(x, y) = w_xy[t] / (d_x d_y).
inline Scalar heat_kernel(const WeightedGraph& g, std::size_t t, VertexId x, VertexId y) {
  return t_step_measure(g, x, t).mass(y) / g.degree(y);
}

/// Adds a loop at every vertex with positive laziness so that the new walk stays
/// put with exactly that probability; off-loop transition ratios are unchanged.
/// Requires a loop-free graph and laziness in [0, 1).
inline WeightedGraph lazy_graph(const WeightedGraph& g, std::span<const Scalar> laziness) {
  const std::size_t n = g.size();
  if (laziness.size() != n) throw Error(ErrorCode::InvalidLaziness, "need one laziness value per vertex");
  std::vector<Scalar> weights(n * n);
  for (VertexId x = 0; x < n; ++x) {
    if (g.has_loop(x)) throw Error(ErrorCode::LoopAlreadyPresent, "vertex " + std::to_string(x) + " already has a loop");
    const Scalar& p = laziness[x];
    if (sgn(p) < 0 || p >= 1) throw Error(ErrorCode::InvalidLaziness, "laziness must lie in [0, 1)");
    for (VertexId y = 0; y < n; ++y) weights[x * n + y] = g.weight(x, y);
    // w_xx / (d_x + w_xx) = p
    weights[x * n + x] = p * g.degree(x) / (1 - p);
  }
  return WeightedGraph::from_matrix(n, std::move(weights));
}

inline WeightedGraph lazy_graph(const WeightedGraph& g, const Scalar& laziness) {
  std::vector<Scalar> all(g.size(), laziness);
  return lazy_graph(g, all);
}

/// Smallest t <= t_max for which G[t] is complete with a loop at every vertex.
/// Never exists for bipartite graphs.
inline std::optional<std::size_t> first_complete_t(const WeightedGraph& g, std::size_t t_max = 16) {
  if (!validate_connected(g)) throw Error(ErrorCode::DisconnectedGraph, "first_complete_t needs a connected graph");
  const std::size_t n = g.size();
  std::vector<char> reach(n * n, 0);
  for (VertexId x = 0; x < n; ++x) reach[x * n + x] = 1;
  for (std::size_t t = 1; t <= t_max; ++t) {
    std::vector<char> next(n * n, 0);
    for (VertexId x = 0; x < n; ++x)
      for (VertexId z = 0; z < n; ++z)
        if (reach[x * n + z])
          for (VertexId y : g.neighbors(z)) next[x * n + y] = 1;
    reach = std::move(next);
    if (std::all_of(reach.begin(), reach.end(), [](char c) { return c != 0; })) return t;
  }
  return std::nullopt;
}

}  // namespace orc
