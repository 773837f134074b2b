#pragma once

// Weighted undirected graphs with loops, the hop metric, and the neighbor
// partition used by the curvature bounds.

#include <algorithm>
#include <cstddef>
#include <deque>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "orc/error.hpp"
#include "orc/scalar.hpp"

namespace orc {

using VertexId = std::size_t;

struct Edge {
  VertexId u = 0;
  VertexId v = 0;
  Scalar weight = 1;
};

/// Immutable weighted graph on vertices 0..N-1. A loop at x is stored once and
/// contributes w_xx once to the degree d_x = sum_y w_xy.
class WeightedGraph {
 public:
  /// Builds from a dense symmetric weight matrix (row-major, n*n). Zero means no edge.
  static WeightedGraph from_matrix(std::size_t n, std::vector<Scalar> weights) {
    if (n == 0) throw Error(ErrorCode::EmptyGraph, "graph has no vertices");
    if (weights.size() != n * n) throw Error(ErrorCode::AsymmetricWeights, "weight matrix has wrong size");
    for (Scalar& w : weights) w.canonicalize();  // mpq arithmetic assumes lowest terms
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = x; y < n; ++y) {
        const Scalar& w = weights[x * n + y];
        if (sgn(w) < 0) throw Error(ErrorCode::NonPositiveWeight, "negative weight on pair " + pair_name(x, y));
        if (w != weights[y * n + x]) throw Error(ErrorCode::AsymmetricWeights, "asymmetric weight on pair " + pair_name(x, y));
      }
    }
    return WeightedGraph(n, std::move(weights));
  }

  std::size_t size() const noexcept { return n_; }

  const Scalar& weight(VertexId x, VertexId y) const { return weights_[index(x, y)]; }
  const Scalar& degree(VertexId x) const {
    check_vertex(x);
    return degrees_[x];
  }
  bool adjacent(VertexId x, VertexId y) const { return sgn(weight(x, y)) > 0; }
  bool has_loop(VertexId x) const { return adjacent(x, x); }

  /// Sorted neighbor list; contains x itself iff x has a loop.
  const std::vector<VertexId>& neighbors(VertexId x) const {
    check_vertex(x);
    return adjacency_[x];
  }

  /// Breadth-first hop count; nullopt when y is not reachable from x.
  std::optional<unsigned> hops(VertexId x, VertexId y) const {
    int h = hops_[index(x, y)];
    if (h < 0) return std::nullopt;
    return static_cast<unsigned>(h);
  }

  /// Undirected edges (u <= v), loops included, in lexicographic order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (VertexId u = 0; u < n_; ++u)
      for (VertexId v : adjacency_[u])
        if (u <= v) out.push_back({u, v, weight(u, v)});
    return out;
  }

  std::size_t edge_count() const noexcept { return edge_count_; }
  std::size_t loop_count() const noexcept { return loop_count_; }

  friend bool operator==(const WeightedGraph& a, const WeightedGraph& b) {
    return a.n_ == b.n_ && a.weights_ == b.weights_;
  }

 private:
  WeightedGraph(std::size_t n, std::vector<Scalar> weights)
      : n_(n), weights_(std::move(weights)), degrees_(n), adjacency_(n), hops_(n * n, -1) {
    for (VertexId x = 0; x < n_; ++x) {
      Scalar d = 0;
      for (VertexId y = 0; y < n_; ++y) {
        const Scalar& w = weights_[x * n_ + y];
        if (sgn(w) > 0) {
          d += w;
          adjacency_[x].push_back(y);
          if (x < y) ++edge_count_;
          if (x == y) {
            ++edge_count_;
            ++loop_count_;
          }
        }
      }
      if (sgn(d) == 0) throw Error(ErrorCode::IsolatedVertex, "vertex " + std::to_string(x) + " has degree 0");
      degrees_[x] = std::move(d);
    }
    for (VertexId s = 0; s < n_; ++s) bfs_from(s);
  }

  void bfs_from(VertexId source) {
    int* row = &hops_[source * n_];
    row[source] = 0;
    std::deque<VertexId> queue{source};
    while (!queue.empty()) {
      VertexId u = queue.front();
      queue.pop_front();
      for (VertexId v : adjacency_[u]) {
        if (row[v] < 0) {
          row[v] = row[u] + 1;
          queue.push_back(v);
        }
      }
    }
  }

  void check_vertex(VertexId x) const {
    if (x >= n_) throw Error(ErrorCode::InvalidVertex, "vertex " + std::to_string(x) + " out of range");
  }
  std::size_t index(VertexId x, VertexId y) const {
    check_vertex(x);
    check_vertex(y);
    return x * n_ + y;
  }
  static std::string pair_name(VertexId x, VertexId y) {
    return "(" + std::to_string(x) + "," + std::to_string(y) + ")";
  }

  std::size_t n_ = 0;
  std::vector<Scalar> weights_;
  std::vector<Scalar> degrees_;
  std::vector<std::vector<VertexId>> adjacency_;
  std::vector<int> hops_;
  std::size_t edge_count_ = 0;
  std::size_t loop_count_ = 0;
};

/// Builds a graph from an edge list. Vertex ids must be dense in [0, N) where
/// N = max(n_vertices, largest id + 1); every vertex needs at least one edge.
inline WeightedGraph build_graph(std::span<const Edge> edges, std::size_t n_vertices = 0) {
  if (edges.empty() && n_vertices == 0) throw Error(ErrorCode::EmptyGraph, "no edges given");
  std::size_t n = n_vertices;
  for (const Edge& e : edges) n = std::max({n, e.u + 1, e.v + 1});

  std::vector<Scalar> weights(n * n);
  for (const Edge& e : edges) {
    auto where = "(" + std::to_string(e.u) + "," + std::to_string(e.v) + ")";
    if (sgn(e.weight) <= 0) throw Error(ErrorCode::NonPositiveWeight, "edge " + where + " has weight " + to_string(e.weight));
    Scalar& slot = weights[e.u * n + e.v];
    if (sgn(slot) != 0) throw Error(ErrorCode::DuplicateEdge, "edge " + where + " given twice");
    slot = e.weight;
    weights[e.v * n + e.u] = e.weight;
  }
  return WeightedGraph::from_matrix(n, std::move(weights));
}

inline WeightedGraph build_graph(std::initializer_list<Edge> edges, std::size_t n_vertices = 0) {
  return build_graph(std::span<const Edge>(edges.begin(), edges.size()), n_vertices);
}

inline std::optional<unsigned> hop_distance(const WeightedGraph& g, VertexId x, VertexId y) {
  return g.hops(x, y);
}

/// Connected-component label per vertex, labels 0..k-1 in order of first vertex.
inline std::vector<std::size_t> component_labels(const WeightedGraph& g) {
  constexpr auto unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> label(g.size(), unset);
  std::size_t next = 0;
  for (VertexId s = 0; s < g.size(); ++s) {
    if (label[s] != unset) continue;
    for (VertexId v = 0; v < g.size(); ++v)
      if (g.hops(s, v)) label[v] = next;
    ++next;
  }
  return label;
}

inline std::size_t component_count(const WeightedGraph& g) {
  auto labels = component_labels(g);
  return labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
}

inline bool validate_connected(const WeightedGraph& g) {
  for (VertexId v = 0; v < g.size(); ++v)
    if (!g.hops(0, v)) return false;
  return true;
}

struct Bipartition {
  bool bipartite = false;
  std::optional<std::vector<int>> coloring;  // 0/1 per vertex when bipartite
};

/// Two-coloring by BFS parity. A loop is an odd closed walk, so any loop rules it out.
inline Bipartition is_bipartite(const WeightedGraph& g) {
  if (!validate_connected(g)) throw Error(ErrorCode::DisconnectedGraph, "bipartiteness test needs a connected graph");
  std::vector<int> color(g.size());
  for (VertexId v = 0; v < g.size(); ++v) color[v] = static_cast<int>(*g.hops(0, v) % 2);
  for (VertexId u = 0; u < g.size(); ++u)
    for (VertexId v : g.neighbors(u))
      if (color[u] == color[v]) return {false, std::nullopt};
  return {true, std::move(color)};
}

/// Split of N_x and N_y for an adjacent pair x ~ y (x != y).
struct NeighborhoodPartition {
  VertexId x = 0;
  VertexId y = 0;
  std::vector<VertexId> only_x;        // z ~ x, z !~ y, z != x, y
  std::vector<VertexId> only_y;        // z ~ y, z !~ x, z != x, y
  std::vector<VertexId> shared_x_ge_y; // common, w_xz/d_x >= w_zy/d_y
  std::vector<VertexId> shared_x_lt_y; // common, w_xz/d_x <  w_zy/d_y
  Scalar loop_x;       // w_xx / d_x
  Scalar loop_y;       // w_yy / d_y
  Scalar edge_mass_x;  // w_xy / d_x
  Scalar edge_mass_y;  // w_xy / d_y

  std::vector<VertexId> shared() const {
    std::vector<VertexId> all = shared_x_ge_y;
    all.insert(all.end(), shared_x_lt_y.begin(), shared_x_lt_y.end());
    std::sort(all.begin(), all.end());
    return all;
  }
};

inline NeighborhoodPartition neighbor_partition(const WeightedGraph& g, VertexId x, VertexId y) {
  if (x == y) throw Error(ErrorCode::SameVertex, "neighbor partition needs distinct vertices");
  if (!g.adjacent(x, y))
    throw Error(ErrorCode::NotNeighbors, std::to_string(x) + " and " + std::to_string(y) + " are not adjacent");

  NeighborhoodPartition p;
  p.x = x;
  p.y = y;
  const Scalar& dx = g.degree(x);
  const Scalar& dy = g.degree(y);
  p.loop_x = g.weight(x, x) / dx;
  p.loop_y = g.weight(y, y) / dy;
  p.edge_mass_x = g.weight(x, y) / dx;
  p.edge_mass_y = g.weight(x, y) / dy;

  for (VertexId z : g.neighbors(x)) {
    if (z == x || z == y) continue;
    if (!g.adjacent(z, y)) {
      p.only_x.push_back(z);
    } else if (g.weight(x, z) / dx >= g.weight(z, y) / dy) {
      p.shared_x_ge_y.push_back(z);
    } else {
      p.shared_x_lt_y.push_back(z);
    }
  }
  for (VertexId z : g.neighbors(y))
    if (z != x && z != y && !g.adjacent(z, x)) p.only_y.push_back(z);
  return p;
}

}  // namespace orc
