#pragma once

// Exact Wasserstein-1 distance between finitely supported measures under an
// integer-valued metric.
//
// The transportation problem is solved by successive shortest augmenting paths.
// Costs are integers, so path lengths and node potentials stay in int64; only
// the flow values are rational. Mass present in both measures at the same
// vertex is matched in place first (zero cost, always optimal for a metric).

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "orc/error.hpp"
#include "orc/graph.hpp"
#include "orc/random_walk.hpp"
#include "orc/scalar.hpp"

namespace orc {

/// A distance oracle: returns the integer distance, or nullopt if infinite.
template <class M>
concept Metric = requires(const M& m, VertexId a, VertexId b) {
  { m(a, b) } -> std::convertible_to<std::optional<std::int64_t>>;
};

/// Hop metric of a graph; all-pairs distances are cached inside the graph.
class HopMetric {
 public:
  explicit HopMetric(const WeightedGraph& g) : graph_(&g) {}
  std::optional<std::int64_t> operator()(VertexId a, VertexId b) const {
    auto h = graph_->hops(a, b);
    if (!h) return std::nullopt;
    return static_cast<std::int64_t>(*h);
  }

 private:
  const WeightedGraph* graph_;
};

/// Multiplies every distance of another metric by a positive integer.
template <Metric Base>
class ScaledMetric {
 public:
  ScaledMetric(Base base, std::int64_t factor) : base_(std::move(base)), factor_(factor) {}
  std::optional<std::int64_t> operator()(VertexId a, VertexId b) const {
    auto d = base_(a, b);
    if (!d) return std::nullopt;
    return *d * factor_;
  }

 private:
  Base base_;
  std::int64_t factor_;
};

struct Flow {
  VertexId source = 0;
  VertexId sink = 0;
  Scalar mass;
};

/// Coupling between two measures; cost = sum of mass * distance.
struct TransportPlan {
  std::vector<Flow> flows;
  Scalar cost;
};

struct WassersteinResult {
  Scalar distance;
  TransportPlan plan;
};

/// Kantorovich potential on the union of both supports.
struct DualCertificate {
  std::vector<Atom> potential;  // vertex -> f(vertex), sorted by vertex

  Scalar at(VertexId v) const {
    for (const Atom& a : potential)
      if (a.vertex == v) return a.mass;
    return 0;
  }
};

namespace detail {

struct TransportSolution {
  TransportPlan plan;
  // Residual sinks after in-place matching and their dual values beta_j, with
  // alpha_i + beta_j <= d(i, j) for all i, j and equality on used arcs.
  std::vector<VertexId> sinks;
  std::vector<std::int64_t> sink_duals;
};

inline void check_balanced(std::span<const Atom> mu, std::span<const Atom> nu) {
  Scalar total_mu = 0, total_nu = 0;
  for (const Atom& a : mu) {
    if (sgn(a.mass) < 0) throw Error(ErrorCode::InvalidMeasure, "negative mass at vertex " + std::to_string(a.vertex));
    total_mu += a.mass;
  }
  for (const Atom& a : nu) {
    if (sgn(a.mass) < 0) throw Error(ErrorCode::InvalidMeasure, "negative mass at vertex " + std::to_string(a.vertex));
    total_nu += a.mass;
  }
  if (total_mu != total_nu)
    throw Error(ErrorCode::UnbalancedMeasures, "total masses " + to_string(total_mu) + " and " + to_string(total_nu) + " differ");
}

/// Dense per-vertex masses restricted to the listed vertices (merging duplicates).
inline std::vector<std::pair<VertexId, Scalar>> collect(std::span<const Atom> atoms) {
  std::vector<std::pair<VertexId, Scalar>> out;
  for (const Atom& a : atoms) {
    if (sgn(a.mass) == 0) continue;
    auto it = std::find_if(out.begin(), out.end(), [&](const auto& p) { return p.first == a.vertex; });
    if (it == out.end())
      out.emplace_back(a.vertex, a.mass);
    else
      it->second += a.mass;
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

template <Metric M>
TransportSolution solve_transport(const M& metric, std::span<const Atom> mu, std::span<const Atom> nu) {
  check_balanced(mu, nu);
  auto supply_atoms = collect(mu);
  auto demand_atoms = collect(nu);

  TransportSolution out;
  out.plan.cost = 0;

  // Match common mass in place.
  std::vector<VertexId> sources;
  std::vector<Scalar> supply;
  for (auto& [v, m] : supply_atoms) {
    auto it = std::find_if(demand_atoms.begin(), demand_atoms.end(), [&](const auto& p) { return p.first == v; });
    if (it != demand_atoms.end()) {
      Scalar kept = std::min(m, it->second);
      out.plan.flows.push_back({v, v, kept});
      m -= kept;
      it->second -= kept;
    }
    if (sgn(m) > 0) {
      sources.push_back(v);
      supply.push_back(m);
    }
  }
  std::vector<Scalar> demand;
  for (auto& [v, m] : demand_atoms) {
    if (sgn(m) > 0) {
      out.sinks.push_back(v);
      demand.push_back(m);
    }
  }

  const std::size_t ns = sources.size();
  const std::size_t nt = out.sinks.size();
  std::vector<std::int64_t> cost(ns * nt);
  for (std::size_t i = 0; i < ns; ++i) {
    for (std::size_t j = 0; j < nt; ++j) {
      auto d = metric(sources[i], out.sinks[j]);
      if (!d)
        throw Error(ErrorCode::InfiniteDistance, "vertices " + std::to_string(sources[i]) + " and " +
                                                     std::to_string(out.sinks[j]) + " lie in different components");
      cost[i * nt + j] = *d;
    }
  }
  std::vector<Scalar> flow(ns * nt);

  // Bellman-Ford over the residual bipartite network. Node ids: sources
  // 0..ns-1, sinks ns..ns+nt-1. Forward arcs i->j always; backward arcs j->i
  // whenever flow(i, j) > 0.
  constexpr std::int64_t inf = std::numeric_limits<std::int64_t>::max() / 4;
  const std::size_t nodes = ns + nt;
  auto shortest_paths = [&](bool from_all, std::vector<std::int64_t>& dist, std::vector<std::int64_t>& pred) {
    dist.assign(nodes, inf);
    pred.assign(nodes, -1);
    for (std::size_t i = 0; i < ns; ++i)
      if (from_all || sgn(supply[i]) > 0) dist[i] = 0;
    if (from_all)
      for (std::size_t j = 0; j < nt; ++j) dist[ns + j] = 0;
    // nodes - 1 rounds settle every shortest path; a change in the extra round means a negative cycle.
    for (std::size_t round = 0; round <= nodes; ++round) {
      bool changed = false;
      for (std::size_t i = 0; i < ns; ++i) {
        for (std::size_t j = 0; j < nt; ++j) {
          const std::int64_t c = cost[i * nt + j];
          if (dist[i] < inf && dist[i] + c < dist[ns + j]) {
            dist[ns + j] = dist[i] + c;
            pred[ns + j] = static_cast<std::int64_t>(i);
            changed = true;
          }
          if (sgn(flow[i * nt + j]) > 0 && dist[ns + j] < inf && dist[ns + j] - c < dist[i]) {
            dist[i] = dist[ns + j] - c;
            pred[i] = static_cast<std::int64_t>(ns + j);
            changed = true;
          }
        }
      }
      if (!changed) return;
    }
    throw Error(ErrorCode::CertificateGapNonzero, "negative residual cycle in transport solver");
  };

  std::vector<std::int64_t> dist, pred;
  for (;;) {
    bool pending = false;
    for (const Scalar& s : supply) pending = pending || sgn(s) > 0;
    if (!pending) break;

    shortest_paths(false, dist, pred);
    std::size_t target = nt;
    for (std::size_t j = 0; j < nt; ++j)
      if (sgn(demand[j]) > 0 && dist[ns + j] < inf && (target == nt || dist[ns + j] < dist[ns + target])) target = j;
    if (target == nt) throw Error(ErrorCode::UnbalancedMeasures, "no augmenting path left with supply remaining");

    // Trace back to the originating source and find the bottleneck.
    Scalar bottleneck = demand[target];
    std::size_t node = ns + target;
    while (pred[node] >= 0) {
      auto prev = static_cast<std::size_t>(pred[node]);
      if (node < ns) bottleneck = std::min(bottleneck, flow[node * nt + (prev - ns)]);  // backward arc prev->node
      node = prev;
    }
    bottleneck = std::min(bottleneck, supply[node]);
    const std::size_t origin = node;

    node = ns + target;
    while (pred[node] >= 0) {
      auto prev = static_cast<std::size_t>(pred[node]);
      if (node >= ns)
        flow[prev * nt + (node - ns)] += bottleneck;
      else
        flow[node * nt + (prev - ns)] -= bottleneck;
      node = prev;
    }
    supply[origin] -= bottleneck;
    demand[target] -= bottleneck;
  }

  for (std::size_t i = 0; i < ns; ++i) {
    for (std::size_t j = 0; j < nt; ++j) {
      if (sgn(flow[i * nt + j]) > 0) {
        out.plan.cost += flow[i * nt + j] * cost[i * nt + j];
        out.plan.flows.push_back({sources[i], out.sinks[j], flow[i * nt + j]});
      }
    }
  }

  // Potentials p with p_j - p_i <= c_ij on every residual arc; beta_j = p_j.
  shortest_paths(true, dist, pred);
  out.sink_duals.assign(dist.begin() + static_cast<std::ptrdiff_t>(ns), dist.end());

  std::sort(out.plan.flows.begin(), out.plan.flows.end(), [](const Flow& a, const Flow& b) {
    return a.source != b.source ? a.source < b.source : a.sink < b.sink;
  });
  return out;
}

}  // namespace detail

/// Exact W_1(mu, nu) with an optimal coupling.
template <Metric M>
WassersteinResult wasserstein(const M& metric, std::span<const Atom> mu, std::span<const Atom> nu) {
  auto solution = detail::solve_transport(metric, mu, nu);
  Scalar cost = solution.plan.cost;
  return {std::move(cost), std::move(solution.plan)};
}

template <Metric M>
WassersteinResult wasserstein(const M& metric, const ProbMeasure& mu, const ProbMeasure& nu) {
  return wasserstein(metric, mu.atoms(), nu.atoms());
}

/// True iff the plan is nonnegative, has the right marginals, and its stated cost recomputes exactly.
template <Metric M>
bool verify_plan(const TransportPlan& plan, std::span<const Atom> mu, std::span<const Atom> nu, const M& metric) {
  auto want_out = detail::collect(mu);
  auto want_in = detail::collect(nu);
  std::vector<std::pair<VertexId, Scalar>> got_out, got_in;
  auto add = [](std::vector<std::pair<VertexId, Scalar>>& acc, VertexId v, const Scalar& m) {
    auto it = std::find_if(acc.begin(), acc.end(), [&](const auto& p) { return p.first == v; });
    if (it == acc.end())
      acc.emplace_back(v, m);
    else
      it->second += m;
  };
  Scalar cost = 0;
  for (const Flow& f : plan.flows) {
    if (sgn(f.mass) < 0) return false;
    if (sgn(f.mass) == 0) continue;
    auto d = metric(f.source, f.sink);
    if (!d) return false;
    cost += f.mass * *d;
    add(got_out, f.source, f.mass);
    add(got_in, f.sink, f.mass);
  }
  auto sorted = [](auto v) {
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return v;
  };
  return sorted(got_out) == want_out && sorted(got_in) == want_in && cost == plan.cost;
}

template <Metric M>
bool verify_plan(const TransportPlan& plan, const ProbMeasure& mu, const ProbMeasure& nu, const M& metric) {
  return verify_plan(plan, mu.atoms(), nu.atoms(), metric);
}

/// sum f dmu - sum f dnu.
inline Scalar dual_value(const DualCertificate& cert, std::span<const Atom> mu, std::span<const Atom> nu) {
  Scalar value = 0;
  for (const Atom& a : mu) value += cert.at(a.vertex) * a.mass;
  for (const Atom& a : nu) value -= cert.at(a.vertex) * a.mass;
  return value;
}

/// |f(u) - f(v)| <= d(u, v) for every pair of the certificate's domain.
template <Metric M>
bool is_one_lipschitz(const DualCertificate& cert, const M& metric) {
  for (std::size_t i = 0; i < cert.potential.size(); ++i) {
    for (std::size_t j = i + 1; j < cert.potential.size(); ++j) {
      auto d = metric(cert.potential[i].vertex, cert.potential[j].vertex);
      if (!d) continue;
      Scalar gap = cert.potential[i].mass - cert.potential[j].mass;
      if (abs(gap) > *d) return false;
    }
  }
  return true;
}

/// A 1-Lipschitz potential attaining primal_cost. The optimal sink duals are
/// extended by f(z) = min_j (d(z, sink_j) - beta_j), which is 1-Lipschitz on
/// the whole component and still dominates the source duals.
template <Metric M>
DualCertificate dual_certificate(const M& metric, std::span<const Atom> mu, std::span<const Atom> nu,
                                 const Scalar& primal_cost) {
  auto solution = detail::solve_transport(metric, mu, nu);
  std::vector<VertexId> domain;
  for (const Atom& a : mu) domain.push_back(a.vertex);
  for (const Atom& a : nu) domain.push_back(a.vertex);
  std::sort(domain.begin(), domain.end());
  domain.erase(std::unique(domain.begin(), domain.end()), domain.end());

  DualCertificate cert;
  for (VertexId z : domain) {
    std::optional<std::int64_t> best;
    for (std::size_t j = 0; j < solution.sinks.size(); ++j) {
      auto d = metric(z, solution.sinks[j]);
      if (!d) throw Error(ErrorCode::InfiniteDistance, "support straddles components");
      std::int64_t candidate = *d - solution.sink_duals[j];
      if (!best || candidate < *best) best = candidate;
    }
    cert.potential.push_back({z, Scalar(static_cast<long>(best.value_or(0)))});
  }

  Scalar value = dual_value(cert, mu, nu);
  if (value != primal_cost || !is_one_lipschitz(cert, metric))
    throw Error(ErrorCode::CertificateGapNonzero,
                "dual value " + to_string(value) + " differs from primal cost " + to_string(primal_cost));
  return cert;
}

template <Metric M>
DualCertificate dual_certificate(const M& metric, const ProbMeasure& mu, const ProbMeasure& nu, const Scalar& primal_cost) {
  return dual_certificate(metric, mu.atoms(), nu.atoms(), primal_cost);
}

}  // namespace orc
