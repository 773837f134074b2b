#pragma once

// Curvature-based eigenvalue bounds, each checked against the computed
// spectrum, plus audits of the supporting metric / contraction / curvature
// transfer inequalities.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orc/curvature.hpp"
#include "orc/error.hpp"
#include "orc/graph.hpp"
#include "orc/random_walk.hpp"
#include "orc/scalar.hpp"
#include "orc/spectrum.hpp"
#include "orc/tolerances.hpp"
#include "orc/transport.hpp"

namespace orc {

struct BoundReport {
  std::string bound;
  std::optional<std::size_t> step;
  std::vector<std::pair<std::string, Scalar>> inputs;  // exact inputs (k, k[t], counts, weights)
  std::vector<std::pair<std::string, double>> float_inputs;
  std::optional<double> lower;
  std::optional<double> upper;
  std::optional<Scalar> lower_exact;  // set when the bound is rational
  std::optional<Scalar> upper_exact;
  std::string lower_target = "lambda_1";
  std::string upper_target = "lambda_max";
  // Even-step interval exclusion: no eigenvalue lies strictly inside (first, second).
  std::optional<std::pair<double, double>> excluded_gap;
  bool applicable = false;
  std::string reason;
  bool verified = false;
  // G[t] is disconnected (bipartite graph, even t); the bounds apply to the
  // eigenvalues other than the bipartite pair lambda_0 = 0, lambda_max = 2.
  bool component_restricted = false;

  const Scalar* input(const std::string& name) const {
    for (const auto& [key, value] : inputs)
      if (key == name) return &value;
    return nullptr;
  }
};

namespace detail {

inline BoundReport inapplicable(std::string bound, std::string reason) {
  BoundReport r;
  r.bound = std::move(bound);
  r.reason = std::move(reason);
  return r;
}

/// Real t-th root keeping the sign (odd t may see negative arguments).
inline double signed_root(double value, std::size_t t) {
  const double magnitude = std::pow(std::abs(value), 1.0 / static_cast<double>(t));
  return value < 0 ? -magnitude : magnitude;
}

}  // namespace detail

/// lambda_1 >= k, k the exact minimum curvature over adjacent pairs.
inline BoundReport ollivier_lower(const WeightedGraph& g, const Spectrum& spec, const std::optional<Scalar>& k) {
  if (!validate_connected(g)) return detail::inapplicable("ollivier_lower", "graph is disconnected");
  if (!k || spec.size() < 2) return detail::inapplicable("ollivier_lower", "graph has no edge between distinct vertices");
  BoundReport r;
  r.bound = "ollivier_lower";
  r.inputs.emplace_back("k", *k);
  r.lower_exact = *k;
  r.lower = to_double(*k);
  r.applicable = true;
  r.reason = "lambda_1 >= k";
  r.verified = *spec.first() >= *r.lower - tolerance::bound_slack;
  return r;
}

inline BoundReport ollivier_lower(const WeightedGraph& g) {
  return ollivier_lower(g, spectrum(g), global_lower_bound(g));
}

/// lambda_max <= 2 - k. The formula-based k is reported alongside.
inline BoundReport largest_upper(const WeightedGraph& g, const Spectrum& spec, const std::optional<Scalar>& k) {
  if (!validate_connected(g)) return detail::inapplicable("largest_upper", "graph is disconnected");
  if (!k) return detail::inapplicable("largest_upper", "graph has no edge between distinct vertices");
  BoundReport r;
  r.bound = "largest_upper";
  r.inputs.emplace_back("k", *k);
  if (auto formula = global_lower_bound(g, CurvatureMethod::Formula)) r.inputs.emplace_back("k_formula", *formula);
  r.upper_exact = Scalar(2 - *k);
  r.upper = to_double(*r.upper_exact);
  r.applicable = true;
  r.reason = "lambda_max <= 2 - k";
  r.verified = spec.largest() <= *r.upper + tolerance::bound_slack;
  return r;
}

inline BoundReport largest_upper(const WeightedGraph& g) {
  return largest_upper(g, spectrum(g), global_lower_bound(g));
}

/// 1 - (1 - k[t])^(1/t) <= lambda_1 <= ... <= lambda_max <= 1 + (1 - k[t])^(1/t),
/// k[t] the exact minimum curvature of G[t].
inline BoundReport sandwich_bounds(const WeightedGraph& g, std::size_t t, const Spectrum& spec) {
  if (t == 0) throw Error(ErrorCode::InvalidStep, "step must be at least 1");
  if (!validate_connected(g)) return detail::inapplicable("sandwich", "graph is disconnected");
  NeighborhoodGraph gt = neighborhood_graph(g, t);
  auto kt = global_lower_bound(gt.graph);
  if (!kt) {
    auto r = detail::inapplicable("sandwich", "G[t] has no edge between distinct vertices");
    r.step = t;
    return r;
  }

  BoundReport r;
  r.bound = "sandwich";
  r.step = t;
  r.inputs.emplace_back("k[t]", *kt);
  if (auto formula = global_lower_bound(gt.graph, CurvatureMethod::Formula)) r.inputs.emplace_back("k_formula[t]", *formula);
  const double radius = std::pow(to_double(Scalar(1 - *kt)), 1.0 / static_cast<double>(t));
  r.lower = 1.0 - radius;
  r.upper = 1.0 + radius;
  if (t == 1) {
    r.lower_exact = *kt;
    r.upper_exact = Scalar(2 - *kt);
  }
  r.applicable = true;
  r.component_restricted = !validate_connected(gt.graph);
  r.reason = r.component_restricted ? "G[t] disconnected; bounds cover lambda_1..lambda_{N-2}"
                                    : "1 - (1-k[t])^(1/t) <= lambda_1, lambda_max <= 1 + (1-k[t])^(1/t)";

  // Eigenvalues the bound speaks about.
  std::size_t first = 1, last = spec.size() - 1;  // inclusive
  if (r.component_restricted) {
    r.upper_target = "lambda_{N-2}";
    if (spec.size() < 3) {
      r.verified = true;
      return r;
    }
    last = spec.size() - 2;
  }
  r.verified = spec.eigenvalues[first] >= *r.lower - tolerance::bound_slack &&
               spec.eigenvalues[last] <= *r.upper + tolerance::bound_slack;
  return r;
}

inline BoundReport sandwich_bounds(const WeightedGraph& g, std::size_t t) { return sandwich_bounds(g, t, spectrum(g)); }

/// Transfer of caller-supplied bounds on G[t]: a_t <= lambda_1[t] and
/// lambda_max[t] <= b_t. For even t, b_t is clamped to 1 (lambda_max[t] <= 1 there).
inline BoundReport transfer_bounds(const WeightedGraph& /*g*/, double a_t, double b_t, std::size_t t, const Spectrum& spec) {
  if (t == 0) throw Error(ErrorCode::InvalidStep, "step must be at least 1");
  if (!std::isfinite(a_t) || !std::isfinite(b_t)) throw Error(ErrorCode::InvalidBoundInput, "bounds must be finite");
  const bool even = t % 2 == 0;
  if (even && a_t > 1.0) throw Error(ErrorCode::InvalidBoundInput, "lower bound above 1 is impossible for even t");
  if (a_t > 2.0 || b_t < 0.0) throw Error(ErrorCode::InvalidBoundInput, "bounds lie outside [0, 2]");

  BoundReport r;
  r.bound = "transfer";
  r.step = t;
  r.applicable = true;
  r.reason = even ? "even t: interval from A[t], gap from B[t]" : "odd t: lower from A[t], upper from B[t]";
  if (even && b_t > 1.0) {
    b_t = 1.0;
    r.reason += "; B[t] clamped to 1";
  }
  r.float_inputs.emplace_back("A[t]", a_t);
  r.float_inputs.emplace_back("B[t]", b_t);

  const double lower_radius = detail::signed_root(1.0 - a_t, t);
  const double upper_radius = detail::signed_root(1.0 - b_t, t);
  r.lower = 1.0 - lower_radius;
  if (even) {
    r.upper = 1.0 + lower_radius;
    r.excluded_gap = std::make_pair(1.0 - upper_radius, 1.0 + upper_radius);
  } else {
    r.upper = 1.0 - upper_radius;
  }

  bool ok = true;
  if (auto l1 = spec.first()) ok = ok && *l1 >= *r.lower - tolerance::bound_slack;
  ok = ok && spec.largest() <= *r.upper + tolerance::bound_slack;
  if (r.excluded_gap) {
    for (double lambda : spec.eigenvalues)
      if (lambda > r.excluded_gap->first + tolerance::bound_slack && lambda < r.excluded_gap->second - tolerance::bound_slack)
        ok = false;
  }
  r.verified = ok;
  return r;
}

inline BoundReport transfer_bounds(const WeightedGraph& g, double a_t, double b_t, std::size_t t) {
  return transfer_bounds(g, a_t, b_t, t, spectrum(g));
}

/// Joint-neighbor bounds on lambda_max: (i) needs E(G) in E(G[2]) and gives an
/// upper bound, (ii) needs E(G[2]) in E(G) and gives a lower bound.
inline BoundReport joint_neighbor_bounds(const WeightedGraph& g, const Spectrum& spec) {
  BoundReport r;
  r.bound = "joint_neighbor";
  r.lower_target = "lambda_max";
  r.upper_target = "lambda_max";

  const WeightedGraph g2 = neighborhood_graph(g, 2).graph;
  bool g_in_g2 = true, g2_in_g = true;
  for (VertexId x = 0; x < g.size(); ++x) {
    for (VertexId y = 0; y < g.size(); ++y) {
      if (g.adjacent(x, y) && !g2.adjacent(x, y)) g_in_g2 = false;
      if (g2.adjacent(x, y) && !g.adjacent(x, y)) g2_in_g = false;
    }
  }

  std::optional<std::size_t> fewest, most;
  std::optional<Scalar> heaviest, lightest, max_degree, min_degree;
  for (const Edge& e : g.edges()) {
    if (!heaviest || e.weight > *heaviest) heaviest = e.weight;
    if (!lightest || e.weight < *lightest) lightest = e.weight;
    if (e.u == e.v) continue;
    std::size_t joint = joint_neighbor_count(g, e.u, e.v);
    if (!fewest || joint < *fewest) fewest = joint;
    if (!most || joint > *most) most = joint;
  }
  for (VertexId x = 0; x < g.size(); ++x) {
    if (!max_degree || g.degree(x) > *max_degree) max_degree = g.degree(x);
    if (!min_degree || g.degree(x) < *min_degree) min_degree = g.degree(x);
  }
  if (!fewest) {
    r.reason = "graph has no edge between distinct vertices";
    return r;
  }
  r.inputs.emplace_back("joint_min", Scalar(static_cast<long>(*fewest)));
  r.inputs.emplace_back("joint_max", Scalar(static_cast<long>(*most)));
  r.inputs.emplace_back("W", *heaviest);
  r.inputs.emplace_back("w", *lightest);
  r.inputs.emplace_back("max_degree", *max_degree);
  r.inputs.emplace_back("min_degree", *min_degree);

  std::vector<std::string> notes;
  bool ok = true;
  if (g_in_g2) {
    r.upper_exact = Scalar(2 - (*lightest * *lightest / *heaviest) * Scalar(static_cast<long>(*fewest)) / *max_degree);
    r.upper = to_double(*r.upper_exact);
    ok = ok && spec.largest() <= *r.upper + tolerance::bound_slack;
    notes.emplace_back("(i) E(G) in E(G[2])");
  } else {
    notes.emplace_back("(i) inapplicable: E(G) not in E(G[2])");
  }
  if (g2_in_g) {
    r.lower_exact = Scalar(2 - (*heaviest * *heaviest / *lightest) * Scalar(static_cast<long>(*most)) / *min_degree);
    r.lower = to_double(*r.lower_exact);
    ok = ok && spec.largest() >= *r.lower - tolerance::bound_slack;
    notes.emplace_back("(ii) E(G[2]) in E(G)");
  } else {
    notes.emplace_back("(ii) inapplicable: E(G[2]) not in E(G)");
  }
  r.reason = notes[0] + "; " + notes[1];
  r.applicable = g_in_g2 || g2_in_g;
  r.verified = r.applicable && ok;
  return r;
}

inline BoundReport joint_neighbor_bounds(const WeightedGraph& g) { return joint_neighbor_bounds(g, spectrum(g)); }

struct ContractionAudit {
  std::optional<Scalar> k;
  std::size_t t_max = 0;
  std::size_t checks = 0;
  bool passed = true;
  bool equality_only = false;  // k = 1: every distance must vanish
  // Largest W_1 / ((1-k)^t d(x, y)) seen (k < 1), with its witness.
  std::optional<Scalar> worst_ratio;
  VertexId worst_x = 0;
  VertexId worst_y = 0;
  std::size_t worst_t = 0;
};

/// W_1(delta_x P^t, delta_y P^t) <= (1 - k)^t d(x, y) for all pairs, 1 <= t <= t_max.
inline ContractionAudit contraction_audit(const WeightedGraph& g, std::size_t t_max) {
  if (!validate_connected(g)) throw Error(ErrorCode::DisconnectedGraph, "contraction audit needs a connected graph");
  ContractionAudit audit;
  audit.t_max = t_max;
  audit.k = global_lower_bound(g);
  if (!audit.k) return audit;
  audit.equality_only = *audit.k == 1;

  const std::size_t n = g.size();
  HopMetric metric(g);
  std::vector<ProbMeasure> walks(n);
  for (VertexId x = 0; x < n; ++x) walks[x] = ProbMeasure::dirac(x);
  const Scalar rate = 1 - *audit.k;
  Scalar factor = 1;
  for (std::size_t t = 1; t <= t_max; ++t) {
    for (VertexId x = 0; x < n; ++x) walks[x] = push_forward(g, walks[x]);
    factor *= rate;
    for (VertexId x = 0; x < n; ++x) {
      for (VertexId y = x + 1; y < n; ++y) {
        const Scalar w1 = wasserstein(metric, walks[x], walks[y]).distance;
        const Scalar allowed = factor * Scalar(static_cast<long>(*g.hops(x, y)));
        ++audit.checks;
        if (w1 > allowed) audit.passed = false;
        if (sgn(allowed) > 0) {
          Scalar ratio = w1 / allowed;
          if (!audit.worst_ratio || ratio > *audit.worst_ratio) {
            audit.worst_ratio = ratio;
            audit.worst_x = x;
            audit.worst_y = y;
            audit.worst_t = t;
          }
        }
      }
    }
  }
  return audit;
}

struct MetricAudit {
  std::size_t step = 1;
  std::size_t pairs = 0;
  bool scaled_lower_holds = true;        // d(x, y) / t <= d[t](x, y)
  bool edge_inclusion = false;           // E(G) in E(G[t])
  std::optional<bool> upper_holds;       // d[t](x, y) <= d(x, y), checked only under inclusion
};

inline MetricAudit metric_audit(const WeightedGraph& g, std::size_t t) {
  if (t == 0) throw Error(ErrorCode::InvalidStep, "step must be at least 1");
  const WeightedGraph gt = neighborhood_graph(g, t).graph;
  MetricAudit audit;
  audit.step = t;
  audit.edge_inclusion = true;
  for (VertexId x = 0; x < g.size(); ++x)
    for (VertexId y : g.neighbors(x))
      if (!gt.adjacent(x, y)) audit.edge_inclusion = false;
  if (audit.edge_inclusion) audit.upper_holds = true;

  for (VertexId x = 0; x < g.size(); ++x) {
    for (VertexId y = x + 1; y < g.size(); ++y) {
      auto dt = gt.hops(x, y);
      auto d = g.hops(x, y);
      if (!dt || !d) continue;
      ++audit.pairs;
      if (*d > t * *dt) audit.scaled_lower_holds = false;
      if (audit.edge_inclusion && *dt > *d) audit.upper_holds = false;
    }
  }
  return audit;
}

struct CurvatureTransferCheck {
  std::size_t step = 1;
  bool applicable = false;
  bool vacuous = false;  // threshold <= -2, implied by kappa >= -2
  std::string reason;
  std::optional<Scalar> k;
  std::optional<Scalar> threshold;  // 1 - t (1 - k)^t
  std::optional<Scalar> min_kappa;
  std::size_t pairs = 0;
  bool passed = true;
};

/// kappa[t](x, y) >= 1 - t (1 - k)^t on G[t] for all pairs, provided E(G) in E(G[t]).
inline CurvatureTransferCheck curvature_transfer_check(const WeightedGraph& g, std::size_t t) {
  if (t == 0) throw Error(ErrorCode::InvalidStep, "step must be at least 1");
  CurvatureTransferCheck check;
  check.step = t;
  MetricAudit inclusion = metric_audit(g, t);
  if (!inclusion.edge_inclusion) {
    check.reason = "E(G) not contained in E(G[t])";
    return check;
  }
  check.k = global_lower_bound(g);
  if (!check.k) {
    check.reason = "graph has no edge between distinct vertices";
    return check;
  }
  check.applicable = true;
  check.threshold = Scalar(1 - Scalar(static_cast<long>(t)) * pow(Scalar(1 - *check.k), static_cast<unsigned>(t)));
  if (*check.threshold <= -2) {
    check.vacuous = true;
    check.reason = "threshold at or below -2";
    return check;
  }
  check.reason = "checked every pair of G[t]";
  const WeightedGraph gt = neighborhood_graph(g, t).graph;
  for (VertexId x = 0; x < gt.size(); ++x) {
    for (VertexId y = x + 1; y < gt.size(); ++y) {
      if (!gt.hops(x, y)) continue;
      Scalar kappa = ricci_curvature(gt, x, y).kappa;
      ++check.pairs;
      if (kappa < *check.threshold) check.passed = false;
      if (!check.min_kappa || kappa < *check.min_kappa) check.min_kappa = kappa;
    }
  }
  return check;
}

struct ScanRow {
  std::size_t step = 1;
  std::optional<Scalar> k;          // exact k[t]
  std::optional<Scalar> k_formula;  // lower-bound formula on G[t]
  std::optional<double> lower;
  std::optional<double> upper;
  bool component_restricted = false;
  bool verified = false;
  bool best_lower = false;
  bool best_upper = false;
};

inline std::vector<ScanRow> k_scan(const WeightedGraph& g, std::size_t t_max, const Spectrum& spec) {
  if (!validate_connected(g)) throw Error(ErrorCode::DisconnectedGraph, "k scan needs a connected graph");
  std::vector<ScanRow> rows;
  for (std::size_t t = 1; t <= t_max; ++t) {
    BoundReport r = sandwich_bounds(g, t, spec);
    ScanRow row;
    row.step = t;
    if (const Scalar* k = r.input("k[t]")) row.k = *k;
    if (const Scalar* k = r.input("k_formula[t]")) row.k_formula = *k;
    row.lower = r.lower;
    row.upper = r.upper;
    row.component_restricted = r.component_restricted;
    row.verified = r.verified;
    rows.push_back(std::move(row));
  }
  std::optional<std::size_t> best_lo, best_hi;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].component_restricted) continue;
    if (rows[i].lower && (!best_lo || *rows[i].lower > *rows[*best_lo].lower)) best_lo = i;
    if (rows[i].upper && (!best_hi || *rows[i].upper < *rows[*best_hi].upper)) best_hi = i;
  }
  if (best_lo) rows[*best_lo].best_lower = true;
  if (best_hi) rows[*best_hi].best_upper = true;
  return rows;
}

inline std::vector<ScanRow> k_scan(const WeightedGraph& g, std::size_t t_max) { return k_scan(g, t_max, spectrum(g)); }

}  // namespace orc
