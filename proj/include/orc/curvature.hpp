#pragma once

// Ollivier-Ricci curvature kappa(x, y) = 1 - W_1(m_x, m_y) / d(x, y), and the
// closed-form lower / upper bounds for adjacent pairs on graphs with loops.

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "orc/error.hpp"
#include "orc/graph.hpp"
#include "orc/random_walk.hpp"
#include "orc/scalar.hpp"
#include "orc/transport.hpp"

namespace orc {

struct CurvatureValue {
  VertexId x = 0;
  VertexId y = 0;
  Scalar kappa;
  Scalar w1;
  unsigned distance = 0;
};

inline CurvatureValue ricci_curvature(const WeightedGraph& g, VertexId x, VertexId y) {
  if (x == y) throw Error(ErrorCode::SameVertex, "curvature needs two distinct vertices");
  auto d = g.hops(x, y);
  if (!d)
    throw Error(ErrorCode::InfiniteDistance,
                std::to_string(x) + " and " + std::to_string(y) + " lie in different components");
  HopMetric metric(g);
  auto transport = wasserstein(metric, one_step_measure(g, x), one_step_measure(g, y));
  CurvatureValue out{x, y, Scalar(1 - transport.distance / *d), transport.distance, *d};
  return out;
}

/// Which transport regime the lower-bound formula falls in. Boundary values
/// A = 0 and B = 0 go to the non-strict side.
enum class FormulaCase {
  BothNonNegative,  // 0 <= A <= B
  MixedSign,        // A < 0 <= B
  BothNegative,     // A <= B < 0
};

constexpr const char* to_string(FormulaCase c) noexcept {
  switch (c) {
    case FormulaCase::BothNonNegative: return "A>=0";
    case FormulaCase::MixedSign: return "A<0<=B";
    case FormulaCase::BothNegative: return "B<0";
  }
  return "?";
}

struct BoundFormulaResult {
  VertexId x = 0;
  VertexId y = 0;
  Scalar lower;
  Scalar upper;
  Scalar a;  // 1 - w_xy/d_x - w_xy/d_y - sum over N_xy of the larger share
  Scalar b;  // same with the smaller share
  FormulaCase regime = FormulaCase::BothNonNegative;
};

inline BoundFormulaResult bound_formulas(const WeightedGraph& g, VertexId x, VertexId y) {
  NeighborhoodPartition p = neighbor_partition(g, x, y);
  const Scalar& dx = g.degree(x);
  const Scalar& dy = g.degree(y);

  Scalar sum_min = 0, sum_max = 0;
  for (VertexId z : p.shared()) {
    Scalar from_x = g.weight(z, x) / dx;
    Scalar from_y = g.weight(z, y) / dy;
    sum_min += std::min(from_x, from_y);
    sum_max += std::max(from_x, from_y);
  }

  BoundFormulaResult r;
  r.x = x;
  r.y = y;
  r.a = 1 - p.edge_mass_x - p.edge_mass_y - sum_max;
  r.b = 1 - p.edge_mass_x - p.edge_mass_y - sum_min;
  r.lower = -positive_part(r.a) - positive_part(r.b) + sum_min + p.loop_x + p.loop_y;
  // Mass of m_x that need not move: shared vertices plus x and y themselves.
  r.upper = sum_min + std::min(p.loop_x, p.edge_mass_y) + std::min(p.edge_mass_x, p.loop_y);
  if (sgn(r.a) >= 0)
    r.regime = FormulaCase::BothNonNegative;
  else if (sgn(r.b) >= 0)
    r.regime = FormulaCase::MixedSign;
  else
    r.regime = FormulaCase::BothNegative;
  return r;
}

inline Scalar lower_bound_formula(const WeightedGraph& g, VertexId x, VertexId y) {
  return bound_formulas(g, x, y).lower;
}

inline Scalar upper_bound_formula(const WeightedGraph& g, VertexId x, VertexId y) {
  return bound_formulas(g, x, y).upper;
}

/// Number of triangles through the edge xy plus loop indicators at x and y.
inline std::size_t joint_neighbor_count(const WeightedGraph& g, VertexId x, VertexId y) {
  NeighborhoodPartition p = neighbor_partition(g, x, y);
  return p.shared_x_ge_y.size() + p.shared_x_lt_y.size() + (g.has_loop(x) ? 1U : 0U) + (g.has_loop(y) ? 1U : 0U);
}

/// True iff every edge, loops included, carries the same weight.
inline bool is_unweighted(const WeightedGraph& g) {
  std::optional<Scalar> common;
  for (const Edge& e : g.edges()) {
    if (!common)
      common = e.weight;
    else if (e.weight != *common)
      return false;
  }
  return true;
}

/// Lower-bound formula in combinatorial form (triangle count and loop
/// indicators). Only meaningful on unweighted graphs, where it coincides with
/// lower_bound_formula.
inline Scalar unweighted_lower_bound(const WeightedGraph& g, VertexId x, VertexId y) {
  NeighborhoodPartition p = neighbor_partition(g, x, y);
  const Scalar deg_x = static_cast<long>(g.neighbors(x).size());
  const Scalar deg_y = static_cast<long>(g.neighbors(y).size());
  const Scalar triangles = static_cast<long>(p.shared_x_ge_y.size() + p.shared_x_lt_y.size());
  const Scalar loop_x = g.has_loop(x) ? 1 : 0;
  const Scalar loop_y = g.has_loop(y) ? 1 : 0;
  Scalar base = 1 - 1 / deg_x - 1 / deg_y;
  return -positive_part(Scalar(base - triangles / std::min(deg_x, deg_y))) -
         positive_part(Scalar(base - triangles / std::max(deg_x, deg_y))) + triangles / std::max(deg_x, deg_y) +
         loop_x / deg_x + loop_y / deg_y;
}

enum class CurvatureMethod { Exact, Formula };

/// Minimum over adjacent pairs x != y of kappa (Exact) or of the lower-bound
/// formula (Formula). Empty when the graph has no edge between distinct vertices.
inline std::optional<Scalar> global_lower_bound(const WeightedGraph& g, CurvatureMethod method = CurvatureMethod::Exact) {
  std::optional<Scalar> best;
  for (const Edge& e : g.edges()) {
    if (e.u == e.v) continue;
    Scalar value = method == CurvatureMethod::Exact ? ricci_curvature(g, e.u, e.v).kappa : lower_bound_formula(g, e.u, e.v);
    if (!best || value < *best) best = std::move(value);
  }
  return best;
}

struct SharpnessReport {
  BoundFormulaResult formula;
  // The regime's witness potential extends to a 1-Lipschitz function, which
  // certifies lower_bound_formula == kappa.
  bool equality = false;
};

namespace detail {

/// Witness potentials for the two transport regimes, as (vertex, value) lists.
inline std::vector<std::pair<VertexId, int>> regime_witness(const NeighborhoodPartition& p, FormulaCase regime) {
  std::vector<std::pair<VertexId, int>> witness;
  auto assign = [&](const std::vector<VertexId>& set, int value) {
    for (VertexId z : set) witness.emplace_back(z, value);
  };
  if (regime == FormulaCase::BothNonNegative) {
    assign(p.only_y, 0);
    assign({p.y}, 1);
    assign(p.shared_x_lt_y, 1);
    assign({p.x}, 2);
    assign(p.shared_x_ge_y, 2);
    assign(p.only_x, 3);
  } else {
    assign(p.only_y, 0);
    assign(p.shared_x_lt_y, 0);
    assign({p.x, p.y}, 1);
    assign(p.only_x, 2);
    assign(p.shared_x_ge_y, 2);
  }
  return witness;
}

/// |f(a) - f(b)| <= d(a, b) on the witness domain, i.e. f extends to a 1-Lipschitz function.
inline bool witness_extends(const WeightedGraph& g, const std::vector<std::pair<VertexId, int>>& witness) {
  for (std::size_t i = 0; i < witness.size(); ++i)
    for (std::size_t j = i + 1; j < witness.size(); ++j)
      if (std::abs(witness[i].second - witness[j].second) > static_cast<int>(*g.hops(witness[i].first, witness[j].first)))
        return false;
  return true;
}

}  // namespace detail

inline SharpnessReport sharpness_case(const WeightedGraph& g, VertexId x, VertexId y) {
  SharpnessReport report{bound_formulas(g, x, y), false};
  // B < 0, or lower and upper formulas meeting, pins kappa outright.
  if (report.formula.regime == FormulaCase::BothNegative || report.formula.lower == report.formula.upper) {
    report.equality = true;
    return report;
  }
  NeighborhoodPartition p = neighbor_partition(g, x, y);
  report.equality = detail::witness_extends(g, detail::regime_witness(p, report.formula.regime));
  // At A = 0 both regimes give the same value, so the second witness certifies too.
  if (!report.equality && report.formula.regime == FormulaCase::BothNonNegative && sgn(report.formula.a) == 0)
    report.equality = detail::witness_extends(g, detail::regime_witness(p, FormulaCase::MixedSign));
  return report;
}

}  // namespace orc
