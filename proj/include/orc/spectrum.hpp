#pragma once

// Spectrum of the normalized Laplacian (Delta f)(x) = sum_y m_x(y) f(y) - f(x).
// Eigenvalues are reported as lambda with Delta f = -lambda f, so they lie in
// [0, 2]. They are computed from S = D^{-1/2} W D^{-1/2}: spec(-Delta) = 1 - spec(S).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "orc/eigensolver.hpp"
#include "orc/error.hpp"
#include "orc/graph.hpp"
#include "orc/random_walk.hpp"
#include "orc/tolerances.hpp"

namespace orc {

struct Spectrum {
  std::vector<double> eigenvalues;  // ascending

  std::size_t size() const noexcept { return eigenvalues.size(); }
  /// lambda_1, absent for a single vertex.
  std::optional<double> first() const {
    if (eigenvalues.size() < 2) return std::nullopt;
    return eigenvalues[1];
  }
  double largest() const { return eigenvalues.back(); }
};

struct EigenPair {
  double eigenvalue = 0.0;
  std::vector<double> eigenfunction;  // (f, f)_mu = sum_x d_x f(x)^2 = 1
};

namespace detail {

inline std::vector<double> conjugated_adjacency(const WeightedGraph& g) {
  const std::size_t n = g.size();
  std::vector<double> root_degree(n);
  for (VertexId x = 0; x < n; ++x) root_degree[x] = std::sqrt(to_double(g.degree(x)));
  std::vector<double> s(n * n, 0.0);
  for (VertexId x = 0; x < n; ++x)
    for (VertexId y : g.neighbors(x)) s[x * n + y] = to_double(g.weight(x, y)) / (root_degree[x] * root_degree[y]);
  return s;
}

}  // namespace detail

inline std::vector<EigenPair> eigenpairs(const WeightedGraph& g) {
  const std::size_t n = g.size();
  SymmetricEigen eig = symmetric_eigen(detail::conjugated_adjacency(g), n);
  std::vector<EigenPair> out;
  out.reserve(n);
  // Largest eigenvalue of S is lambda_0 = 0; walk backwards for ascending lambda.
  for (std::size_t k = n; k-- > 0;) {
    EigenPair pair;
    pair.eigenvalue = 1.0 - eig.values[k];
    pair.eigenfunction.resize(n);
    for (VertexId x = 0; x < n; ++x) pair.eigenfunction[x] = eig.vector_entry(x, k) / std::sqrt(to_double(g.degree(x)));
    out.push_back(std::move(pair));
  }
  return out;
}

inline Spectrum spectrum(const WeightedGraph& g) {
  SymmetricEigen eig = symmetric_eigen(detail::conjugated_adjacency(g), g.size());
  Spectrum out;
  out.eigenvalues.reserve(g.size());
  for (std::size_t k = g.size(); k-- > 0;) out.eigenvalues.push_back(1.0 - eig.values[k]);
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end());
  return out;
}

/// Max deviation between sorted spec(Delta[t]) and sorted {1 - (1 - lambda)^t}.
inline double verify_transfer_identity(const WeightedGraph& g, std::size_t t, const Spectrum& base) {
  NeighborhoodGraph gt = neighborhood_graph(g, t);
  Spectrum direct = spectrum(gt.graph);
  std::vector<double> mapped;
  mapped.reserve(base.size());
  for (double lambda : base.eigenvalues) mapped.push_back(1.0 - std::pow(1.0 - lambda, static_cast<double>(t)));
  std::sort(mapped.begin(), mapped.end());
  double worst = 0.0;
  for (std::size_t i = 0; i < mapped.size(); ++i) worst = std::max(worst, std::abs(mapped[i] - direct.eigenvalues[i]));
  return worst;
}

inline double verify_transfer_identity(const WeightedGraph& g, std::size_t t) {
  return verify_transfer_identity(g, t, spectrum(g));
}

struct RayleighCheck {
  double ratio = 0.0;      // sum w[2] (u(x)-u(y))^2 / sum w (u(x)-u(y))^2
  double deviation = 0.0;  // |ratio - (2 - lambda)|
};

/// For an eigenpair (u, lambda != 0) the two-step Dirichlet ratio equals 2 - lambda.
inline RayleighCheck rayleigh_ratio(const WeightedGraph& g, std::span<const double> u, double lambda) {
  const std::size_t n = g.size();
  if (u.size() != n) throw Error(ErrorCode::InvalidVertex, "eigenfunction length differs from vertex count");
  const WeightedGraph g2 = neighborhood_graph(g, 2).graph;

  double numerator = 0.0, denominator = 0.0, scale = 0.0;
  for (VertexId x = 0; x < n; ++x) {
    for (VertexId y = 0; y < n; ++y) {
      const double diff = u[x] - u[y];
      if (g2.adjacent(x, y)) numerator += to_double(g2.weight(x, y)) * diff * diff;
      if (g.adjacent(x, y)) {
        const double w = to_double(g.weight(x, y));
        denominator += w * diff * diff;
        scale += w * (u[x] * u[x] + u[y] * u[y]);
      }
    }
  }
  if (denominator <= tolerance::degenerate * scale)
    throw Error(ErrorCode::ZeroDenominator, "eigenfunction is constant on every edge");
  RayleighCheck out;
  out.ratio = numerator / denominator;
  out.deviation = std::abs(out.ratio - (2.0 - lambda));
  return out;
}

}  // namespace orc
