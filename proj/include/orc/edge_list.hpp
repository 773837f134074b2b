#pragma once

// Edge-list text format:
//   # comment
//   u v [w]
// Labels are arbitrary whitespace-free tokens, mapped to dense ids in order of
// first appearance. w defaults to 1 and may be an integer, a decimal or "p/q".
// u == v declares a loop.

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "orc/error.hpp"
#include "orc/graph.hpp"
#include "orc/scalar.hpp"

namespace orc {

struct LabeledGraph {
  WeightedGraph graph;
  std::vector<std::string> labels;  // labels[id]
};

inline LabeledGraph parse_edge_list(std::string_view text) {
  std::vector<Edge> edges;
  std::vector<std::string> labels;
  std::unordered_map<std::string, VertexId> ids;

  auto id_for = [&](const std::string& label) {
    auto [it, inserted] = ids.emplace(label, labels.size());
    if (inserted) labels.push_back(label);
    return it->second;
  };

  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  std::map<std::pair<VertexId, VertexId>, std::size_t> first_line;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::string> tokens;
    for (std::string tok; fields >> tok;) tokens.push_back(tok);
    if (tokens.empty()) continue;
    const std::string where = "line " + std::to_string(line_no);
    if (tokens.size() < 2 || tokens.size() > 3)
      throw Error(ErrorCode::ParseError, where + ": expected 'u v [w]', got " + std::to_string(tokens.size()) + " fields");

    Scalar weight = 1;
    if (tokens.size() == 3) {
      try {
        weight = parse_scalar(tokens[2]);
      } catch (const Error& e) {
        throw Error(ErrorCode::ParseError, where + ": " + e.what());
      }
    }
    if (sgn(weight) <= 0) throw Error(ErrorCode::NonPositiveWeight, where + ": weight " + tokens[2] + " is not positive");

    VertexId u = id_for(tokens[0]);
    VertexId v = id_for(tokens[1]);
    auto [it, fresh] = first_line.emplace(std::minmax(u, v), line_no);
    if (!fresh)
      throw Error(ErrorCode::DuplicateEdge,
                  where + ": edge " + tokens[0] + " " + tokens[1] + " already given on line " + std::to_string(it->second));
    edges.push_back({u, v, std::move(weight)});
  }
  if (edges.empty()) throw Error(ErrorCode::EmptyGraph, "input contains no edges");
  return {build_graph(edges), std::move(labels)};
}

/// One "u v w" line per edge (loops included), weights in canonical rational form.
inline std::string format_edge_list(const WeightedGraph& g, const std::vector<std::string>& labels) {
  std::ostringstream out;
  for (const Edge& e : g.edges()) out << labels.at(e.u) << ' ' << labels.at(e.v) << ' ' << to_string(e.weight) << '\n';
  return out.str();
}

}  // namespace orc
