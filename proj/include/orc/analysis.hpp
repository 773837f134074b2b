#pragma once

// Command dispatch behind the `orc` tool: reads an edge list, runs one
// analysis, and produces a canonical JSON document plus a human-readable table.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "orc/bounds.hpp"
#include "orc/curvature.hpp"
#include "orc/edge_list.hpp"
#include "orc/error.hpp"
#include "orc/random_walk.hpp"
#include "orc/spectrum.hpp"
#include "orc/tolerances.hpp"

namespace orc {

inline constexpr const char* kVersion = "0.1.0";

enum class Command { Spectrum, Curvature, Neighborhood, Bounds, Audit, Report };
enum class Arithmetic { Exact, Float };
enum class OutputFormat { Table, Json };

struct AnalysisConfig {
  std::string input_path;
  Command command = Command::Report;
  std::size_t t = 2;      // neighborhood step
  std::size_t t_max = 4;  // scans and audits
  Arithmetic arithmetic = Arithmetic::Exact;
  OutputFormat format = OutputFormat::Table;
  double tolerance = tolerance::identity;
};

struct Report {
  nlohmann::json data;  // keys sorted; exact values as "p/q" strings
  std::string table;
};

constexpr const char* to_string(Command c) noexcept {
  switch (c) {
    case Command::Spectrum: return "spectrum";
    case Command::Curvature: return "curvature";
    case Command::Neighborhood: return "neighborhood";
    case Command::Bounds: return "bounds";
    case Command::Audit: return "audit";
    case Command::Report: return "report";
  }
  return "?";
}

/// 0 ok; 2 parse/config; 3 graph invalid; 4 internal consistency failure.
inline int exit_code_for(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::InvalidConfig:
    case ErrorCode::InvalidStep:
    case ErrorCode::InvalidBoundInput:
      return 2;
    case ErrorCode::CertificateGapNonzero:
    case ErrorCode::EigenSolverFailure:
    case ErrorCode::InvalidMeasure:
      return 4;
    default:
      return 3;
  }
}

inline void validate(const AnalysisConfig& config) {
  if (config.t < 1) throw Error(ErrorCode::InvalidConfig, "--t must be at least 1");
  if (config.t_max < 1 || config.t_max > 64) throw Error(ErrorCode::InvalidConfig, "--t-max must lie in [1, 64]");
  if (!(config.tolerance > 0)) throw Error(ErrorCode::InvalidConfig, "--tolerance must be positive");
}

namespace detail {

/// Double rounded to 15 significant digits.
inline double round15(double v) {
  if (!std::isfinite(v)) return v;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return std::strtod(buf, nullptr);
}

inline std::string fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

class Formatter {
 public:
  explicit Formatter(Arithmetic mode) : mode_(mode) {}

  nlohmann::json exact(const Scalar& q) const {
    if (mode_ == Arithmetic::Float) return round15(to_double(q));
    return to_string(q);
  }
  nlohmann::json exact(const std::optional<Scalar>& q) const { return q ? exact(*q) : nlohmann::json(nullptr); }
  static nlohmann::json real(double v) { return round15(v); }
  static nlohmann::json real(const std::optional<double>& v) { return v ? real(*v) : nlohmann::json(nullptr); }

  std::string text(const Scalar& q) const {
    return mode_ == Arithmetic::Float ? fixed(to_double(q)) : to_string(q);
  }
  std::string text(const std::optional<Scalar>& q) const { return q ? text(*q) : "-"; }
  static std::string text(const std::optional<double>& v) { return v ? fixed(*v) : "-"; }

 private:
  Arithmetic mode_;
};

/// Left-aligned text table.
class TextTable {
 public:
  explicit TextTable(std::vector<std::string> header) { rows_.push_back(std::move(header)); }
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }
  std::string str() const {
    std::vector<std::size_t> width;
    for (const auto& row : rows_) {
      if (width.size() < row.size()) width.resize(row.size(), 0);
      for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
    }
    std::ostringstream out;
    for (const auto& row : rows_) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        out << row[i];
        if (i + 1 < row.size()) out << std::string(width[i] - row[i].size() + 2, ' ');
      }
      out << '\n';
    }
    return out.str();
  }

 private:
  std::vector<std::vector<std::string>> rows_;
};

inline std::string yes_no(bool b) { return b ? "yes" : "no"; }

struct Context {
  const LabeledGraph& input;
  const AnalysisConfig& config;
  Formatter fmt;
  Spectrum spec;
  const std::string& label(VertexId v) const { return input.labels[v]; }
  const WeightedGraph& graph() const { return input.graph; }
};

inline void require_connected(const WeightedGraph& g, const char* what) {
  if (!validate_connected(g)) throw Error(ErrorCode::DisconnectedGraph, std::string(what) + " needs a connected graph");
}

inline void spectrum_section(const Context& ctx, Report& report) {
  const WeightedGraph& g = ctx.graph();
  nlohmann::json values = nlohmann::json::array();
  for (double lambda : ctx.spec.eigenvalues) values.push_back(Formatter::real(lambda));
  Scalar loop_mass = 0;
  for (VertexId x = 0; x < g.size(); ++x) loop_mass += g.weight(x, x) / g.degree(x);
  double sum = 0.0;
  for (double lambda : ctx.spec.eigenvalues) sum += lambda;
  const double trace = static_cast<double>(g.size()) - to_double(loop_mass);

  report.data["spectrum"] = {
      {"eigenvalues", values},
      {"lambda_1", Formatter::real(ctx.spec.first())},
      {"lambda_max", Formatter::real(ctx.spec.largest())},
      {"trace", Formatter::real(trace)},
      {"trace_deviation", Formatter::real(std::abs(sum - trace))},
  };

  std::ostringstream out;
  out << "spectrum of the normalized Laplacian (" << g.size() << " eigenvalues)\n";
  TextTable table({"i", "lambda_i"});
  for (std::size_t i = 0; i < ctx.spec.size(); ++i) table.add({std::to_string(i), fixed(ctx.spec.eigenvalues[i], 10)});
  out << table.str();
  out << "trace check: |sum lambda - (N - sum w_xx/d_x)| = " << std::scientific << std::setprecision(3)
      << std::abs(sum - trace) << "\n\n";
  report.table += out.str();
}

inline void curvature_section(const Context& ctx, Report& report) {
  const WeightedGraph& g = ctx.graph();
  const bool unweighted = is_unweighted(g);
  nlohmann::json edges = nlohmann::json::array();
  TextTable table(unweighted ? std::vector<std::string>{"x", "y", "kappa", "W1", "lower", "upper", "case", "sharp", "triangles", "loops"}
                             : std::vector<std::string>{"x", "y", "kappa", "W1", "lower", "upper", "case", "sharp"});
  for (const Edge& e : g.edges()) {
    if (e.u == e.v) continue;
    CurvatureValue kappa = ricci_curvature(g, e.u, e.v);
    SharpnessReport sharp = sharpness_case(g, e.u, e.v);
    nlohmann::json row = {
        {"x", ctx.label(e.u)},
        {"y", ctx.label(e.v)},
        {"kappa", ctx.fmt.exact(kappa.kappa)},
        {"w1", ctx.fmt.exact(kappa.w1)},
        {"lower", ctx.fmt.exact(sharp.formula.lower)},
        {"upper", ctx.fmt.exact(sharp.formula.upper)},
        {"A", ctx.fmt.exact(sharp.formula.a)},
        {"B", ctx.fmt.exact(sharp.formula.b)},
        {"case", to_string(sharp.formula.regime)},
        {"sharp", sharp.equality},
    };
    std::vector<std::string> cells = {ctx.label(e.u),
                                      ctx.label(e.v),
                                      ctx.fmt.text(kappa.kappa),
                                      ctx.fmt.text(kappa.w1),
                                      ctx.fmt.text(sharp.formula.lower),
                                      ctx.fmt.text(sharp.formula.upper),
                                      to_string(sharp.formula.regime),
                                      yes_no(sharp.equality)};
    if (unweighted) {
      NeighborhoodPartition p = neighbor_partition(g, e.u, e.v);
      const std::size_t triangles = p.shared_x_ge_y.size() + p.shared_x_lt_y.size();
      const int loops = (g.has_loop(e.u) ? 1 : 0) + (g.has_loop(e.v) ? 1 : 0);
      row["triangles"] = triangles;
      row["loops"] = loops;
      cells.push_back(std::to_string(triangles));
      cells.push_back(std::to_string(loops));
    }
    edges.push_back(std::move(row));
    table.add(std::move(cells));
  }
  auto k = global_lower_bound(g);
  auto k_formula = global_lower_bound(g, CurvatureMethod::Formula);
  report.data["curvature"] = {
      {"edges", edges},
      {"k", ctx.fmt.exact(k)},
      {"k_formula", ctx.fmt.exact(k_formula)},
      {"unweighted", unweighted},
  };
  std::ostringstream out;
  out << "curvature per edge\n" << table.str();
  out << "k (exact) = " << ctx.fmt.text(k) << ", k (formula) = " << ctx.fmt.text(k_formula) << "\n\n";
  report.table += out.str();
}

inline nlohmann::json to_json(const Context& ctx, const BoundReport& r) {
  nlohmann::json inputs = nlohmann::json::object();
  for (const auto& [key, value] : r.inputs) inputs[key] = ctx.fmt.exact(value);
  for (const auto& [key, value] : r.float_inputs) inputs[key] = Formatter::real(value);
  nlohmann::json j = {
      {"bound", r.bound},
      {"step", r.step ? nlohmann::json(*r.step) : nlohmann::json(nullptr)},
      {"inputs", inputs},
      {"lower", Formatter::real(r.lower)},
      {"upper", Formatter::real(r.upper)},
      {"lower_exact", ctx.fmt.exact(r.lower_exact)},
      {"upper_exact", ctx.fmt.exact(r.upper_exact)},
      {"lower_target", r.lower_target},
      {"upper_target", r.upper_target},
      {"applicable", r.applicable},
      {"reason", r.reason},
      {"verified", r.verified},
      {"component_restricted", r.component_restricted},
  };
  if (r.excluded_gap) j["excluded_gap"] = {Formatter::real(r.excluded_gap->first), Formatter::real(r.excluded_gap->second)};
  return j;
}

inline void bounds_section(const Context& ctx, Report& report) {
  const WeightedGraph& g = ctx.graph();
  require_connected(g, "bounds");
  auto k = global_lower_bound(g);
  std::vector<BoundReport> bound_reports = {ollivier_lower(g, ctx.spec, k), largest_upper(g, ctx.spec, k),
                                       joint_neighbor_bounds(g, ctx.spec)};
  std::vector<ScanRow> rows = k_scan(g, ctx.config.t_max, ctx.spec);

  nlohmann::json scan = nlohmann::json::array();
  TextTable table({"t", "k[t]", "k_formula[t]", "lower", "upper", "verified", "note"});
  for (const ScanRow& row : rows) {
    scan.push_back({
        {"t", row.step},
        {"k", ctx.fmt.exact(row.k)},
        {"k_formula", ctx.fmt.exact(row.k_formula)},
        {"lower", Formatter::real(row.lower)},
        {"upper", Formatter::real(row.upper)},
        {"component_restricted", row.component_restricted},
        {"verified", row.verified},
        {"best_lower", row.best_lower},
        {"best_upper", row.best_upper},
    });
    std::string note;
    if (row.component_restricted) note += "component-restricted ";
    if (row.best_lower) note += "best-lower ";
    if (row.best_upper) note += "best-upper";
    table.add({std::to_string(row.step), ctx.fmt.text(row.k), ctx.fmt.text(row.k_formula),
               row.lower ? fixed(*row.lower, 4) : "-", row.upper ? fixed(*row.upper, 4) : "-", yes_no(row.verified), note});
  }
  nlohmann::json reports = nlohmann::json::array();
  TextTable bound_table({"bound", "lower", "upper", "applicable", "verified", "reason"});
  for (const BoundReport& r : bound_reports) {
    reports.push_back(to_json(ctx, r));
    auto show = [&](const std::optional<Scalar>& exact, const std::optional<double>& approx) {
      return exact ? ctx.fmt.text(exact) : (approx ? fixed(*approx, 4) : std::string("-"));
    };
    bound_table.add({r.bound, show(r.lower_exact, r.lower), show(r.upper_exact, r.upper), yes_no(r.applicable),
                       yes_no(r.verified), r.reason});
  }
  report.data["bounds"] = {{"scan", scan}, {"reports", reports}};

  std::ostringstream out;
  out << "curvature bounds on G[t], t = 1.." << ctx.config.t_max << "\n" << table.str() << "\n";
  out << "eigenvalue bounds\n" << bound_table.str() << "\n";
  report.table += out.str();
}

inline void audit_section(const Context& ctx, Report& report) {
  const WeightedGraph& g = ctx.graph();
  require_connected(g, "audit");
  const std::size_t t_max = ctx.config.t_max;
  const double tol = ctx.config.tolerance;

  ContractionAudit contraction = contraction_audit(g, t_max);
  nlohmann::json metric = nlohmann::json::array();
  nlohmann::json transfer = nlohmann::json::array();
  nlohmann::json identity = nlohmann::json::array();
  TextTable table({"t", "d/t<=d[t]", "E in E[t]", "d[t]<=d", "kappa[t] threshold", "min kappa[t]", "transfer ok", "identity dev"});
  bool all_ok = contraction.passed;
  for (std::size_t t = 1; t <= t_max; ++t) {
    MetricAudit m = metric_audit(g, t);
    CurvatureTransferCheck c = curvature_transfer_check(g, t);
    const double dev = verify_transfer_identity(g, t, ctx.spec);
    all_ok = all_ok && m.scaled_lower_holds && m.upper_holds.value_or(true) && c.passed && dev <= tol;
    metric.push_back({{"t", t},
                      {"pairs", m.pairs},
                      {"scaled_lower_holds", m.scaled_lower_holds},
                      {"edge_inclusion", m.edge_inclusion},
                      {"upper_holds", m.upper_holds ? nlohmann::json(*m.upper_holds) : nlohmann::json(nullptr)}});
    transfer.push_back({{"t", t},
                        {"applicable", c.applicable},
                        {"vacuous", c.vacuous},
                        {"reason", c.reason},
                        {"threshold", ctx.fmt.exact(c.threshold)},
                        {"min_kappa", ctx.fmt.exact(c.min_kappa)},
                        {"pairs", c.pairs},
                        {"passed", c.passed}});
    identity.push_back({{"t", t}, {"deviation", Formatter::real(dev)}, {"passed", dev <= tol}});
    char dev_text[32];
    std::snprintf(dev_text, sizeof dev_text, "%.2e", dev);
    table.add({std::to_string(t), yes_no(m.scaled_lower_holds), yes_no(m.edge_inclusion),
               m.upper_holds ? yes_no(*m.upper_holds) : "-", ctx.fmt.text(c.threshold), ctx.fmt.text(c.min_kappa),
               c.applicable ? (c.vacuous ? "vacuous" : yes_no(c.passed)) : "n/a", dev_text});
  }

  // Two-step Rayleigh ratio for every eigenpair with lambda != 0.
  nlohmann::json rayleigh = nlohmann::json::array();
  double worst_rayleigh = 0.0;
  for (const EigenPair& pair : eigenpairs(g)) {
    if (pair.eigenvalue < tolerance::bound_slack) continue;
    RayleighCheck check = rayleigh_ratio(g, pair.eigenfunction, pair.eigenvalue);
    worst_rayleigh = std::max(worst_rayleigh, check.deviation);
    rayleigh.push_back({{"lambda", Formatter::real(pair.eigenvalue)},
                        {"ratio", Formatter::real(check.ratio)},
                        {"deviation", Formatter::real(check.deviation)}});
  }
  all_ok = all_ok && worst_rayleigh <= tolerance::rayleigh;

  report.data["audit"] = {
      {"contraction",
       {{"k", ctx.fmt.exact(contraction.k)},
        {"t_max", contraction.t_max},
        {"checks", contraction.checks},
        {"passed", contraction.passed},
        {"equality_only", contraction.equality_only},
        {"worst_ratio", ctx.fmt.exact(contraction.worst_ratio)},
        {"worst_pair", contraction.worst_ratio
                           ? nlohmann::json{ctx.label(contraction.worst_x), ctx.label(contraction.worst_y)}
                           : nlohmann::json(nullptr)},
        {"worst_t", contraction.worst_ratio ? nlohmann::json(contraction.worst_t) : nlohmann::json(nullptr)}}},
      {"metric", metric},
      {"curvature_transfer", transfer},
      {"transfer_identity", identity},
      {"rayleigh", rayleigh},
      {"passed", all_ok},
  };

  std::ostringstream out;
  out << "contraction: W1(P^t x, P^t y) <= (1-k)^t d(x,y), k = " << ctx.fmt.text(contraction.k) << ", "
      << contraction.checks << " checks, " << (contraction.passed ? "passed" : "FAILED");
  if (contraction.worst_ratio)
    out << ", worst ratio " << ctx.fmt.text(contraction.worst_ratio) << " at (" << ctx.label(contraction.worst_x) << ","
        << ctx.label(contraction.worst_y) << "), t=" << contraction.worst_t;
  out << "\n" << table.str();
  char worst[32];
  std::snprintf(worst, sizeof worst, "%.2e", worst_rayleigh);
  out << "two-step Rayleigh ratio: max |ratio - (2 - lambda)| = " << worst << "\n";
  out << "audit " << (all_ok ? "passed" : "FAILED") << "\n\n";
  report.table += out.str();
}

inline void summary_section(const Context& ctx, Report& report) {
  const WeightedGraph& g = ctx.graph();
  const bool connected = validate_connected(g);
  nlohmann::json bipartite = nullptr;
  if (connected) bipartite = is_bipartite(g).bipartite;
  report.data["graph"] = {
      {"vertices", g.size()},
      {"edges", g.edge_count()},
      {"loops", g.loop_count()},
      {"connected", connected},
      {"bipartite", bipartite},
  };
  std::ostringstream out;
  out << "graph: N = " << g.size() << ", |E| = " << g.edge_count() << " (" << g.loop_count() << " loops), connected: "
      << yes_no(connected) << ", bipartite: " << (connected ? yes_no(bipartite.get<bool>()) : "-") << "\n\n";
  report.table += out.str();
}

}  // namespace detail

/// Runs a command on an already parsed graph.
inline Report run(const AnalysisConfig& config, const LabeledGraph& input) {
  validate(config);
  Report report;
  report.data["version"] = kVersion;
  report.data["config"] = {
      {"command", to_string(config.command)},
      {"input", config.input_path},
      {"t", config.t},
      {"t_max", config.t_max},
      {"arithmetic", config.arithmetic == Arithmetic::Exact ? "exact" : "float"},
      {"tolerance", detail::round15(config.tolerance)},
  };

  if (config.command == Command::Neighborhood) {
    NeighborhoodGraph gt = neighborhood_graph(input.graph, config.t);
    detail::Formatter fmt(config.arithmetic);
    nlohmann::json edges = nlohmann::json::array();
    for (const Edge& e : gt.graph.edges()) edges.push_back({input.labels[e.u], input.labels[e.v], fmt.exact(e.weight)});
    report.data["neighborhood"] = {{"t", config.t}, {"edges", edges}};
    report.table = format_edge_list(gt.graph, input.labels);
    return report;
  }

  detail::Context ctx{input, config, detail::Formatter(config.arithmetic), spectrum(input.graph)};
  detail::summary_section(ctx, report);
  switch (config.command) {
    case Command::Spectrum:
      detail::spectrum_section(ctx, report);
      break;
    case Command::Curvature:
      detail::curvature_section(ctx, report);
      break;
    case Command::Bounds:
      detail::bounds_section(ctx, report);
      break;
    case Command::Audit:
      detail::audit_section(ctx, report);
      break;
    case Command::Report:
      detail::spectrum_section(ctx, report);
      detail::curvature_section(ctx, report);
      detail::bounds_section(ctx, report);
      detail::audit_section(ctx, report);
      break;
    case Command::Neighborhood:
      break;
  }
  return report;
}

/// Reads config.input_path and runs the command.
inline Report run(const AnalysisConfig& config) {
  validate(config);
  std::ifstream in(config.input_path);
  if (!in) throw Error(ErrorCode::InvalidConfig, "cannot open '" + config.input_path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return run(config, parse_edge_list(text.str()));
}

/// Canonical JSON: sorted keys, two-space indent, trailing newline.
inline std::string to_json_text(const Report& report) { return report.data.dump(2) + "\n"; }

}  // namespace orc
