// orc: curvature and spectral analysis of weighted graphs given as edge lists.
//
//   orc <command> <edge-list> [--t N] [--t-max N] [--format table|json]
//                             [--exact | --float] [--tolerance X]
//
// commands: spectrum, curvature, neighborhood, bounds, audit, report

#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "orc/analysis.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Ollivier-Ricci curvature and normalized Laplacian spectra of weighted graphs", "orc"};
  app.set_version_flag("--version", orc::kVersion);

  orc::AnalysisConfig config;
  const std::map<std::string, orc::Command> commands = {
      {"spectrum", orc::Command::Spectrum}, {"curvature", orc::Command::Curvature},
      {"neighborhood", orc::Command::Neighborhood}, {"bounds", orc::Command::Bounds},
      {"audit", orc::Command::Audit}, {"report", orc::Command::Report}};
  const std::map<std::string, orc::OutputFormat> formats = {{"table", orc::OutputFormat::Table},
                                                            {"json", orc::OutputFormat::Json}};
  bool use_float = false, use_exact = false;

  std::string command_name, format_name = "table";
  app.add_option("command", command_name, "spectrum | curvature | neighborhood | bounds | audit | report")
      ->required()
      ->check(CLI::IsMember(commands));
  app.add_option("input", config.input_path, "edge-list file: one 'u v [w]' per line, '#' comments")->required();
  app.add_option("--t", config.t, "walk step for 'neighborhood'")->capture_default_str();
  app.add_option("--t-max", config.t_max, "largest step for 'bounds' and 'audit' (<= 64)")->capture_default_str();
  app.add_option("--format", format_name, "table | json")->check(CLI::IsMember(formats))->capture_default_str();
  auto* exact = app.add_flag("--exact", use_exact, "print rationals as p/q (default)");
  app.add_flag("--float", use_float, "print rationals as decimals")->excludes(exact);
  app.add_option("--tolerance", config.tolerance, "absolute tolerance for float identity checks")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  config.command = commands.at(command_name);
  config.format = formats.at(format_name);
  config.arithmetic = use_float ? orc::Arithmetic::Float : orc::Arithmetic::Exact;

  try {
    orc::Report report = orc::run(config);
    std::cout << (config.format == orc::OutputFormat::Json ? orc::to_json_text(report) : report.table);
  } catch (const orc::Error& e) {
    std::cerr << "orc: " << e.what() << '\n';
    return orc::exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "orc: internal error: " << e.what() << '\n';
    return 4;
  }
  return 0;
}
