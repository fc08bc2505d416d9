// Command-line front end for the subordinated-debt model.
//
// Exit codes:
//   0  success
//   1  usage error (bad flags, missing --scenario)
//   2  scenario or configuration parse error
//   3  parameter validation error
//   4  verification failure (at least one oracle check failed)
//   5  output could not be written

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "subdebt/subdebt.hpp"

namespace {

enum ExitCode : int {
  kSuccess = 0,
  kUsage = 1,
  kParse = 2,
  kValidation = 3,
  kVerification = 4,
  kOutput = 5,
};

struct GlobalOptions {
  std::string scenario_path;
  std::string format = "csv";
  std::string out_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> paths;
};

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class OutputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

subdebt::Scenario require_scenario(const GlobalOptions& g) {
  if (g.scenario_path.empty()) {
    throw UsageError("--scenario is required for this subcommand");
  }
  return subdebt::load_scenario(g.scenario_path);
}

void emit(const GlobalOptions& g, const std::string& text) {
  if (g.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(g.out_path);
  if (!out || !(out << text) || !out.flush()) {
    throw OutputError("cannot write '" + g.out_path + "'");
  }
}

std::string render(const GlobalOptions& g, const subdebt::Report& report) {
  std::ostringstream os;
  if (g.format == "json") {
    os << report.dump(2) << '\n';
  } else {
    subdebt::write_report_csv(report, os);
  }
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Senior/junior debt and equity under a structural firm-value model"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--scenario", g.scenario_path, "Scenario file (INI)");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", g.out_path, "Write output to this file instead of stdout");
  app.add_option("--seed", g.seed, "Monte-Carlo seed (overrides the scenario)");
  app.add_option("--paths", g.paths, "Monte-Carlo path count (overrides the scenario)");

  auto* price = app.add_subcommand("price", "Claim values and junior-debt vega");
  auto* thresholds = app.add_subcommand("thresholds", "V-hat, V*, sigma_max and regime");

  auto* sweep_sigma = app.add_subcommand("sweep-sigma", "Claim values across asset volatility");
  double sigma_lower = 0.01;
  double sigma_upper = 0.8;
  std::size_t sigma_steps = 200;
  sweep_sigma->add_option("--lower", sigma_lower, "Lowest volatility")->capture_default_str();
  sweep_sigma->add_option("--upper", sigma_upper, "Highest volatility")->capture_default_str();
  sweep_sigma->add_option("--steps", sigma_steps, "Number of grid points")->capture_default_str();

  auto* sweep_structure = app.add_subcommand("sweep-structure", "Chosen risk across asset value per junior share");
  subdebt::StructureSweep structure;
  std::optional<double> initial_sigma;
  std::optional<double> maturity;
  std::optional<double> rate;
  std::optional<double> dividend_yield;
  sweep_structure->add_option("--total", structure.total_face, "Total debt face value")->capture_default_str();
  sweep_structure->add_option("--proportions", structure.junior_proportions, "Junior shares of total debt")
      ->delimiter(',')
      ->capture_default_str();
  sweep_structure->add_option("--v-lower", structure.asset_lower, "Lowest asset value")->capture_default_str();
  sweep_structure->add_option("--v-upper", structure.asset_upper, "Highest asset value")->capture_default_str();
  sweep_structure->add_option("--steps", structure.steps, "Number of asset values")->capture_default_str();
  sweep_structure->add_option("--initial-sigma", initial_sigma, "Initial asset risk (default: scenario or 0.10)");
  sweep_structure->add_option("--maturity", maturity, "Years to maturity (default: scenario or 1)");
  sweep_structure->add_option("--rate", rate, "Risk-free rate (default: scenario or 0.01)");
  sweep_structure->add_option("--dividend-yield", dividend_yield, "Payout yield (default: scenario or 0)");

  auto* verify = app.add_subcommand("verify", "Check closed forms against Monte-Carlo and numeric oracles");
  subdebt::GridSpec grid;
  bool no_antithetic = false;
  verify->add_option("--grid-lower", grid.lower, "Lowest volatility searched")->capture_default_str();
  verify->add_option("--grid-upper", grid.upper, "Highest volatility searched")->capture_default_str();
  verify->add_option("--grid-tol", grid.tolerance, "Golden-section tolerance")->capture_default_str();
  verify->add_flag("--no-antithetic", no_antithetic, "Plain Monte-Carlo without antithetic pairs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kSuccess : kUsage;
  }

  try {
    if (price->parsed()) {
      emit(g, render(g, subdebt::price_report(require_scenario(g))));
    } else if (thresholds->parsed()) {
      emit(g, render(g, subdebt::thresholds_report(require_scenario(g))));
    } else if (sweep_sigma->parsed()) {
      const subdebt::Scenario s = require_scenario(g);
      const subdebt::SweepTable table = subdebt::sweep_sigma(s.structure, sigma_lower, sigma_upper, sigma_steps);
      std::ostringstream os;
      if (g.format == "json") {
        os << table.to_json().dump(2) << '\n';
      } else {
        table.write_csv(os);
      }
      emit(g, os.str());
    } else if (sweep_structure->parsed()) {
      if (!g.scenario_path.empty()) {
        const subdebt::Scenario s = subdebt::load_scenario(g.scenario_path);
        structure.initial_sigma = s.initial_sigma;
        structure.maturity = s.structure.maturity;
        structure.rate = s.structure.rate;
        structure.dividend_yield = s.structure.dividend_yield;
      }
      if (initial_sigma) structure.initial_sigma = *initial_sigma;
      if (maturity) structure.maturity = *maturity;
      if (rate) structure.rate = *rate;
      if (dividend_yield) structure.dividend_yield = *dividend_yield;

      const auto tables = subdebt::sweep_structure(structure);
      std::ostringstream os;
      if (g.format == "json") {
        os << subdebt::structure_json(tables).dump(2) << '\n';
      } else {
        subdebt::write_structure_csv(tables, os);
      }
      emit(g, os.str());
    } else if (verify->parsed()) {
      const subdebt::Scenario s = require_scenario(g);
      subdebt::MCConfig mc = s.mc_config();
      if (g.seed) mc.seed = *g.seed;
      if (g.paths) mc.path_count = *g.paths;
      if (no_antithetic) mc.antithetic = false;

      const subdebt::VerifyReport report = subdebt::verify(s, mc, grid);
      std::ostringstream os;
      if (g.format == "json") {
        os << report.to_json().dump(2) << '\n';
      } else {
        report.write_csv(os);
      }
      emit(g, os.str());
      if (!report.passed()) {
        std::cerr << "verification failed\n";
        return kVerification;
      }
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const subdebt::ConfigParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const subdebt::InvalidInputError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kValidation;
  } catch (const subdebt::DegenerateVolatilityError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kValidation;
  } catch (const OutputError& e) {
    std::cerr << "output error: " << e.what() << '\n';
    return kOutput;
  }
  return kSuccess;
}
