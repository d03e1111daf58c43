// solvable: run orbits, drive property campaigns, export orbits as CSV.
//
//   solvable run --config run.json [--system x] [--method both] ... [--out orbit.json]
//   solvable campaign --seed 7 --trials 200 --horizon 6 [--out report.json]
//   solvable convert orbit.json [--out orbit.csv]
//
// Exit status is 0 whenever a report was produced, including a campaign
// report listing failed invariants. Runtime errors exit with 1; usage errors
// exit with the nonzero code CLI11 assigns.

#include "solvable/app/campaign.hpp"
#include "solvable/app/config.hpp"
#include "solvable/app/csv.hpp"
#include "solvable/app/runner.hpp"
#include "solvable/errors.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

using namespace solvable;
using namespace solvable::app;
using nlohmann::json;

namespace {

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file " + path);
  out << text;
  if (!out) throw ConfigError("failed writing " + path);
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

struct RunFlags {
  std::string config;
  std::string out;
  std::optional<std::string> system, backend, method;
  std::optional<unsigned> precision;
  std::optional<TimeIndex> horizon;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> digit_budget;
  std::optional<double> rel_tol, abs_tol;
};

// Flags override the file before validation so that the combined result is
// checked as one config.
json apply_overrides(json j, const RunFlags& f) {
  if (f.system) j["system"] = *f.system;
  if (f.backend) {
    j["backend"] = *f.backend;
    if (*f.backend == "exact" && !f.precision) j.erase("precision");
  }
  if (f.precision) j["precision"] = *f.precision;
  if (f.method) j["method"] = *f.method;
  if (f.horizon) j["horizon"] = *f.horizon;
  if (f.seed) j["seed"] = *f.seed;
  if (f.digit_budget) j["digit_budget"] = *f.digit_budget;
  if (f.rel_tol) j["tolerance"]["relative"] = *f.rel_tol;
  if (f.abs_tol) j["tolerance"]["absolute"] = *f.abs_tol;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solvable two-variable discrete-time dynamical systems"};
  app.require_subcommand(1);

  RunFlags rf;
  auto* run_cmd = app.add_subcommand("run", "Compute an orbit from a run configuration");
  run_cmd->add_option("--config", rf.config, "Run configuration (JSON)")->required();
  run_cmd->add_option("--system", rf.system, "y | x | z | w");
  run_cmd->add_option("--backend", rf.backend, "exact | float");
  run_cmd->add_option("--precision", rf.precision, "Float mantissa bits");
  run_cmd->add_option("--method", rf.method, "iterated | closed | both");
  run_cmd->add_option("--horizon", rf.horizon, "Last time index L");
  run_cmd->add_option("--seed", rf.seed, "Recorded seed");
  run_cmd->add_option("--digit-budget", rf.digit_budget, "Max decimal digits per exact value");
  run_cmd->add_option("--rel-tol", rf.rel_tol, "Relative tolerance for float comparison");
  run_cmd->add_option("--abs-tol", rf.abs_tol, "Absolute tolerance for float comparison");
  run_cmd->add_option("--out", rf.out, "Output file (default stdout)");

  CampaignOptions co;
  std::string campaign_out;
  auto* campaign_cmd = app.add_subcommand("campaign", "Seeded randomized property checks");
  campaign_cmd->add_option("--seed", co.seed, "Campaign seed");
  campaign_cmd->add_option("--trials", co.trials, "Number of trials");
  campaign_cmd->add_option("--horizon", co.max_level, "Largest time index checked");
  campaign_cmd->add_option("--digit-budget", co.digit_budget, "Max decimal digits per exact value");
  campaign_cmd->add_option("--jobs", co.jobs, "Worker threads")->check(CLI::PositiveNumber);
  campaign_cmd->add_option("--out", campaign_out, "Report file (default stdout)");

  std::string orbit_path, csv_out;
  auto* convert_cmd = app.add_subcommand("convert", "Convert an orbit JSON file to CSV");
  convert_cmd->add_option("orbit", orbit_path, "Orbit JSON produced by run")->required();
  convert_cmd->add_option("--out", csv_out, "CSV file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*run_cmd) {
      const RunConfig config = config_from_json(apply_overrides(read_json(rf.config), rf));
      emit(to_json(run(config)).dump(2) + "\n", rf.out);
    } else if (*campaign_cmd) {
      emit(report_text(campaign(co)), campaign_out);
    } else if (*convert_cmd) {
      std::ostringstream csv;
      write_csv(csv, record_from_json(read_json(orbit_path)));
      emit(csv.str(), csv_out);
    }
  } catch (const std::exception& e) {
    std::cerr << "solvable: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
