#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wsn/experiment.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open config file " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<wsn::Protocol> expand_protocols(
    const std::vector<std::string>& names) {
  std::vector<wsn::Protocol> out;
  for (const std::string& name : names) {
    if (name == "both") {
      out.push_back(wsn::Protocol::LeachHet);
      out.push_back(wsn::Protocol::Eecp);
    } else {
      out.push_back(wsn::protocol_from_string(name));
    }
  }
  return out;
}

std::string milestone_text(const wsn::MilestoneStats& ms) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(1);
  if (ms.stats) {
    out << ms.stats->mean;
    if (ms.censored > 0) {
      out << " (" << ms.censored << "/" << ms.trials << " censored)";
    }
  } else {
    out << "not reached in " << ms.trials << " trials";
  }
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Round-based simulator for heterogeneous wireless sensor networks; "
      "compares gateway-aware cluster-head election against a rotating "
      "baseline"};

  std::string config_path;
  std::string out_dir;
  std::vector<std::string> protocol_names;
  std::uint32_t trials = 0;
  std::uint64_t seed = 0;
  std::uint32_t rounds = 0;
  bool charts = true;

  auto* config_opt =
      app.add_option("-c,--config", config_path, "JSON experiment config")
          ->check(CLI::ExistingFile);
  auto* out_opt = app.add_option("-o,--out", out_dir,
                                 "output directory (overrides config)");
  auto* trials_opt =
      app.add_option("-t,--trials", trials,
                     "trials per protocol (overrides config)")
          ->check(CLI::PositiveNumber);
  auto* seed_opt = app.add_option("-s,--seed", seed,
                                  "base seed; trial i runs on seed+i "
                                  "(overrides config)");
  auto* proto_opt = app.add_option(
      "-p,--protocol", protocol_names,
      "protocol to run: leach_het, eecp or both (repeatable; overrides "
      "config)");
  auto* rounds_opt =
      app.add_option("-r,--rounds", rounds,
                     "round horizon per trial (overrides config)")
          ->check(CLI::PositiveNumber);
  auto* charts_flag =
      app.add_flag("--charts,!--no-charts", charts, "emit SVG charts");

  CLI11_PARSE(app, argc, argv);

  try {
    wsn::ExperimentSpec spec;
    if (config_opt->count() > 0) {
      spec = wsn::parse_config(read_file(config_path));
    }
    if (out_opt->count() > 0) spec.output_dir = out_dir;
    if (trials_opt->count() > 0) spec.trials = trials;
    if (seed_opt->count() > 0) spec.base_seed = seed;
    if (proto_opt->count() > 0) {
      spec.protocols = expand_protocols(protocol_names);
    }
    if (rounds_opt->count() > 0) spec.base.max_rounds = rounds;
    if (charts_flag->count() > 0) spec.emit_charts = charts;

    for (const std::string& warning : spec.validate()) {
      std::cerr << "warning: " << warning << "\n";
    }

    const wsn::ExperimentResult result = wsn::run_experiment(spec);

    for (const wsn::ProtocolResults& proto : result.protocols) {
      std::cout << wsn::to_string(proto.protocol) << ": first dead "
                << milestone_text(proto.aggregate.first_dead)
                << ", half dead "
                << milestone_text(proto.aggregate.half_dead)
                << ", last dead " << milestone_text(proto.aggregate.last_dead)
                << ", packets " << std::fixed << std::setprecision(1)
                << proto.aggregate.packets_total.mean << " over "
                << proto.aggregate.trials << " trials\n";
    }
    std::cout << result.files_written.size() << " files written under "
              << spec.output_dir.string() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
