#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "wsn/metrics.hpp"

namespace wsn {

// A batch comparison: the same base network run under each listed protocol,
// `trials` times each. Trial i of every protocol uses seed base_seed + i, so
// the protocols see identical deployments trial for trial.
struct ExperimentSpec {
  NetworkConfig base;
  std::vector<Protocol> protocols{Protocol::LeachHet, Protocol::Eecp};
  std::uint32_t trials = 1;
  std::uint64_t base_seed = 1;
  std::filesystem::path output_dir = "out";
  bool emit_charts = true;

  // Throws std::invalid_argument naming the offending field; returns
  // warnings (from the base config).
  std::vector<std::string> validate() const;
};

// Parses a JSON config document. Every omitted field keeps its default;
// unknown keys are rejected with a message naming the key, and out-of-range
// values name the field and bound.
ExperimentSpec parse_config(const std::string& text);

struct ProtocolResults {
  Protocol protocol = Protocol::LeachHet;
  std::vector<TrialResult> trials;
  TrialAggregate aggregate;
};

struct ExperimentResult {
  ExperimentSpec spec;
  std::vector<ProtocolResults> protocols;
  std::vector<std::filesystem::path> files_written;
};

// Runs every protocol x trial, then writes, in deterministic order:
//   <out>/<protocol>/trial_<i>.csv      per-trial round series
//   <out>/<protocol>/aggregate.csv      per-round mean/stddev across trials
//   <out>/summary.json                  milestones, throughput, comparisons
//   <out>/fig4.svg fig5.svg fig6.svg    charts (when emit_charts)
// Re-running the same spec reproduces every file byte for byte.
ExperimentResult run_experiment(const ExperimentSpec& spec);

// The summary document as written to summary.json.
std::string summary_json(const ExperimentResult& result);

}  // namespace wsn
