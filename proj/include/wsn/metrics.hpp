#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "wsn/round.hpp"

namespace wsn {

// Round indices of the first death, the ceil(N/2)-th death and the last
// death. A missing value means the event did not occur within the horizon.
struct LifetimeMilestones {
  std::optional<std::uint32_t> first_dead;
  std::optional<std::uint32_t> half_dead;
  std::optional<std::uint32_t> last_dead;
};

struct RoundSeries {
  std::vector<std::uint32_t> alive;
  std::vector<std::uint32_t> ch_count;
  std::vector<std::uint32_t> packets;
  std::vector<std::uint64_t> packets_cum;
  std::vector<double> residual_j;

  std::size_t size() const { return alive.size(); }

  friend bool operator==(const RoundSeries&, const RoundSeries&) = default;
};

LifetimeMilestones lifetime_milestones(const SimulationTrace& trace);
RoundSeries per_round_series(const SimulationTrace& trace);

// Everything the aggregator keeps from one trial once the trace is dropped.
struct TrialResult {
  NetworkConfig config;
  std::uint64_t seed = 0;
  RoundSeries series;
  LifetimeMilestones milestones;
};

TrialResult summarize_trial(const SimulationTrace& trace);

struct MeanStd {
  double mean = 0.0;
  double stddev = 0.0;  // population
};

struct MilestoneStats {
  std::optional<MeanStd> stats;  // over uncensored trials; nullopt if none
  std::uint32_t censored = 0;
  std::uint32_t trials = 0;
};

struct AggregateSeries {
  std::vector<MeanStd> alive;
  std::vector<MeanStd> ch_count;
  std::vector<MeanStd> packets;
  std::vector<MeanStd> packets_cum;
  std::vector<MeanStd> residual_j;

  std::size_t size() const { return alive.size(); }
};

struct TrialAggregate {
  AggregateSeries series;
  MilestoneStats first_dead;
  MilestoneStats half_dead;
  MilestoneStats last_dead;
  MeanStd packets_total;    // cumulative packets at each trial's end
  MeanStd rounds_executed;
  std::uint32_t trials = 0;
};

// Per-round mean and stddev across trials of one config. Ragged tails are
// padded by carrying each trial's terminal state: alive, cumulative packets
// and residual energy hold their final values, per-round packets and CH
// counts pad with zero (a finished network does nothing further). Milestone
// stats cover uncensored trials, with censored counts reported. Rejects an
// empty list and mixed configs.
TrialAggregate aggregate_trials(std::span<const TrialResult> trials);
TrialAggregate aggregate_trials(std::span<const SimulationTrace> traces);

}  // namespace wsn
