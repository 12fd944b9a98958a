#include "wsn/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wsn {

LifetimeMilestones lifetime_milestones(const SimulationTrace& trace) {
  if (trace.rounds.empty()) {
    throw std::invalid_argument("lifetime_milestones: empty trace");
  }
  LifetimeMilestones out;
  const std::uint32_t n = trace.config.n_nodes;
  const std::uint32_t half = (n + 1) / 2;  // ceil(N/2)-th death
  std::uint32_t dead = 0;
  for (const RoundReport& report : trace.rounds) {
    dead += static_cast<std::uint32_t>(report.deaths.size());
    if (!out.first_dead && dead >= 1) out.first_dead = report.round;
    if (!out.half_dead && dead >= half) out.half_dead = report.round;
    if (!out.last_dead && dead >= n) out.last_dead = report.round;
  }
  return out;
}

RoundSeries per_round_series(const SimulationTrace& trace) {
  RoundSeries series;
  const std::size_t rounds = trace.rounds.size();
  series.alive.reserve(rounds);
  series.ch_count.reserve(rounds);
  series.packets.reserve(rounds);
  series.packets_cum.reserve(rounds);
  series.residual_j.reserve(rounds);

  std::uint64_t cum = 0;
  for (const RoundReport& report : trace.rounds) {
    cum += report.packets_to_bs;
    series.alive.push_back(report.alive_after);
    series.ch_count.push_back(
        static_cast<std::uint32_t>(report.heads().size()));
    series.packets.push_back(report.packets_to_bs);
    series.packets_cum.push_back(cum);
    series.residual_j.push_back(report.residual_energy);
  }
  return series;
}

TrialResult summarize_trial(const SimulationTrace& trace) {
  return TrialResult{.config = trace.config,
                     .seed = trace.seed,
                     .series = per_round_series(trace),
                     .milestones = lifetime_milestones(trace)};
}

namespace {

MeanStd mean_std(std::span<const double> values) {
  const auto n = static_cast<double>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return MeanStd{.mean = mean, .stddev = std::sqrt(ss / n)};
}

MilestoneStats milestone_stats(
    std::span<const TrialResult> trials,
    std::optional<std::uint32_t> LifetimeMilestones::*field) {
  MilestoneStats out;
  out.trials = static_cast<std::uint32_t>(trials.size());
  std::vector<double> observed;
  for (const TrialResult& trial : trials) {
    const auto& value = trial.milestones.*field;
    if (value) {
      observed.push_back(static_cast<double>(*value));
    } else {
      ++out.censored;
    }
  }
  if (!observed.empty()) out.stats = mean_std(observed);
  return out;
}

// Value at round t of one padded series: in range reads through, past the
// end either carries the terminal value or pads zero.
template <typename T>
double padded_at(const std::vector<T>& values, std::size_t t,
                 bool carry_terminal) {
  if (t < values.size()) return static_cast<double>(values[t]);
  if (carry_terminal && !values.empty()) {
    return static_cast<double>(values.back());
  }
  return 0.0;
}

}  // namespace

TrialAggregate aggregate_trials(std::span<const TrialResult> trials) {
  if (trials.empty()) {
    throw std::invalid_argument("aggregate_trials: no trials");
  }
  for (const TrialResult& trial : trials) {
    if (!(trial.config == trials.front().config)) {
      throw std::invalid_argument(
          "aggregate_trials: trials mix different configs");
    }
  }

  TrialAggregate out;
  out.trials = static_cast<std::uint32_t>(trials.size());
  out.first_dead =
      milestone_stats(trials, &LifetimeMilestones::first_dead);
  out.half_dead = milestone_stats(trials, &LifetimeMilestones::half_dead);
  out.last_dead = milestone_stats(trials, &LifetimeMilestones::last_dead);

  std::vector<double> totals;
  std::vector<double> lengths;
  std::size_t max_rounds = 0;
  for (const TrialResult& trial : trials) {
    const RoundSeries& s = trial.series;
    max_rounds = std::max(max_rounds, s.size());
    totals.push_back(s.packets_cum.empty()
                         ? 0.0
                         : static_cast<double>(s.packets_cum.back()));
    lengths.push_back(static_cast<double>(s.size()));
  }
  out.packets_total = mean_std(totals);
  out.rounds_executed = mean_std(lengths);

  AggregateSeries& agg = out.series;
  agg.alive.reserve(max_rounds);
  agg.ch_count.reserve(max_rounds);
  agg.packets.reserve(max_rounds);
  agg.packets_cum.reserve(max_rounds);
  agg.residual_j.reserve(max_rounds);

  std::vector<double> column(trials.size());
  for (std::size_t t = 0; t < max_rounds; ++t) {
    const auto column_stats = [&](auto member, bool carry_terminal) {
      for (std::size_t k = 0; k < trials.size(); ++k) {
        column[k] = padded_at(trials[k].series.*member, t, carry_terminal);
      }
      return mean_std(column);
    };
    agg.alive.push_back(column_stats(&RoundSeries::alive, true));
    agg.ch_count.push_back(column_stats(&RoundSeries::ch_count, false));
    agg.packets.push_back(column_stats(&RoundSeries::packets, false));
    agg.packets_cum.push_back(column_stats(&RoundSeries::packets_cum, true));
    agg.residual_j.push_back(column_stats(&RoundSeries::residual_j, true));
  }
  return out;
}

TrialAggregate aggregate_trials(std::span<const SimulationTrace> traces) {
  std::vector<TrialResult> trials;
  trials.reserve(traces.size());
  for (const SimulationTrace& trace : traces) {
    trials.push_back(summarize_trial(trace));
  }
  return aggregate_trials(trials);
}

}  // namespace wsn
