#pragma once

#include <cstdint>
#include <vector>

#include "wsn/model.hpp"

namespace wsn {

// Rounds per CH-eligibility epoch: ceil(1/p), with a guard against floating
// noise when 1/p is an integer.
int epoch_length(double p);

// Rotating election threshold for an eligible node,
// p / (1 - p * (round mod epoch)), clamped to [0, 1]; 0 when ineligible.
double standard_threshold(double p, std::uint32_t round, bool eligible);

struct ThresholdInputs {
  double p = 0.1;
  std::uint32_t round = 0;
  bool eligible = true;
  double d_i = 0.0;    // node -> BS distance
  double d_avg = 1.0;  // network mean node -> BS distance, > 0
  NodeKind kind = NodeKind::Normal;
};

// Distance-scaled election threshold.
//   Literal: normal nodes nearer than d_avg get standard * (1 - d_i/d_avg);
//     normal nodes at or beyond d_avg, and all gateways, get the standard
//     threshold unmodified.
//   ClampedScaling: normal nodes get standard * max(0, 1 - d_i/d_avg) at any
//     distance; gateways get the standard threshold.
// Always 0 when ineligible; the result is clamped to [0, 1].
double eecp_threshold(const ThresholdInputs& inputs, ThresholdVariant variant);

// Mean distance to the BS over every deployed node, alive or dead. The value
// is fixed at deployment and never recomputed as nodes die.
double empirical_avg_distance(const NetworkState& state);

// Expected cluster count: sqrt(N)/sqrt(2*pi) * sqrt(eps_fs/eps_mp) * M/d_bs^2.
double optimal_cluster_count(std::uint32_t n_nodes, double field_side,
                             double d_bs, double eps_fs, double eps_mp);

struct AnalyticDistances {
  double k_opt = 0.0;
  double d_to_ch = 0.0;  // mean member -> CH distance, M / sqrt(2*k*pi)
  double d_to_bs = 0.0;  // mean CH -> BS distance, 0.765 * M/2 (centre BS)
  double d_avg = 0.0;    // d_to_ch + d_to_bs
};

// Closed-form approximation of the mean node -> BS distance for a uniform
// deployment with the BS at the field centre.
AnalyticDistances analytic_avg_distance(std::uint32_t n_nodes,
                                        double field_side, double eps_fs,
                                        double eps_mp);

// Setup-phase election. On epoch boundaries (round mod epoch == 0) resets
// every alive node's eligibility, then draws one uniform per alive node in
// ascending id order and elects those whose draw falls under their threshold
// (protocol and variant from state.config). Dead nodes draw nothing and are
// never elected. Returns the elected ids ascending.
std::vector<std::uint32_t> elect_cluster_heads(NetworkState& state,
                                               double d_avg);

}  // namespace wsn
