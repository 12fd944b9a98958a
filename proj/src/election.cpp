#include "wsn/election.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wsn {

int epoch_length(double p) {
  if (!(p > 0.0) || !(p <= 1.0)) {
    throw std::invalid_argument("epoch_length: p must be in (0, 1]");
  }
  const double inv = 1.0 / p;
  const double nearest_int = std::round(inv);
  // 1/p for p like 0.1 lands a hair above the true integer; ceil would then
  // stretch the epoch by a round.
  if (std::abs(inv - nearest_int) < 1e-9) {
    return static_cast<int>(nearest_int);
  }
  return static_cast<int>(std::ceil(inv));
}

double standard_threshold(double p, std::uint32_t round, bool eligible) {
  if (!eligible) return 0.0;
  const auto epoch = static_cast<std::uint32_t>(epoch_length(p));
  const double phase = static_cast<double>(round % epoch);
  const double denom = 1.0 - p * phase;
  if (!(denom > 0.0)) return 1.0;  // tail of the epoch: certain election
  return std::clamp(p / denom, 0.0, 1.0);
}

double eecp_threshold(const ThresholdInputs& inputs,
                      ThresholdVariant variant) {
  if (!(inputs.d_avg > 0.0)) {
    throw std::invalid_argument("eecp_threshold: d_avg must be > 0");
  }
  const double base =
      standard_threshold(inputs.p, inputs.round, inputs.eligible);
  if (inputs.kind == NodeKind::Gateway) return base;

  const double ratio = inputs.d_i / inputs.d_avg;
  switch (variant) {
    case ThresholdVariant::Literal:
      // Scaling applies only inside the mean radius; at or beyond it the
      // standard threshold stands.
      if (ratio < 1.0) return std::clamp(base * (1.0 - ratio), 0.0, 1.0);
      return base;
    case ThresholdVariant::ClampedScaling:
      return std::clamp(base * std::max(0.0, 1.0 - ratio), 0.0, 1.0);
  }
  throw std::invalid_argument("eecp_threshold: bad variant value");
}

double empirical_avg_distance(const NetworkState& state) {
  if (state.nodes.empty()) {
    throw std::invalid_argument("empirical_avg_distance: no nodes");
  }
  double sum = 0.0;
  for (const Node& node : state.nodes) sum += node.dist_to_bs;
  return sum / static_cast<double>(state.nodes.size());
}

double optimal_cluster_count(std::uint32_t n_nodes, double field_side,
                             double d_bs, double eps_fs, double eps_mp) {
  if (n_nodes == 0 || !(field_side > 0.0) || !(d_bs > 0.0) ||
      !(eps_fs > 0.0) || !(eps_mp > 0.0)) {
    throw std::invalid_argument(
        "optimal_cluster_count: all inputs must be positive");
  }
  return std::sqrt(static_cast<double>(n_nodes)) /
         std::sqrt(2.0 * std::numbers::pi) * std::sqrt(eps_fs / eps_mp) *
         field_side / (d_bs * d_bs);
}

AnalyticDistances analytic_avg_distance(std::uint32_t n_nodes,
                                        double field_side, double eps_fs,
                                        double eps_mp) {
  AnalyticDistances out;
  // Mean distance from a uniform point in the square to the centre BS,
  // 0.3826 * side, folded through the usual 0.765 * M/2 form.
  out.d_to_bs = 0.765 * field_side / 2.0;
  out.k_opt = optimal_cluster_count(n_nodes, field_side, out.d_to_bs, eps_fs,
                                    eps_mp);
  out.d_to_ch = field_side / std::sqrt(2.0 * out.k_opt * std::numbers::pi);
  out.d_avg = out.d_to_ch + out.d_to_bs;
  return out;
}

std::vector<std::uint32_t> elect_cluster_heads(NetworkState& state,
                                               double d_avg) {
  const NetworkConfig& cfg = state.config;
  const auto epoch = static_cast<std::uint32_t>(epoch_length(cfg.p_opt));
  if (state.round % epoch == 0) {
    for (Node& node : state.nodes) {
      if (node.alive) node.epoch_elected = false;
    }
  }

  std::vector<std::uint32_t> heads;
  for (Node& node : state.nodes) {
    if (!node.alive) continue;
    const double draw = state.rng.uniform01();  // consumed even if ineligible
    double threshold = 0.0;
    if (cfg.protocol == Protocol::LeachHet) {
      threshold =
          standard_threshold(cfg.p_opt, state.round, !node.epoch_elected);
    } else {
      threshold = eecp_threshold(
          ThresholdInputs{.p = cfg.p_opt,
                          .round = state.round,
                          .eligible = !node.epoch_elected,
                          .d_i = node.dist_to_bs,
                          .d_avg = d_avg,
                          .kind = node.kind},
          cfg.threshold_variant);
    }
    if (draw < threshold) {
      node.epoch_elected = true;
      heads.push_back(node.id);
    }
  }
  return heads;
}

}  // namespace wsn
