#include "wsn/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace wsn {

std::string to_string(Protocol p) {
  switch (p) {
    case Protocol::LeachHet:
      return "leach_het";
    case Protocol::Eecp:
      return "eecp";
  }
  throw std::invalid_argument("to_string: bad Protocol value");
}

std::string to_string(DavgMode m) {
  switch (m) {
    case DavgMode::Empirical:
      return "empirical";
    case DavgMode::Analytic:
      return "analytic";
  }
  throw std::invalid_argument("to_string: bad DavgMode value");
}

std::string to_string(ThresholdVariant v) {
  switch (v) {
    case ThresholdVariant::Literal:
      return "literal";
    case ThresholdVariant::ClampedScaling:
      return "clamped_scaling";
  }
  throw std::invalid_argument("to_string: bad ThresholdVariant value");
}

Protocol protocol_from_string(const std::string& name) {
  if (name == "leach_het") return Protocol::LeachHet;
  if (name == "eecp") return Protocol::Eecp;
  throw std::invalid_argument("unknown protocol '" + name +
                              "' (expected leach_het or eecp)");
}

DavgMode davg_mode_from_string(const std::string& name) {
  if (name == "empirical") return DavgMode::Empirical;
  if (name == "analytic") return DavgMode::Analytic;
  throw std::invalid_argument("unknown d_avg_mode '" + name +
                              "' (expected empirical or analytic)");
}

ThresholdVariant threshold_variant_from_string(const std::string& name) {
  if (name == "literal") return ThresholdVariant::Literal;
  if (name == "clamped_scaling") return ThresholdVariant::ClampedScaling;
  throw std::invalid_argument("unknown threshold_variant '" + name +
                              "' (expected literal or clamped_scaling)");
}

std::uint32_t NetworkConfig::gateway_count() const {
  const double raw = gateway_fraction * static_cast<double>(n_nodes);
  const auto rounded = static_cast<std::uint32_t>(std::llround(raw));
  return std::min(rounded, n_nodes);
}

std::vector<std::string> NetworkConfig::validate() const {
  if (n_nodes == 0) {
    throw std::invalid_argument("n_nodes must be >= 1");
  }
  if (!(field_side > 0.0) || !std::isfinite(field_side)) {
    throw std::invalid_argument("field_side must be finite and > 0");
  }
  if (!(gateway_fraction >= 0.0) || !(gateway_fraction <= 1.0)) {
    throw std::invalid_argument("gateway_fraction must be in [0, 1]");
  }
  if (!(energy_factor >= 0.0) || !std::isfinite(energy_factor)) {
    throw std::invalid_argument("energy_factor must be finite and >= 0");
  }
  if (!(initial_energy > 0.0) || !std::isfinite(initial_energy)) {
    throw std::invalid_argument("initial_energy must be finite and > 0");
  }
  if (!(p_opt > 0.0) || !(p_opt <= 1.0)) {
    throw std::invalid_argument("p_opt must be in (0, 1]");
  }
  if (!(radio.e_elec > 0.0) || !(radio.eps_fs > 0.0) ||
      !(radio.eps_mp > 0.0) || !(radio.e_da >= 0.0)) {
    throw std::invalid_argument(
        "radio constants must be positive (e_da may be zero)");
  }
  if (radio.packet_bits == 0) {
    throw std::invalid_argument("packet_bits must be >= 1");
  }
  if (radio.d0_override && !(*radio.d0_override > 0.0)) {
    throw std::invalid_argument("d0_override must be > 0 when set");
  }
  if (max_rounds == 0) {
    throw std::invalid_argument("max_rounds must be >= 1");
  }

  std::vector<std::string> warnings;
  if (p_opt * static_cast<double>(n_nodes) < 1.0) {
    warnings.push_back(
        "p_opt * n_nodes < 1: fewer than one cluster head expected per "
        "round; most rounds will fall back to direct transmission");
  }
  return warnings;
}

std::size_t NetworkState::alive_count() const {
  return static_cast<std::size_t>(
      std::count_if(nodes.begin(), nodes.end(),
                    [](const Node& n) { return n.alive; }));
}

NetworkState deploy_network(const NetworkConfig& config, std::uint64_t seed) {
  config.validate();

  NetworkState state{.nodes = {}, .config = config, .round = 0,
                     .rng = RngStream(seed)};
  state.nodes.reserve(config.n_nodes);

  const Point bs = config.bs();
  for (std::uint32_t id = 0; id < config.n_nodes; ++id) {
    Node node;
    node.id = id;
    node.pos.x = state.rng.uniform01() * config.field_side;
    node.pos.y = state.rng.uniform01() * config.field_side;
    node.kind = NodeKind::Normal;
    node.energy = config.initial_energy;
    node.dist_to_bs = distance(node.pos, bs);
    state.nodes.push_back(node);
  }

  // Gateway picks: a partial Fisher-Yates over the id array so exactly
  // gateway_count() distinct nodes are promoted, one draw per pick.
  std::vector<std::uint32_t> ids(config.n_nodes);
  for (std::uint32_t i = 0; i < config.n_nodes; ++i) ids[i] = i;
  const std::uint32_t picks = config.gateway_count();
  for (std::uint32_t i = 0; i < picks; ++i) {
    const auto j = i + state.rng.uniform_index(config.n_nodes - i);
    std::swap(ids[i], ids[j]);
    Node& gw = state.nodes[ids[i]];
    gw.kind = NodeKind::Gateway;
    gw.energy = config.initial_energy * (1.0 + config.energy_factor);
  }

  return state;
}

std::optional<std::uint32_t> nearest(Point origin,
                                     std::span<const Node> candidates) {
  std::optional<std::uint32_t> best;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (const Node& node : candidates) {
    const double d2 = squared_distance(origin, node.pos);
    if (d2 < best_d2 || (d2 == best_d2 && best && node.id < *best)) {
      best_d2 = d2;
      best = node.id;
    }
  }
  return best;
}

}  // namespace wsn
