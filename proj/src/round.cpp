#include "wsn/round.hpp"

#include <algorithm>
#include <limits>
#include <utility>

#include "wsn/election.hpp"
#include "wsn/radio.hpp"

namespace wsn {

namespace {

// Sorted, deduplicated, restricted to alive in-range nodes.
std::vector<std::uint32_t> sanitize_heads(const NetworkState& state,
                                          std::vector<std::uint32_t> heads) {
  std::sort(heads.begin(), heads.end());
  heads.erase(std::unique(heads.begin(), heads.end()), heads.end());
  std::erase_if(heads, [&](std::uint32_t id) {
    return id >= state.nodes.size() || !state.nodes[id].alive;
  });
  return heads;
}

// Steady-state phase shared by both round entry points. `heads` must
// already be sanitized.
RoundReport finish_round(NetworkState& state,
                         std::vector<std::uint32_t> heads) {
  RoundReport report;
  report.round = state.round;
  report.energy_spent.assign(state.nodes.size(), 0.0);
  report.assignment = form_clusters(state, heads);

  const RadioParams& radio = state.config.radio;
  const std::uint32_t bits = radio.packet_bits;

  const auto spend = [&](std::uint32_t id, double joules) {
    state.nodes[id].energy -= joules;
    report.energy_spent[id] += joules;
  };

  // Members transmit one packet each; their head receives each in turn.
  // With no head this round a member sends straight to the BS instead.
  std::vector<std::uint32_t> member_count(state.nodes.size(), 0);
  for (const auto& m : report.assignment.members) {
    const Node& member = state.nodes[m.node_id];
    if (m.head_id) {
      const Node& head = state.nodes[*m.head_id];
      spend(m.node_id,
            tx_energy(bits, distance(member.pos, head.pos), radio));
      spend(*m.head_id, rx_energy(bits, radio));
      ++member_count[*m.head_id];
    } else {
      spend(m.node_id, tx_energy(bits, member.dist_to_bs, radio));
      ++report.packets_to_bs;
    }
  }

  // Heads fuse the collected signals plus their own reading into one packet
  // and send it up, either direct or through a relay gateway. A relay pays
  // reception plus its own transmission but never aggregation.
  report.routes.reserve(report.assignment.heads.size());
  for (std::uint32_t ch_id : report.assignment.heads) {
    const Node& ch = state.nodes[ch_id];
    spend(ch_id, aggregation_energy(bits, member_count[ch_id] + 1, radio));
    const UplinkRoute route =
        choose_uplink(ch, state, report.assignment.heads);
    if (route.gateway_id) {
      const Node& gw = state.nodes[*route.gateway_id];
      spend(ch_id, tx_energy(bits, distance(ch.pos, gw.pos), radio));
      spend(*route.gateway_id, rx_energy(bits, radio));
      spend(*route.gateway_id, tx_energy(bits, gw.dist_to_bs, radio));
    } else {
      spend(ch_id, tx_energy(bits, ch.dist_to_bs, radio));
    }
    ++report.packets_to_bs;
    report.routes.push_back(route);
  }

  // A node finishes the round it dies in; energy is left where it landed
  // (possibly below zero) so spent plus residual always equals the budget.
  for (Node& node : state.nodes) {
    if (node.alive && node.energy <= 0.0) {
      node.alive = false;
      report.deaths.push_back(node.id);
    }
  }
  report.alive_after = static_cast<std::uint32_t>(state.alive_count());
  double residual = 0.0;
  for (const Node& node : state.nodes) residual += node.energy;
  report.residual_energy = residual;

  ++state.round;
  return report;
}

}  // namespace

ClusterAssignment form_clusters(const NetworkState& state,
                                std::span<const std::uint32_t> heads) {
  ClusterAssignment out;
  out.heads = sanitize_heads(
      state, std::vector<std::uint32_t>(heads.begin(), heads.end()));

  std::vector<Node> head_nodes;
  head_nodes.reserve(out.heads.size());
  for (std::uint32_t id : out.heads) head_nodes.push_back(state.nodes[id]);

  for (const Node& node : state.nodes) {
    if (!node.alive) continue;
    if (std::binary_search(out.heads.begin(), out.heads.end(), node.id)) {
      continue;
    }
    out.members.push_back(ClusterAssignment::Member{
        .node_id = node.id, .head_id = nearest(node.pos, head_nodes)});
  }
  return out;
}

UplinkRoute choose_uplink(const Node& ch, const NetworkState& state,
                          std::span<const std::uint32_t> heads) {
  UplinkRoute route{.ch_id = ch.id, .gateway_id = std::nullopt};
  if (state.config.protocol != Protocol::Eecp ||
      !state.config.relays_enabled || ch.kind == NodeKind::Gateway) {
    return route;
  }

  std::optional<std::uint32_t> best;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (const Node& node : state.nodes) {  // ascending id: ties keep lowest
    if (!node.alive || node.kind != NodeKind::Gateway) continue;
    if (std::find(heads.begin(), heads.end(), node.id) != heads.end()) {
      continue;
    }
    const double d2 = squared_distance(ch.pos, node.pos);
    if (d2 < best_d2) {
      best_d2 = d2;
      best = node.id;
    }
  }
  if (best && best_d2 < ch.dist_to_bs * ch.dist_to_bs) {
    route.gateway_id = best;
  }
  return route;
}

RoundReport run_round(NetworkState& state, double d_avg) {
  return finish_round(state, elect_cluster_heads(state, d_avg));
}

RoundReport run_round_with_heads(NetworkState& state,
                                 std::vector<std::uint32_t> heads) {
  return finish_round(state, sanitize_heads(state, std::move(heads)));
}

SimulationTrace run_simulation(const NetworkConfig& config,
                               std::uint64_t seed) {
  NetworkState state = deploy_network(config, seed);

  SimulationTrace trace;
  trace.config = config;
  trace.seed = seed;
  trace.d_avg =
      config.d_avg_mode == DavgMode::Empirical
          ? empirical_avg_distance(state)
          : analytic_avg_distance(config.n_nodes, config.field_side,
                                  config.radio.eps_fs, config.radio.eps_mp)
                .d_avg;
  trace.initial_nodes = state.nodes;

  while (state.round < config.max_rounds && state.alive_count() > 0) {
    trace.rounds.push_back(run_round(state, trace.d_avg));
  }
  trace.final_nodes = state.nodes;
  return trace;
}

}  // namespace wsn
