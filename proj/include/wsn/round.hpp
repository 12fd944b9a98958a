#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "wsn/model.hpp"

namespace wsn {

struct ClusterAssignment {
  struct Member {
    std::uint32_t node_id = 0;
    // Nearest alive head, or nullopt when no head exists this round and the
    // node transmits straight to the BS.
    std::optional<std::uint32_t> head_id;

    friend bool operator==(const Member&, const Member&) = default;
  };

  std::vector<std::uint32_t> heads;  // ascending, alive, deduplicated
  std::vector<Member> members;       // alive non-heads, ascending node_id
};

struct UplinkRoute {
  std::uint32_t ch_id = 0;
  std::optional<std::uint32_t> gateway_id;  // nullopt: direct to BS

  friend bool operator==(const UplinkRoute&, const UplinkRoute&) = default;
};

struct RoundReport {
  std::uint32_t round = 0;
  ClusterAssignment assignment;
  std::vector<UplinkRoute> routes;   // one per head, ascending ch_id
  std::vector<double> energy_spent;  // J, indexed by node id
  std::uint32_t packets_to_bs = 0;
  std::vector<std::uint32_t> deaths;  // ids newly dead at end of round
  std::uint32_t alive_after = 0;
  double residual_energy = 0.0;  // sum of node energies at end of round

  const std::vector<std::uint32_t>& heads() const { return assignment.heads; }
};

struct SimulationTrace {
  NetworkConfig config;
  std::uint64_t seed = 0;
  double d_avg = 0.0;  // election distance reference used throughout
  std::vector<Node> initial_nodes;
  std::vector<Node> final_nodes;
  std::vector<RoundReport> rounds;
};

// Maps every alive non-head node to its nearest alive head (ties to the
// lowest head id); with no heads every alive node is marked direct-to-BS.
ClusterAssignment form_clusters(const NetworkState& state,
                                std::span<const std::uint32_t> heads);

// Uplink choice for one elected head. Gateways always go direct. A normal
// head relays via the nearest alive gateway not serving as CH this round,
// provided that gateway is strictly closer than the BS. The LEACH baseline
// (and the relay ablation) always goes direct.
UplinkRoute choose_uplink(const Node& ch, const NetworkState& state,
                          std::span<const std::uint32_t> heads);

// One full round: election, cluster formation, steady-state energy
// accounting, death marking, round counter bump.
RoundReport run_round(NetworkState& state, double d_avg);

// Same, with the head set imposed and election (and its RNG draws and epoch
// bookkeeping) skipped.
RoundReport run_round_with_heads(NetworkState& state,
                                 std::vector<std::uint32_t> heads);

// Deploys, fixes the election distance reference per config.d_avg_mode, then
// iterates rounds until every node is dead or max_rounds is reached.
SimulationTrace run_simulation(const NetworkConfig& config,
                               std::uint64_t seed);

}  // namespace wsn
