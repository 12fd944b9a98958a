#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wsn/geometry.hpp"
#include "wsn/radio.hpp"
#include "wsn/rng.hpp"

namespace wsn {

enum class NodeKind { Normal, Gateway };
enum class Protocol { LeachHet, Eecp };
enum class DavgMode { Empirical, Analytic };
enum class ThresholdVariant { Literal, ClampedScaling };

std::string to_string(Protocol p);
std::string to_string(DavgMode m);
std::string to_string(ThresholdVariant v);
Protocol protocol_from_string(const std::string& name);
DavgMode davg_mode_from_string(const std::string& name);
ThresholdVariant threshold_variant_from_string(const std::string& name);

struct Node {
  std::uint32_t id = 0;
  Point pos;
  NodeKind kind = NodeKind::Normal;
  double energy = 0.0;         // residual J; at or below zero once dead
  bool alive = true;
  bool epoch_elected = false;  // already served as CH in the current epoch
  double dist_to_bs = 0.0;     // cached Euclidean distance to the BS

  friend bool operator==(const Node&, const Node&) = default;
};

struct NetworkConfig {
  std::uint32_t n_nodes = 100;
  double field_side = 100.0;         // deployment square side (m)
  double gateway_fraction = 0.1;     // share of nodes deployed as gateways
  double energy_factor = 1.0;        // gateway premium: E0 * (1 + factor)
  double initial_energy = 0.5;       // E0 (J)
  std::optional<Point> bs_position;  // default: field centre
  RadioParams radio;
  double p_opt = 0.1;                // target CH probability per round
  Protocol protocol = Protocol::Eecp;
  DavgMode d_avg_mode = DavgMode::Empirical;
  ThresholdVariant threshold_variant = ThresholdVariant::Literal;
  bool relays_enabled = true;        // gateway relaying (EECP ablation switch)
  std::uint32_t max_rounds = 10000;

  Point bs() const {
    return bs_position.value_or(Point{field_side / 2.0, field_side / 2.0});
  }

  // round(gateway_fraction * n_nodes), half away from zero, capped at n_nodes.
  std::uint32_t gateway_count() const;

  // Throws std::invalid_argument naming the offending field; returns soft
  // warnings (currently only the p_opt * n_nodes < 1 advisory).
  std::vector<std::string> validate() const;

  friend bool operator==(const NetworkConfig&, const NetworkConfig&) = default;
};

struct NetworkState {
  std::vector<Node> nodes;  // dense ids, ascending
  NetworkConfig config;
  std::uint32_t round = 0;
  RngStream rng;

  std::size_t alive_count() const;
};

// Uniform deployment over the field square. Positions consume two draws per
// node in id order, then the gateway picks consume one draw each. Equal
// (config, seed) yields an identical network.
NetworkState deploy_network(const NetworkConfig& config, std::uint64_t seed);

// Id of the candidate closest to origin, ties to the lowest id; nullopt when
// the candidate list is empty.
std::optional<std::uint32_t> nearest(Point origin,
                                     std::span<const Node> candidates);

}  // namespace wsn
