#include <algorithm>
#include <cmath>
#include <vector>

#include <doctest.h>

#include "wsn/election.hpp"
#include "wsn/round.hpp"
#include "test_helpers.hpp"

using namespace wsn;

namespace {

double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

}  // namespace

TEST_SUITE("round") {
  TEST_CASE("four node cross: every energy term matches hand computation") {
    // CH at (50,40), members at (50,60), (30,50), (70,50), BS at (50,50).
    NetworkConfig cfg;
    NetworkState state = test::make_state(
        cfg, {{50.0, 40.0}, {50.0, 60.0}, {30.0, 50.0}, {70.0, 50.0}});
    const double e0 = test::total_energy(state.nodes);

    const RoundReport report = run_round_with_heads(state, {0});

    // Member 1: d = 20 -> 4000*5e-9 + 4000*1e-11*400.
    const double m1 = 4000.0 * 5e-9 + 4000.0 * 10e-12 * 400.0;
    // Members 2, 3: d^2 = 500 -> 4000*5e-9 + 4000*1e-11*500.
    const double m2 = 4000.0 * 5e-9 + 4000.0 * 10e-12 * 500.0;
    // Head: three receptions, four-signal fusion, uplink over d = 10.
    const double ch = 3.0 * (4000.0 * 5e-9) +
                      5e-9 * 4000.0 * 4.0 +
                      (4000.0 * 5e-9 + 4000.0 * 10e-12 * 100.0);

    REQUIRE(report.energy_spent.size() == 4);
    CHECK(rel_diff(report.energy_spent[0], ch) < 1e-15);
    CHECK(rel_diff(report.energy_spent[1], m1) < 1e-15);
    CHECK(rel_diff(report.energy_spent[2], m2) < 1e-15);
    CHECK(rel_diff(report.energy_spent[3], m2) < 1e-15);

    CHECK(report.packets_to_bs == 1);
    CHECK(report.deaths.empty());
    CHECK(report.alive_after == 4);
    CHECK(report.assignment.heads == std::vector<std::uint32_t>{0});
    REQUIRE(report.routes.size() == 1);
    CHECK(!report.routes[0].gateway_id.has_value());
    CHECK(rel_diff(report.residual_energy, e0 - (ch + m1 + 2.0 * m2)) <
          1e-12);
    CHECK(state.round == 1);
  }

  TEST_CASE("members join the nearest head, ties to the lowest head id") {
    NetworkConfig cfg;
    NetworkState state = test::make_state(
        cfg,
        {{10.0, 50.0}, {90.0, 50.0}, {30.0, 50.0}, {80.0, 50.0},
         {50.0, 50.0}});
    const std::vector<std::uint32_t> heads{0, 1};
    const ClusterAssignment assignment = form_clusters(state, heads);
    REQUIRE(assignment.members.size() == 3);
    CHECK(assignment.members[0].node_id == 2);
    CHECK(assignment.members[0].head_id == 0);
    CHECK(assignment.members[1].node_id == 3);
    CHECK(assignment.members[1].head_id == 1);
    CHECK(assignment.members[2].node_id == 4);  // equidistant
    CHECK(assignment.members[2].head_id == 0);
  }

  TEST_CASE("with no heads every member falls back to the BS") {
    NetworkConfig cfg;
    NetworkState state = test::make_state(cfg, {{10.0, 10.0}, {20.0, 20.0}});
    const RoundReport report = run_round_with_heads(state, {});
    CHECK(report.assignment.heads.empty());
    REQUIRE(report.assignment.members.size() == 2);
    CHECK(!report.assignment.members[0].head_id.has_value());
    CHECK(!report.assignment.members[1].head_id.has_value());
    CHECK(report.packets_to_bs == 2);
    for (std::size_t id = 0; id < 2; ++id) {
      const double d = state.nodes[id].dist_to_bs;
      CHECK(rel_diff(report.energy_spent[id],
                     4000.0 * 5e-9 + 4000.0 * 10e-12 * d * d) < 1e-12);
    }
  }

  TEST_CASE("head lists are sanitized: dead, duplicate, unsorted") {
    NetworkConfig cfg;
    NetworkState state = test::make_state(
        cfg, {{10.0, 10.0}, {20.0, 20.0}, {30.0, 30.0}});
    state.nodes[1].alive = false;
    const std::vector<std::uint32_t> raw{2, 0, 2, 1};
    const ClusterAssignment assignment = form_clusters(state, raw);
    CHECK(assignment.heads == std::vector<std::uint32_t>{0, 2});
    REQUIRE(assignment.members.empty());
  }

  TEST_CASE("normal heads relay through the nearest idle gateway") {
    NetworkConfig cfg;
    cfg.protocol = Protocol::Eecp;
    // CH at (10,50): BS is 40 away. Gateways at (20,50) [d=10] and
    // (30,50) [d=20]; a third gateway serves as CH and is excluded.
    NetworkState state = test::make_state(
        cfg, {{10.0, 50.0}, {20.0, 50.0}, {30.0, 50.0}, {40.0, 50.0}});
    state.nodes[1].kind = NodeKind::Gateway;
    state.nodes[2].kind = NodeKind::Gateway;
    state.nodes[3].kind = NodeKind::Gateway;

    const std::vector<std::uint32_t> heads{0, 3};
    SUBCASE("nearest eligible gateway wins") {
      const UplinkRoute route = choose_uplink(state.nodes[0], state, heads);
      CHECK(route.gateway_id == 1);
    }
    SUBCASE("a dead gateway is skipped") {
      state.nodes[1].alive = false;
      const UplinkRoute route = choose_uplink(state.nodes[0], state, heads);
      CHECK(route.gateway_id == 2);
    }
    SUBCASE("a gateway serving as CH goes direct") {
      const UplinkRoute route = choose_uplink(state.nodes[3], state, heads);
      CHECK(!route.gateway_id.has_value());
    }
    SUBCASE("relay only when strictly closer than the BS") {
      state.nodes[1].alive = false;
      state.nodes[2].alive = false;
      // Only gateway 3 remains eligible? No: 3 is a head. Direct.
      const UplinkRoute route = choose_uplink(state.nodes[0], state, heads);
      CHECK(!route.gateway_id.has_value());
    }
    SUBCASE("relay ablation forces direct uplinks") {
      state.config.relays_enabled = false;
      const UplinkRoute route = choose_uplink(state.nodes[0], state, heads);
      CHECK(!route.gateway_id.has_value());
    }
    SUBCASE("the baseline never relays") {
      state.config.protocol = Protocol::LeachHet;
      const UplinkRoute route = choose_uplink(state.nodes[0], state, heads);
      CHECK(!route.gateway_id.has_value());
    }
  }

  TEST_CASE("gateway farther than the BS is not used") {
    NetworkConfig cfg;
    cfg.protocol = Protocol::Eecp;
    // CH at (45,50): BS 5 away; gateway 25 away.
    NetworkState state =
        test::make_state(cfg, {{45.0, 50.0}, {20.0, 50.0}});
    state.nodes[1].kind = NodeKind::Gateway;
    const std::vector<std::uint32_t> heads{0};
    const UplinkRoute route = choose_uplink(state.nodes[0], state, heads);
    CHECK(!route.gateway_id.has_value());
  }

  TEST_CASE("relay energy: gateway pays reception and uplink, never fusion") {
    NetworkConfig cfg;
    cfg.protocol = Protocol::Eecp;
    // Lone normal CH at (10,50) with one gateway at (30,50); BS (50,50).
    NetworkState state =
        test::make_state(cfg, {{10.0, 50.0}, {30.0, 50.0}});
    state.nodes[1].kind = NodeKind::Gateway;

    const RoundReport report = run_round_with_heads(state, {0});
    REQUIRE(report.routes.size() == 1);
    CHECK(report.routes[0].gateway_id == 1);

    // Gateway is also the CH's only member first: tx over d=20.
    const double member_tx = 4000.0 * 5e-9 + 4000.0 * 10e-12 * 400.0;
    // CH: one reception, two-signal fusion, uplink to the gateway (d=20).
    const double ch_spend = 4000.0 * 5e-9 + 5e-9 * 4000.0 * 2.0 +
                            (4000.0 * 5e-9 + 4000.0 * 10e-12 * 400.0);
    // Gateway relay duty: one reception plus its own BS uplink (d=20).
    const double relay_spend = 4000.0 * 5e-9 +
                               (4000.0 * 5e-9 + 4000.0 * 10e-12 * 400.0);
    CHECK(rel_diff(report.energy_spent[0], ch_spend) < 1e-15);
    CHECK(rel_diff(report.energy_spent[1], member_tx + relay_spend) <
          1e-15);
    CHECK(report.packets_to_bs == 1);
  }

  TEST_CASE("per round energy bookkeeping balances") {
    NetworkConfig cfg;
    cfg.protocol = Protocol::Eecp;
    NetworkState state = deploy_network(cfg, 77);
    const double d_avg = empirical_avg_distance(state);
    for (int r = 0; r < 50; ++r) {
      const double before = test::total_energy(state.nodes);
      const RoundReport report = run_round(state, d_avg);
      double spent = 0.0;
      for (double e : report.energy_spent) spent += e;
      const double after = test::total_energy(state.nodes);
      // The delta of two ~55 J totals cancels most digits, so the honest
      // bound is absolute error against the total, not the delta.
      CHECK(std::abs((before - after) - spent) < 1e-12 * before);
      CHECK(report.residual_energy == doctest::Approx(after).epsilon(1e-12));
    }
  }

  TEST_CASE("a node finishes its dying round and then stays dead") {
    NetworkConfig cfg;
    cfg.initial_energy = 3e-5;  // below one member transmission
    NetworkState state = test::make_state(
        cfg, {{50.0, 40.0}, {50.0, 60.0}});
    const RoundReport report = run_round_with_heads(state, {0});

    // Both transmitted despite the deficit; both are dead afterwards.
    CHECK(report.packets_to_bs == 1);
    CHECK(report.energy_spent[1] > 0.0);
    CHECK(report.deaths == std::vector<std::uint32_t>{0, 1});
    CHECK(report.alive_after == 0);
    CHECK(state.nodes[0].energy < 0.0);

    // Dead nodes take no further part.
    const RoundReport next = run_round_with_heads(state, {0, 1});
    CHECK(next.assignment.heads.empty());
    CHECK(next.assignment.members.empty());
    CHECK(next.packets_to_bs == 0);
    CHECK(next.deaths.empty());
  }

  TEST_CASE("simulation stops at the horizon or at extinction") {
    NetworkConfig cfg;
    cfg.n_nodes = 1;
    cfg.gateway_fraction = 0.0;
    cfg.initial_energy = 100.0;
    cfg.max_rounds = 5;
    const SimulationTrace trace = run_simulation(cfg, 1);
    CHECK(trace.rounds.size() == 5);
    CHECK(trace.final_nodes[0].alive);

    NetworkConfig tiny;
    tiny.n_nodes = 4;
    tiny.gateway_fraction = 0.0;
    tiny.initial_energy = 1e-4;
    tiny.max_rounds = 1000;
    const SimulationTrace short_trace = run_simulation(tiny, 2);
    CHECK(short_trace.rounds.size() < 1000);
    CHECK(short_trace.rounds.back().alive_after == 0);
    for (const Node& node : short_trace.final_nodes) {
      CHECK(!node.alive);
    }
  }

  TEST_CASE("alive counts fall and packet counts accumulate monotonically") {
    NetworkConfig cfg;
    cfg.max_rounds = 4000;
    const SimulationTrace trace = run_simulation(cfg, 9);
    std::uint32_t prev_alive = cfg.n_nodes;
    for (const RoundReport& report : trace.rounds) {
      CHECK(report.alive_after <= prev_alive);
      prev_alive = report.alive_after;
      CHECK(report.packets_to_bs ==
            report.assignment.heads.size() +
                std::count_if(report.assignment.members.begin(),
                              report.assignment.members.end(),
                              [](const ClusterAssignment::Member& m) {
                                return !m.head_id.has_value();
                              }));
    }
  }

  TEST_CASE("relay routes always satisfy the strict-improvement guard") {
    NetworkConfig cfg;
    cfg.protocol = Protocol::Eecp;
    cfg.max_rounds = 1500;
    const SimulationTrace trace = run_simulation(cfg, 21);
    std::size_t relayed = 0;
    for (const RoundReport& report : trace.rounds) {
      for (const UplinkRoute& route : report.routes) {
        if (!route.gateway_id) continue;
        ++relayed;
        const Node& ch = trace.initial_nodes[route.ch_id];
        const Node& gw = trace.initial_nodes[*route.gateway_id];
        CHECK(gw.kind == NodeKind::Gateway);
        CHECK(ch.kind == NodeKind::Normal);
        CHECK(distance(ch.pos, gw.pos) < ch.dist_to_bs);
        CHECK(std::find(report.assignment.heads.begin(),
                        report.assignment.heads.end(),
                        *route.gateway_id) ==
              report.assignment.heads.end());
      }
    }
    CHECK(relayed > 0);  // the mechanism actually engages
  }

  TEST_CASE("the d_avg mode picks the election reference") {
    NetworkConfig cfg;
    cfg.max_rounds = 1;
    const SimulationTrace empirical = run_simulation(cfg, 4);
    cfg.d_avg_mode = DavgMode::Analytic;
    const SimulationTrace analytic = run_simulation(cfg, 4);
    CHECK(empirical.d_avg != analytic.d_avg);
    CHECK(analytic.d_avg == doctest::Approx(46.4077).epsilon(1e-4));
    CHECK(empirical.d_avg == doctest::Approx(38.26).epsilon(0.05));
  }
}
