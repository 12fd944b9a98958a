#include "wsn/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "wsn/csv.hpp"
#include "wsn/round.hpp"
#include "wsn/svg.hpp"

namespace wsn {

namespace {

using ordered_json = nlohmann::ordered_json;

std::uint64_t take_u64(const nlohmann::json& v, const std::string& key) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer()) {
    const auto x = v.get<std::int64_t>();
    if (x >= 0) return static_cast<std::uint64_t>(x);
  }
  throw std::invalid_argument(key + " must be a nonnegative integer");
}

std::uint32_t take_u32(const nlohmann::json& v, const std::string& key) {
  const std::uint64_t x = take_u64(v, key);
  if (x > std::numeric_limits<std::uint32_t>::max()) {
    throw std::invalid_argument(key + " is out of range");
  }
  return static_cast<std::uint32_t>(x);
}

double take_double(const nlohmann::json& v, const std::string& key) {
  if (!v.is_number()) {
    throw std::invalid_argument(key + " must be a number");
  }
  return v.get<double>();
}

bool take_bool(const nlohmann::json& v, const std::string& key) {
  if (!v.is_boolean()) {
    throw std::invalid_argument(key + " must be a boolean");
  }
  return v.get<bool>();
}

std::string take_string(const nlohmann::json& v, const std::string& key) {
  if (!v.is_string()) {
    throw std::invalid_argument(key + " must be a string");
  }
  return v.get<std::string>();
}

void reject_unknown_keys(const nlohmann::json& obj,
                         const std::set<std::string>& allowed,
                         const std::string& scope) {
  for (const auto& item : obj.items()) {
    if (!allowed.contains(item.key())) {
      throw std::invalid_argument("unknown key '" + scope + item.key() +
                                  "'");
    }
  }
}

RadioParams parse_radio(const nlohmann::json& obj) {
  reject_unknown_keys(
      obj, {"e_elec", "eps_fs", "eps_mp", "e_da", "packet_bits", "d0"},
      "network.radio.");
  RadioParams radio;
  if (obj.contains("e_elec")) {
    radio.e_elec = take_double(obj["e_elec"], "e_elec");
  }
  if (obj.contains("eps_fs")) {
    radio.eps_fs = take_double(obj["eps_fs"], "eps_fs");
  }
  if (obj.contains("eps_mp")) {
    radio.eps_mp = take_double(obj["eps_mp"], "eps_mp");
  }
  if (obj.contains("e_da")) radio.e_da = take_double(obj["e_da"], "e_da");
  if (obj.contains("packet_bits")) {
    radio.packet_bits = take_u32(obj["packet_bits"], "packet_bits");
  }
  if (obj.contains("d0")) radio.d0_override = take_double(obj["d0"], "d0");
  return radio;
}

NetworkConfig parse_network(const nlohmann::json& obj) {
  reject_unknown_keys(
      obj,
      {"n_nodes", "field_side", "gateway_fraction", "energy_factor",
       "initial_energy", "bs", "p_opt", "d_avg_mode", "threshold_variant",
       "relays_enabled", "max_rounds", "radio"},
      "network.");
  NetworkConfig cfg;
  if (obj.contains("n_nodes")) {
    cfg.n_nodes = take_u32(obj["n_nodes"], "n_nodes");
  }
  if (obj.contains("field_side")) {
    cfg.field_side = take_double(obj["field_side"], "field_side");
  }
  if (obj.contains("gateway_fraction")) {
    cfg.gateway_fraction =
        take_double(obj["gateway_fraction"], "gateway_fraction");
  }
  if (obj.contains("energy_factor")) {
    cfg.energy_factor = take_double(obj["energy_factor"], "energy_factor");
  }
  if (obj.contains("initial_energy")) {
    cfg.initial_energy = take_double(obj["initial_energy"], "initial_energy");
  }
  if (obj.contains("bs")) {
    const auto& bs = obj["bs"];
    if (!bs.is_array() || bs.size() != 2) {
      throw std::invalid_argument("bs must be a [x, y] pair");
    }
    cfg.bs_position = Point{take_double(bs[0], "bs[0]"),
                            take_double(bs[1], "bs[1]")};
  }
  if (obj.contains("p_opt")) cfg.p_opt = take_double(obj["p_opt"], "p_opt");
  if (obj.contains("d_avg_mode")) {
    cfg.d_avg_mode =
        davg_mode_from_string(take_string(obj["d_avg_mode"], "d_avg_mode"));
  }
  if (obj.contains("threshold_variant")) {
    cfg.threshold_variant = threshold_variant_from_string(
        take_string(obj["threshold_variant"], "threshold_variant"));
  }
  if (obj.contains("relays_enabled")) {
    cfg.relays_enabled = take_bool(obj["relays_enabled"], "relays_enabled");
  }
  if (obj.contains("max_rounds")) {
    cfg.max_rounds = take_u32(obj["max_rounds"], "max_rounds");
  }
  if (obj.contains("radio")) cfg.radio = parse_radio(obj["radio"]);
  return cfg;
}

ordered_json json_mean_std(const MeanStd& ms) {
  return ordered_json{{"mean", ms.mean}, {"stddev", ms.stddev}};
}

ordered_json json_milestone(const MilestoneStats& ms) {
  ordered_json out;
  if (ms.stats) {
    out["mean"] = ms.stats->mean;
    out["stddev"] = ms.stats->stddev;
  } else {
    out["mean"] = nullptr;
    out["stddev"] = nullptr;
  }
  out["censored"] = ms.censored;
  out["trials"] = ms.trials;
  return out;
}

// Cohen's d with the pooled sample standard deviation; null when either
// sample is too small or the pooled spread vanishes.
ordered_json effect_entry(const std::vector<double>& candidate,
                          const std::vector<double>& baseline) {
  ordered_json out;
  if (candidate.empty() || baseline.empty()) {
    out["delta"] = nullptr;
    out["cohen_d"] = nullptr;
    return out;
  }
  const auto mean = [](const std::vector<double>& xs) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
  };
  const double m_c = mean(candidate);
  const double m_b = mean(baseline);
  out["delta"] = m_c - m_b;

  const auto n_c = static_cast<double>(candidate.size());
  const auto n_b = static_cast<double>(baseline.size());
  if (n_c + n_b < 3.0) {
    out["cohen_d"] = nullptr;
    return out;
  }
  const auto ss = [&](const std::vector<double>& xs, double m) {
    double s = 0.0;
    for (double x : xs) s += (x - m) * (x - m);
    return s;
  };
  const double pooled_var =
      (ss(candidate, m_c) + ss(baseline, m_b)) / (n_c + n_b - 2.0);
  if (!(pooled_var > 0.0)) {
    out["cohen_d"] = nullptr;
    return out;
  }
  out["cohen_d"] = (m_c - m_b) / std::sqrt(pooled_var);
  return out;
}

std::vector<double> milestone_values(
    const std::vector<TrialResult>& trials,
    std::optional<std::uint32_t> LifetimeMilestones::*field) {
  std::vector<double> out;
  for (const TrialResult& trial : trials) {
    const auto& value = trial.milestones.*field;
    if (value) out.push_back(static_cast<double>(*value));
  }
  return out;
}

std::vector<double> packet_totals(const std::vector<TrialResult>& trials) {
  std::vector<double> out;
  out.reserve(trials.size());
  for (const TrialResult& trial : trials) {
    out.push_back(trial.series.packets_cum.empty()
                      ? 0.0
                      : static_cast<double>(trial.series.packets_cum.back()));
  }
  return out;
}

ordered_json json_network(const NetworkConfig& cfg) {
  ordered_json net;
  net["n_nodes"] = cfg.n_nodes;
  net["field_side"] = cfg.field_side;
  net["gateway_fraction"] = cfg.gateway_fraction;
  net["energy_factor"] = cfg.energy_factor;
  net["initial_energy"] = cfg.initial_energy;
  net["bs"] = {cfg.bs().x, cfg.bs().y};
  net["p_opt"] = cfg.p_opt;
  net["d_avg_mode"] = to_string(cfg.d_avg_mode);
  net["threshold_variant"] = to_string(cfg.threshold_variant);
  net["relays_enabled"] = cfg.relays_enabled;
  net["max_rounds"] = cfg.max_rounds;
  ordered_json radio;
  radio["e_elec"] = cfg.radio.e_elec;
  radio["eps_fs"] = cfg.radio.eps_fs;
  radio["eps_mp"] = cfg.radio.eps_mp;
  radio["e_da"] = cfg.radio.e_da;
  radio["packet_bits"] = cfg.radio.packet_bits;
  if (cfg.radio.d0_override) {
    radio["d0"] = *cfg.radio.d0_override;
  } else {
    radio["d0"] = nullptr;
  }
  radio["d0_effective"] = cfg.radio.crossover();
  net["radio"] = radio;
  return net;
}

void write_text(const std::filesystem::path& file, const std::string& text) {
  std::ofstream out(file, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open " + file.string() +
                             " for writing");
  }
  out << text;
  if (!out) {
    throw std::runtime_error("write failed on " + file.string());
  }
}

}  // namespace

std::vector<std::string> ExperimentSpec::validate() const {
  if (trials == 0) {
    throw std::invalid_argument("trials must be >= 1");
  }
  if (protocols.empty()) {
    throw std::invalid_argument("protocols must name at least one protocol");
  }
  for (std::size_t i = 0; i < protocols.size(); ++i) {
    for (std::size_t j = i + 1; j < protocols.size(); ++j) {
      if (protocols[i] == protocols[j]) {
        throw std::invalid_argument("protocols lists '" +
                                    to_string(protocols[i]) + "' twice");
      }
    }
  }
  if (output_dir.empty()) {
    throw std::invalid_argument("output_dir must not be empty");
  }
  return base.validate();
}

ExperimentSpec parse_config(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") +
                                e.what());
  }
  if (!doc.is_object()) {
    throw std::invalid_argument("config root must be a JSON object");
  }
  reject_unknown_keys(doc,
                      {"network", "protocols", "trials", "base_seed",
                       "output_dir", "emit_charts"},
                      "");

  ExperimentSpec spec;
  if (doc.contains("network")) {
    if (!doc["network"].is_object()) {
      throw std::invalid_argument("network must be an object");
    }
    spec.base = parse_network(doc["network"]);
  }
  if (doc.contains("protocols")) {
    if (!doc["protocols"].is_array() || doc["protocols"].empty()) {
      throw std::invalid_argument("protocols must be a nonempty array");
    }
    spec.protocols.clear();
    for (const auto& entry : doc["protocols"]) {
      spec.protocols.push_back(
          protocol_from_string(take_string(entry, "protocols[]")));
    }
  }
  if (doc.contains("trials")) {
    spec.trials = take_u32(doc["trials"], "trials");
  }
  if (doc.contains("base_seed")) {
    spec.base_seed = take_u64(doc["base_seed"], "base_seed");
  }
  if (doc.contains("output_dir")) {
    spec.output_dir = take_string(doc["output_dir"], "output_dir");
  }
  if (doc.contains("emit_charts")) {
    spec.emit_charts = take_bool(doc["emit_charts"], "emit_charts");
  }
  spec.validate();
  return spec;
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  spec.validate();

  ExperimentResult result;
  result.spec = spec;

  std::filesystem::create_directories(spec.output_dir);
  for (Protocol protocol : spec.protocols) {
    const std::filesystem::path proto_dir =
        spec.output_dir / to_string(protocol);
    std::filesystem::create_directories(proto_dir);

    ProtocolResults proto;
    proto.protocol = protocol;
    proto.trials.reserve(spec.trials);
    NetworkConfig config = spec.base;
    config.protocol = protocol;
    for (std::uint32_t i = 0; i < spec.trials; ++i) {
      const SimulationTrace trace =
          run_simulation(config, spec.base_seed + i);
      proto.trials.push_back(summarize_trial(trace));
      const std::filesystem::path trial_file =
          proto_dir / ("trial_" + std::to_string(i) + ".csv");
      emit_csv(proto.trials.back().series, trial_file);
      result.files_written.push_back(trial_file);
    }
    proto.aggregate = aggregate_trials(proto.trials);
    const std::filesystem::path agg_file = proto_dir / "aggregate.csv";
    emit_aggregate_csv(proto.aggregate.series, agg_file);
    result.files_written.push_back(agg_file);

    result.protocols.push_back(std::move(proto));
  }

  const std::filesystem::path summary_file = spec.output_dir / "summary.json";
  write_text(summary_file, summary_json(result));
  result.files_written.push_back(summary_file);

  if (spec.emit_charts) {
    std::vector<MilestoneBars> bars;
    for (const ProtocolResults& proto : result.protocols) {
      MilestoneBars b;
      b.label = to_string(proto.protocol);
      const auto value = [](const MilestoneStats& ms) {
        return ms.stats ? std::optional<double>(ms.stats->mean)
                        : std::nullopt;
      };
      b.first_dead = value(proto.aggregate.first_dead);
      b.half_dead = value(proto.aggregate.half_dead);
      b.last_dead = value(proto.aggregate.last_dead);
      b.first_censored = proto.aggregate.first_dead.censored;
      b.half_censored = proto.aggregate.half_dead.censored;
      b.last_censored = proto.aggregate.last_dead.censored;
      b.trials = proto.aggregate.trials;
      bars.push_back(std::move(b));
    }
    const std::filesystem::path fig4 = spec.output_dir / "fig4.svg";
    write_milestone_chart(fig4, "Network lifetime milestones", bars,
                          spec.base.max_rounds);
    result.files_written.push_back(fig4);

    const auto line_series = [&](auto member) {
      std::vector<ChartSeries> series;
      for (const ProtocolResults& proto : result.protocols) {
        ChartSeries s;
        s.label = to_string(proto.protocol);
        const auto& column = proto.aggregate.series.*member;
        s.values.reserve(column.size());
        for (const MeanStd& ms : column) s.values.push_back(ms.mean);
        series.push_back(std::move(s));
      }
      return series;
    };
    const std::filesystem::path fig5 = spec.output_dir / "fig5.svg";
    const auto alive = line_series(&AggregateSeries::alive);
    write_line_chart(fig5, "Alive nodes per round", "round", "alive nodes",
                     alive);
    result.files_written.push_back(fig5);

    const std::filesystem::path fig6 = spec.output_dir / "fig6.svg";
    const auto packets = line_series(&AggregateSeries::packets_cum);
    write_line_chart(fig6, "Cumulative packets at the BS", "round",
                     "packets", packets);
    result.files_written.push_back(fig6);
  }

  return result;
}

std::string summary_json(const ExperimentResult& result) {
  ordered_json doc;
  doc["network"] = json_network(result.spec.base);
  doc["trials"] = result.spec.trials;
  doc["base_seed"] = result.spec.base_seed;

  ordered_json protocols;
  for (const ProtocolResults& proto : result.protocols) {
    ordered_json p;
    p["rounds_executed"] = json_mean_std(proto.aggregate.rounds_executed);
    p["first_dead"] = json_milestone(proto.aggregate.first_dead);
    p["half_dead"] = json_milestone(proto.aggregate.half_dead);
    p["last_dead"] = json_milestone(proto.aggregate.last_dead);
    p["packets_total"] = json_mean_std(proto.aggregate.packets_total);
    protocols[to_string(proto.protocol)] = std::move(p);
  }
  doc["protocols"] = std::move(protocols);

  // Every non-baseline protocol against leach_het, when both are present.
  ordered_json comparisons = ordered_json::array();
  const ProtocolResults* baseline = nullptr;
  for (const ProtocolResults& proto : result.protocols) {
    if (proto.protocol == Protocol::LeachHet) baseline = &proto;
  }
  if (baseline) {
    for (const ProtocolResults& proto : result.protocols) {
      if (proto.protocol == Protocol::LeachHet) continue;
      ordered_json cmp;
      cmp["baseline"] = to_string(baseline->protocol);
      cmp["candidate"] = to_string(proto.protocol);
      cmp["first_dead"] = effect_entry(
          milestone_values(proto.trials, &LifetimeMilestones::first_dead),
          milestone_values(baseline->trials,
                           &LifetimeMilestones::first_dead));
      cmp["half_dead"] = effect_entry(
          milestone_values(proto.trials, &LifetimeMilestones::half_dead),
          milestone_values(baseline->trials, &LifetimeMilestones::half_dead));
      cmp["last_dead"] = effect_entry(
          milestone_values(proto.trials, &LifetimeMilestones::last_dead),
          milestone_values(baseline->trials, &LifetimeMilestones::last_dead));
      cmp["packets_total"] = effect_entry(packet_totals(proto.trials),
                                          packet_totals(baseline->trials));
      comparisons.push_back(std::move(cmp));
    }
  }
  doc["comparisons"] = std::move(comparisons);

  return doc.dump(2) + "\n";
}

}  // namespace wsn
