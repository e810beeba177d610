#include "fog/cli/scenario_io.hpp"

#include <fstream>
#include <initializer_list>
#include <limits>
#include <sstream>

#include "fog/cli/presets.hpp"
#include "fog/cli/scenario_json.hpp"
#include "json.hpp"

namespace fog::cli {

using nlohmann::json;

namespace {

// Reads typed fields out of one JSON object, rejecting keys it was never asked
// about once finish() runs.
class Reader {
 public:
  Reader(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) throw SchemaError(path_.empty() ? "<root>" : path_, "expected an object");
  }

  std::string key(std::string_view name) const {
    return path_.empty() ? std::string(name) : path_ + "." + std::string(name);
  }

  const json* find(std::string_view name) {
    seen_.emplace_back(name);
    auto it = node_.find(std::string(name));
    if (it == node_.end() || it->is_null()) return nullptr;
    return &*it;
  }

  void number(std::string_view name, double& out) {
    if (const json* v = find(name)) {
      if (!v->is_number()) throw SchemaError(key(name), "expected a number");
      out = v->get<double>();
    }
  }

  void optional_number(std::string_view name, std::optional<double>& out) {
    if (const json* v = find(name)) {
      if (!v->is_number()) throw SchemaError(key(name), "expected a number");
      out = v->get<double>();
    }
  }

  template <typename Int>
  void integer(std::string_view name, Int& out, long long minimum) {
    const json* v = find(name);
    if (!v) return;
    if (!v->is_number_integer()) throw SchemaError(key(name), "expected an integer");
    const auto too_small = [&] {
      return SchemaError(key(name), "must be at least " + std::to_string(minimum));
    };
    if (v->is_number_unsigned()) {
      const auto u = v->get<unsigned long long>();
      if (minimum > 0 && u < static_cast<unsigned long long>(minimum)) throw too_small();
      if (u > static_cast<unsigned long long>(std::numeric_limits<Int>::max())) {
        throw SchemaError(key(name), "value too large");
      }
      out = static_cast<Int>(u);
    } else {
      const auto s = v->get<long long>();
      if (s < minimum) throw too_small();
      out = static_cast<Int>(s);
    }
  }

  void boolean(std::string_view name, bool& out) {
    if (const json* v = find(name)) {
      if (!v->is_boolean()) throw SchemaError(key(name), "expected true or false");
      out = v->get<bool>();
    }
  }

  const json* string(std::string_view name) {
    const json* v = find(name);
    if (v && !v->is_string()) throw SchemaError(key(name), "expected a string");
    return v;
  }

  template <typename F>
  void choice(std::string_view name, F&& parse) {
    if (const json* v = string(name)) {
      try {
        parse(v->get<std::string>());
      } catch (const ConfigError& e) {
        throw SchemaError(key(name), e.what());
      }
    }
  }

  void finish() const {
    for (auto it = node_.begin(); it != node_.end(); ++it) {
      bool known = false;
      for (const auto& s : seen_) known = known || s == it.key();
      if (!known) throw SchemaError(key(it.key()), "unknown key");
    }
  }

 private:
  const json& node_;
  std::string path_;
  std::vector<std::string> seen_;
};

std::vector<double> number_list(const json& v, const std::string& key) {
  if (!v.is_array()) throw SchemaError(key, "expected an array of numbers");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) throw SchemaError(key, "expected an array of numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

policies::PolicySpec read_policy(const json& node, const std::string& path) {
  policies::PolicySpec p;
  if (node.is_string()) {
    try {
      p.kind = policies::parse_policy_kind(node.get<std::string>());
    } catch (const ConfigError& e) {
      throw SchemaError(path, e.what());
    }
    return p;
  }
  Reader r(node, path);
  r.choice("kind", [&](const std::string& s) { p.kind = policies::parse_policy_kind(s); });
  r.number("delta", p.delta);
  r.optional_number("delay_budget", p.delay_budget);
  r.optional_number("eta", p.eta);
  r.optional_number("beta", p.beta);
  r.choice("snapshot", [&](const std::string& s) { p.snapshot = policies::parse_snapshot_mode(s); });
  r.optional_number("exp3_gamma", p.exp3_gamma);
  r.number("ducb_discount", p.ducb_discount);
  r.number("ducb_exploration", p.ducb_exploration);
  r.integer("blot_window", p.blot_window, 1);
  r.number("blot_exploration", p.blot_exploration);
  r.number("sdb_heuristic_weight", p.sdb_heuristic_weight);
  r.finish();
  return p;
}

env::ArrivalRuleKind parse_arrival_kind(const std::string& s) {
  if (s == "linear") return env::ArrivalRuleKind::kLinear;
  if (s == "list") return env::ArrivalRuleKind::kList;
  if (s == "best_plus_uniform") return env::ArrivalRuleKind::kBestPlusUniform;
  throw ConfigError("unknown arrival rule '" + s + "' (valid: linear, list, best_plus_uniform)");
}

env::ServiceRateMode parse_service_mode(const std::string& s) {
  if (s == "per_slot") return env::ServiceRateMode::kPerSlot;
  if (s == "per_run") return env::ServiceRateMode::kPerRun;
  throw ConfigError("unknown service mode '" + s + "' (valid: per_slot, per_run)");
}

}  // namespace

std::string_view to_string(env::ArrivalRuleKind kind) {
  switch (kind) {
    case env::ArrivalRuleKind::kLinear:
      return "linear";
    case env::ArrivalRuleKind::kList:
      return "list";
    case env::ArrivalRuleKind::kBestPlusUniform:
      return "best_plus_uniform";
  }
  return "linear";
}

std::string_view to_string(env::ServiceRateMode mode) {
  return mode == env::ServiceRateMode::kPerSlot ? "per_slot" : "per_run";
}

harness::ScenarioConfig scenario_from_json(const json& doc) {
  harness::ScenarioConfig c;
  Reader r(doc, "");
  if (const json* v = r.string("name")) c.name = v->get<std::string>();
  r.choice("mode", [&](const std::string& s) { c.mode = harness::parse_scenario_mode(s); });
  r.integer("K", c.arms, 1);
  r.integer("V", c.agents, 1);
  r.integer("T", c.horizon, 1);

  if (const json* v = r.find("arrivals")) {
    Reader a(*v, "arrivals");
    a.choice("rule", [&](const std::string& s) { c.arrivals.kind = parse_arrival_kind(s); });
    a.number("base", c.arrivals.base);
    a.number("step", c.arrivals.step);
    if (const json* rates = a.find("rates")) c.arrivals.rates = number_list(*rates, "arrivals.rates");
    a.number("best_rate", c.arrivals.best_rate);
    a.number("low", c.arrivals.low);
    a.number("high", c.arrivals.high);
    a.finish();
  }
  if (const json* v = r.find("switch")) {
    Reader s(*v, "switch");
    harness::ArrivalSwitch sw;
    s.integer("slot", sw.slot, 1);
    s.integer("arm", sw.arm, 0);
    s.number("rate", sw.rate);
    s.finish();
    c.arrival_switch = sw;
  }
  if (const json* v = r.find("service")) {
    Reader s(*v, "service");
    s.number("mean", c.service.mean);
    s.number("stddev", c.service.stddev);
    s.number("floor", c.service.floor);
    s.choice("mode", [&](const std::string& m) { c.service.mode = parse_service_mode(m); });
    s.finish();
  }
  if (const json* v = r.find("task")) {
    Reader t(*v, "task");
    t.number("size", c.task.size);
    t.number("compute_factor", c.task.compute_factor);
    t.finish();
  }
  r.number("t_max", c.t_max);
  if (const json* v = r.find("delay")) {
    Reader d(*v, "delay");
    d.integer("d_max", c.delay.d_max, 1);
    d.integer("retry_cap", c.delay.retry_cap, 0);
    d.boolean("force_min_delay", c.delay.force_min_delay);
    d.boolean("timeouts", c.delay.timeouts);
    d.finish();
  }
  if (const json* v = r.find("policy")) c.policy = read_policy(*v, "policy");
  if (const json* v = r.find("agent_policies")) {
    if (!v->is_array()) throw SchemaError("agent_policies", "expected an array");
    for (std::size_t i = 0; i < v->size(); ++i) {
      c.agent_policies.push_back(read_policy((*v)[i], "agent_policies[" + std::to_string(i) + "]"));
    }
  }
  r.choice("collision",
           [&](const std::string& s) { c.collision = game::parse_collision_model(s); });
  if (const json* v = r.find("channel")) {
    Reader ch(*v, "channel");
    auto& p = c.channel;
    ch.number("bandwidth_hz", p.bandwidth_hz);
    ch.number("tx_power_w", p.tx_power_w);
    ch.number("noise_psd_dbm_per_hz", p.noise_psd_dbm_per_hz);
    ch.number("fading_gain", p.fading_gain);
    ch.number("pathloss_ref_db", p.pathloss_ref_db);
    ch.number("pathloss_exponent", p.pathloss_exponent);
    ch.number("reference_distance_km", p.reference_distance_km);
    ch.number("min_distance_km", p.min_distance_km);
    ch.number("radius_km", p.radius_km);
    ch.number("slot_seconds", p.slot_seconds);
    ch.number("bits_per_task_unit", p.bits_per_task_unit);
    ch.finish();
  }
  if (const json* v = r.find("positions")) {
    if (!v->is_array()) throw SchemaError("positions", "expected an array of [x_km, y_km]");
    for (const auto& e : *v) {
      const auto xy = number_list(e, "positions");
      if (xy.size() != 2) throw SchemaError("positions", "expected an array of [x_km, y_km]");
      c.positions.push_back({xy[0], xy[1]});
    }
  }
  r.integer("runs", c.runs, 1);
  r.integer("seed", c.seed, 0);
  r.integer("window", c.window, 1);
  r.boolean("store_counterfactuals", c.store_counterfactuals);
  if (const json* v = r.find("matrix")) {
    if (!v->is_array()) throw SchemaError("matrix", "expected an array of rows");
    for (const auto& row : *v) c.matrix.push_back(number_list(row, "matrix"));
  }
  r.number("ne_epsilon", c.ne_epsilon);
  r.finish();

  c.validate();
  return c;
}

json policy_to_json(const policies::PolicySpec& p) {
  json j;
  j["kind"] = std::string(policies::to_string(p.kind));
  j["delta"] = p.delta;
  if (p.delay_budget) j["delay_budget"] = *p.delay_budget;
  if (p.eta) j["eta"] = *p.eta;
  if (p.beta) j["beta"] = *p.beta;
  j["snapshot"] = std::string(policies::to_string(p.snapshot));
  if (p.exp3_gamma) j["exp3_gamma"] = *p.exp3_gamma;
  j["ducb_discount"] = p.ducb_discount;
  j["ducb_exploration"] = p.ducb_exploration;
  j["blot_window"] = p.blot_window;
  j["blot_exploration"] = p.blot_exploration;
  j["sdb_heuristic_weight"] = p.sdb_heuristic_weight;
  return j;
}

json scenario_to_json(const harness::ScenarioConfig& c) {
  json j;
  j["name"] = c.name;
  j["mode"] = std::string(harness::to_string(c.mode));
  j["K"] = c.arms;
  j["V"] = c.agents;
  j["T"] = c.horizon;
  j["arrivals"] = {{"rule", std::string(to_string(c.arrivals.kind))},
                   {"base", c.arrivals.base},
                   {"step", c.arrivals.step},
                   {"rates", c.arrivals.rates},
                   {"best_rate", c.arrivals.best_rate},
                   {"low", c.arrivals.low},
                   {"high", c.arrivals.high}};
  if (c.arrival_switch) {
    j["switch"] = {{"slot", c.arrival_switch->slot},
                   {"arm", c.arrival_switch->arm},
                   {"rate", c.arrival_switch->rate}};
  }
  j["service"] = {{"mean", c.service.mean},
                  {"stddev", c.service.stddev},
                  {"floor", c.service.floor},
                  {"mode", std::string(to_string(c.service.mode))}};
  j["task"] = {{"size", c.task.size}, {"compute_factor", c.task.compute_factor}};
  j["t_max"] = c.t_max;
  j["delay"] = {{"d_max", c.delay.d_max},
                {"retry_cap", c.delay.retry_cap},
                {"force_min_delay", c.delay.force_min_delay},
                {"timeouts", c.delay.timeouts}};
  j["policy"] = policy_to_json(c.policy);
  if (!c.agent_policies.empty()) {
    j["agent_policies"] = json::array();
    for (const auto& p : c.agent_policies) j["agent_policies"].push_back(policy_to_json(p));
  }
  j["collision"] = std::string(game::to_string(c.collision));
  const auto& p = c.channel;
  j["channel"] = {{"bandwidth_hz", p.bandwidth_hz},
                  {"tx_power_w", p.tx_power_w},
                  {"noise_psd_dbm_per_hz", p.noise_psd_dbm_per_hz},
                  {"fading_gain", p.fading_gain},
                  {"pathloss_ref_db", p.pathloss_ref_db},
                  {"pathloss_exponent", p.pathloss_exponent},
                  {"reference_distance_km", p.reference_distance_km},
                  {"min_distance_km", p.min_distance_km},
                  {"radius_km", p.radius_km},
                  {"slot_seconds", p.slot_seconds},
                  {"bits_per_task_unit", p.bits_per_task_unit}};
  if (!c.positions.empty()) {
    j["positions"] = json::array();
    for (const auto& pos : c.positions) j["positions"].push_back({pos.x_km, pos.y_km});
  }
  j["runs"] = c.runs;
  j["seed"] = c.seed;
  j["window"] = c.window;
  j["store_counterfactuals"] = c.store_counterfactuals;
  if (!c.matrix.empty()) j["matrix"] = c.matrix;
  j["ne_epsilon"] = c.ne_epsilon;
  return j;
}

harness::ScenarioConfig parse_scenario_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ScenarioFileError(std::string("scenario is not valid JSON: ") + e.what());
  }
  return scenario_from_json(doc);
}

harness::ScenarioConfig parse_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioFileError("cannot open scenario file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_scenario_text(buf.str());
  } catch (const ScenarioFileError& e) {
    throw ScenarioFileError(path.string() + ": " + e.what());
  }
}

harness::ScenarioConfig load_scenario(const std::string& name_or_path) {
  if (auto preset = find_preset(name_or_path)) return *preset;
  if (!std::filesystem::exists(name_or_path)) {
    std::string names;
    for (const auto& n : preset_names()) names += (names.empty() ? "" : ", ") + n;
    throw ScenarioFileError("'" + name_or_path + "' is neither a preset (" + names +
                            ") nor an existing file");
  }
  return parse_scenario(name_or_path);
}

std::string serialize_scenario(const harness::ScenarioConfig& config) {
  return scenario_to_json(config).dump(2) + "\n";
}

}  // namespace fog::cli
