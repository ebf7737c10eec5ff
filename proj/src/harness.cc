/*
Copyright 2026 The DMS Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    https://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#include "dms/harness.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "dms/errors.h"
#include "dms/metrics.h"
#include "dms/random.h"

namespace dms {
namespace {

using nlohmann::json;

const std::set<std::string> kKeys = {
    "n_bs",          "users_per_bs",    "isd_m",          "area_m",
    "W",             "T_slot_ms",       "gbr_rate_mbps",  "be_users_per_bs",
    "alpha",         "penalty_mode",    "mcs_table",      "pathloss",
    "B_bits",        "seeds",           "epochs",         "demand_schedule",
    "deadline_policy", "baseline",      "tx_power_dbm",   "noise_w",
    "fading",        "min_distance_m"};

template <typename T>
T field(const json& j, const std::string& key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError("field '" + key + "': " + e.what());
  }
}

std::vector<McsEntry> parse_mcs(const json& j, const std::string& where) {
  if (!j.is_array()) {
    throw ConfigError("field '" + where + "': expected an array of entries");
  }
  std::vector<McsEntry> out;
  for (const auto& e : j) {
    try {
      out.push_back({db_to_linear(e.at("sinr_db").get<double>()),
                     e.at("rate_bits").get<double>()});
    } catch (const json::exception& ex) {
      throw ConfigError("field '" + where +
                        "': entries need sinr_db and rate_bits (" + ex.what() +
                        ")");
    }
  }
  McsTable check(out);  // validates ordering
  return out;
}

std::string csv_join(const std::vector<std::string>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ';';
    s += v[i];
  }
  return s;
}

template <typename T>
std::string csv_join_num(const std::vector<T>& v) {
  std::ostringstream os;
  os << std::setprecision(10);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ';';
    os << v[i];
  }
  return os.str();
}

std::string all_on_hex(int horizon, const std::vector<bool>& allowed) {
  AbsfPattern p(0, horizon);
  for (int t = 0; t < horizon; ++t) p.set(t, allowed[t]);
  return p.to_hex();
}

// Station `bs` against stations that transmit in all their allowed TTIs.
std::vector<BsSet> always_on_masks(const std::vector<std::vector<bool>>& allowed,
                                   int bs, int horizon) {
  std::vector<BsSet> masks(horizon);
  for (int k = 0; k < static_cast<int>(allowed.size()); ++k) {
    if (k == bs) continue;
    for (int t = 0; t < horizon; ++t) {
      if (allowed[k][t]) masks[t].insert(k);
    }
  }
  return masks;
}

void zero_outside(RateMatrix& r, const std::vector<bool>& allowed) {
  for (int i = 0; i < r.num_users(); ++i) {
    for (int t = 0; t < r.num_ttis(); ++t) {
      if (!allowed[t]) r(i, t) = 0.0;
    }
  }
}

struct StaticGbr {
  bool feasible = true;
  double total_penalty = 0.0;
  int unserved = 0;
  double served_bits = 0.0;
};

StaticGbr static_gbr(const GbrScenario& s, int horizon,
                     const std::vector<std::vector<bool>>& allowed) {
  StaticGbr out;
  for (int bs = 0; bs < s.num_bs(); ++bs) {
    GbrLocalInput in;
    in.owner = bs;
    in.users = s.users[bs];
    for (int u : in.users) in.demands.push_back(s.demand[u]);
    in.interferers = always_on_masks(allowed, bs, horizon);
    in.rates = local_rates(*s.model, bs, in.users, in.interferers);
    zero_outside(in.rates, allowed[bs]);
    in.alpha = s.alpha;
    in.penalty = s.penalty;
    const GbrLocalSolution sol = best_response(in, s.br);
    for (int i = 0; i < in.num_users(); ++i) {
      out.total_penalty += sol.penalties[i];
      if (sol.served[i] < in.demands[i]) {
        ++out.unserved;
        out.feasible = false;
      }
      out.served_bits += std::min(sol.served[i], in.demands[i]);
    }
  }
  return out;
}

using AllowedFn = std::function<std::vector<std::vector<bool>>(int horizon)>;

// Smallest T in [1, W] at which the static rule serves every demand.
std::pair<int, StaticGbr> static_squeeze(const GbrScenario& s, int W,
                                         const AllowedFn& allowed) {
  StaticGbr at_w = static_gbr(s, W, allowed(W));
  if (!at_w.feasible) return {W, at_w};
  int lo = 1;
  int hi = W;
  StaticGbr best = at_w;
  while (lo < hi) {
    const int mid = (lo + hi) / 2;
    StaticGbr g = static_gbr(s, mid, allowed(mid));
    if (g.feasible) {
      hi = mid;
      best = g;
    } else {
      lo = mid + 1;
    }
  }
  return {hi, best};
}

RunRecord static_record(const ScenarioConfig& config, const Instance& instance,
                        int epoch, const AllowedFn& allowed) {
  const auto model = epoch_model(instance, epoch);
  const int W = config.W;
  GbrScenario gs;
  gs.model = model;
  gs.users = instance.gbr_users;
  gs.demand = epoch_demand(config, instance, epoch);
  gs.alpha = config.alpha;
  gs.penalty = config.penalty_mode;
  auto [T, gbr] = static_squeeze(gs, W, allowed);

  RunRecord rec;
  rec.epoch = epoch;
  rec.T = T;
  rec.gbr_feasible = gbr.feasible;
  rec.total_penalty = gbr.total_penalty;
  rec.unserved_users = gbr.unserved;
  rec.gbr_throughput_mbps = gbr.served_bits / (W * config.slot_s()) / 1e6;
  rec.gamma_converged = true;
  rec.omega_converged = true;
  const auto gbr_allowed = allowed(T);
  std::vector<int> usage;
  for (const auto& a : gbr_allowed) {
    usage.push_back(static_cast<int>(std::count(a.begin(), a.end(), true)));
    rec.gbr_patterns.push_back(all_on_hex(T, a));
  }
  rec.utilization_index = time_utilization_index(usage, T);

  const int Z = gbr.feasible ? W - T : 0;
  rec.Z = Z;
  rec.per_bs_eta.assign(config.n_bs, 0.0);
  rec.be_user_volume.assign(instance.topology.num_users(), 0.0);
  if (Z > 0) {
    BeScenario bs;
    bs.model = model;
    bs.users = instance.be_users;
    bs.tti_offset = T;
    const auto be_allowed = allowed(Z);
    const OmegaResult om = static_be_schedule(bs, Z, be_allowed);
    rec.per_bs_eta = om.per_bs_eta;
    rec.be_user_volume = om.user_volume;
    for (double v : om.per_bs_eta) rec.eta += v;
    rec.utility = om.utility();
    double bits = 0.0;
    for (double v : om.user_volume) bits += v;
    rec.be_throughput_mbps = bits / (W * config.slot_s()) / 1e6;
    for (const auto& a : be_allowed) rec.be_patterns.push_back(all_on_hex(Z, a));
  }
  return rec;
}

}  // namespace

void ScenarioConfig::validate() const {
  auto fail = [](const std::string& f, const std::string& why) {
    throw ConfigError("field '" + f + "': " + why);
  };
  if (n_bs < 1 || n_bs > kMaxBaseStations) {
    fail("n_bs", "must be in [1, " + std::to_string(kMaxBaseStations) + "]");
  }
  if (users_per_bs < 0) fail("users_per_bs", "must be non-negative");
  if (be_users_per_bs < 0) fail("be_users_per_bs", "must be non-negative");
  if (!(isd_m > 0.0)) fail("isd_m", "must be positive");
  if (!(area_m.width > 0.0) || !(area_m.height > 0.0)) {
    fail("area_m", "dimensions must be positive");
  }
  if (W < 1) fail("W", "must be at least 1");
  if (!(T_slot_ms > 0.0)) fail("T_slot_ms", "must be positive");
  if (!(gbr_rate_mbps >= 0.0)) fail("gbr_rate_mbps", "must be non-negative");
  if (!(alpha > 0.0)) fail("alpha", "must be positive");
  if (penalty_mode.kind == PenaltyMode::Kind::kFixed &&
      !(penalty_mode.fixed_value > 0.0)) {
    fail("penalty_mode", "fixed penalty must be positive");
  }
  if (B_bits < 1) fail("B_bits", "must be positive");
  if (seeds.empty()) fail("seeds", "must list at least one seed");
  if (epochs < 1) fail("epochs", "must be at least 1");
  for (std::size_t i = 0; i < demand_schedule.size(); ++i) {
    if (demand_schedule[i].epoch < 0) fail("demand_schedule", "negative epoch");
    if (i > 0 && demand_schedule[i].epoch <= demand_schedule[i - 1].epoch) {
      fail("demand_schedule", "epochs must be strictly increasing");
    }
    if (!(demand_schedule[i].gbr_rate_mbps >= 0.0)) {
      fail("demand_schedule", "rates must be non-negative");
    }
  }
  if (deadline_policy == DeadlinePolicy::kExplicit && deadline_rounds < 1) {
    fail("deadline_policy", "explicit deadline must be at least 1 round");
  }
  if (!std::isfinite(pathloss_intercept_db) ||
      !std::isfinite(pathloss_slope_db_per_decade)) {
    fail("pathloss", "coefficients must be finite");
  }
  if (!std::isfinite(tx_power_dbm)) fail("tx_power_dbm", "must be finite");
  if (!(noise_w > 0.0) || !std::isfinite(noise_w)) {
    fail("noise_w", "must be positive");
  }
  if (!(min_distance_m > 0.0)) fail("min_distance_m", "must be positive");
  if (!mcs_table.empty()) McsTable check(mcs_table);
}

double ScenarioConfig::gbr_rate_at(int epoch) const {
  double rate = gbr_rate_mbps;
  for (const auto& s : demand_schedule) {
    if (s.epoch <= epoch) rate = s.gbr_rate_mbps;
  }
  return rate;
}

int ScenarioConfig::omega_deadline() const {
  switch (deadline_policy) {
    case DeadlinePolicy::kN:
      return n_bs;
    case DeadlinePolicy::kNSquared:
      return n_bs * n_bs;
    case DeadlinePolicy::kExplicit:
      return deadline_rounds;
  }
  return n_bs * n_bs;
}

ScenarioConfig parse_config(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!kKeys.contains(key)) throw ConfigError("unknown field '" + key + "'");
  }
  ScenarioConfig c;
  auto opt = [&](const char* key, auto& out) {
    if (j.contains(key)) out = field<std::decay_t<decltype(out)>>(j, key);
  };
  opt("n_bs", c.n_bs);
  opt("users_per_bs", c.users_per_bs);
  opt("isd_m", c.isd_m);
  if (j.contains("area_m")) {
    const auto a = field<std::vector<double>>(j, "area_m");
    if (a.size() != 2) throw ConfigError("field 'area_m': expected [width, height]");
    c.area_m = {a[0], a[1]};
  }
  opt("W", c.W);
  opt("T_slot_ms", c.T_slot_ms);
  opt("gbr_rate_mbps", c.gbr_rate_mbps);
  opt("be_users_per_bs", c.be_users_per_bs);
  opt("alpha", c.alpha);
  if (j.contains("penalty_mode")) {
    const auto& p = j.at("penalty_mode");
    if (p.is_string() && p.get<std::string>() == "residual") {
      c.penalty_mode = PenaltyMode::residual();
    } else if (p.is_object() && p.size() == 1 && p.contains("fixed") &&
               p.at("fixed").is_number()) {
      c.penalty_mode = PenaltyMode::fixed(p.at("fixed").get<double>());
    } else {
      throw ConfigError(
          "field 'penalty_mode': expected \"residual\" or {\"fixed\": v}");
    }
  }
  if (j.contains("mcs_table")) {
    const auto& m = j.at("mcs_table");
    if (m.is_string()) {
      std::ifstream in(m.get<std::string>());
      if (!in) {
        throw ConfigError("field 'mcs_table': cannot open " +
                          m.get<std::string>());
      }
      json table;
      try {
        in >> table;
      } catch (const json::exception& e) {
        throw ConfigError(std::string("field 'mcs_table': ") + e.what());
      }
      c.mcs_table = parse_mcs(table, "mcs_table");
    } else {
      c.mcs_table = parse_mcs(m, "mcs_table");
    }
  }
  if (j.contains("pathloss")) {
    const auto& p = j.at("pathloss");
    if (!p.is_object()) throw ConfigError("field 'pathloss': expected an object");
    for (const auto& [key, value] : p.items()) {
      if (key != "intercept_db" && key != "slope_db_per_decade") {
        throw ConfigError("unknown field 'pathloss." + key + "'");
      }
    }
    if (p.contains("intercept_db")) {
      c.pathloss_intercept_db = field<double>(p, "intercept_db");
    }
    if (p.contains("slope_db_per_decade")) {
      c.pathloss_slope_db_per_decade = field<double>(p, "slope_db_per_decade");
    }
  }
  opt("B_bits", c.B_bits);
  opt("seeds", c.seeds);
  opt("epochs", c.epochs);
  if (j.contains("demand_schedule")) {
    const auto& s = j.at("demand_schedule");
    if (!s.is_array()) {
      throw ConfigError("field 'demand_schedule': expected an array");
    }
    for (const auto& step : s) {
      if (!step.is_object() || step.size() != 2) {
        throw ConfigError(
            "field 'demand_schedule': entries are {epoch, gbr_rate_mbps}");
      }
      c.demand_schedule.push_back({field<int>(step, "epoch"),
                                   field<double>(step, "gbr_rate_mbps")});
    }
  }
  if (j.contains("deadline_policy")) {
    const auto& d = j.at("deadline_policy");
    if (d.is_string() && d.get<std::string>() == "n") {
      c.deadline_policy = DeadlinePolicy::kN;
    } else if (d.is_string() && d.get<std::string>() == "n_squared") {
      c.deadline_policy = DeadlinePolicy::kNSquared;
    } else if (d.is_object() && d.size() == 1 && d.contains("explicit") &&
               d.at("explicit").is_number_integer()) {
      c.deadline_policy = DeadlinePolicy::kExplicit;
      c.deadline_rounds = d.at("explicit").get<int>();
    } else {
      throw ConfigError(
          "field 'deadline_policy': expected \"n\", \"n_squared\" or "
          "{\"explicit\": rounds}");
    }
  }
  if (j.contains("baseline")) {
    const auto b = field<std::string>(j, "baseline");
    if (b == "none") {
      c.baseline = Baseline::kNone;
    } else if (b == "legacy") {
      c.baseline = Baseline::kLegacy;
    } else if (b == "reuse3") {
      c.baseline = Baseline::kReuse3;
    } else {
      throw ConfigError(
          "field 'baseline': expected \"none\", \"legacy\" or \"reuse3\"");
    }
  }
  opt("tx_power_dbm", c.tx_power_dbm);
  opt("noise_w", c.noise_w);
  if (j.contains("fading")) {
    const auto f = field<std::string>(j, "fading");
    if (f == "none") {
      c.fading = Fading::kNone;
    } else if (f == "rayleigh") {
      c.fading = Fading::kRayleigh;
    } else {
      throw ConfigError("field 'fading': expected \"none\" or \"rayleigh\"");
    }
  }
  opt("min_distance_m", c.min_distance_m);
  c.validate();
  return c;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config " + path.string() + ": " + e.what());
  }
  return parse_config(j);
}

json config_to_json(const ScenarioConfig& c) {
  json j;
  j["n_bs"] = c.n_bs;
  j["users_per_bs"] = c.users_per_bs;
  j["isd_m"] = c.isd_m;
  j["area_m"] = {c.area_m.width, c.area_m.height};
  j["W"] = c.W;
  j["T_slot_ms"] = c.T_slot_ms;
  j["gbr_rate_mbps"] = c.gbr_rate_mbps;
  j["be_users_per_bs"] = c.be_users_per_bs;
  j["alpha"] = c.alpha;
  if (c.penalty_mode.kind == PenaltyMode::Kind::kFixed) {
    j["penalty_mode"] = {{"fixed", c.penalty_mode.fixed_value}};
  } else {
    j["penalty_mode"] = "residual";
  }
  if (!c.mcs_table.empty()) {
    json t = json::array();
    for (const auto& e : c.mcs_table) {
      t.push_back({{"sinr_db", 10.0 * std::log10(e.sinr_threshold)},
                   {"rate_bits", e.rate_bits}});
    }
    j["mcs_table"] = t;
  }
  j["pathloss"] = {{"intercept_db", c.pathloss_intercept_db},
                   {"slope_db_per_decade", c.pathloss_slope_db_per_decade}};
  j["B_bits"] = c.B_bits;
  j["seeds"] = c.seeds;
  j["epochs"] = c.epochs;
  json sched = json::array();
  for (const auto& s : c.demand_schedule) {
    sched.push_back({{"epoch", s.epoch}, {"gbr_rate_mbps", s.gbr_rate_mbps}});
  }
  j["demand_schedule"] = sched;
  switch (c.deadline_policy) {
    case DeadlinePolicy::kN:
      j["deadline_policy"] = "n";
      break;
    case DeadlinePolicy::kNSquared:
      j["deadline_policy"] = "n_squared";
      break;
    case DeadlinePolicy::kExplicit:
      j["deadline_policy"] = {{"explicit", c.deadline_rounds}};
      break;
  }
  j["baseline"] = c.baseline == Baseline::kLegacy   ? "legacy"
                  : c.baseline == Baseline::kReuse3 ? "reuse3"
                                                    : "none";
  j["tx_power_dbm"] = c.tx_power_dbm;
  j["noise_w"] = c.noise_w;
  j["fading"] = c.fading == Fading::kNone ? "none" : "rayleigh";
  j["min_distance_m"] = c.min_distance_m;
  return j;
}

Instance build_instance(const ScenarioConfig& config, std::uint64_t seed) {
  config.validate();
  Instance inst;
  inst.seed = seed;
  HexTopologyConfig h;
  h.n_bs = config.n_bs;
  h.isd_m = config.isd_m;
  h.area = config.area_m;
  h.users_per_bs = config.users_per_bs + config.be_users_per_bs;
  h.seed = seed;
  inst.topology = generate_hex_topology(h);
  inst.channel.pathloss_intercept_db = config.pathloss_intercept_db;
  inst.channel.pathloss_slope_db_per_decade =
      config.pathloss_slope_db_per_decade;
  inst.channel.fading = config.fading;
  inst.channel.noise_power_w = config.noise_w;
  inst.channel.tx_power_w = std::pow(10.0, (config.tx_power_dbm - 30.0) / 10.0);
  inst.channel.min_distance_m = config.min_distance_m;
  inst.channel.validate();
  inst.mcs = config.mcs_table.empty()
                 ? default_mcs_table(20e6, config.slot_s())
                 : McsTable(config.mcs_table);
  for (int b = 0; b < config.n_bs; ++b) {
    const auto users = inst.topology.users_of(b);
    inst.gbr_users.emplace_back(users.begin(),
                                users.begin() + config.users_per_bs);
    inst.be_users.emplace_back(users.begin() + config.users_per_bs,
                               users.end());
  }
  return inst;
}

std::shared_ptr<const RateModel> epoch_model(const Instance& instance,
                                             int epoch) {
  return std::make_shared<PhysicalRateModel>(
      compute_gains(instance.topology, instance.channel,
                    mix_seed(instance.seed, 1000 + epoch)),
      instance.channel.tx_power_w, instance.channel.noise_power_w,
      instance.mcs);
}

DemandSet epoch_demand(const ScenarioConfig& config, const Instance& instance,
                       int epoch) {
  std::vector<double> d(instance.topology.num_users(), 0.0);
  const double bits =
      std::round(config.gbr_rate_at(epoch) * 1e6 * config.W * config.slot_s());
  for (const auto& users : instance.gbr_users) {
    for (int u : users) d[u] = bits;
  }
  return DemandSet(std::move(d));
}

DmsSetup make_dms_setup(const ScenarioConfig& config,
                        const Instance& instance) {
  DmsSetup s;
  s.n_bs = config.n_bs;
  s.n_users = instance.topology.num_users();
  s.gbr_users = instance.gbr_users;
  s.be_users = instance.be_users;
  s.alpha = config.alpha;
  s.penalty = config.penalty_mode;
  s.slot_s = config.slot_s();
  s.bits_per_scalar = config.B_bits;
  s.omega_deadline = config.omega_deadline();
  s.model = [&instance](int epoch) { return epoch_model(instance, epoch); };
  s.demand = [&config, &instance](int epoch) {
    return epoch_demand(config, instance, epoch);
  };
  return s;
}

std::vector<int> reuse3_colors(const Topology& topology) {
  const int n = topology.num_bs();
  std::vector<std::vector<int>> adj(n);
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (distance(topology.bs_positions[a], topology.bs_positions[b]) <=
          1.01 * topology.isd) {
        adj[a].push_back(b);
        adj[b].push_back(a);
      }
    }
  }
  std::vector<int> color(n, -1);
  std::function<bool(int)> paint = [&](int v) {
    if (v == n) return true;
    for (int c = 0; c < 3; ++c) {
      bool ok = true;
      for (int w : adj[v]) ok = ok && color[w] != c;
      if (!ok) continue;
      color[v] = c;
      if (paint(v + 1)) return true;
    }
    color[v] = -1;
    return false;
  };
  if (!paint(0)) throw ConfigError("site graph is not 3-colourable");
  return color;
}

OmegaResult static_be_schedule(const BeScenario& scenario, int horizon,
                               const std::vector<std::vector<bool>>& allowed) {
  const int n = scenario.num_bs();
  OmegaResult r;
  r.profile = ActionProfile(n, horizon);
  r.user_volume.assign(scenario.model->num_users(), 0.0);
  r.converged = true;
  r.rounds = 1;
  for (int bs = 0; bs < n; ++bs) {
    const int slots =
        static_cast<int>(std::count(allowed[bs].begin(), allowed[bs].end(), true));
    if (scenario.users[bs].empty() || slots == 0) {
      r.per_bs_eta.push_back(0.0);
      r.per_bs_min.push_back(0.0);
      continue;
    }
    BeLocalInput in;
    in.owner = bs;
    in.users = scenario.users[bs];
    in.interferers = always_on_masks(allowed, bs, horizon);
    in.rates = local_rates(*scenario.model, bs, in.users, in.interferers,
                           scenario.tti_offset);
    zero_outside(in.rates, allowed[bs]);
    in.tti_bound = slots;
    const BeLocalSolution s = be_maxmin(in, scenario.options);
    r.profile.set(bs, s.action);
    r.per_bs_eta.push_back(s.eta);
    r.per_bs_min.push_back(s.min_volume);
    for (int i = 0; i < in.num_users(); ++i) {
      r.user_volume[in.users[i]] = s.per_user_volume[i];
    }
  }
  r.patterns = r.profile.patterns();
  return r;
}

RunRecord baseline_legacy(const ScenarioConfig& config,
                          const Instance& instance, int epoch) {
  const int n = config.n_bs;
  return static_record(config, instance, epoch, [n](int horizon) {
    return std::vector<std::vector<bool>>(n, std::vector<bool>(horizon, true));
  });
}

RunRecord baseline_reuse3(const ScenarioConfig& config,
                          const Instance& instance, int epoch) {
  const auto colors = reuse3_colors(instance.topology);
  return static_record(config, instance, epoch, [colors](int horizon) {
    std::vector<std::vector<bool>> allowed;
    for (int c : colors) {
      std::vector<bool> a(horizon, false);
      const int lo = c * horizon / 3;
      const int hi = (c + 1) * horizon / 3;
      for (int t = lo; t < hi; ++t) a[t] = true;
      allowed.push_back(std::move(a));
    }
    return allowed;
  });
}

SeedRun run_seed(const ScenarioConfig& config, std::uint64_t seed) {
  SeedRun out;
  out.seed = seed;
  const Instance inst = build_instance(config, seed);
  out.dms = run_dms(make_dms_setup(config, inst), config.W, config.epochs);
  for (int e = 0; e < config.epochs; ++e) {
    if (config.baseline == Baseline::kLegacy) {
      out.baseline.push_back(baseline_legacy(config, inst, e));
    } else if (config.baseline == Baseline::kReuse3) {
      out.baseline.push_back(baseline_reuse3(config, inst, e));
    }
  }
  return out;
}

std::string run_csv_header() {
  return "seed,scheme,epoch,T,Z,gbr_feasible,squeezed,squeeze_probes,"
         "total_penalty,unserved_users,gbr_throughput_mbps,be_throughput_mbps,"
         "eta,utility,utilization_index,gamma_rounds,omega_rounds,"
         "gamma_converged,omega_converged,overhead_ic_bits,overhead_ib_bits,"
         "M,per_bs_eta,gbr_patterns,be_patterns";
}

void write_run_rows(std::ostream& out, std::uint64_t seed,
                    const std::string& scheme,
                    const std::vector<RunRecord>& records) {
  out << std::setprecision(10);
  for (const auto& r : records) {
    out << seed << ',' << scheme << ',' << r.epoch << ',' << r.T << ',' << r.Z
        << ',' << r.gbr_feasible << ',' << r.squeezed << ','
        << r.squeeze_probes << ',' << r.total_penalty << ','
        << r.unserved_users << ',' << r.gbr_throughput_mbps << ','
        << r.be_throughput_mbps << ',' << r.eta << ',' << r.utility << ','
        << r.utilization_index << ',' << r.gamma_rounds << ','
        << r.omega_rounds << ',' << r.gamma_converged << ','
        << r.omega_converged << ',' << r.overhead_ic << ',' << r.overhead_ib
        << ',' << csv_join_num(r.M) << ',' << csv_join_num(r.per_bs_eta) << ','
        << csv_join(r.gbr_patterns) << ',' << csv_join(r.be_patterns) << '\n';
  }
}

json run_record_to_json(const RunRecord& r) {
  return {{"epoch", r.epoch},
          {"T", r.T},
          {"Z", r.Z},
          {"gbr_feasible", r.gbr_feasible},
          {"squeezed", r.squeezed},
          {"squeeze_probes", r.squeeze_probes},
          {"total_penalty", r.total_penalty},
          {"unserved_users", r.unserved_users},
          {"gbr_throughput_mbps", r.gbr_throughput_mbps},
          {"be_throughput_mbps", r.be_throughput_mbps},
          {"eta", r.eta},
          {"utility", r.utility},
          {"per_bs_eta", r.per_bs_eta},
          {"M", r.M},
          {"gamma_rounds", r.gamma_rounds},
          {"omega_rounds", r.omega_rounds},
          {"gamma_converged", r.gamma_converged},
          {"omega_converged", r.omega_converged},
          {"utilization_index", r.utilization_index},
          {"overhead_ic_bits", r.overhead_ic},
          {"overhead_ib_bits", r.overhead_ib},
          {"gbr_patterns", r.gbr_patterns},
          {"be_patterns", r.be_patterns},
          {"be_user_volume", r.be_user_volume}};
}

}  // namespace dms
