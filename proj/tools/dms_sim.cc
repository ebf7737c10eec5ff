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

// dms_sim: experiment driver.
//
//   dms_sim <subcommand> --config scenario.json --out dir [--seeds 1,2]
//           [--epochs n] [--trace]
//
// Exit status: 0 on success (including infeasible guaranteed load), 2 on a
// configuration error, 3 when the oracle is asked for an instance above its
// capacity, 1 on anything else.

#include <algorithm>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dms/errors.h"
#include "dms/harness.h"
#include "dms/metrics.h"
#include "dms/oracle.h"
#include "dms/serialization.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Args {
  std::string config;
  std::string out = ".";
  std::vector<std::uint64_t> seeds;
  int epochs = 0;
  bool trace = false;
};

std::ofstream open_out(const fs::path& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  return f;
}

void write_json(const fs::path& path, const json& j) {
  auto f = open_out(path);
  f << j.dump(2) << '\n';
}

std::string csv_version_line() {
  return std::string("# dms-sim ") + dms::kVersion;
}

dms::GbrScenario gbr_scenario(const dms::ScenarioConfig& c,
                              const dms::Instance& inst, int epoch) {
  dms::GbrScenario s;
  s.model = dms::epoch_model(inst, epoch);
  s.users = inst.gbr_users;
  s.demand = dms::epoch_demand(c, inst, epoch);
  s.alpha = c.alpha;
  s.penalty = c.penalty_mode;
  return s;
}

std::string hex_list(const std::vector<dms::AbsfPattern>& ps) {
  std::string out;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (i) out += ';';
    out += ps[i].to_hex();
  }
  return out;
}

int gen_topology(const dms::ScenarioConfig& c, const Args& a) {
  for (auto seed : c.seeds) {
    const dms::Instance inst = dms::build_instance(c, seed);
    json j;
    j["seed"] = seed;
    j["topology"] = dms::topology_to_json(inst.topology);
    const auto model = std::static_pointer_cast<const dms::PhysicalRateModel>(
        dms::epoch_model(inst, 0));
    j["gains"] = dms::gains_to_json(model->gains());
    j["gbr_users"] = inst.gbr_users;
    j["be_users"] = inst.be_users;
    write_json(fs::path(a.out) / ("topology_" + std::to_string(seed) + ".json"),
               j);
  }
  return 0;
}

int run_gbr(const dms::ScenarioConfig& c, const Args& a) {
  struct Row {
    std::uint64_t seed;
    bool feasible = false;
    dms::SqueezeResult sq;
  };
  auto rows = dms::for_each_seed<Row>(c.seeds, [&](std::uint64_t seed) {
    Row r{seed};
    const dms::Instance inst = dms::build_instance(c, seed);
    dms::GammaOptions g;
    g.trace = a.trace;
    try {
      r.sq = dms::time_squeeze(gbr_scenario(c, inst, 0), c.W, g);
      r.feasible = true;
    } catch (const dms::InfeasibleError&) {
      r.sq.T = c.W;
    }
    return r;
  });
  auto f = open_out(fs::path(a.out) / "gbr.csv");
  f << csv_version_line() << '\n';
  f << "seed,T,gbr_feasible,squeeze_probes,total_penalty,unserved_users,"
       "utilization_index,gamma_rounds,gbr_patterns\n";
  json summary = json::array();
  json trace = json::array();
  for (const auto& r : rows) {
    std::vector<int> usage;
    for (const auto& p : r.sq.gamma.patterns) usage.push_back(p.popcount());
    const double index =
        r.feasible ? dms::time_utilization_index(usage, r.sq.T) : 0.0;
    f << std::setprecision(10) << r.seed << ',' << r.sq.T << ',' << r.feasible
      << ',' << r.sq.probes.size() << ',' << r.sq.gamma.total_penalty << ','
      << r.sq.gamma.unserved_users << ',' << index << ','
      << r.sq.gamma_rounds << ',' << hex_list(r.sq.gamma.patterns) << '\n';
    summary.push_back({{"seed", r.seed},
                       {"T", r.sq.T},
                       {"gbr_feasible", r.feasible},
                       {"utilization_index", index},
                       {"squeeze_probes", r.sq.probes.size()}});
    if (a.trace) {
      json moves = json::array();
      for (const auto& m : r.sq.gamma.trace) {
        moves.push_back({{"round", m.round},
                         {"bs", m.bs},
                         {"changed", m.changed},
                         {"costs", m.costs},
                         {"action", dms::action_to_json(m.action)}});
      }
      trace.push_back({{"seed", r.seed}, {"moves", moves}});
    }
  }
  write_json(fs::path(a.out) / "summary.json", {{"runs", summary}});
  if (a.trace) write_json(fs::path(a.out) / "trace.json", trace);
  return 0;
}

int run_be(const dms::ScenarioConfig& c, const Args& a) {
  struct Row {
    std::uint64_t seed;
    std::vector<dms::OmegaResult> epochs;
    std::vector<std::vector<int>> M;
  };
  auto rows = dms::for_each_seed<Row>(c.seeds, [&](std::uint64_t seed) {
    Row r{seed};
    const dms::Instance inst = dms::build_instance(c, seed);
    dms::AimdState aimd = dms::aimd_init(c.n_bs, c.W);
    std::optional<dms::ActionProfile> prev;
    for (int e = 0; e < c.epochs; ++e) {
      dms::BeScenario s;
      s.model = dms::epoch_model(inst, e);
      s.users = inst.be_users;
      dms::OmegaOptions o;
      o.deadline = c.omega_deadline();
      o.initial = prev;
      o.trace = a.trace;
      r.M.push_back(aimd.M);
      r.epochs.push_back(dms::run_omega(s, c.W, aimd.M, o));
      prev = r.epochs.back().profile;
      aimd = dms::aimd_step(aimd, r.epochs.back().per_bs_eta);
    }
    return r;
  });
  auto f = open_out(fs::path(a.out) / "be.csv");
  f << csv_version_line() << '\n';
  f << "seed,epoch,Z,eta,utility,be_throughput_mbps,omega_rounds,"
       "omega_converged,M,per_bs_eta,be_patterns\n";
  json trace = json::array();
  for (const auto& r : rows) {
    for (std::size_t e = 0; e < r.epochs.size(); ++e) {
      const auto& om = r.epochs[e];
      double eta = 0.0;
      double bits = 0.0;
      for (double v : om.per_bs_eta) eta += v;
      for (double v : om.user_volume) bits += v;
      f << std::setprecision(10) << r.seed << ',' << e << ',' << c.W << ','
        << eta << ',' << om.utility() << ','
        << bits / (c.W * c.slot_s()) / 1e6 << ',' << om.rounds << ','
        << om.converged << ',';
      for (std::size_t i = 0; i < r.M[e].size(); ++i) {
        f << (i ? ";" : "") << r.M[e][i];
      }
      f << ',';
      for (std::size_t i = 0; i < om.per_bs_eta.size(); ++i) {
        f << (i ? ";" : "") << om.per_bs_eta[i];
      }
      f << ',' << hex_list(om.patterns) << '\n';
      if (a.trace) {
        json rounds = json::array();
        for (const auto& t : om.trace) {
          rounds.push_back({{"round", t.round},
                            {"changes", t.changes},
                            {"per_bs_eta", t.per_bs_eta},
                            {"profile", dms::profile_to_json(t.profile)}});
        }
        trace.push_back({{"seed", r.seed}, {"epoch", e}, {"rounds", rounds}});
      }
    }
  }
  if (a.trace) write_json(fs::path(a.out) / "trace.json", trace);
  return 0;
}

std::string scheme_name(dms::Baseline b) {
  return b == dms::Baseline::kLegacy ? "legacy" : "reuse3";
}

json aggregate(const std::vector<dms::RunRecord>& recs) {
  if (recs.empty()) return json::object();
  double T = 0, eta = 0, util = 0, gbr = 0, be = 0, idx = 0;
  int feasible = 0;
  for (const auto& r : recs) {
    T += r.T;
    eta += r.eta;
    util += r.utility;
    gbr += r.gbr_throughput_mbps;
    be += r.be_throughput_mbps;
    idx += r.utilization_index;
    feasible += r.gbr_feasible;
  }
  const double n = static_cast<double>(recs.size());
  return {{"records", recs.size()},
          {"mean_T", T / n},
          {"mean_eta", eta / n},
          {"mean_utility", util / n},
          {"mean_gbr_throughput_mbps", gbr / n},
          {"mean_be_throughput_mbps", be / n},
          {"mean_utilization_index", idx / n},
          {"gbr_feasible_share", feasible / n}};
}

std::vector<dms::SeedRun> run_all(const dms::ScenarioConfig& c) {
  return dms::for_each_seed<dms::SeedRun>(
      c.seeds, [&](std::uint64_t seed) { return dms::run_seed(c, seed); });
}

json summary_of(const dms::ScenarioConfig& c,
                const std::vector<dms::SeedRun>& runs) {
  std::vector<dms::RunRecord> d, b;
  for (const auto& r : runs) {
    d.insert(d.end(), r.dms.begin(), r.dms.end());
    b.insert(b.end(), r.baseline.begin(), r.baseline.end());
  }
  json j;
  j["version"] = dms::kVersion;
  j["config"] = dms::config_to_json(c);
  j["dms"] = aggregate(d);
  if (c.baseline != dms::Baseline::kNone) {
    j[scheme_name(c.baseline)] = aggregate(b);
  }
  return j;
}

int run_dms_cmd(const dms::ScenarioConfig& c, const Args& a) {
  const auto runs = run_all(c);
  auto f = open_out(fs::path(a.out) / "dms.csv");
  f << csv_version_line() << '\n' << dms::run_csv_header() << '\n';
  json trace = json::array();
  for (const auto& r : runs) {
    dms::write_run_rows(f, r.seed, "dms", r.dms);
    if (c.baseline != dms::Baseline::kNone) {
      dms::write_run_rows(f, r.seed, scheme_name(c.baseline), r.baseline);
    }
    if (a.trace) {
      json epochs = json::array();
      for (const auto& rec : r.dms) epochs.push_back(dms::run_record_to_json(rec));
      trace.push_back({{"seed", r.seed}, {"epochs", epochs}});
    }
  }
  write_json(fs::path(a.out) / "summary.json", summary_of(c, runs));
  if (a.trace) write_json(fs::path(a.out) / "trace.json", trace);
  return 0;
}

int run_oracle(const dms::ScenarioConfig& c, const Args& a) {
  auto f = open_out(fs::path(a.out) / "oracle.csv");
  f << csv_version_line() << '\n';
  f << "seed,L,objective,total_penalty,total_activity,per_bs_usage,Z,"
       "be_utility,dms_T,dms_utility\n";
  for (auto seed : c.seeds) {
    const dms::Instance inst = dms::build_instance(c, seed);
    const dms::GbrScenario g = gbr_scenario(c, inst, 0);
    const auto gbr = dms::solve_gbr_central(g, c.W);
    double pen = 0.0;
    for (double p : gbr.penalties) pen += p;
    const int Z = c.W - gbr.L;
    double be_utility = 0.0;
    if (Z > 0) {
      dms::BeScenario b;
      b.model = g.model;
      b.users = inst.be_users;
      b.tti_offset = gbr.L;
      be_utility = dms::solve_be_central(b, Z).utility;
    }
    dms::ScenarioConfig one = c;
    one.epochs = 1;
    const auto rec = dms::run_dms(dms::make_dms_setup(one, inst), c.W, 1);
    f << std::setprecision(10) << seed << ',' << gbr.L << ',' << gbr.objective
      << ',' << pen << ',' << gbr.total_activity << ',';
    for (std::size_t i = 0; i < gbr.per_bs_usage.size(); ++i) {
      f << (i ? ";" : "") << gbr.per_bs_usage[i];
    }
    f << ',' << Z << ',' << be_utility << ',' << rec[0].T << ','
      << rec[0].utility << '\n';
  }
  return 0;
}

int run_report(const dms::ScenarioConfig& c, const Args& a) {
  const auto runs = run_all(c);
  json j = summary_of(c, runs);

  std::vector<dms::RunRecord> d;
  for (const auto& r : runs) d.insert(d.end(), r.dms.begin(), r.dms.end());
  double rounds = 0.0;
  for (const auto& r : d) rounds += std::max(1, r.gamma_rounds + r.omega_rounds);
  dms::OverheadParams p;
  p.bits_per_scalar = c.B_bits;
  p.horizon = c.W;
  p.n_bs = c.n_bs;
  p.n_users = static_cast<std::int64_t>(c.n_bs) *
              (c.users_per_bs + c.be_users_per_bs);
  p.rounds = d.empty() ? 0 : std::llround(rounds / d.size());
  p.rounds = std::max<std::int64_t>(1, p.rounds);
  const auto central = dms::overhead_bits(p, dms::Scheme::kCentralized);
  const auto distributed = dms::overhead_bits(p, dms::Scheme::kDms);
  j["overhead"] = {{"rounds", p.rounds},
                   {"centralized_ic_bits", central.ic},
                   {"centralized_ib_bits", central.ib},
                   {"dms_ic_bits", distributed.ic},
                   {"dms_ib_bits", distributed.ib},
                   {"crossover_users", dms::crossover_users(p)}};

  // Best-effort user rates of the last epoch, Mbps.
  std::vector<double> rates;
  for (const auto& r : runs) {
    if (r.dms.empty()) continue;
    const auto& last = r.dms.back();
    const dms::Instance inst = dms::build_instance(c, r.seed);
    for (const auto& users : inst.be_users) {
      for (int u : users) {
        rates.push_back(last.be_user_volume[u] / (c.W * c.slot_s()) / 1e6);
      }
    }
  }
  json cdf = json::array();
  for (const auto& pt : dms::rate_cdf(rates)) {
    cdf.push_back({{"rate_mbps", pt.value}, {"fraction", pt.fraction}});
  }
  j["be_rate_cdf"] = cdf;
  write_json(fs::path(a.out) / "report.json", j);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"DMS interference coordination simulator"};
  app.set_version_flag("--version", std::string(dms::kVersion));
  app.require_subcommand(1);
  Args args;
  const std::vector<std::pair<std::string, std::string>> cmds = {
      {"gen-topology", "write topology and gains per seed"},
      {"run-gbr", "time-squeeze the guaranteed game per seed"},
      {"run-be", "best-effort game with AIMD over the whole horizon"},
      {"run-dms", "full supervisor loop, plus the configured baseline"},
      {"oracle", "centralized optima for tiny instances"},
      {"report", "aggregates, overhead and rate CDF"}};
  for (const auto& [name, help] : cmds) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", args.config, "scenario JSON")->required();
    sub->add_option("--out", args.out, "output directory");
    sub->add_option("--seeds", args.seeds, "override seeds")->delimiter(',');
    sub->add_option("--epochs", args.epochs, "override epochs");
    sub->add_flag("--trace", args.trace, "write trace.json");
  }
  CLI11_PARSE(app, argc, argv);
  const std::string cmd = app.get_subcommands().front()->get_name();

  try {
    dms::ScenarioConfig c = dms::load_config(args.config);
    if (!args.seeds.empty()) c.seeds = args.seeds;
    if (args.epochs != 0) c.epochs = args.epochs;
    c.validate();
    fs::create_directories(args.out);
    if (cmd == "gen-topology") return gen_topology(c, args);
    if (cmd == "run-gbr") return run_gbr(c, args);
    if (cmd == "run-be") return run_be(c, args);
    if (cmd == "run-dms") return run_dms_cmd(c, args);
    if (cmd == "oracle") return run_oracle(c, args);
    return run_report(c, args);
  } catch (const dms::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const dms::CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
