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

// Scenario configuration, instance construction, baselines and result
// files for the dms_sim command line tool.

#ifndef DMS_HARNESS_H_
#define DMS_HARNESS_H_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "dms/game_gamma.h"
#include "dms/game_omega.h"
#include "dms/radio.h"
#include "dms/rate_model.h"
#include "dms/supervisor.h"
#include "json.hpp"

namespace dms {

inline constexpr char kVersion[] = "0.1.0";

struct DemandStep {
  int epoch = 0;
  double gbr_rate_mbps = 0.0;
};

enum class DeadlinePolicy { kN, kNSquared, kExplicit };
enum class Baseline { kNone, kLegacy, kReuse3 };

struct ScenarioConfig {
  int n_bs = 7;
  int users_per_bs = 10;
  double isd_m = 200.0;
  Area area_m{300.0, 500.0};
  int W = 70;
  double T_slot_ms = 1.0;
  double gbr_rate_mbps = 4.0;
  int be_users_per_bs = 0;
  double alpha = 1000.0;
  PenaltyMode penalty_mode;
  std::vector<McsEntry> mcs_table;  // empty: default table
  double pathloss_intercept_db = 128.1;
  double pathloss_slope_db_per_decade = 37.6;
  int B_bits = 64;
  std::vector<std::uint64_t> seeds{1};
  int epochs = 1;
  std::vector<DemandStep> demand_schedule;
  DeadlinePolicy deadline_policy = DeadlinePolicy::kNSquared;
  int deadline_rounds = 0;  // for kExplicit
  Baseline baseline = Baseline::kNone;
  double tx_power_dbm = 30.0;
  double noise_w = 1.085e-14;
  Fading fading = Fading::kRayleigh;
  double min_distance_m = 10.0;

  // Throws ConfigError naming the offending field.
  void validate() const;
  double slot_s() const { return T_slot_ms * 1e-3; }
  double gbr_rate_at(int epoch) const;
  int omega_deadline() const;
};

// Parses the JSON config; unknown keys and bad values throw ConfigError.
ScenarioConfig parse_config(const nlohmann::json& j);
ScenarioConfig load_config(const std::filesystem::path& path);
nlohmann::json config_to_json(const ScenarioConfig& config);

// One seeded network. Each BS serves users_per_bs guaranteed users followed
// by be_users_per_bs best-effort users.
struct Instance {
  std::uint64_t seed = 0;
  Topology topology;
  ChannelModel channel;
  McsTable mcs;
  std::vector<std::vector<int>> gbr_users;
  std::vector<std::vector<int>> be_users;
};

Instance build_instance(const ScenarioConfig& config, std::uint64_t seed);

// Physical rates with the fading draw of `epoch`.
std::shared_ptr<const RateModel> epoch_model(const Instance& instance,
                                             int epoch);
DemandSet epoch_demand(const ScenarioConfig& config, const Instance& instance,
                       int epoch);
DmsSetup make_dms_setup(const ScenarioConfig& config, const Instance& instance);

// A proper 3-colouring of the graph joining sites at most 1.01 isd apart.
// Throws ConfigError when none exists.
std::vector<int> reuse3_colors(const Topology& topology);

// Uncoordinated operation: every station transmits in every TTI. The
// guaranteed period is the smallest T that each station can serve on its
// own under full interference.
RunRecord baseline_legacy(const ScenarioConfig& config,
                          const Instance& instance, int epoch);
// Reuse-3 in time: each colour owns one third of the guaranteed period and
// one third of the best-effort period.
RunRecord baseline_reuse3(const ScenarioConfig& config,
                          const Instance& instance, int epoch);

// Best-effort schedule over `horizon` TTIs where station `bs` transmits in
// every TTI with allowed[bs][t] set, scheduled or not, and may only serve
// users in those TTIs.
OmegaResult static_be_schedule(const BeScenario& scenario, int horizon,
                               const std::vector<std::vector<bool>>& allowed);

struct SeedRun {
  std::uint64_t seed = 0;
  std::vector<RunRecord> dms;
  std::vector<RunRecord> baseline;
};

SeedRun run_seed(const ScenarioConfig& config, std::uint64_t seed);

// Runs `fn(seed)` for every seed on a small pool of threads and returns
// results in seed order.
template <typename R, typename F>
std::vector<R> for_each_seed(const std::vector<std::uint64_t>& seeds, F&& fn);

// CSV header line and rows of RunRecords.
std::string run_csv_header();
void write_run_rows(std::ostream& out, std::uint64_t seed,
                    const std::string& scheme,
                    const std::vector<RunRecord>& records);
nlohmann::json run_record_to_json(const RunRecord& record);

}  // namespace dms

#include "dms/harness_inl.h"

#endif  // DMS_HARNESS_H_
