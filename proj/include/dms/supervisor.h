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

// The supervisor: bisection on the guaranteed period T, AIMD control of the
// best-effort TTI bounds, and the per-epoch loop tying both games together.

#ifndef DMS_SUPERVISOR_H_
#define DMS_SUPERVISOR_H_

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dms/game_gamma.h"
#include "dms/game_omega.h"
#include "dms/rate_model.h"
#include "dms/schedule.h"

namespace dms {

struct SqueezeState {
  int lo = 1;
  int hi = 1;
  int best_T = 1;
  int probes = 0;  // including the initial probe at W
  int cap = 0;     // bisection probes allowed, ceil(log2 W)
};

struct SqueezeProbe {
  int T = 0;
  bool penalty_free = false;
  bool all_ttis_used = false;
  int gamma_rounds = 0;
  bool gamma_converged = false;
};

struct SqueezeResult {
  int T = 0;
  GammaResult gamma;  // outcome at T
  SqueezeState state;
  std::vector<SqueezeProbe> probes;
  int gamma_rounds = 0;  // summed over probes
};

int ceil_log2(int w);

// True when every TTI of the profile is used by some station.
bool all_ttis_used(const ActionProfile& profile);

// Starts at T = W, then bisects on [1, W]. Each probe plays the game
// warm-started from the previous probe's profile cut or padded to the new T.
// Stops when the interval closes or after ceil(log2 W) bisection probes;
// with `stop_when_full` also once a probe is penalty free with every TTI
// used. Throws InfeasibleError when the probe at W carries a penalty.
SqueezeResult time_squeeze(const GbrScenario& scenario, int horizon,
                           const GammaOptions& gamma = {},
                           bool stop_when_full = false);

struct AimdState {
  int Z = 0;
  std::vector<int> M;
  std::vector<int> M_star;
  double eta_prev = 0.0;  // eta^(k-1)
  double eta_curr = 0.0;  // eta^(k)
};

// M_i = M*_i = ceil(Z / |N|), at least 1.
AimdState aimd_init(int n_bs, int Z);

struct AimdChange {
  int bs = -1;  // -1 when nothing changed
  int from = 0;
  int to = 0;
};

// One supervisor step on the etas of the epoch just played.
AimdState aimd_step(AimdState state, std::span<const double> per_bs_eta,
                    AimdChange* change = nullptr);

struct RunRecord {
  int epoch = 0;
  int T = 0;
  int Z = 0;
  bool gbr_feasible = true;
  bool squeezed = false;
  int squeeze_probes = 0;
  double total_penalty = 0.0;
  int unserved_users = 0;
  double gbr_throughput_mbps = 0.0;
  double be_throughput_mbps = 0.0;
  double eta = 0.0;      // sum of per-BS eta
  double utility = 0.0;  // sum of per-BS smallest user volume
  std::vector<double> per_bs_eta;
  std::vector<int> M;
  int gamma_rounds = 0;
  int omega_rounds = 0;
  bool gamma_converged = false;
  bool omega_converged = false;
  double utilization_index = 0.0;
  std::int64_t overhead_ic = 0;
  std::int64_t overhead_ib = 0;
  std::vector<std::string> gbr_patterns;  // hex, one per BS
  std::vector<std::string> be_patterns;
  std::vector<double> be_user_volume;  // per global user
};

struct DmsSetup {
  int n_bs = 0;
  int n_users = 0;
  std::vector<std::vector<int>> gbr_users;
  std::vector<std::vector<int>> be_users;
  double alpha = 1000.0;
  PenaltyMode penalty;
  BrOptions br;
  BeOptions be;
  double slot_s = 1e-3;
  std::int64_t bits_per_scalar = 64;
  int omega_deadline = -1;  // rounds, default |N|^2
  GammaOptions gamma;
  // Rate model of an epoch (fading is redrawn per epoch).
  std::function<std::shared_ptr<const RateModel>(int epoch)> model;
  // Guaranteed demand of an epoch.
  std::function<DemandSet(int epoch)> demand;
};

// Per epoch: squeeze T at the first epoch, on a demand change or when the
// current T shows a penalty, otherwise replay the guaranteed game at T; then
// play the best-effort game on Z = W - T and step AIMD. AIMD restarts when Z
// changes. An infeasible guaranteed load keeps T = W and leaves no best-effort
// time.
std::vector<RunRecord> run_dms(const DmsSetup& setup, int horizon, int epochs);

}  // namespace dms

#endif  // DMS_SUPERVISOR_H_
