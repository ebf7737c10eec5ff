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

// Game among base stations over best-effort scheduling in the Z TTIs left
// after the guaranteed period. Played in rounds until no player moves or the
// supervisor's deadline expires.

#ifndef DMS_GAME_OMEGA_H_
#define DMS_GAME_OMEGA_H_

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "dms/be_local.h"
#include "dms/rate_model.h"
#include "dms/schedule.h"

namespace dms {

struct BeScenario {
  std::shared_ptr<const RateModel> model;
  std::vector<std::vector<int>> users;  // best-effort users of each BS
  BeOptions options;
  int tti_offset = 0;  // model TTI index of the first best-effort TTI

  int num_bs() const { return static_cast<int>(users.size()); }
};

BeLocalInput omega_input(const BeScenario& scenario,
                         const ActionProfile& profile, int bs, int tti_bound);

struct OmegaRound {
  int round = 0;
  int changes = 0;
  std::vector<double> per_bs_eta;
  ActionProfile profile;
};

struct OmegaOptions {
  int deadline = -1;  // rounds, default |N|^2
  std::optional<ActionProfile> initial;
  bool trace = false;
  // Called after every move with the profile before and after it.
  std::function<void(const ActionProfile& before, const ActionProfile& after,
                     int bs)>
      on_move;
};

struct OmegaResult {
  ActionProfile profile;
  std::vector<AbsfPattern> patterns;
  std::vector<double> per_bs_eta;
  std::vector<double> per_bs_min;   // smallest user volume per BS
  std::vector<double> user_volume;  // per global user, 0 for non-BE users
  int rounds = 0;
  bool converged = false;
  bool terminated_by_deadline = false;
  std::vector<OmegaRound> trace;

  // Sum over BSs of the smallest user volume.
  double utility() const;
};

// Stations without best-effort users stay silent. Throws ConfigError when
// M has the wrong size or an entry is outside [1, Z].
OmegaResult run_omega(const BeScenario& scenario, int horizon,
                      std::span<const int> tti_bounds,
                      const OmegaOptions& options = {});

// Per-BS eta and min volume of `profile`, without playing.
OmegaResult evaluate_omega(const BeScenario& scenario,
                           const ActionProfile& profile,
                           std::span<const int> tti_bounds);

}  // namespace dms

#endif  // DMS_GAME_OMEGA_H_
