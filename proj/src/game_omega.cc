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

#include "dms/game_omega.h"

#include <numeric>
#include <string>

#include "dms/errors.h"

namespace dms {
namespace {

// Moves `bs` to its max-min response when that strictly improves its volume
// vector, or when its current action breaks the TTI bound.
bool move(const BeScenario& scenario, ActionProfile& profile, int bs,
          int tti_bound) {
  if (scenario.users[bs].empty()) return false;
  const BeLocalInput in = omega_input(scenario, profile, bs, tti_bound);
  const Action& current = profile[bs];
  BeLocalSolution next = be_maxmin(in, scenario.options);
  if (current.size() <= tti_bound) {
    const BeLocalSolution now = evaluate_be(current, in);
    if (same_volumes(next, now) || !be_better(next, now)) return false;
  }
  if (next.action == current) return false;
  profile.set(bs, std::move(next.action));
  return true;
}

void check_bounds(const BeScenario& scenario, int horizon,
                  std::span<const int> tti_bounds) {
  if (static_cast<int>(tti_bounds.size()) != scenario.num_bs()) {
    throw ConfigError("need one TTI bound per base station");
  }
  for (int m : tti_bounds) {
    if (m < 1 || m > horizon) {
      throw ConfigError("TTI bound " + std::to_string(m) +
                        " outside [1, " + std::to_string(horizon) + "]");
    }
  }
}

}  // namespace

BeLocalInput omega_input(const BeScenario& scenario,
                         const ActionProfile& profile, int bs, int tti_bound) {
  const auto patterns = profile.patterns();
  return make_be_input(*scenario.model, bs, scenario.users[bs], patterns,
                       profile.horizon(), tti_bound, scenario.tti_offset);
}

double OmegaResult::utility() const {
  return std::accumulate(per_bs_min.begin(), per_bs_min.end(), 0.0);
}

OmegaResult evaluate_omega(const BeScenario& scenario,
                           const ActionProfile& profile,
                           std::span<const int> tti_bounds) {
  OmegaResult r;
  r.profile = profile;
  r.patterns = profile.patterns();
  r.user_volume.assign(scenario.model->num_users(), 0.0);
  for (int bs = 0; bs < scenario.num_bs(); ++bs) {
    if (scenario.users[bs].empty() || profile.horizon() == 0) {
      r.per_bs_eta.push_back(0.0);
      r.per_bs_min.push_back(0.0);
      continue;
    }
    const BeLocalInput in = omega_input(scenario, profile, bs, tti_bounds[bs]);
    const BeLocalSolution s = evaluate_be(profile[bs], in);
    r.per_bs_eta.push_back(s.eta);
    r.per_bs_min.push_back(s.min_volume);
    for (int i = 0; i < in.num_users(); ++i) {
      r.user_volume[in.users[i]] = s.per_user_volume[i];
    }
  }
  return r;
}

OmegaResult run_omega(const BeScenario& scenario, int horizon,
                      std::span<const int> tti_bounds,
                      const OmegaOptions& options) {
  const int n = scenario.num_bs();
  if (horizon == 0) {
    OmegaResult r = evaluate_omega(scenario, ActionProfile(n, 0), tti_bounds);
    r.converged = true;
    return r;
  }
  check_bounds(scenario, horizon, tti_bounds);
  const int deadline = options.deadline < 0 ? n * n : options.deadline;

  ActionProfile profile = options.initial ? options.initial->resized(horizon)
                                          : ActionProfile(n, horizon);
  std::vector<OmegaRound> trace;
  bool converged = false;
  int rounds = 0;
  // A mover ends at its max-min response, so play is stable once the other
  // n - 1 players have stayed put after the last change.
  int quiet = 0;
  bool changed_once = false;
  while (rounds < deadline) {
    ++rounds;
    int changes = 0;
    for (int bs = 0; bs < n; ++bs) {
      const ActionProfile before =
          options.on_move ? profile : ActionProfile();
      if (move(scenario, profile, bs, tti_bounds[bs])) {
        ++changes;
        quiet = 0;
        changed_once = true;
      } else {
        ++quiet;
      }
      if (options.on_move) options.on_move(before, profile, bs);
    }
    if (options.trace) {
      trace.push_back({rounds, changes,
                       evaluate_omega(scenario, profile, tti_bounds).per_bs_eta,
                       profile});
    }
    if (quiet >= (changed_once ? n - 1 : n)) {
      converged = true;
      break;
    }
  }
  OmegaResult r = evaluate_omega(scenario, profile, tti_bounds);
  r.rounds = rounds;
  r.converged = converged;
  r.terminated_by_deadline = !converged;
  r.trace = std::move(trace);
  return r;
}

}  // namespace dms
