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

// Best-effort scheduling at a single base station: lexicographic max-min of
// per-user volume over the Z best-effort TTIs, using at most M_i of them.

#ifndef DMS_BE_LOCAL_H_
#define DMS_BE_LOCAL_H_

#include <span>
#include <vector>

#include "dms/gbr_local.h"
#include "dms/rate_model.h"
#include "dms/schedule.h"

namespace dms {

struct BeLocalInput {
  int owner = 0;
  std::vector<int> users;          // global ids, row order of `rates`
  std::vector<BsSet> interferers;  // per best-effort TTI
  RateMatrix rates;
  int tti_bound = 1;               // M_i

  int horizon() const { return rates.num_ttis(); }
  int num_users() const { return static_cast<int>(users.size()); }
  int row_of(int user) const;
};

// `patterns` cover the Z best-effort TTIs; model TTI indices start at
// `tti_offset` (the GBR period T).
BeLocalInput make_be_input(const RateModel& model, int owner,
                           std::vector<int> users,
                           std::span<const AbsfPattern> patterns, int horizon,
                           int tti_bound, int tti_offset = 0);

struct BeLocalSolution {
  Action action;
  std::vector<double> per_user_volume;  // row order
  double min_volume = 0.0;
  double eta = 0.0;
};

struct BeOptions {
  SolverMode mode = SolverMode::kAuto;
  int exact_max_users = 3;
  int exact_max_ttis = 6;
};

// Mean of `volumes`. Throws ConfigError on an empty set.
double eta(std::span<const double> volumes);

BeLocalSolution evaluate_be(const Action& action, const BeLocalInput& in);

// True when `a` has the lexicographically larger ascending volume vector,
// or equal volumes and tie_break_less.
bool be_better(const BeLocalSolution& a, const BeLocalSolution& b);

// Same ascending volume vector up to rounding.
bool same_volumes(const BeLocalSolution& a, const BeLocalSolution& b);

bool within_exact_bound(const BeLocalInput& in, const BeOptions& options);

// Exact mode enumerates every action with at most M_i TTIs. Heuristic mode
// keeps the better of a greedy fill and round-robin, then applies
// single-slot improvements. Throws ConfigError when M_i < 1, M_i > Z or the
// user set is empty, and CapacityError in exact mode above the bound.
BeLocalSolution be_maxmin(const BeLocalInput& in, const BeOptions& options = {});

// The smallest-volume user repeatedly takes its best free TTI.
Action be_greedy(const BeLocalInput& in);

// Users take turns over the TTIs in ascending order.
Action be_round_robin(const BeLocalInput& in);

}  // namespace dms

#endif  // DMS_BE_LOCAL_H_
