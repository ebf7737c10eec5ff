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

// Guaranteed-traffic scheduling at a single base station, with the activity
// of every other station frozen. The cost of an action S is
//
//   f(S) = |S| + alpha * sum_u rho_u
//
// where rho_u is the user's penalty for unserved demand.

#ifndef DMS_GBR_LOCAL_H_
#define DMS_GBR_LOCAL_H_

#include <span>
#include <vector>

#include "dms/rate_model.h"
#include "dms/schedule.h"

namespace dms {

struct PenaltyMode {
  enum class Kind { kResidual, kFixed };
  Kind kind = Kind::kResidual;
  double fixed_value = 0.0;

  static PenaltyMode residual() { return {}; }
  static PenaltyMode fixed(double v) { return {Kind::kFixed, v}; }

  // rho for a user with `served` bits against demand `demand`.
  double penalty(double demand, double served) const {
    if (kind == Kind::kResidual) return served < demand ? demand - served : 0.0;
    return served < demand ? fixed_value : 0.0;
  }
  friend bool operator==(const PenaltyMode&, const PenaltyMode&) = default;
};

enum class SolverMode { kAuto, kExact, kHeuristic };

struct BrOptions {
  SolverMode mode = SolverMode::kAuto;
  int exact_max_users = 6;
  int exact_max_ttis = 10;
};

enum class SsbrNeighborhood {
  // Keep, add one pair, or remove one pair.
  kAddOrRemove,
  // Everything with |S \ prev| <= 1 or |prev \ S| <= 1.
  kDisjunctive,
};

struct GbrLocalInput {
  int owner = 0;
  std::vector<int> users;          // global ids, row order of `rates`
  std::vector<double> demands;     // D_u per row
  std::vector<BsSet> interferers;  // active other stations per TTI
  RateMatrix rates;                // bits per (row, TTI)
  double alpha = 1000.0;
  PenaltyMode penalty;

  int horizon() const { return rates.num_ttis(); }
  int num_users() const { return static_cast<int>(users.size()); }
  // Row of global user `user`, or -1.
  int row_of(int user) const;
};

// Builds the local input for `owner` against the other stations' patterns,
// over TTIs [0, horizon).
GbrLocalInput make_gbr_input(const RateModel& model, int owner,
                             std::vector<int> users, const DemandSet& demand,
                             std::span<const AbsfPattern> patterns, int horizon,
                             double alpha, PenaltyMode penalty);

struct GbrLocalSolution {
  Action action;
  std::vector<double> served;     // per row
  std::vector<double> penalties;  // rho per row
  double cost = 0.0;
};

// Bits delivered to each user (row order) by `action`.
std::vector<double> served_traffic(const Action& action, const GbrLocalInput& in);

double cost_f(const Action& action, const GbrLocalInput& in);

GbrLocalSolution evaluate_gbr(const Action& action, const GbrLocalInput& in);

// Strict preference: lower cost, or equal cost and tie_break_less.
bool gbr_better(double cost_a, const Action& a, double cost_b, const Action& b);

// True when two costs are equal up to floating-point noise.
bool same_cost(double a, double b);

bool within_exact_bound(const GbrLocalInput& in, const BrOptions& options);

// Cost-minimising action. Exact mode is a depth-first branch and bound over
// TTIs; heuristic mode is a greedy fill followed by single-pair local search.
// Throws CapacityError in exact mode above the configured bound. The
// heuristic also runs the local search from `current` when given and keeps
// the cheaper result.
GbrLocalSolution best_response(const GbrLocalInput& in,
                               const BrOptions& options = {},
                               const Action* current = nullptr);

// The raw greedy fill used as the heuristic's starting point: the user with
// the largest residual demand takes its best free TTI, until no user with
// residual demand has a free positive-rate TTI.
Action gbr_greedy(const GbrLocalInput& in);

// Best action in the single-step neighbourhood of `prev`. `prev` is kept
// unless some neighbour is strictly cheaper.
GbrLocalSolution ssbr(const Action& prev, const GbrLocalInput& in,
                      SsbrNeighborhood neighborhood =
                          SsbrNeighborhood::kAddOrRemove,
                      const BrOptions& options = {});

}  // namespace dms

#endif  // DMS_GBR_LOCAL_H_
