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

// Game among base stations over guaranteed-rate scheduling. Players move one
// at a time in ascending index order; a round is one move by every player.

#ifndef DMS_GAME_GAMMA_H_
#define DMS_GAME_GAMMA_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "dms/gbr_local.h"
#include "dms/rate_model.h"
#include "dms/schedule.h"

namespace dms {

struct GbrScenario {
  std::shared_ptr<const RateModel> model;
  std::vector<std::vector<int>> users;  // GBR users of each BS, global ids
  DemandSet demand;                     // indexed by global user id
  double alpha = 1000.0;
  PenaltyMode penalty;
  BrOptions br;
  SsbrNeighborhood neighborhood = SsbrNeighborhood::kAddOrRemove;

  int num_bs() const { return static_cast<int>(users.size()); }
};

enum class Strategy { kBr, kSsbr };

// Local problem of `bs` against the other stations' actions in `profile`.
GbrLocalInput player_input(const GbrScenario& scenario,
                           const ActionProfile& profile, int bs);

// f_i of every player under `profile`.
std::vector<double> player_costs(const GbrScenario& scenario,
                                 const ActionProfile& profile);

struct MoveRecord {
  int round = 0;  // 1-based
  int bs = 0;
  Strategy strategy = Strategy::kBr;
  bool changed = false;
  Action action;              // mover's action after the move
  std::vector<double> costs;  // every player's f_i after the move
};

struct GammaState {
  ActionProfile profile;
  int round = 0;
  Strategy strategy = Strategy::kBr;
  std::vector<std::uint64_t> history;  // profile hash after each round
  std::vector<double> costs;
  int last_round_changes = 0;
  // Moves without a change since the last change, and whether that change
  // left its mover at a full best response.
  int quiet_moves = 0;
  bool mover_settled = false;

  // No player would move: every player has been asked since the last change
  // (the mover itself is exempt after a full best response).
  bool stable(int n_bs) const {
    return quiet_moves >= (mover_settled ? n_bs - 1 : n_bs);
  }
};

GammaState initial_gamma_state(const GbrScenario& scenario,
                               ActionProfile profile);

// Sees the profile after every move.
struct MoveObserver {
  virtual ~MoveObserver() = default;
  virtual void on_move(const ActionProfile& profile, const MoveRecord& move) = 0;
};

// One move per player in ascending BS order. A mover keeps its current
// action unless the strategy offers a strictly cheaper one. Moves are
// appended to `moves` when given.
GammaState play_round(const GbrScenario& scenario, GammaState state,
                      std::vector<MoveRecord>* moves = nullptr,
                      MoveObserver* observer = nullptr);

struct GammaOptions {
  int br_round_cap = -1;    // default |N|^2
  int ssbr_round_cap = -1;  // default 4 |N|^2
  // Start from SSBR once a BR cycle has been confirmed.
  bool ssbr_on_cycle = true;
  std::optional<ActionProfile> initial;  // default: all empty
  bool trace = false;
  MoveObserver* observer = nullptr;
};

struct GammaResult {
  ActionProfile profile;
  std::vector<AbsfPattern> patterns;
  std::vector<double> penalties;  // rho per global user, 0 for non-GBR users
  std::vector<double> costs;      // f_i per BS
  double total_penalty = 0.0;
  int unserved_users = 0;
  int rounds = 0;
  int br_rounds = 0;
  int ssbr_rounds = 0;
  bool converged = false;
  bool cycle_detected = false;
  int cycle_period = 0;  // in moves
  std::vector<MoveRecord> trace;

  bool penalty_free() const { return unserved_users == 0; }
};

GammaResult run_gamma(const GbrScenario& scenario, int horizon,
                      const GammaOptions& options = {});

// Every player has zero penalty, uses all TTIs, or has no unused TTI that
// offers a positive rate to one of its unserved users.
bool is_saturation_profile(const GbrScenario& scenario,
                           const ActionProfile& profile);

}  // namespace dms

#endif  // DMS_GAME_GAMMA_H_
