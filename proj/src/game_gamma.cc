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

#include "dms/game_gamma.h"

#include <stdexcept>
#include <unordered_map>
#include <utility>

namespace dms {
namespace {

std::uint64_t phase_key(std::uint64_t profile_hash, int next_bs) {
  return profile_hash ^ (0x9e3779b97f4a7c15ULL * (next_bs + 1));
}

// Detects a repeated (profile, next mover) state under deterministic play.
class CycleDetector {
 public:
  // Returns the period in moves when the state was seen before.
  int record(const ActionProfile& profile, int next_bs) {
    const auto key = phase_key(profile.hash(), next_bs);
    auto [lo, hi] = seen_.equal_range(key);
    for (auto it = lo; it != hi; ++it) {
      const auto& [index, bs] = states_[it->second];
      if (bs == next_bs && profiles_[it->second] == profile) {
        return static_cast<int>(profiles_.size()) - index;
      }
    }
    seen_.emplace(key, profiles_.size());
    states_.emplace_back(static_cast<int>(profiles_.size()), next_bs);
    profiles_.push_back(profile);
    return 0;
  }

 private:
  std::unordered_multimap<std::uint64_t, std::size_t> seen_;
  std::vector<std::pair<int, int>> states_;
  std::vector<ActionProfile> profiles_;
};

// Applies one move of `bs`; returns true if its action changed.
bool move(const GbrScenario& scenario, ActionProfile& profile, int bs,
          Strategy strategy) {
  const GbrLocalInput in = player_input(scenario, profile, bs);
  const Action& current = profile[bs];
  if (strategy == Strategy::kSsbr) {
    GbrLocalSolution next = ssbr(current, in, scenario.neighborhood, scenario.br);
    if (next.action == current) return false;
    profile.set(bs, std::move(next.action));
    return true;
  }
  GbrLocalSolution next = best_response(in, scenario.br, &current);
  const double cur_cost = cost_f(current, in);
  if (same_cost(next.cost, cur_cost) || next.cost > cur_cost) return false;
  profile.set(bs, std::move(next.action));
  return true;
}

class CycleObserver final : public MoveObserver {
 public:
  CycleObserver(int n_bs, MoveObserver* chained)
      : n_bs_(n_bs), chained_(chained) {}

  void on_move(const ActionProfile& profile, const MoveRecord& m) override {
    if (chained_) chained_->on_move(profile, m);
    if (m.strategy != Strategy::kBr || period_ > 0) return;
    ++moves_;
    if (m.changed) last_change_ = moves_;
    const int p = detector_.record(profile, (m.bs + 1) % n_bs_);
    // A repeat with no change inside it is a fixed point, not a cycle.
    if (p > 0 && moves_ - last_change_ < p) period_ = p;
  }
  void seed(const ActionProfile& profile) { detector_.record(profile, 0); }
  int period() const { return period_; }

 private:
  int n_bs_;
  MoveObserver* chained_;
  CycleDetector detector_;
  int period_ = 0;
  long moves_ = 0;
  long last_change_ = -1;
};

}  // namespace

GbrLocalInput player_input(const GbrScenario& scenario,
                           const ActionProfile& profile, int bs) {
  const auto patterns = profile.patterns();
  return make_gbr_input(*scenario.model, bs, scenario.users[bs], scenario.demand,
                        patterns, profile.horizon(), scenario.alpha,
                        scenario.penalty);
}

std::vector<double> player_costs(const GbrScenario& scenario,
                                 const ActionProfile& profile) {
  std::vector<double> costs;
  for (int bs = 0; bs < scenario.num_bs(); ++bs) {
    costs.push_back(cost_f(profile[bs], player_input(scenario, profile, bs)));
  }
  return costs;
}

GammaState initial_gamma_state(const GbrScenario& scenario,
                               ActionProfile profile) {
  if (profile.num_bs() != scenario.num_bs()) {
    throw std::invalid_argument("profile size does not match scenario");
  }
  GammaState state;
  state.costs = player_costs(scenario, profile);
  state.profile = std::move(profile);
  return state;
}

GammaState play_round(const GbrScenario& scenario, GammaState state,
                      std::vector<MoveRecord>* moves, MoveObserver* observer) {
  ++state.round;
  state.last_round_changes = 0;
  for (int bs = 0; bs < scenario.num_bs(); ++bs) {
    const bool changed = move(scenario, state.profile, bs, state.strategy);
    if (changed) {
      ++state.last_round_changes;
      state.quiet_moves = 0;
      state.mover_settled = state.strategy == Strategy::kBr;
    } else {
      ++state.quiet_moves;
    }
    if (!moves && !observer) continue;
    MoveRecord m;
    m.round = state.round;
    m.bs = bs;
    m.strategy = state.strategy;
    m.changed = changed;
    m.action = state.profile[bs];
    if (moves) m.costs = player_costs(scenario, state.profile);
    if (observer) observer->on_move(state.profile, m);
    if (moves) moves->push_back(std::move(m));
  }
  state.history.push_back(state.profile.hash());
  state.costs = player_costs(scenario, state.profile);
  return state;
}

GammaResult run_gamma(const GbrScenario& scenario, int horizon,
                      const GammaOptions& options) {
  if (horizon < 1) throw std::invalid_argument("horizon must be positive");
  const int n = scenario.num_bs();
  const int br_cap = options.br_round_cap < 0 ? n * n : options.br_round_cap;
  const int ssbr_cap =
      options.ssbr_round_cap < 0 ? 4 * n * n : options.ssbr_round_cap;

  ActionProfile start = options.initial ? options.initial->resized(horizon)
                                        : ActionProfile(n, horizon);
  GammaState state = initial_gamma_state(scenario, std::move(start));
  CycleObserver cycles(n, options.observer);
  cycles.seed(state.profile);

  GammaResult result;
  std::vector<MoveRecord>* trace = options.trace ? &result.trace : nullptr;
  for (;;) {
    if (state.strategy == Strategy::kBr &&
        (result.br_rounds >= br_cap ||
         (options.ssbr_on_cycle && cycles.period() > 0))) {
      state.strategy = Strategy::kSsbr;
    }
    if (state.strategy == Strategy::kSsbr && result.ssbr_rounds >= ssbr_cap) {
      break;
    }
    state = play_round(scenario, std::move(state), trace, &cycles);
    ++(state.strategy == Strategy::kBr ? result.br_rounds : result.ssbr_rounds);
    if (state.stable(n)) {
      result.converged = true;
      break;
    }
  }

  result.rounds = state.round;
  result.cycle_period = cycles.period();
  result.cycle_detected = result.cycle_period > 0;
  result.costs = state.costs;
  result.patterns = state.profile.patterns();
  result.penalties.assign(scenario.model->num_users(), 0.0);
  for (int bs = 0; bs < n; ++bs) {
    const GbrLocalInput in = player_input(scenario, state.profile, bs);
    const GbrLocalSolution s = evaluate_gbr(state.profile[bs], in);
    for (int i = 0; i < in.num_users(); ++i) {
      result.penalties[in.users[i]] = s.penalties[i];
      result.total_penalty += s.penalties[i];
      if (s.served[i] < in.demands[i]) ++result.unserved_users;
    }
  }
  result.profile = std::move(state.profile);
  return result;
}

bool is_saturation_profile(const GbrScenario& scenario,
                           const ActionProfile& profile) {
  for (int bs = 0; bs < scenario.num_bs(); ++bs) {
    const GbrLocalInput in = player_input(scenario, profile, bs);
    const Action& a = profile[bs];
    const auto served = served_traffic(a, in);
    bool penalty = false;
    for (int i = 0; i < in.num_users(); ++i) {
      if (served[i] < in.demands[i]) penalty = true;
    }
    if (!penalty || a.size() == in.horizon()) continue;
    for (int t = 0; t < in.horizon(); ++t) {
      if (a.user_at(t) != kBlank) continue;
      for (int i = 0; i < in.num_users(); ++i) {
        if (served[i] < in.demands[i] && in.rates(i, t) > 0.0) return false;
      }
    }
  }
  return true;
}

}  // namespace dms
