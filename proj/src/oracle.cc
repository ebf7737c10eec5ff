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

#include "dms/oracle.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "dms/errors.h"

namespace dms {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double tol(double c) {
  return std::isfinite(c) ? 1e-9 * std::max(1.0, std::abs(c)) : 0.0;
}

// One joint choice of all stations for a single TTI.
struct Config {
  std::vector<int> choice;  // user or kBlank per BS
  std::vector<double> rate; // per flat user
  BsSet active;
  int activity = 0;
};

struct FlatUsers {
  std::vector<int> global;  // flat -> global id
  std::vector<int> bs;      // flat -> BS
  std::vector<int> first;   // BS -> first flat index
};

FlatUsers flatten(const std::vector<std::vector<int>>& users) {
  FlatUsers f;
  for (int b = 0; b < static_cast<int>(users.size()); ++b) {
    f.first.push_back(static_cast<int>(f.global.size()));
    for (int u : users[b]) {
      f.global.push_back(u);
      f.bs.push_back(b);
    }
  }
  f.first.push_back(static_cast<int>(f.global.size()));
  return f;
}

std::vector<Config> joint_configs(const RateModel& model,
                                  const std::vector<std::vector<int>>& users,
                                  const FlatUsers& flat, int tti) {
  const int n = static_cast<int>(users.size());
  std::vector<Config> out;
  std::vector<int> pick(n, -1);  // -1 blank, else index into users[b]
  for (;;) {
    Config c;
    c.choice.assign(n, kBlank);
    c.rate.assign(flat.global.size(), 0.0);
    for (int b = 0; b < n; ++b) {
      if (pick[b] >= 0) {
        c.choice[b] = users[b][pick[b]];
        c.active.insert(b);
        ++c.activity;
      }
    }
    for (int b = 0; b < n; ++b) {
      if (pick[b] < 0) continue;
      BsSet others = c.active;
      others.erase(b);
      c.rate[flat.first[b] + pick[b]] =
          model.rate(c.choice[b], b, tti, others);
    }
    out.push_back(std::move(c));
    int b = 0;
    while (b < n) {
      if (++pick[b] < static_cast<int>(users[b].size())) break;
      pick[b] = -1;
      ++b;
    }
    if (b == n) break;
  }
  return out;
}

// Drops configurations in which some active station serves a zero-rate user
// whenever silencing that station leaves everybody else at least as well off.
std::vector<Config> drop_dominated_gbr(std::vector<Config> configs,
                                       const FlatUsers& flat) {
  auto find = [&](const std::vector<int>& choice) -> const Config* {
    for (const auto& c : configs) {
      if (c.choice == choice) return &c;
    }
    return nullptr;
  };
  std::vector<Config> kept;
  for (const auto& c : configs) {
    if (c.activity == 0) continue;
    bool dominated = false;
    for (int b = 0; b < static_cast<int>(c.choice.size()) && !dominated; ++b) {
      if (c.choice[b] == kBlank) continue;
      int row = -1;
      for (int i = flat.first[b]; i < flat.first[b + 1]; ++i) {
        if (flat.global[i] == c.choice[b]) row = i;
      }
      if (c.rate[row] > 0.0) continue;
      auto reduced = c.choice;
      reduced[b] = kBlank;
      const Config* r = find(reduced);
      bool no_worse = true;
      for (std::size_t i = 0; i < c.rate.size(); ++i) {
        if (r->rate[i] < c.rate[i]) no_worse = false;
      }
      dominated = no_worse;
    }
    if (!dominated) kept.push_back(c);
  }
  return kept;
}

std::vector<Config> pareto_front(const std::vector<Config>& configs) {
  std::vector<Config> kept;
  for (std::size_t a = 0; a < configs.size(); ++a) {
    bool dominated = false;
    for (std::size_t b = 0; b < configs.size() && !dominated; ++b) {
      if (a == b) continue;
      bool ge = true;
      bool gt = false;
      for (std::size_t i = 0; i < configs[a].rate.size(); ++i) {
        if (configs[b].rate[i] < configs[a].rate[i]) ge = false;
        if (configs[b].rate[i] > configs[a].rate[i]) gt = true;
      }
      dominated = ge && (gt || b < a);
    }
    if (!dominated) kept.push_back(configs[a]);
  }
  return kept;
}

void check_bounds(const std::vector<std::vector<int>>& users, int horizon,
                  const OracleBounds& bounds, const RateModel& model) {
  if (horizon < 0) throw ConfigError("horizon must be non-negative");
  bool fits = static_cast<int>(users.size()) <= bounds.max_bs &&
              horizon <= bounds.max_ttis;
  for (const auto& u : users) {
    fits = fits && static_cast<int>(u.size()) <= bounds.max_users_per_bs;
  }
  if (!fits) {
    throw CapacityError("centralized oracle limited to " +
                        std::to_string(bounds.max_bs) + " BSs, " +
                        std::to_string(bounds.max_users_per_bs) +
                        " users per BS and " + std::to_string(bounds.max_ttis) +
                        " TTIs");
  }
  if (!model.tti_invariant()) {
    throw std::invalid_argument("centralized oracle needs TTI-invariant rates");
  }
}

ActionProfile profile_from(const std::vector<const Config*>& seq, int n_bs,
                           int horizon) {
  ActionProfile p(n_bs, horizon);
  std::vector<Action> actions(n_bs);
  for (int b = 0; b < n_bs; ++b) actions[b] = Action(b, horizon);
  for (std::size_t t = 0; t < seq.size(); ++t) {
    for (int b = 0; b < n_bs; ++b) {
      if (seq[t]->choice[b] != kBlank) actions[b].assign(t, seq[t]->choice[b]);
    }
  }
  for (int b = 0; b < n_bs; ++b) p.set(b, std::move(actions[b]));
  return p;
}

class GbrSearch {
 public:
  GbrSearch(const GbrScenario& s, const FlatUsers& flat,
            std::vector<Config> configs, int horizon)
      : s_(s), flat_(flat), configs_(std::move(configs)), horizon_(horizon) {
    for (int u : flat_.global) demand_.push_back(s_.demand[u]);
    served_.assign(flat_.global.size(), 0.0);
  }

  std::vector<const Config*> run() {
    dfs(0, 0);
    return best_seq_;
  }

 private:
  double penalty_sum() const {
    double p = 0.0;
    for (std::size_t i = 0; i < served_.size(); ++i) {
      p += s_.penalty.penalty(demand_[i], served_[i]);
    }
    return p;
  }

  // Bound on the cost of any extension by at least one more TTI.
  double extension_bound(int start) const {
    const int L = static_cast<int>(seq_.size());
    if (s_.penalty.kind == PenaltyMode::Kind::kFixed) return L + 1;
    double residual = 0.0;
    for (std::size_t i = 0; i < served_.size(); ++i) {
      residual += std::max(demand_[i] - served_[i], 0.0);
    }
    double step = 0.0;
    for (int c = start; c < static_cast<int>(configs_.size()); ++c) {
      double red = 0.0;
      for (std::size_t i = 0; i < served_.size(); ++i) {
        red += std::min(configs_[c].rate[i],
                        std::max(demand_[i] - served_[i], 0.0));
      }
      step = std::max(step, red);
    }
    double lb = kInf;
    for (int k = 1; k <= horizon_ - L; ++k) {
      lb = std::min(lb, L + k + s_.alpha * std::max(residual - k * step, 0.0));
    }
    return lb;
  }

  void dfs(int start, int activity) {
    const int L = static_cast<int>(seq_.size());
    const double cost = L + s_.alpha * penalty_sum();
    if (cost < best_ - tol(best_) ||
        (cost <= best_ + tol(best_) && activity < best_activity_)) {
      best_ = cost;
      best_activity_ = activity;
      best_seq_ = seq_;
    }
    if (L == horizon_) return;
    const double lb = extension_bound(start);
    if (lb > best_ + tol(best_)) return;
    if (lb >= best_ - tol(best_) && activity + 1 >= best_activity_) return;
    for (int c = start; c < static_cast<int>(configs_.size()); ++c) {
      const Config& cfg = configs_[c];
      for (std::size_t i = 0; i < served_.size(); ++i) served_[i] += cfg.rate[i];
      seq_.push_back(&cfg);
      dfs(c, activity + cfg.activity);
      seq_.pop_back();
      for (std::size_t i = 0; i < served_.size(); ++i) served_[i] -= cfg.rate[i];
    }
  }

  const GbrScenario& s_;
  const FlatUsers& flat_;
  std::vector<Config> configs_;
  int horizon_;
  std::vector<double> demand_;
  std::vector<double> served_;
  std::vector<const Config*> seq_;
  double best_ = kInf;
  int best_activity_ = std::numeric_limits<int>::max();
  std::vector<const Config*> best_seq_;
};

class BeSearch {
 public:
  BeSearch(const FlatUsers& flat, std::vector<Config> configs, int horizon)
      : flat_(flat), configs_(std::move(configs)), horizon_(horizon) {
    vol_.assign(flat_.global.size(), 0.0);
    best_rate_from_.assign(configs_.size() + 1,
                           std::vector<double>(flat_.global.size(), 0.0));
    for (int c = static_cast<int>(configs_.size()) - 1; c >= 0; --c) {
      for (std::size_t i = 0; i < vol_.size(); ++i) {
        best_rate_from_[c][i] =
            std::max(best_rate_from_[c + 1][i], configs_[c].rate[i]);
      }
    }
  }

  std::vector<const Config*> run() {
    if (configs_.empty()) return {};
    dfs(0);
    return best_seq_;
  }

 private:
  double utility(const std::vector<double>& extra, int rem) const {
    double u = 0.0;
    const int n_bs = static_cast<int>(flat_.first.size()) - 1;
    for (int b = 0; b < n_bs; ++b) {
      if (flat_.first[b] == flat_.first[b + 1]) continue;
      double m = kInf;
      for (int i = flat_.first[b]; i < flat_.first[b + 1]; ++i) {
        m = std::min(m, vol_[i] + rem * extra[i]);
      }
      u += m;
    }
    return u;
  }

  void dfs(int start) {
    const int used = static_cast<int>(seq_.size());
    if (used == horizon_) {
      const double u = utility(vol_, 0);
      if (u > best_ + tol(best_)) {
        best_ = u;
        best_seq_ = seq_;
      }
      return;
    }
    if (utility(best_rate_from_[start], horizon_ - used) <=
        best_ + tol(best_)) {
      return;
    }
    for (int c = start; c < static_cast<int>(configs_.size()); ++c) {
      for (std::size_t i = 0; i < vol_.size(); ++i) vol_[i] += configs_[c].rate[i];
      seq_.push_back(&configs_[c]);
      dfs(c);
      seq_.pop_back();
      for (std::size_t i = 0; i < vol_.size(); ++i) vol_[i] -= configs_[c].rate[i];
    }
  }

  const FlatUsers& flat_;
  std::vector<Config> configs_;
  int horizon_;
  std::vector<double> vol_;
  std::vector<std::vector<double>> best_rate_from_;
  std::vector<const Config*> seq_;
  double best_ = -1.0;
  std::vector<const Config*> best_seq_;
};

// Sorted (user, tti) list of a slot vector, for tie-breaking.
std::vector<std::pair<int, int>> sorted_pairs(const std::vector<int>& slots) {
  std::vector<std::pair<int, int>> p;
  for (int t = 0; t < static_cast<int>(slots.size()); ++t) {
    if (slots[t] != kBlank) p.emplace_back(slots[t], t);
  }
  std::sort(p.begin(), p.end());
  return p;
}

bool fewer_then_smaller(const std::vector<int>& a, const std::vector<int>& b) {
  const auto pa = sorted_pairs(a);
  const auto pb = sorted_pairs(b);
  if (pa.size() != pb.size()) return pa.size() < pb.size();
  return pa < pb;
}

// Calls `visit` with every slot vector over `n_ttis` TTIs that uses users
// [0, n_users) or blank, with at most `max_used` non-blank slots.
template <typename F>
void for_each_assignment(int n_users, int n_ttis, int max_used, F&& visit) {
  std::vector<int> slots(n_ttis, kBlank);
  for (;;) {
    int used = 0;
    for (int s : slots) used += s != kBlank;
    if (used <= max_used) visit(slots);
    int t = 0;
    while (t < n_ttis) {
      if (++slots[t] < n_users) break;
      slots[t] = kBlank;
      ++t;
    }
    if (t == n_ttis) return;
  }
}

void check_local_bounds(int users, int ttis, const BruteForceBounds& b) {
  if (users > b.max_users || ttis > b.max_ttis) {
    throw CapacityError("brute force limited to " +
                        std::to_string(b.max_users) + " users x " +
                        std::to_string(b.max_ttis) + " TTIs");
  }
}

}  // namespace

CentralGbrSolution solve_gbr_central(const GbrScenario& scenario, int horizon,
                                     const OracleBounds& bounds) {
  check_bounds(scenario.users, horizon, bounds, *scenario.model);
  const int n_bs = scenario.num_bs();
  const FlatUsers flat = flatten(scenario.users);
  auto configs = drop_dominated_gbr(
      joint_configs(*scenario.model, scenario.users, flat, 0), flat);
  std::vector<double> demand;
  for (int u : flat.global) demand.push_back(scenario.demand[u]);
  auto value = [&](const Config& c) {
    double v = 0.0;
    for (std::size_t i = 0; i < c.rate.size(); ++i) {
      v += std::min(c.rate[i], demand[i]);
    }
    return v;
  };
  std::stable_sort(configs.begin(), configs.end(),
                   [&](const Config& a, const Config& b) {
                     return value(a) > value(b);
                   });

  GbrSearch search(scenario, flat, configs, horizon);
  const auto seq = search.run();

  CentralGbrSolution sol;
  sol.L = static_cast<int>(seq.size());
  sol.used_ttis.assign(horizon, false);
  for (int t = 0; t < sol.L; ++t) sol.used_ttis[t] = true;
  sol.profile = profile_from(seq, n_bs, horizon);
  sol.served.assign(scenario.model->num_users(), 0.0);
  sol.penalties.assign(scenario.model->num_users(), 0.0);
  sol.per_bs_usage.assign(n_bs, 0);
  for (const Config* c : seq) {
    for (std::size_t i = 0; i < c->rate.size(); ++i) {
      sol.served[flat.global[i]] += c->rate[i];
    }
    for (int b = 0; b < n_bs; ++b) {
      if (c->choice[b] != kBlank) ++sol.per_bs_usage[b];
    }
    sol.total_activity += c->activity;
  }
  double pen = 0.0;
  for (int u : flat.global) {
    sol.penalties[u] = scenario.penalty.penalty(scenario.demand[u], sol.served[u]);
    pen += sol.penalties[u];
  }
  sol.objective = sol.L + scenario.alpha * pen;
  return sol;
}

CentralBeSolution solve_be_central(const BeScenario& scenario, int horizon,
                                   const OracleBounds& bounds) {
  check_bounds(scenario.users, horizon, bounds, *scenario.model);
  const int n_bs = scenario.num_bs();
  const FlatUsers flat = flatten(scenario.users);
  auto configs = pareto_front(joint_configs(*scenario.model, scenario.users,
                                            flat, scenario.tti_offset));
  BeSearch search(flat, configs, horizon);
  const auto seq = search.run();

  CentralBeSolution sol;
  sol.profile = profile_from(seq, n_bs, horizon);
  sol.user_volume.assign(scenario.model->num_users(), 0.0);
  for (const Config* c : seq) {
    for (std::size_t i = 0; i < c->rate.size(); ++i) {
      sol.user_volume[flat.global[i]] += c->rate[i];
    }
  }
  for (int b = 0; b < n_bs; ++b) {
    double m = 0.0;
    if (!scenario.users[b].empty()) {
      m = kInf;
      for (int u : scenario.users[b]) m = std::min(m, sol.user_volume[u]);
    }
    sol.per_bs_min.push_back(m);
    sol.utility += m;
  }
  return sol;
}

GbrLocalSolution brute_force_local(const GbrLocalInput& in,
                                   const BruteForceBounds& bounds) {
  const int n = in.num_users();
  const int T = in.horizon();
  check_local_bounds(n, T, bounds);
  double best_cost = kInf;
  std::vector<int> best;
  for_each_assignment(n, T, T, [&](const std::vector<int>& slots) {
    std::vector<double> served(n, 0.0);
    int pairs = 0;
    for (int t = 0; t < T; ++t) {
      if (slots[t] == kBlank) continue;
      served[slots[t]] += in.rates(slots[t], t);
      ++pairs;
    }
    double rho = 0.0;
    for (int i = 0; i < n; ++i) {
      if (served[i] >= in.demands[i]) continue;
      rho += in.penalty.kind == PenaltyMode::Kind::kFixed
                 ? in.penalty.fixed_value
                 : in.demands[i] - served[i];
    }
    const double cost = pairs + in.alpha * rho;
    std::vector<int> global(T, kBlank);
    for (int t = 0; t < T; ++t) {
      if (slots[t] != kBlank) global[t] = in.users[slots[t]];
    }
    if (cost < best_cost - tol(best_cost) ||
        (cost <= best_cost + tol(best_cost) && fewer_then_smaller(global, best))) {
      best_cost = cost;
      best = global;
    }
  });
  Action a(in.owner, std::move(best));
  GbrLocalSolution s;
  s.action = a;
  s.served = served_traffic(a, in);
  s.cost = best_cost;
  for (int i = 0; i < n; ++i) {
    s.penalties.push_back(in.penalty.penalty(in.demands[i], s.served[i]));
  }
  return s;
}

BeLocalSolution brute_force_local(const BeLocalInput& in,
                                  const BruteForceBounds& bounds) {
  const int n = in.num_users();
  const int T = in.horizon();
  check_local_bounds(n, T, bounds);
  if (n == 0) throw ConfigError("best-effort user set is empty");
  if (in.tti_bound < 1) throw ConfigError("TTI bound M_i must be at least 1");
  std::vector<double> best_sorted;
  std::vector<int> best;
  bool have = false;
  for_each_assignment(n, T, in.tti_bound, [&](const std::vector<int>& slots) {
    std::vector<double> vol(n, 0.0);
    for (int t = 0; t < T; ++t) {
      if (slots[t] != kBlank) vol[slots[t]] += in.rates(slots[t], t);
    }
    std::sort(vol.begin(), vol.end());
    std::vector<int> global(T, kBlank);
    for (int t = 0; t < T; ++t) {
      if (slots[t] != kBlank) global[t] = in.users[slots[t]];
    }
    int cmp = 0;
    if (have) {
      for (int i = 0; i < n && cmp == 0; ++i) {
        if (std::abs(vol[i] - best_sorted[i]) <= tol(vol[i])) continue;
        cmp = vol[i] > best_sorted[i] ? 1 : -1;
      }
    }
    if (!have || cmp > 0 || (cmp == 0 && fewer_then_smaller(global, best))) {
      have = true;
      best_sorted = vol;
      best = global;
    }
  });
  return evaluate_be(Action(in.owner, std::move(best)), in);
}

std::vector<std::string> check_gbr_solution(const GbrScenario& scenario,
                                            int horizon,
                                            const CentralGbrSolution& sol) {
  std::vector<std::string> errs;
  const auto& p = sol.profile;
  if (p.horizon() != horizon || p.num_bs() != scenario.num_bs()) {
    errs.push_back("profile shape");
    return errs;
  }
  std::vector<double> served(scenario.model->num_users(), 0.0);
  int last = 0;
  int activity = 0;
  for (int t = 0; t < horizon; ++t) {
    BsSet active;
    for (int b = 0; b < p.num_bs(); ++b) {
      if (p[b].user_at(t) != kBlank) active.insert(b);
    }
    if (!active.empty()) last = t + 1;
    if (!active.empty() && !sol.used_ttis[t]) {
      errs.push_back("TTI " + std::to_string(t) + " used but s_t = 0");
    }
    activity += active.size();
    for (int b = 0; b < p.num_bs(); ++b) {
      const int u = p[b].user_at(t);
      if (u == kBlank) continue;
      if (std::find(scenario.users[b].begin(), scenario.users[b].end(), u) ==
          scenario.users[b].end()) {
        errs.push_back("user " + std::to_string(u) + " not served by BS " +
                       std::to_string(b));
        continue;
      }
      served[u] += scenario.model->rate(u, b, t, active);
    }
  }
  if (sol.L < last) errs.push_back("L below last used TTI");
  if (activity != sol.total_activity) errs.push_back("activity mismatch");
  double pen = 0.0;
  for (int b = 0; b < scenario.num_bs(); ++b) {
    for (int u : scenario.users[b]) {
      if (std::abs(served[u] - sol.served[u]) > tol(served[u])) {
        errs.push_back("served mismatch for user " + std::to_string(u));
      }
      const double d = scenario.demand[u];
      if (sol.penalties[u] < 0.0) errs.push_back("negative penalty");
      if (scenario.penalty.kind == PenaltyMode::Kind::kResidual &&
          served[u] + sol.penalties[u] < d - tol(d)) {
        errs.push_back("demand of user " + std::to_string(u) + " not covered");
      }
      if (scenario.penalty.kind == PenaltyMode::Kind::kFixed &&
          served[u] < d && sol.penalties[u] != scenario.penalty.fixed_value) {
        errs.push_back("fixed penalty missing for user " + std::to_string(u));
      }
      pen += sol.penalties[u];
    }
  }
  const double obj = sol.L + scenario.alpha * pen;
  if (std::abs(obj - sol.objective) > tol(obj)) {
    errs.push_back("objective mismatch");
  }
  return errs;
}

std::vector<std::string> check_be_solution(const BeScenario& scenario,
                                           int horizon,
                                           const CentralBeSolution& sol) {
  std::vector<std::string> errs;
  const auto& p = sol.profile;
  if (p.horizon() != horizon || p.num_bs() != scenario.num_bs()) {
    errs.push_back("profile shape");
    return errs;
  }
  std::vector<double> vol(scenario.model->num_users(), 0.0);
  for (int t = 0; t < horizon; ++t) {
    BsSet active;
    for (int b = 0; b < p.num_bs(); ++b) {
      if (p[b].user_at(t) != kBlank) active.insert(b);
    }
    for (int b = 0; b < p.num_bs(); ++b) {
      const int u = p[b].user_at(t);
      if (u == kBlank) continue;
      if (std::find(scenario.users[b].begin(), scenario.users[b].end(), u) ==
          scenario.users[b].end()) {
        errs.push_back("user " + std::to_string(u) + " not served by BS " +
                       std::to_string(b));
        continue;
      }
      vol[u] += scenario.model->rate(u, b, t + scenario.tti_offset, active);
    }
  }
  double utility = 0.0;
  for (int b = 0; b < scenario.num_bs(); ++b) {
    if (scenario.users[b].empty()) continue;
    double m = kInf;
    for (int u : scenario.users[b]) {
      m = std::min(m, vol[u]);
      if (std::abs(vol[u] - sol.user_volume[u]) > tol(vol[u])) {
        errs.push_back("volume mismatch for user " + std::to_string(u));
      }
    }
    utility += m;
  }
  if (std::abs(utility - sol.utility) > tol(utility)) {
    errs.push_back("utility mismatch");
  }
  return errs;
}

}  // namespace dms
