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

#include "dms/gbr_local.h"

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

Action to_action(const GbrLocalInput& in, const std::vector<int>& rows) {
  Action a(in.owner, in.horizon());
  for (int t = 0; t < in.horizon(); ++t) {
    if (rows[t] != kBlank) a.assign(t, in.users[rows[t]]);
  }
  return a;
}

std::vector<int> to_rows(const GbrLocalInput& in, const Action& a) {
  if (a.horizon() != in.horizon()) {
    throw std::invalid_argument("action horizon does not match input");
  }
  std::vector<int> rows(in.horizon(), kBlank);
  for (int t = 0; t < in.horizon(); ++t) {
    const int u = a.user_at(t);
    if (u == kBlank) continue;
    const int r = in.row_of(u);
    if (r < 0) {
      throw std::invalid_argument("action schedules user " + std::to_string(u) +
                                  " not served by base station " +
                                  std::to_string(in.owner));
    }
    rows[t] = r;
  }
  return rows;
}

double total_cost(const GbrLocalInput& in, const std::vector<double>& served,
                  int pairs) {
  double pen = 0.0;
  for (int i = 0; i < in.num_users(); ++i) {
    pen += in.penalty.penalty(in.demands[i], served[i]);
  }
  return pairs + in.alpha * pen;
}

// Admissible bound on the cost still to be paid over TTIs [from, T) given
// what has been served so far.
double remaining_lower_bound(const GbrLocalInput& in,
                             const std::vector<double>& served, int from,
                             std::vector<double>& scratch) {
  const int n = in.num_users();
  const int rem = in.horizon() - from;
  if (in.penalty.kind == PenaltyMode::Kind::kResidual) {
    double residual = 0.0;
    for (int i = 0; i < n; ++i) {
      residual += std::max(in.demands[i] - served[i], 0.0);
    }
    if (residual <= 0.0) return 0.0;
    // Each extra pair lowers the total residual by at most the best capped
    // per-TTI gain.
    scratch.clear();
    for (int t = from; t < in.horizon(); ++t) {
      double m = 0.0;
      for (int i = 0; i < n; ++i) {
        const double res = std::max(in.demands[i] - served[i], 0.0);
        m = std::max(m, std::min(in.rates(i, t), res));
      }
      scratch.push_back(m);
    }
    std::sort(scratch.begin(), scratch.end(), std::greater<>());
    double best = in.alpha * residual;
    double gained = 0.0;
    for (int k = 1; k <= rem; ++k) {
      gained += scratch[k - 1];
      best = std::min(best, k + in.alpha * std::max(residual - gained, 0.0));
    }
    return best;
  }
  // Fixed penalty: satisfying a set of unmet users needs at least the sum of
  // their individual minimum pair counts.
  const double v = in.penalty.fixed_value;
  std::vector<double> needed;
  for (int i = 0; i < n; ++i) {
    const double missing = in.demands[i] - served[i];
    if (!(missing > 0.0)) continue;
    scratch.clear();
    for (int t = from; t < in.horizon(); ++t) scratch.push_back(in.rates(i, t));
    std::sort(scratch.begin(), scratch.end(), std::greater<>());
    double acc = 0.0;
    double k = kInf;
    for (int j = 0; j < rem; ++j) {
      acc += scratch[j];
      if (served[i] + acc >= in.demands[i]) {
        k = j + 1;
        break;
      }
    }
    needed.push_back(k);
  }
  if (needed.empty()) return 0.0;
  std::sort(needed.begin(), needed.end());
  const int unmet = static_cast<int>(needed.size());
  double best = in.alpha * v * unmet;
  double pairs = 0.0;
  for (int j = 1; j <= unmet && std::isfinite(needed[j - 1]); ++j) {
    pairs += needed[j - 1];
    best = std::min(best, pairs + in.alpha * v * (unmet - j));
  }
  return best;
}

// Depth-first branch and bound over TTIs. With `prev` set, leaves are
// restricted to the disjunctive single-step neighbourhood of `prev` and
// `prev` wins every tie.
class ExactSearch {
 public:
  ExactSearch(const GbrLocalInput& in, const std::vector<int>* prev)
      : in_(in),
        prev_(prev),
        rows_(in.horizon(), kBlank),
        served_(in.num_users(), 0.0) {
    options_.resize(in.horizon());
    for (int t = 0; t < in.horizon(); ++t) {
      std::vector<int> users;
      for (int i = 0; i < in.num_users(); ++i) {
        const bool is_prev = prev_ && (*prev_)[t] == i;
        if (in.rates(i, t) > 0.0 || is_prev) users.push_back(i);
      }
      std::stable_sort(users.begin(), users.end(), [&](int a, int b) {
        return in.rates(a, t) > in.rates(b, t);
      });
      options_[t] = std::move(users);
    }
    if (prev_) {
      best_rows_ = *prev_;
      best_action_ = to_action(in_, best_rows_);
      std::vector<double> s(in.num_users(), 0.0);
      int pairs = 0;
      for (int t = 0; t < in.horizon(); ++t) {
        if ((*prev_)[t] != kBlank) {
          s[(*prev_)[t]] += in.rates((*prev_)[t], t);
          ++pairs;
        }
      }
      best_cost_ = total_cost(in_, s, pairs);
      best_pairs_ = pairs;
      best_is_prev_ = true;
    }
  }

  std::vector<int> run() {
    dfs(0);
    return best_rows_;
  }

 private:
  void dfs(int t) {
    if (prev_ && added_ >= 2 && removed_ >= 2) return;
    const double lb = pairs_ + remaining_lower_bound(in_, served_, t, scratch_);
    if (lb > best_cost_ + tol(best_cost_)) return;
    if (lb >= best_cost_ - tol(best_cost_)) {
      // Equal cost at best: only a tie-break win could still matter.
      if (best_is_prev_ || pairs_ > best_pairs_) return;
    }
    if (t == in_.horizon()) {
      leaf();
      return;
    }
    choose(t, kBlank);
    for (int i : options_[t]) choose(t, i);
  }

  void choose(int t, int row) {
    const int p = prev_ ? (*prev_)[t] : kBlank;
    const bool changed = prev_ && row != p;
    const int add = changed && row != kBlank ? 1 : 0;
    const int rem = changed && p != kBlank ? 1 : 0;
    rows_[t] = row;
    added_ += add;
    removed_ += rem;
    if (row != kBlank) {
      served_[row] += in_.rates(row, t);
      ++pairs_;
    }
    dfs(t + 1);
    if (row != kBlank) {
      served_[row] -= in_.rates(row, t);
      --pairs_;
    }
    added_ -= add;
    removed_ -= rem;
    rows_[t] = kBlank;
  }

  void leaf() {
    const double cost = total_cost(in_, served_, pairs_);
    if (cost < best_cost_ - tol(best_cost_)) {
      accept(cost);
      return;
    }
    if (best_is_prev_ || cost > best_cost_ + tol(best_cost_)) return;
    Action cand = to_action(in_, rows_);
    if (tie_break_less(cand, best_action_)) accept(cost, std::move(cand));
  }

  void accept(double cost) { accept(cost, to_action(in_, rows_)); }
  void accept(double cost, Action a) {
    best_cost_ = cost;
    best_rows_ = rows_;
    best_pairs_ = pairs_;
    best_action_ = std::move(a);
    best_is_prev_ = false;
  }

  static double tol(double c) {
    return std::isfinite(c) ? 1e-9 * std::max(1.0, std::abs(c)) : 0.0;
  }

  const GbrLocalInput& in_;
  const std::vector<int>* prev_;
  std::vector<std::vector<int>> options_;
  std::vector<int> rows_;
  std::vector<double> served_;
  std::vector<double> scratch_;
  int pairs_ = 0;
  int added_ = 0;
  int removed_ = 0;

  double best_cost_ = kInf;
  int best_pairs_ = std::numeric_limits<int>::max();
  std::vector<int> best_rows_;
  Action best_action_;
  bool best_is_prev_ = false;
};

// Mutable assignment with O(1) cost updates for single-pair moves.
class Assignment {
 public:
  Assignment(const GbrLocalInput& in, std::vector<int> rows)
      : in_(in), rows_(std::move(rows)), served_(in.num_users(), 0.0) {
    for (int t = 0; t < in.horizon(); ++t) {
      if (rows_[t] != kBlank) {
        served_[rows_[t]] += in.rates(rows_[t], t);
        ++pairs_;
      }
    }
    for (int i = 0; i < in.num_users(); ++i) {
      pen_ += in.penalty.penalty(in.demands[i], served_[i]);
    }
  }

  double cost() const { return pairs_ + in_.alpha * pen_; }
  const std::vector<int>& rows() const { return rows_; }
  double served(int i) const { return served_[i]; }

  // Cost after replacing the occupant of `t` with `row` (kBlank allowed).
  double cost_if(int t, int row) const {
    const int old = rows_[t];
    if (old == row) return cost();
    double pen = pen_;
    int pairs = pairs_;
    if (old != kBlank) {
      pen += delta(old, -in_.rates(old, t));
      --pairs;
    }
    if (row != kBlank) {
      pen += delta(row, in_.rates(row, t));
      ++pairs;
    }
    return pairs + in_.alpha * pen;
  }

  void set(int t, int row) {
    const int old = rows_[t];
    if (old == row) return;
    if (old != kBlank) {
      pen_ += delta(old, -in_.rates(old, t));
      served_[old] -= in_.rates(old, t);
      --pairs_;
    }
    if (row != kBlank) {
      pen_ += delta(row, in_.rates(row, t));
      served_[row] += in_.rates(row, t);
      ++pairs_;
    }
    rows_[t] = row;
  }

 private:
  double delta(int i, double change) const {
    return in_.penalty.penalty(in_.demands[i], served_[i] + change) -
           in_.penalty.penalty(in_.demands[i], served_[i]);
  }

  const GbrLocalInput& in_;
  std::vector<int> rows_;
  std::vector<double> served_;
  double pen_ = 0.0;
  int pairs_ = 0;
};

// One best single-pair move (add, remove or replace) when it strictly lowers
// the cost. Returns false at a local minimum.
bool improve_once(const GbrLocalInput& in, Assignment& cur, bool allow_swap) {
  double best_cost = cur.cost();
  int best_t = -1;
  int best_row = kBlank;
  for (int t = 0; t < in.horizon(); ++t) {
    const int occ = cur.rows()[t];
    if (occ != kBlank) {
      const double c = cur.cost_if(t, kBlank);
      if (c < best_cost - 1e-9 * std::max(1.0, std::abs(best_cost))) {
        best_cost = c;
        best_t = t;
        best_row = kBlank;
      }
      if (!allow_swap) continue;
    }
    for (int i = 0; i < in.num_users(); ++i) {
      if (i == occ || !(in.rates(i, t) > 0.0)) continue;
      const double c = cur.cost_if(t, i);
      if (c < best_cost - 1e-9 * std::max(1.0, std::abs(best_cost))) {
        best_cost = c;
        best_t = t;
        best_row = i;
      }
    }
  }
  if (best_t < 0) return false;
  cur.set(best_t, best_row);
  return true;
}

std::vector<int> greedy_rows(const GbrLocalInput& in,
                             std::vector<int>* best_prefix) {
  Assignment cur(in, std::vector<int>(in.horizon(), kBlank));
  double best_cost = cur.cost();
  if (best_prefix) *best_prefix = cur.rows();
  std::vector<int> order(in.num_users());
  for (;;) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return in.demands[a] - cur.served(a) > in.demands[b] - cur.served(b);
    });
    int pick_t = -1;
    int pick_i = -1;
    for (int i : order) {
      if (!(in.demands[i] - cur.served(i) > 0.0)) break;
      double best_rate = 0.0;
      for (int t = 0; t < in.horizon(); ++t) {
        if (cur.rows()[t] == kBlank && in.rates(i, t) > best_rate) {
          best_rate = in.rates(i, t);
          pick_t = t;
        }
      }
      if (pick_t >= 0) {
        pick_i = i;
        break;
      }
    }
    if (pick_i < 0) break;
    cur.set(pick_t, pick_i);
    if (best_prefix && cur.cost() < best_cost - 1e-9 * std::max(1.0, best_cost)) {
      best_cost = cur.cost();
      *best_prefix = cur.rows();
    }
  }
  return cur.rows();
}

}  // namespace

int GbrLocalInput::row_of(int user) const {
  for (int i = 0; i < num_users(); ++i) {
    if (users[i] == user) return i;
  }
  return -1;
}

GbrLocalInput make_gbr_input(const RateModel& model, int owner,
                             std::vector<int> users, const DemandSet& demand,
                             std::span<const AbsfPattern> patterns, int horizon,
                             double alpha, PenaltyMode penalty) {
  if (!(alpha > 0.0)) throw ConfigError("alpha must be positive");
  GbrLocalInput in;
  in.owner = owner;
  in.interferers = interferer_masks(patterns, owner, horizon);
  in.rates = local_rates(model, owner, users, in.interferers);
  for (int u : users) in.demands.push_back(demand[u]);
  in.users = std::move(users);
  in.alpha = alpha;
  in.penalty = penalty;
  return in;
}

std::vector<double> served_traffic(const Action& action,
                                   const GbrLocalInput& in) {
  const auto rows = to_rows(in, action);
  std::vector<double> served(in.num_users(), 0.0);
  for (int t = 0; t < in.horizon(); ++t) {
    if (rows[t] != kBlank) served[rows[t]] += in.rates(rows[t], t);
  }
  return served;
}

double cost_f(const Action& action, const GbrLocalInput& in) {
  return total_cost(in, served_traffic(action, in), action.size());
}

GbrLocalSolution evaluate_gbr(const Action& action, const GbrLocalInput& in) {
  GbrLocalSolution s;
  s.action = action;
  s.served = served_traffic(action, in);
  double pen = 0.0;
  for (int i = 0; i < in.num_users(); ++i) {
    s.penalties.push_back(in.penalty.penalty(in.demands[i], s.served[i]));
    pen += s.penalties.back();
  }
  s.cost = action.size() + in.alpha * pen;
  return s;
}

bool same_cost(double a, double b) {
  return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
}

bool gbr_better(double cost_a, const Action& a, double cost_b,
                const Action& b) {
  if (same_cost(cost_a, cost_b)) return tie_break_less(a, b);
  return cost_a < cost_b;
}

bool within_exact_bound(const GbrLocalInput& in, const BrOptions& options) {
  return in.num_users() <= options.exact_max_users &&
         in.horizon() <= options.exact_max_ttis;
}

Action gbr_greedy(const GbrLocalInput& in) {
  return to_action(in, greedy_rows(in, nullptr));
}

GbrLocalSolution best_response(const GbrLocalInput& in,
                               const BrOptions& options,
                               const Action* current) {
  const bool fits = within_exact_bound(in, options);
  if (options.mode == SolverMode::kExact && !fits) {
    throw CapacityError("exact best response limited to " +
                        std::to_string(options.exact_max_users) + " users x " +
                        std::to_string(options.exact_max_ttis) + " TTIs");
  }
  if (options.mode != SolverMode::kHeuristic && fits) {
    ExactSearch search(in, nullptr);
    return evaluate_gbr(to_action(in, search.run()), in);
  }
  std::vector<int> prefix;
  greedy_rows(in, &prefix);
  Assignment cur(in, std::move(prefix));
  while (improve_once(in, cur, /*allow_swap=*/true)) {
  }
  GbrLocalSolution best = evaluate_gbr(to_action(in, cur.rows()), in);
  if (current) {
    Assignment warm(in, to_rows(in, *current));
    while (improve_once(in, warm, /*allow_swap=*/true)) {
    }
    GbrLocalSolution w = evaluate_gbr(to_action(in, warm.rows()), in);
    if (gbr_better(w.cost, w.action, best.cost, best.action)) best = std::move(w);
  }
  return best;
}

GbrLocalSolution ssbr(const Action& prev, const GbrLocalInput& in,
                      SsbrNeighborhood neighborhood, const BrOptions& options) {
  const auto prev_rows = to_rows(in, prev);
  if (neighborhood == SsbrNeighborhood::kDisjunctive) {
    if (!within_exact_bound(in, options)) {
      throw CapacityError("disjunctive SSBR is solved exactly and limited to " +
                          std::to_string(options.exact_max_users) +
                          " users x " + std::to_string(options.exact_max_ttis) +
                          " TTIs");
    }
    ExactSearch search(in, &prev_rows);
    return evaluate_gbr(to_action(in, search.run()), in);
  }

  const Assignment base(in, prev_rows);
  double best_cost = base.cost();
  Action best = prev;
  bool best_is_prev = true;
  auto consider = [&](int t, int row) {
    const double c = base.cost_if(t, row);
    if (best_is_prev) {
      if (!(c < best_cost) || same_cost(c, best_cost)) return;
    } else if (!(c < best_cost) && !same_cost(c, best_cost)) {
      return;
    }
    Action cand = prev;
    if (row == kBlank) {
      cand.clear(t);
    } else {
      cand.assign(t, in.users[row]);
    }
    if (!best_is_prev && same_cost(c, best_cost) &&
        !tie_break_less(cand, best)) {
      return;
    }
    best_cost = c;
    best = std::move(cand);
    best_is_prev = false;
  };
  for (int t = 0; t < in.horizon(); ++t) {
    if (prev_rows[t] != kBlank) {
      consider(t, kBlank);
    } else {
      for (int i = 0; i < in.num_users(); ++i) consider(t, i);
    }
  }
  return evaluate_gbr(best, in);
}

}  // namespace dms
