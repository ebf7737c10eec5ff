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

#include "dms/be_local.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "dms/errors.h"

namespace dms {
namespace {

bool close(double a, double b) {
  return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
}

std::vector<double> ascending(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// -1, 0 or 1 as the ascending volume vector of `a` is below, equal to or
// above that of `b`.
int compare_volumes(const std::vector<double>& a, const std::vector<double>& b) {
  const auto sa = ascending(a);
  const auto sb = ascending(b);
  for (std::size_t i = 0; i < sa.size(); ++i) {
    if (close(sa[i], sb[i])) continue;
    return sa[i] < sb[i] ? -1 : 1;
  }
  return 0;
}

void validate(const BeLocalInput& in) {
  if (in.users.empty()) throw ConfigError("best-effort user set is empty");
  if (in.tti_bound < 1) throw ConfigError("TTI bound M_i must be at least 1");
  if (in.tti_bound > in.horizon()) {
    throw ConfigError("TTI bound M_i = " + std::to_string(in.tti_bound) +
                      " exceeds horizon " + std::to_string(in.horizon()));
  }
}

Action rows_to_action(const BeLocalInput& in, const std::vector<int>& rows) {
  Action a(in.owner, in.horizon());
  for (int t = 0; t < in.horizon(); ++t) {
    if (rows[t] != kBlank) a.assign(t, in.users[rows[t]]);
  }
  return a;
}

class ExactMaxMin {
 public:
  explicit ExactMaxMin(const BeLocalInput& in)
      : in_(in), rows_(in.horizon(), kBlank), vols_(in.num_users(), 0.0) {}

  BeLocalSolution run() {
    best_ = evaluate_be(Action(in_.owner, in_.horizon()), in_);
    dfs(0);
    return best_;
  }

 private:
  void dfs(int t) {
    const double ub = upper_bound_on_min(t);
    if (ub < best_.min_volume && !close(ub, best_.min_volume)) return;
    if (t == in_.horizon()) {
      BeLocalSolution cand = evaluate_be(rows_to_action(in_, rows_), in_);
      if (be_better(cand, best_)) best_ = std::move(cand);
      return;
    }
    dfs(t + 1);
    if (used_ == in_.tti_bound) return;
    for (int i = 0; i < in_.num_users(); ++i) {
      const double r = in_.rates(i, t);
      if (!(r > 0.0)) continue;
      rows_[t] = i;
      vols_[i] += r;
      ++used_;
      dfs(t + 1);
      --used_;
      vols_[i] -= r;
      rows_[t] = kBlank;
    }
  }

  // Each user may at best take its top remaining TTIs up to the bound.
  double upper_bound_on_min(int from) {
    const int left = std::min(in_.tti_bound - used_, in_.horizon() - from);
    double ub = std::numeric_limits<double>::infinity();
    for (int i = 0; i < in_.num_users(); ++i) {
      scratch_.clear();
      for (int t = from; t < in_.horizon(); ++t) {
        scratch_.push_back(in_.rates(i, t));
      }
      std::partial_sort(scratch_.begin(), scratch_.begin() + left,
                        scratch_.end(), std::greater<>());
      ub = std::min(ub, vols_[i] + std::accumulate(scratch_.begin(),
                                                   scratch_.begin() + left, 0.0));
    }
    return ub;
  }

  const BeLocalInput& in_;
  std::vector<int> rows_;
  std::vector<double> vols_;
  std::vector<double> scratch_;
  int used_ = 0;
  BeLocalSolution best_;
};

struct Fill {
  std::vector<int> rows;
  std::vector<double> vols;
  int used = 0;

  explicit Fill(const BeLocalInput& in)
      : rows(in.horizon(), kBlank), vols(in.num_users(), 0.0) {}

  void assign(const BeLocalInput& in, int t, int row) {
    if (rows[t] != kBlank) {
      vols[rows[t]] -= in.rates(rows[t], t);
      --used;
    }
    rows[t] = row;
    if (row != kBlank) {
      vols[row] += in.rates(row, t);
      ++used;
    }
  }
};

std::vector<int> users_by_volume(const std::vector<double>& vols) {
  std::vector<int> order(vols.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return vols[a] < vols[b]; });
  return order;
}

Fill greedy_fill(const BeLocalInput& in) {
  Fill f(in);
  while (f.used < in.tti_bound) {
    int pick_t = -1;
    int pick_i = -1;
    for (int i : users_by_volume(f.vols)) {
      double best = 0.0;
      for (int t = 0; t < in.horizon(); ++t) {
        if (f.rows[t] == kBlank && in.rates(i, t) > best) {
          best = in.rates(i, t);
          pick_t = t;
        }
      }
      if (pick_t >= 0) {
        pick_i = i;
        break;
      }
    }
    if (pick_i < 0) break;
    f.assign(in, pick_t, pick_i);
  }
  return f;
}

// Raises the smallest volume while every other user stays above it, until
// no such move exists.
void improve(const BeLocalInput& in, Fill& f) {
  const int cap = 10 * in.horizon() * in.num_users() + 10;
  for (int iter = 0; iter < cap; ++iter) {
    const auto order = users_by_volume(f.vols);
    const double floor = f.vols[order.front()];
    bool moved = false;
    for (int m : order) {
      if (!close(f.vols[m], floor)) break;
      int best_t = -1;
      double best_gain = 0.0;
      for (int t = 0; t < in.horizon(); ++t) {
        const double gain = in.rates(m, t);
        if (!(gain > best_gain)) continue;
        const int occ = f.rows[t];
        if (occ == m) continue;
        if (occ == kBlank) {
          if (f.used >= in.tti_bound) continue;
        } else {
          const double after = f.vols[occ] - in.rates(occ, t);
          if (!(after > floor) || close(after, floor)) continue;
        }
        best_gain = gain;
        best_t = t;
      }
      if (best_t >= 0) {
        f.assign(in, best_t, m);
        moved = true;
        break;
      }
    }
    if (!moved) return;
  }
}

}  // namespace

int BeLocalInput::row_of(int user) const {
  for (int i = 0; i < num_users(); ++i) {
    if (users[i] == user) return i;
  }
  return -1;
}

BeLocalInput make_be_input(const RateModel& model, int owner,
                           std::vector<int> users,
                           std::span<const AbsfPattern> patterns, int horizon,
                           int tti_bound, int tti_offset) {
  BeLocalInput in;
  in.owner = owner;
  in.interferers = interferer_masks(patterns, owner, horizon);
  in.rates = local_rates(model, owner, users, in.interferers, tti_offset);
  in.users = std::move(users);
  in.tti_bound = tti_bound;
  return in;
}

double eta(std::span<const double> volumes) {
  if (volumes.empty()) throw ConfigError("eta of an empty user set");
  return std::accumulate(volumes.begin(), volumes.end(), 0.0) /
         static_cast<double>(volumes.size());
}

BeLocalSolution evaluate_be(const Action& action, const BeLocalInput& in) {
  BeLocalSolution s;
  s.action = action;
  s.per_user_volume.assign(in.num_users(), 0.0);
  for (int t = 0; t < in.horizon(); ++t) {
    const int u = action.user_at(t);
    if (u == kBlank) continue;
    const int r = in.row_of(u);
    if (r < 0) {
      throw std::invalid_argument("action schedules user " + std::to_string(u) +
                                  " not served by base station " +
                                  std::to_string(in.owner));
    }
    s.per_user_volume[r] += in.rates(r, t);
  }
  if (!s.per_user_volume.empty()) {
    s.min_volume =
        *std::min_element(s.per_user_volume.begin(), s.per_user_volume.end());
    s.eta = eta(s.per_user_volume);
  }
  return s;
}

bool same_volumes(const BeLocalSolution& a, const BeLocalSolution& b) {
  return compare_volumes(a.per_user_volume, b.per_user_volume) == 0;
}

bool be_better(const BeLocalSolution& a, const BeLocalSolution& b) {
  const int c = compare_volumes(a.per_user_volume, b.per_user_volume);
  if (c != 0) return c > 0;
  return tie_break_less(a.action, b.action);
}

bool within_exact_bound(const BeLocalInput& in, const BeOptions& options) {
  return in.num_users() <= options.exact_max_users &&
         in.horizon() <= options.exact_max_ttis;
}

Action be_greedy(const BeLocalInput& in) {
  validate(in);
  return rows_to_action(in, greedy_fill(in).rows);
}

Action be_round_robin(const BeLocalInput& in) {
  validate(in);
  Fill f(in);
  const int n = in.num_users();
  int next = 0;
  for (int t = 0; t < in.horizon() && f.used < in.tti_bound; ++t) {
    for (int k = 0; k < n; ++k) {
      const int i = (next + k) % n;
      if (in.rates(i, t) > 0.0) {
        f.assign(in, t, i);
        next = (i + 1) % n;
        break;
      }
    }
  }
  return rows_to_action(in, f.rows);
}

BeLocalSolution be_maxmin(const BeLocalInput& in, const BeOptions& options) {
  validate(in);
  const bool fits = within_exact_bound(in, options);
  if (options.mode == SolverMode::kExact && !fits) {
    throw CapacityError("exact max-min limited to " +
                        std::to_string(options.exact_max_users) + " users x " +
                        std::to_string(options.exact_max_ttis) + " TTIs");
  }
  if (options.mode != SolverMode::kHeuristic && fits) {
    return ExactMaxMin(in).run();
  }
  Fill greedy = greedy_fill(in);
  const Action rr = be_round_robin(in);
  if (compare_volumes(evaluate_be(rr, in).per_user_volume, greedy.vols) > 0) {
    Fill f(in);
    for (int t = 0; t < in.horizon(); ++t) {
      if (rr.user_at(t) != kBlank) f.assign(in, t, in.row_of(rr.user_at(t)));
    }
    greedy = std::move(f);
  }
  improve(in, greedy);
  return evaluate_be(rows_to_action(in, greedy.rows), in);
}

}  // namespace dms
