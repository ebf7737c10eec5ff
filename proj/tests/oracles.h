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

// Test-side reference computations. Nothing here calls library helpers
// beyond the plain value types, so a shared bug cannot cancel out.

#ifndef DMS_TESTS_ORACLES_H_
#define DMS_TESTS_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <tuple>
#include <utility>
#include <vector>

#include "dms/be_local.h"
#include "dms/gbr_local.h"
#include "dms/random.h"
#include "dms/rate_model.h"

namespace dms::testing {

using Slots = std::vector<int>;

// Calls fn for every slot vector over `horizon` TTIs with entries in
// [-1, n_users).
inline void for_each_slots(int n_users, int horizon,
                           const std::function<void(const Slots&)>& fn) {
  Slots s(horizon, -1);
  while (true) {
    fn(s);
    int t = 0;
    while (t < horizon && s[t] == n_users - 1) s[t++] = -1;
    if (t == horizon) return;
    ++s[t];
  }
}

// Pairs (row, tti) sorted by row then TTI.
inline std::vector<std::pair<int, int>> sorted_pairs(const Slots& s) {
  std::vector<std::pair<int, int>> p;
  for (int t = 0; t < static_cast<int>(s.size()); ++t) {
    if (s[t] >= 0) p.emplace_back(s[t], t);
  }
  std::sort(p.begin(), p.end());
  return p;
}

inline bool ref_tie_less(const Slots& a, const Slots& b) {
  const auto pa = sorted_pairs(a);
  const auto pb = sorted_pairs(b);
  if (pa.size() != pb.size()) return pa.size() < pb.size();
  return pa < pb;
}

inline double ref_gbr_cost(const Slots& s, const RateMatrix& r,
                           const std::vector<double>& demand, double alpha,
                           const PenaltyMode& mode) {
  std::vector<double> served(demand.size(), 0.0);
  int pairs = 0;
  for (int t = 0; t < static_cast<int>(s.size()); ++t) {
    if (s[t] < 0) continue;
    ++pairs;
    served[s[t]] += r(s[t], t);
  }
  double pen = 0.0;
  for (std::size_t i = 0; i < demand.size(); ++i) {
    if (served[i] < demand[i]) {
      pen += mode.kind == PenaltyMode::Kind::kFixed ? mode.fixed_value
                                                    : demand[i] - served[i];
    }
  }
  return pairs + alpha * pen;
}

struct RefGbr {
  Slots slots;
  double cost = 0.0;
};

inline RefGbr ref_gbr_argmin(const GbrLocalInput& in) {
  RefGbr best;
  bool have = false;
  for_each_slots(in.num_users(), in.horizon(), [&](const Slots& s) {
    const double c = ref_gbr_cost(s, in.rates, in.demands, in.alpha, in.penalty);
    const double tol = 1e-9 * std::max(1.0, std::abs(c));
    if (!have || c < best.cost - tol ||
        (std::abs(c - best.cost) <= tol && ref_tie_less(s, best.slots))) {
      best = {s, c};
      have = true;
    }
  });
  return best;
}

// Ascending per-user volumes.
inline std::vector<double> ref_be_volumes(const Slots& s, const RateMatrix& r,
                                          int n_users) {
  std::vector<double> v(n_users, 0.0);
  for (int t = 0; t < static_cast<int>(s.size()); ++t) {
    if (s[t] >= 0) v[s[t]] += r(s[t], t);
  }
  std::sort(v.begin(), v.end());
  return v;
}

// Lexicographic comparison of ascending volume vectors with a relative
// tolerance; returns -1, 0 or 1.
inline int ref_volume_cmp(const std::vector<double>& a,
                          const std::vector<double>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double tol = 1e-9 * std::max({1.0, std::abs(a[i]), std::abs(b[i])});
    if (a[i] < b[i] - tol) return -1;
    if (a[i] > b[i] + tol) return 1;
  }
  return 0;
}

struct RefBe {
  Slots slots;
  std::vector<double> volumes;  // ascending
};

inline RefBe ref_be_argmax(const BeLocalInput& in) {
  RefBe best;
  bool have = false;
  for_each_slots(in.num_users(), in.horizon(), [&](const Slots& s) {
    int used = 0;
    for (int x : s) used += x >= 0;
    if (used > in.tti_bound) return;
    auto v = ref_be_volumes(s, in.rates, in.num_users());
    const int c = have ? ref_volume_cmp(v, best.volumes) : 1;
    if (c > 0 || (c == 0 && ref_tie_less(s, best.slots))) {
      best = {s, std::move(v)};
      have = true;
    }
  });
  return best;
}

// Action slots translated from global user ids to rows.
inline Slots to_rows(const Action& a, const std::vector<int>& users) {
  Slots s;
  for (int u : a.slots()) {
    if (u == kBlank) {
      s.push_back(-1);
    } else {
      s.push_back(static_cast<int>(
          std::find(users.begin(), users.end(), u) - users.begin()));
    }
  }
  return s;
}

// Random local GBR problem with rates drawn from `levels`.
inline GbrLocalInput random_gbr_input(Rng& rng, int n_users, int horizon,
                                      const std::vector<double>& levels,
                                      PenaltyMode mode) {
  GbrLocalInput in;
  in.owner = 0;
  in.rates = RateMatrix(n_users, horizon);
  in.interferers.assign(horizon, BsSet{});
  for (int i = 0; i < n_users; ++i) {
    in.users.push_back(i);
    for (int t = 0; t < horizon; ++t) {
      in.rates(i, t) = levels[rng.below(levels.size())];
    }
    in.demands.push_back(static_cast<double>(rng.below(2 * horizon + 1)));
  }
  in.alpha = 1000.0;
  in.penalty = mode;
  return in;
}

inline BeLocalInput random_be_input(Rng& rng, int n_users, int horizon,
                                    const std::vector<double>& levels) {
  BeLocalInput in;
  in.owner = 0;
  in.rates = RateMatrix(n_users, horizon);
  in.interferers.assign(horizon, BsSet{});
  for (int i = 0; i < n_users; ++i) {
    in.users.push_back(i);
    for (int t = 0; t < horizon; ++t) {
      in.rates(i, t) = levels[rng.below(levels.size())];
    }
  }
  in.tti_bound = 1 + static_cast<int>(rng.below(horizon));
  return in;
}

// Random physical network: users of station b are b*per_bs .. , gains
// log-uniform with the serving link stronger on average.
inline std::shared_ptr<PhysicalRateModel> random_physical_model(
    Rng& rng, int n_bs, int per_bs, const McsTable& mcs) {
  LinkGainMatrix g(n_bs * per_bs, n_bs);
  for (int u = 0; u < n_bs * per_bs; ++u) {
    for (int b = 0; b < n_bs; ++b) {
      const bool own = b == u / per_bs;
      g(u, b) = std::pow(10.0, own ? -rng.uniform(8, 10) : -rng.uniform(9, 12));
    }
  }
  return std::make_shared<PhysicalRateModel>(g, 1.0, 1e-13, mcs);
}

inline std::vector<std::vector<int>> block_users(int n_bs, int per_bs) {
  std::vector<std::vector<int>> users(n_bs);
  for (int u = 0; u < n_bs * per_bs; ++u) users[u / per_bs].push_back(u);
  return users;
}

// Three levels at 0, 10 and 20 dB worth 1, 2 and 4 bits.
inline McsTable small_mcs() {
  return McsTable({{1.0, 1.0}, {10.0, 2.0}, {100.0, 4.0}});
}

}  // namespace dms::testing

#endif  // DMS_TESTS_ORACLES_H_
