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

#include "dms/schedule.h"

#include <algorithm>
#include <stdexcept>

#include "dms/errors.h"

namespace dms {

Action::Action(int owner, int horizon) : owner_(owner), slots_(horizon, kBlank) {}

Action::Action(int owner, std::vector<int> slots)
    : owner_(owner), slots_(std::move(slots)) {}

int Action::size() const {
  return static_cast<int>(
      std::count_if(slots_.begin(), slots_.end(),
                    [](int u) { return u != kBlank; }));
}

std::vector<UserTti> Action::pairs() const {
  std::vector<UserTti> out;
  for (int t = 0; t < horizon(); ++t) {
    if (slots_[t] != kBlank) out.push_back({slots_[t], t});
  }
  std::sort(out.begin(), out.end());
  return out;
}

Action Action::resized(int horizon) const {
  std::vector<int> slots(horizon, kBlank);
  const int keep = std::min(horizon, this->horizon());
  std::copy_n(slots_.begin(), keep, slots.begin());
  return Action(owner_, std::move(slots));
}

bool Action::valid_for(int owner, std::span<const int> users) const {
  if (owner != owner_) return false;
  return std::all_of(slots_.begin(), slots_.end(), [&](int u) {
    return u == kBlank || std::find(users.begin(), users.end(), u) != users.end();
  });
}

bool tie_break_less(const Action& a, const Action& b) {
  const int na = a.size();
  const int nb = b.size();
  if (na != nb) return na < nb;
  return a.pairs() < b.pairs();
}

int AbsfPattern::popcount() const {
  return static_cast<int>(std::count(bits_.begin(), bits_.end(), 1));
}

std::string AbsfPattern::to_bit_string() const {
  std::string s;
  s.reserve(bits_.size());
  for (auto b : bits_) s.push_back(b ? '1' : '0');
  return s;
}

std::string AbsfPattern::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  for (int base = 0; base < horizon(); base += 4) {
    int nibble = 0;
    for (int j = 0; j < 4; ++j) {
      nibble <<= 1;
      if (base + j < horizon() && bits_[base + j]) nibble |= 1;
    }
    out.push_back(kDigits[nibble]);
  }
  return out;
}

AbsfPattern AbsfPattern::from_hex(int owner, int horizon,
                                  const std::string& hex) {
  if (static_cast<int>(hex.size()) != (horizon + 3) / 4) {
    throw ConfigError("pattern hex length does not match horizon");
  }
  AbsfPattern p(owner, horizon);
  for (int d = 0; d < static_cast<int>(hex.size()); ++d) {
    const char c = hex[d];
    int v;
    if (c >= '0' && c <= '9') {
      v = c - '0';
    } else if (c >= 'a' && c <= 'f') {
      v = c - 'a' + 10;
    } else if (c >= 'A' && c <= 'F') {
      v = c - 'A' + 10;
    } else {
      throw ConfigError("invalid hex digit in pattern");
    }
    for (int j = 0; j < 4; ++j) {
      const int t = d * 4 + j;
      const bool on = (v >> (3 - j)) & 1;
      if (t < horizon) {
        p.set(t, on);
      } else if (on) {
        throw ConfigError("pattern padding bits must be zero");
      }
    }
  }
  return p;
}

AbsfPattern pattern_from_action(const Action& a) {
  AbsfPattern p(a.owner(), a.horizon());
  for (int t = 0; t < a.horizon(); ++t) p.set(t, a.user_at(t) != kBlank);
  return p;
}

std::pair<int, int> set_differences(const Action& prev, const Action& next) {
  if (prev.horizon() != next.horizon()) {
    throw std::invalid_argument("actions over different horizons");
  }
  int added = 0;
  int removed = 0;
  for (int t = 0; t < prev.horizon(); ++t) {
    const int p = prev.user_at(t);
    const int n = next.user_at(t);
    if (p == n) continue;
    if (n != kBlank) ++added;
    if (p != kBlank) ++removed;
  }
  return {added, removed};
}

bool is_single_step(const Action& prev, const Action& next) {
  const auto [added, removed] = set_differences(prev, next);
  return added <= 1 || removed <= 1;
}

DemandSet::DemandSet(std::vector<double> bits) : bits_(std::move(bits)) {
  for (double d : bits_) {
    if (!(d >= 0.0)) throw ConfigError("demand must be non-negative");
  }
}

DemandSet DemandSet::from_rate(int n_users, double rate_bps, int horizon,
                               double slot_s) {
  return DemandSet(std::vector<double>(n_users, rate_bps * horizon * slot_s));
}

double DemandSet::total() const {
  double s = 0.0;
  for (double d : bits_) s += d;
  return s;
}

ActionProfile::ActionProfile(int n_bs, int horizon) : horizon_(horizon) {
  actions_.reserve(n_bs);
  for (int i = 0; i < n_bs; ++i) actions_.emplace_back(i, horizon);
}

ActionProfile::ActionProfile(std::vector<Action> actions)
    : actions_(std::move(actions)) {
  horizon_ = actions_.empty() ? 0 : actions_.front().horizon();
  for (const auto& a : actions_) {
    if (a.horizon() != horizon_) {
      throw std::invalid_argument("profile actions differ in horizon");
    }
  }
}

void ActionProfile::set(int bs, Action a) {
  if (a.horizon() != horizon_) {
    throw std::invalid_argument("action horizon does not match profile");
  }
  actions_[bs] = std::move(a);
}

std::vector<AbsfPattern> ActionProfile::patterns() const {
  std::vector<AbsfPattern> out;
  out.reserve(actions_.size());
  for (const auto& a : actions_) out.push_back(pattern_from_action(a));
  return out;
}

ActionProfile ActionProfile::resized(int horizon) const {
  std::vector<Action> out;
  out.reserve(actions_.size());
  for (const auto& a : actions_) out.push_back(a.resized(horizon));
  ActionProfile p(std::move(out));
  p.horizon_ = horizon;
  return p;
}

std::uint64_t ActionProfile::hash() const {
  // FNV-1a over every slot; collisions are resolved by deep comparison.
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::uint64_t v) {
    h ^= v;
    h *= 1099511628211ULL;
  };
  for (const auto& a : actions_) {
    mix(static_cast<std::uint64_t>(a.owner()));
    for (int u : a.slots()) mix(static_cast<std::uint64_t>(u + 1));
  }
  return h;
}

std::vector<BsSet> interferer_masks(std::span<const AbsfPattern> patterns,
                                    int owner, int horizon) {
  std::vector<BsSet> masks(horizon);
  for (const auto& p : patterns) {
    if (p.owner() == owner) continue;
    const int h = std::min(horizon, p.horizon());
    for (int t = 0; t < h; ++t) {
      if (p.active(t)) masks[t].insert(p.owner());
    }
  }
  return masks;
}

}  // namespace dms
