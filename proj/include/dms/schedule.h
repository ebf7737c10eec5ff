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

// Scheduling value types shared by the guaranteed and best-effort games.
//
// An Action is the per-TTI user assignment of one base station. Storing it as
// one slot per TTI (user id or kBlank) makes the "at most one user per TTI"
// constraint structural instead of something that has to be re-checked.

#ifndef DMS_SCHEDULE_H_
#define DMS_SCHEDULE_H_

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace dms {

inline constexpr int kBlank = -1;
inline constexpr int kMaxBaseStations = 64;

// Set of base-station indices, at most kMaxBaseStations.
class BsSet {
 public:
  constexpr BsSet() = default;
  constexpr explicit BsSet(std::uint64_t bits) : bits_(bits) {}

  constexpr bool contains(int bs) const { return (bits_ >> bs) & 1U; }
  constexpr void insert(int bs) { bits_ |= std::uint64_t{1} << bs; }
  constexpr void erase(int bs) { bits_ &= ~(std::uint64_t{1} << bs); }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::uint64_t bits() const { return bits_; }

  friend constexpr bool operator==(BsSet, BsSet) = default;

 private:
  std::uint64_t bits_ = 0;
};

// A (user, TTI) scheduling pair.
struct UserTti {
  int user = 0;
  int tti = 0;
  friend auto operator<=>(const UserTti&, const UserTti&) = default;
};

class Action {
 public:
  Action() = default;
  Action(int owner, int horizon);
  Action(int owner, std::vector<int> slots);

  int owner() const { return owner_; }
  int horizon() const { return static_cast<int>(slots_.size()); }

  // User scheduled in `tti`, or kBlank.
  int user_at(int tti) const { return slots_[tti]; }
  std::span<const int> slots() const { return slots_; }

  // Schedules `user` in `tti`, replacing any previous occupant.
  void assign(int tti, int user) { slots_[tti] = user; }
  void clear(int tti) { slots_[tti] = kBlank; }

  // Number of (user, TTI) pairs, i.e. |S_i|.
  int size() const;
  bool empty() const { return size() == 0; }

  // Pairs sorted by (user, tti).
  std::vector<UserTti> pairs() const;

  // Copy restricted or padded to `horizon` TTIs.
  Action resized(int horizon) const;

  // True when every scheduled user is in `users` and owner matches.
  bool valid_for(int owner, std::span<const int> users) const;

  friend bool operator==(const Action&, const Action&) = default;

 private:
  int owner_ = 0;
  std::vector<int> slots_;
};

// Deterministic order used to break ties between equal-cost actions: fewer
// pairs first, then the lexicographically smaller sorted pair list.
bool tie_break_less(const Action& a, const Action& b);

class AbsfPattern {
 public:
  AbsfPattern() = default;
  AbsfPattern(int owner, int horizon) : owner_(owner), bits_(horizon, 0) {}
  AbsfPattern(int owner, std::vector<std::uint8_t> bits)
      : owner_(owner), bits_(std::move(bits)) {}

  int owner() const { return owner_; }
  int horizon() const { return static_cast<int>(bits_.size()); }
  bool active(int tti) const { return bits_[tti] != 0; }
  void set(int tti, bool on) { bits_[tti] = on ? 1 : 0; }
  int popcount() const;

  // "1001"-style string, TTI 0 first.
  std::string to_bit_string() const;
  // Hex digits, four TTIs per digit with the earliest TTI in the most
  // significant bit; the last digit is zero padded.
  std::string to_hex() const;
  static AbsfPattern from_hex(int owner, int horizon, const std::string& hex);

  friend bool operator==(const AbsfPattern&, const AbsfPattern&) = default;

 private:
  int owner_ = 0;
  std::vector<std::uint8_t> bits_;
};

AbsfPattern pattern_from_action(const Action& a);

// Disjunctive single-step relation: |next \ prev| <= 1 or |prev \ next| <= 1.
bool is_single_step(const Action& prev, const Action& next);

// Sizes of next \ prev and prev \ next.
std::pair<int, int> set_differences(const Action& prev, const Action& next);

// Per-user guaranteed volume, indexed by global user id, in bits per horizon.
class DemandSet {
 public:
  DemandSet() = default;
  explicit DemandSet(std::vector<double> bits);
  // D_u = rate * W * T_slot for every user.
  static DemandSet from_rate(int n_users, double rate_bps, int horizon,
                             double slot_s);

  double operator[](int user) const { return bits_[user]; }
  int size() const { return static_cast<int>(bits_.size()); }
  std::span<const double> values() const { return bits_; }
  double total() const;

 private:
  std::vector<double> bits_;
};

// One action per base station, all over the same horizon.
class ActionProfile {
 public:
  ActionProfile() = default;
  ActionProfile(int n_bs, int horizon);
  explicit ActionProfile(std::vector<Action> actions);

  int num_bs() const { return static_cast<int>(actions_.size()); }
  int horizon() const { return horizon_; }
  const Action& operator[](int bs) const { return actions_[bs]; }
  void set(int bs, Action a);
  std::span<const Action> actions() const { return actions_; }

  std::vector<AbsfPattern> patterns() const;
  ActionProfile resized(int horizon) const;
  std::uint64_t hash() const;

  friend bool operator==(const ActionProfile&,
                         const ActionProfile&) = default;

 private:
  int horizon_ = 0;
  std::vector<Action> actions_;
};

// Per TTI, the set of base stations other than `owner` whose pattern is on.
std::vector<BsSet> interferer_masks(std::span<const AbsfPattern> patterns,
                                    int owner, int horizon);

}  // namespace dms

#endif  // DMS_SCHEDULE_H_
