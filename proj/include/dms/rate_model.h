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

// Per-TTI rate providers. The schedulers only ever ask "how many bits does
// user u get from its BS in TTI t while these other BSs transmit", so the
// physical SINR model and hand-written rate tables are interchangeable.

#ifndef DMS_RATE_MODEL_H_
#define DMS_RATE_MODEL_H_

#include <map>
#include <span>
#include <tuple>
#include <vector>

#include "dms/radio.h"
#include "dms/schedule.h"

namespace dms {

class RateModel {
 public:
  virtual ~RateModel() = default;

  virtual int num_bs() const = 0;
  virtual int num_users() const = 0;

  // Bits per TTI for `user` served by `serving` in `tti` while the stations
  // in `interferers` are active. `serving` is ignored if present in the set.
  virtual double rate(int user, int serving, int tti,
                      BsSet interferers) const = 0;

  // True when rate() does not depend on the TTI index.
  virtual bool tti_invariant() const = 0;
};

class PhysicalRateModel final : public RateModel {
 public:
  PhysicalRateModel(LinkGainMatrix gains, double tx_power_w, double noise_w,
                    McsTable mcs);

  int num_bs() const override { return gains_.num_bs(); }
  int num_users() const override { return gains_.num_users(); }
  double rate(int user, int serving, int tti,
              BsSet interferers) const override;
  bool tti_invariant() const override { return true; }

  const LinkGainMatrix& gains() const { return gains_; }
  const McsTable& mcs() const { return mcs_; }

 private:
  LinkGainMatrix gains_;
  double tx_power_w_;
  double noise_w_;
  McsTable mcs_;
};

// Explicit rate table keyed by (user, TTI, interferer set). Entries set
// without a TTI apply to every TTI. Lookups of missing keys throw.
class InjectedRateModel final : public RateModel {
 public:
  InjectedRateModel(int n_bs, int n_users);

  void set(int user, BsSet interferers, double rate);
  void set(int user, int tti, BsSet interferers, double rate);

  int num_bs() const override { return n_bs_; }
  int num_users() const override { return n_users_; }
  double rate(int user, int serving, int tti,
              BsSet interferers) const override;
  bool tti_invariant() const override { return !has_tti_entries_; }

 private:
  static constexpr int kAnyTti = -1;
  int n_bs_;
  int n_users_;
  bool has_tti_entries_ = false;
  std::map<std::tuple<int, int, std::uint64_t>, double> table_;
};

// Dense users x TTIs rate matrix for one base station.
class RateMatrix {
 public:
  RateMatrix() = default;
  RateMatrix(int n_users, int n_ttis)
      : n_users_(n_users), n_ttis_(n_ttis), r_(std::size_t(n_users) * n_ttis) {}

  int num_users() const { return n_users_; }
  int num_ttis() const { return n_ttis_; }
  double operator()(int i, int t) const { return r_[i * n_ttis_ + t]; }
  double& operator()(int i, int t) { return r_[i * n_ttis_ + t]; }

 private:
  int n_users_ = 0;
  int n_ttis_ = 0;
  std::vector<double> r_;
};

// Rates of `users` (row i = users[i]) served by `owner` in TTIs
// [0, masks.size()), where masks[t] holds the other active stations.
// Model TTI indices are offset by `tti_offset`.
RateMatrix local_rates(const RateModel& model, int owner,
                       std::span<const int> users,
                       std::span<const BsSet> masks, int tti_offset = 0);

}  // namespace dms

#endif  // DMS_RATE_MODEL_H_
