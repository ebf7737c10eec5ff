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

#include "dms/rate_model.h"

#include <stdexcept>
#include <string>

namespace dms {

PhysicalRateModel::PhysicalRateModel(LinkGainMatrix gains, double tx_power_w,
                                     double noise_w, McsTable mcs)
    : gains_(std::move(gains)),
      tx_power_w_(tx_power_w),
      noise_w_(noise_w),
      mcs_(std::move(mcs)) {}

double PhysicalRateModel::rate(int user, int serving, int /*tti*/,
                               BsSet interferers) const {
  return mcs_.best_rate(
      sinr(gains_, user, serving, interferers, tx_power_w_, noise_w_));
}

InjectedRateModel::InjectedRateModel(int n_bs, int n_users)
    : n_bs_(n_bs), n_users_(n_users) {}

void InjectedRateModel::set(int user, BsSet interferers, double rate) {
  table_[{user, kAnyTti, interferers.bits()}] = rate;
}

void InjectedRateModel::set(int user, int tti, BsSet interferers,
                            double rate) {
  has_tti_entries_ = true;
  table_[{user, tti, interferers.bits()}] = rate;
}

double InjectedRateModel::rate(int user, int serving, int tti,
                               BsSet interferers) const {
  interferers.erase(serving);
  auto it = table_.find({user, tti, interferers.bits()});
  if (it == table_.end()) it = table_.find({user, kAnyTti, interferers.bits()});
  if (it == table_.end()) {
    throw std::out_of_range("no injected rate for user " +
                            std::to_string(user) + " with interferer mask " +
                            std::to_string(interferers.bits()));
  }
  return it->second;
}

RateMatrix local_rates(const RateModel& model, int owner,
                       std::span<const int> users,
                       std::span<const BsSet> masks, int tti_offset) {
  const int n_ttis = static_cast<int>(masks.size());
  RateMatrix r(static_cast<int>(users.size()), n_ttis);
  for (int i = 0; i < static_cast<int>(users.size()); ++i) {
    for (int t = 0; t < n_ttis; ++t) {
      r(i, t) = model.rate(users[i], owner, t + tti_offset, masks[t]);
    }
  }
  return r;
}

}  // namespace dms
