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

// Evaluation metrics and signalling overhead.

#ifndef DMS_METRICS_H_
#define DMS_METRICS_H_

#include <cstdint>
#include <span>
#include <vector>

namespace dms {

// Mean over base stations of used / legacy_ttis.
double time_utilization_index(std::span<const int> per_bs_usage,
                              int legacy_ttis);

enum class Scheme { kCentralized, kDms };

struct OverheadParams {
  std::int64_t bits_per_scalar = 64;  // B
  std::int64_t horizon = 70;          // W
  std::int64_t n_bs = 7;
  std::int64_t n_users = 70;
  std::int64_t rounds = 0;  // k; 0 means |N|^2

  std::int64_t effective_rounds() const {
    return rounds > 0 ? rounds : n_bs * n_bs;
  }
};

struct OverheadBits {
  std::int64_t ic = 0;  // supervisor <-> base stations
  std::int64_t ib = 0;  // between base stations
  friend bool operator==(const OverheadBits&, const OverheadBits&) = default;
};

// Throws ConfigError unless every parameter is positive.
OverheadBits overhead_bits(const OverheadParams& p, Scheme scheme);

// Smallest |U| with |U| > 1 + (W / B)(k - 1).
std::int64_t crossover_users(const OverheadParams& p);

struct CdfPoint {
  double value = 0.0;
  double fraction = 0.0;  // share of samples <= value
  friend bool operator==(const CdfPoint&, const CdfPoint&) = default;
};

// One point per distinct value, ascending.
std::vector<CdfPoint> rate_cdf(std::span<const double> samples);

// Smallest sample value whose cumulative fraction reaches p.
double cdf_quantile(std::span<const CdfPoint> cdf, double p);

}  // namespace dms

#endif  // DMS_METRICS_H_
