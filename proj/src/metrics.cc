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

#include "dms/metrics.h"

#include <algorithm>
#include <stdexcept>

#include "dms/errors.h"

namespace dms {
namespace {

void check(const OverheadParams& p) {
  if (p.bits_per_scalar <= 0 || p.horizon <= 0 || p.n_bs <= 0 ||
      p.n_users <= 0 || p.rounds < 0) {
    throw ConfigError("overhead parameters must be positive");
  }
}

}  // namespace

double time_utilization_index(std::span<const int> per_bs_usage,
                              int legacy_ttis) {
  if (legacy_ttis <= 0) throw ConfigError("legacy TTI count must be positive");
  if (per_bs_usage.empty()) return 0.0;
  double sum = 0.0;
  for (int used : per_bs_usage) sum += static_cast<double>(used) / legacy_ttis;
  return sum / static_cast<double>(per_bs_usage.size());
}

OverheadBits overhead_bits(const OverheadParams& p, Scheme scheme) {
  check(p);
  if (scheme == Scheme::kCentralized) {
    return {p.bits_per_scalar * p.n_users * p.n_bs + p.horizon * p.n_bs, 0};
  }
  return {2 * p.bits_per_scalar * p.n_bs,
          p.horizon * p.effective_rounds() * p.n_bs};
}

std::int64_t crossover_users(const OverheadParams& p) {
  check(p);
  // |U| B > B + W (k - 1), all integers.
  const std::int64_t rhs =
      p.bits_per_scalar + p.horizon * (p.effective_rounds() - 1);
  return rhs / p.bits_per_scalar + 1;
}

std::vector<CdfPoint> rate_cdf(std::span<const double> samples) {
  if (samples.empty()) throw std::invalid_argument("empty sample");
  std::vector<double> v(samples.begin(), samples.end());
  std::sort(v.begin(), v.end());
  std::vector<CdfPoint> cdf;
  const double n = static_cast<double>(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i + 1 < v.size() && v[i + 1] == v[i]) continue;
    cdf.push_back({v[i], static_cast<double>(i + 1) / n});
  }
  return cdf;
}

double cdf_quantile(std::span<const CdfPoint> cdf, double p) {
  if (cdf.empty()) throw std::invalid_argument("empty distribution");
  for (const auto& point : cdf) {
    if (point.fraction >= p - 1e-12) return point.value;
  }
  return cdf.back().value;
}

}  // namespace dms
