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

#include "dms/radio.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <tuple>

#include "dms/errors.h"
#include "dms/random.h"

namespace dms {
namespace {

constexpr int kMaxDropAttempts = 10'000'000;

struct Site {
  Point p;
  double score;  // max of |dx|/(w/2), |dy|/(h/2)
  double dist;
};

// Lattice sites ordered by closeness to the area centre.
std::vector<Site> lattice_sites(const Area& area, double isd, bool pointy,
                                int wanted) {
  const double s3 = std::sqrt(3.0) / 2.0;
  const Point a1 = pointy ? Point{s3 * isd, 0.5 * isd} : Point{isd, 0.0};
  const Point a2 = pointy ? Point{0.0, isd} : Point{0.5 * isd, s3 * isd};
  const Point c{area.width / 2.0, area.height / 2.0};
  const double hw = area.width / 2.0;
  const double hh = area.height / 2.0;

  int reach = static_cast<int>(std::ceil(std::max(area.width, area.height) /
                                         (s3 * isd))) + 2;
  reach = std::max(reach, static_cast<int>(std::ceil(std::sqrt(wanted))) + 2);
  std::vector<Site> sites;
  for (int i = -reach; i <= reach; ++i) {
    for (int j = -reach; j <= reach; ++j) {
      const Point p{c.x + i * a1.x + j * a2.x, c.y + i * a1.y + j * a2.y};
      const double dx = p.x - c.x;
      const double dy = p.y - c.y;
      const double score = std::max(std::abs(dx) / hw, std::abs(dy) / hh);
      sites.push_back({p, score, std::hypot(dx, dy)});
    }
  }
  std::sort(sites.begin(), sites.end(), [](const Site& a, const Site& b) {
    return std::tie(a.score, a.dist, a.p.y, a.p.x) <
           std::tie(b.score, b.dist, b.p.y, b.p.x);
  });
  sites.resize(std::min<std::size_t>(sites.size(), wanted));
  return sites;
}

double overhang(const Area& area, Point p) {
  const double ox = std::max({0.0, -p.x, p.x - area.width});
  const double oy = std::max({0.0, -p.y, p.y - area.height});
  return std::hypot(ox, oy);
}

}  // namespace

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

std::vector<int> Topology::users_of(int bs) const {
  std::vector<int> out;
  for (int u = 0; u < num_users(); ++u) {
    if (association[u] == bs) out.push_back(u);
  }
  return out;
}

int Topology::nearest_bs(Point p) const {
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (int k = 0; k < num_bs(); ++k) {
    const double d = distance(p, bs_positions[k]);
    if (d < best_d) {
      best_d = d;
      best = k;
    }
  }
  return best;
}

Topology generate_hex_topology(const HexTopologyConfig& config) {
  if (config.n_bs < 1 || config.n_bs > kMaxBaseStations) {
    throw ConfigError("n_bs must be in [1, " +
                      std::to_string(kMaxBaseStations) + "]");
  }
  if (!(config.isd_m > 0.0)) throw ConfigError("isd must be positive");
  if (!(config.area.width > 0.0) || !(config.area.height > 0.0)) {
    throw ConfigError("area dimensions must be positive");
  }
  if (config.users_per_bs < 0) {
    throw ConfigError("users_per_bs must be non-negative");
  }

  // Pick the lattice orientation whose chosen sites stay closest to the area.
  std::vector<Site> best_sites;
  double best_worst = std::numeric_limits<double>::infinity();
  for (bool pointy : {true, false}) {
    auto sites = lattice_sites(config.area, config.isd_m, pointy, config.n_bs);
    double worst = 0.0;
    for (const auto& s : sites) worst = std::max(worst, s.score);
    if (worst < best_worst) {
      best_worst = worst;
      best_sites = std::move(sites);
    }
  }
  Topology topo;
  topo.area = config.area;
  topo.isd = config.isd_m;
  for (const auto& s : best_sites) {
    if (overhang(config.area, s.p) >= config.isd_m / 2.0) {
      throw ConfigError("hex grid of " + std::to_string(config.n_bs) +
                        " sites at isd " + std::to_string(config.isd_m) +
                        " m does not fit the area");
    }
    topo.bs_positions.push_back(s.p);
  }

  Rng rng(mix_seed(config.seed, 0));
  for (int b = 0; b < topo.num_bs(); ++b) {
    for (int n = 0; n < config.users_per_bs; ++n) {
      int attempts = 0;
      for (;;) {
        if (++attempts > kMaxDropAttempts) {
          throw ConfigError("cell of site " + std::to_string(b) +
                            " has no usable area for user drops");
        }
        const Point p{rng.uniform(0.0, config.area.width),
                      rng.uniform(0.0, config.area.height)};
        if (topo.nearest_bs(p) == b) {
          topo.user_positions.push_back(p);
          topo.association.push_back(b);
          break;
        }
      }
    }
  }
  return topo;
}

double ChannelModel::pathloss_db(double distance_m) const {
  const double d_km = std::max(distance_m, min_distance_m) / 1000.0;
  return pathloss_intercept_db + pathloss_slope_db_per_decade * std::log10(d_km);
}

void ChannelModel::validate() const {
  if (!std::isfinite(pathloss_intercept_db) ||
      !std::isfinite(pathloss_slope_db_per_decade)) {
    throw ConfigError("path-loss coefficients must be finite");
  }
  if (!(noise_power_w > 0.0) || !std::isfinite(noise_power_w)) {
    throw ConfigError("noise power must be positive");
  }
  if (!(tx_power_w > 0.0) || !std::isfinite(tx_power_w)) {
    throw ConfigError("transmit power must be positive");
  }
  if (!(min_distance_m > 0.0)) {
    throw ConfigError("minimum distance must be positive");
  }
}

LinkGainMatrix::LinkGainMatrix(int n_users, int n_bs)
    : n_users_(n_users), n_bs_(n_bs), g_(std::size_t(n_users) * n_bs, 0.0) {}

LinkGainMatrix::LinkGainMatrix(int n_users, int n_bs, std::vector<double> gains)
    : n_users_(n_users), n_bs_(n_bs), g_(std::move(gains)) {
  if (g_.size() != std::size_t(n_users) * n_bs) {
    throw ConfigError("gain matrix size mismatch");
  }
  for (double g : g_) {
    if (!(g > 0.0) || !std::isfinite(g)) {
      throw ConfigError("gains must be positive and finite");
    }
  }
}

LinkGainMatrix compute_gains(const Topology& topology,
                             const ChannelModel& model, std::uint64_t seed) {
  model.validate();
  LinkGainMatrix gains(topology.num_users(), topology.num_bs());
  Rng rng(mix_seed(seed, 1));
  for (int u = 0; u < topology.num_users(); ++u) {
    for (int k = 0; k < topology.num_bs(); ++k) {
      const double d =
          distance(topology.user_positions[u], topology.bs_positions[k]);
      double g = std::pow(10.0, -model.pathloss_db(d) / 10.0);
      if (model.fading == Fading::kRayleigh) g *= rng.exponential();
      gains(u, k) = g;
    }
  }
  return gains;
}

double sinr(const LinkGainMatrix& gains, int user, int serving, BsSet active,
            double tx_power_w, double noise_w) {
  double interference = 0.0;
  for (int k = 0; k < gains.num_bs(); ++k) {
    if (k != serving && active.contains(k)) {
      interference += tx_power_w * gains(user, k);
    }
  }
  return tx_power_w * gains(user, serving) / (noise_w + interference);
}

McsTable::McsTable(std::vector<McsEntry> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw ConfigError("MCS table is empty");
  if (!(entries_.front().sinr_threshold > 0.0)) {
    throw ConfigError("lowest MCS threshold must be positive");
  }
  for (std::size_t m = 1; m < entries_.size(); ++m) {
    if (!(entries_[m].sinr_threshold > entries_[m - 1].sinr_threshold)) {
      throw ConfigError("MCS thresholds must be strictly increasing");
    }
    if (!(entries_[m].rate_bits > entries_[m - 1].rate_bits)) {
      throw ConfigError("MCS rates must be strictly increasing");
    }
  }
}

double McsTable::best_rate(double s) const {
  auto it = std::upper_bound(
      entries_.begin(), entries_.end(), s,
      [](double v, const McsEntry& e) { return v < e.sinr_threshold; });
  if (it == entries_.begin()) return 0.0;
  return std::prev(it)->rate_bits;
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

McsTable default_mcs_table(double bandwidth_hz, double slot_s) {
  constexpr int kLevels = 15;
  std::vector<McsEntry> entries;
  for (int m = 0; m < kLevels; ++m) {
    const double db = -6.7 + m * (22.7 - -6.7) / (kLevels - 1);
    const double eff = 0.15 + m * (5.55 - 0.15) / (kLevels - 1);
    // The small offset keeps exact products such as 3000 from flooring down.
    const double bits = std::floor(eff * bandwidth_hz * slot_s + 1e-6);
    entries.push_back({db_to_linear(db), bits});
  }
  return McsTable(std::move(entries));
}

}  // namespace dms
