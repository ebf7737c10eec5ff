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

// Network geometry, propagation and link adaptation.

#ifndef DMS_RADIO_H_
#define DMS_RADIO_H_

#include <cstdint>
#include <span>
#include <vector>

#include "dms/schedule.h"

namespace dms {

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

double distance(Point a, Point b);

struct Area {
  double width = 0.0;
  double height = 0.0;
  bool contains(Point p) const {
    return p.x >= 0.0 && p.x <= width && p.y >= 0.0 && p.y <= height;
  }
  friend bool operator==(const Area&, const Area&) = default;
};

struct Topology {
  std::vector<Point> bs_positions;
  std::vector<Point> user_positions;
  std::vector<int> association;  // user -> serving BS
  Area area;
  double isd = 0.0;

  int num_bs() const { return static_cast<int>(bs_positions.size()); }
  int num_users() const { return static_cast<int>(user_positions.size()); }
  // Users served by `bs`, ascending.
  std::vector<int> users_of(int bs) const;
  // Index of the closest site, lowest index on ties.
  int nearest_bs(Point p) const;

  friend bool operator==(const Topology&, const Topology&) = default;
};

struct HexTopologyConfig {
  int n_bs = 7;
  double isd_m = 200.0;
  Area area{300.0, 500.0};
  int users_per_bs = 10;
  std::uint64_t seed = 1;
};

// Places n_bs sites on a hexagonal lattice centred in the area (the sites
// closest to the centre, measured relative to the area's half extents) and
// drops users_per_bs users uniformly in each site's Voronoi cell clipped to the
// area. A site may overhang the area boundary by less than isd/2 so that the
// 7-site cluster at 200 m fits a 300 x 500 m area; users always lie inside.
Topology generate_hex_topology(const HexTopologyConfig& config);

enum class Fading { kNone, kRayleigh };

struct ChannelModel {
  double pathloss_intercept_db = 128.1;
  double pathloss_slope_db_per_decade = 37.6;
  Fading fading = Fading::kRayleigh;
  double noise_power_w = 1.085e-14;
  double tx_power_w = 1.0;  // 30 dBm
  double min_distance_m = 10.0;

  // Path loss in dB at `distance_m`, after the minimum-distance clamp.
  double pathloss_db(double distance_m) const;
  void validate() const;
};

class LinkGainMatrix {
 public:
  LinkGainMatrix() = default;
  LinkGainMatrix(int n_users, int n_bs);
  LinkGainMatrix(int n_users, int n_bs, std::vector<double> gains);

  int num_users() const { return n_users_; }
  int num_bs() const { return n_bs_; }
  double operator()(int user, int bs) const { return g_[user * n_bs_ + bs]; }
  double& operator()(int user, int bs) { return g_[user * n_bs_ + bs]; }
  std::span<const double> values() const { return g_; }

  friend bool operator==(const LinkGainMatrix&,
                         const LinkGainMatrix&) = default;

 private:
  int n_users_ = 0;
  int n_bs_ = 0;
  std::vector<double> g_;
};

// G = 10^(-PL(d)/10) * F with F ~ Exp(1) under Rayleigh fading, else 1.
LinkGainMatrix compute_gains(const Topology& topology,
                             const ChannelModel& model, std::uint64_t seed);

// P G_{u,i} / (N0 + sum_{k in active, k != i} P G_{u,k}).
double sinr(const LinkGainMatrix& gains, int user, int serving, BsSet active,
            double tx_power_w, double noise_w);

struct McsEntry {
  double sinr_threshold = 0.0;  // linear
  double rate_bits = 0.0;       // bits per TTI
};

class McsTable {
 public:
  McsTable() = default;
  explicit McsTable(std::vector<McsEntry> entries);

  // R^m for the largest m with threshold <= s, 0 below the first threshold.
  double best_rate(double s) const;
  double top_rate() const { return entries_.back().rate_bits; }
  std::span<const McsEntry> entries() const { return entries_; }
  int size() const { return static_cast<int>(entries_.size()); }

 private:
  std::vector<McsEntry> entries_;
};

// Fifteen CQI-style levels: thresholds evenly spread over -6.7..22.7 dB,
// spectral efficiencies evenly spread over 0.15..5.55 bit/s/Hz, and
// rate = floor(efficiency * bandwidth * slot).
McsTable default_mcs_table(double bandwidth_hz = 20e6, double slot_s = 1e-3);

double db_to_linear(double db);

}  // namespace dms

#endif  // DMS_RADIO_H_
