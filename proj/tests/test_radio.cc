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

#include <cmath>
#include <numeric>

#include "doctest.h"
#include "dms/errors.h"
#include "dms/radio.h"
#include "dms/random.h"

using namespace dms;

namespace {

Topology line_topology(std::vector<Point> sites, std::vector<Point> users) {
  Topology t;
  t.bs_positions = std::move(sites);
  t.user_positions = std::move(users);
  t.area = {5000.0, 5000.0};
  t.isd = 200.0;
  for (const Point& p : t.user_positions) t.association.push_back(t.nearest_bs(p));
  return t;
}

}  // namespace

TEST_CASE("hex topology: standard cluster") {
  HexTopologyConfig c;
  c.n_bs = 7;
  c.isd_m = 200.0;
  c.area = {300.0, 500.0};
  c.users_per_bs = 10;
  c.seed = 1;
  const Topology t = generate_hex_topology(c);
  CHECK(t.num_bs() == 7);
  CHECK(t.num_users() == 70);
  for (int b = 0; b < 7; ++b) CHECK(t.users_of(b).size() == 10);
  for (int u = 0; u < t.num_users(); ++u) {
    CHECK(t.area.contains(t.user_positions[u]));
    // Voronoi association.
    CHECK(t.association[u] == t.nearest_bs(t.user_positions[u]));
  }
  // Nearest-neighbour site spacing equals the ISD.
  for (int a = 0; a < 7; ++a) {
    double nearest = 1e18;
    for (int b = 0; b < 7; ++b) {
      if (a != b) nearest = std::min(nearest, distance(t.bs_positions[a], t.bs_positions[b]));
    }
    CHECK(nearest == doctest::Approx(200.0));
  }
}

TEST_CASE("hex topology: degenerate and deterministic") {
  HexTopologyConfig c;
  c.n_bs = 1;
  c.users_per_bs = 0;
  const Topology one = generate_hex_topology(c);
  CHECK(one.num_bs() == 1);
  CHECK(one.num_users() == 0);

  c.n_bs = 7;
  c.users_per_bs = 5;
  c.seed = 42;
  CHECK(generate_hex_topology(c) == generate_hex_topology(c));
  HexTopologyConfig d = c;
  d.seed = 43;
  CHECK_FALSE(generate_hex_topology(c) == generate_hex_topology(d));
}

TEST_CASE("hex topology: dense ISD fits many sites") {
  HexTopologyConfig c;
  c.n_bs = 28;
  c.isd_m = 80.0;
  c.users_per_bs = 2;
  const Topology t = generate_hex_topology(c);
  CHECK(t.num_bs() == 28);
  CHECK(t.num_users() == 56);
}

TEST_CASE("gains: path loss at 1 km without fading") {
  ChannelModel m;
  m.fading = Fading::kNone;
  const Topology t = line_topology({{0, 0}}, {{1000, 0}, {0, 1000}});
  const LinkGainMatrix g = compute_gains(t, m, 7);
  CHECK(g(0, 0) == doctest::Approx(std::pow(10.0, -12.81)).epsilon(1e-12));
  CHECK(g(0, 0) == g(1, 0));
  CHECK(m.pathloss_db(1000.0) == doctest::Approx(128.1));
  CHECK(m.pathloss_db(1.0) == m.pathloss_db(m.min_distance_m));
}

TEST_CASE("gains: translation invariance") {
  ChannelModel m;
  const Topology a = line_topology({{0, 0}, {200, 0}}, {{50, 30}, {170, -20}});
  const Topology b = line_topology({{1000, 700}, {1200, 700}},
                                   {{1050, 730}, {1170, 680}});
  CHECK(compute_gains(a, m, 9) == compute_gains(b, m, 9));
}

TEST_CASE("gains: rayleigh fading has unit mean") {
  ChannelModel m;
  m.fading = Fading::kRayleigh;
  const int n = 1000000;
  std::vector<Point> users(n, Point{1000, 0});
  const Topology t = line_topology({{0, 0}}, users);
  const LinkGainMatrix g = compute_gains(t, m, 2024);
  const double base = std::pow(10.0, -12.81);
  double sum = 0.0;
  for (int u = 0; u < n; ++u) sum += g(u, 0) / base;
  CHECK(std::abs(sum / n - 1.0) < 0.01);
}

TEST_CASE("sinr: closed forms") {
  LinkGainMatrix g(1, 3, {1e-9, 1e-9, 4e-10});
  BsSet alone;
  alone.insert(0);
  CHECK(sinr(g, 0, 0, alone, 1.0, 1e-13) == doctest::Approx(1e-9 / 1e-13));
  BsSet one = alone;
  one.insert(1);
  CHECK(sinr(g, 0, 0, one, 1.0, 1e-30) == doctest::Approx(1.0));
  BsSet two = one;
  two.insert(2);
  // 2 * 1e-9 / (1e-12 + 2 * 1e-9 + 2 * 4e-10)
  const double expect = 2e-9 / (1e-12 + 2e-9 + 8e-10);
  CHECK(sinr(g, 0, 0, two, 2.0, 1e-12) == doctest::Approx(expect));
  // The serving station in the active set is not its own interferer.
  BsSet without_serving;
  without_serving.insert(1);
  CHECK(sinr(g, 0, 0, without_serving, 1.0, 1e-30) ==
        doctest::Approx(sinr(g, 0, 0, one, 1.0, 1e-30)));
}

TEST_CASE("best_rate: thresholds") {
  const McsTable t({{db_to_linear(0.0), 100.0}, {db_to_linear(10.0), 300.0}});
  CHECK(t.best_rate(db_to_linear(-0.1)) == 0.0);
  CHECK(t.best_rate(db_to_linear(0.0)) == 100.0);
  CHECK(t.best_rate(db_to_linear(9.99)) == 100.0);
  CHECK(t.best_rate(db_to_linear(10.0)) == 300.0);

  const McsTable d = default_mcs_table();
  CHECK(d.size() == 15);
  CHECK(d.best_rate(1e9) == d.top_rate());
  CHECK(d.top_rate() == std::floor(5.55 * 20e6 * 1e-3));
  CHECK(d.best_rate(0.0) == 0.0);
  // Piecewise constant with breakpoints at the thresholds.
  for (int m = 0; m < d.size(); ++m) {
    const double gamma = d.entries()[m].sinr_threshold;
    CHECK(d.best_rate(gamma) == d.entries()[m].rate_bits);
    const double below = m == 0 ? 0.0 : d.entries()[m - 1].rate_bits;
    CHECK(d.best_rate(gamma * (1 - 1e-9)) == below);
  }
}

TEST_CASE("mcs table rejects bad entries") {
  CHECK_THROWS_AS(McsTable(std::vector<McsEntry>{}), ConfigError);
  CHECK_THROWS_AS(McsTable({{2.0, 10.0}, {1.0, 20.0}}), ConfigError);
}

TEST_CASE("property: more interferers never help") {
  Rng rng(5);
  const McsTable mcs = default_mcs_table();
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(6));
    std::vector<double> v;
    for (int k = 0; k < n; ++k) v.push_back(std::pow(10.0, -rng.uniform(7, 13)));
    LinkGainMatrix g(1, n, v);
    const int serving = static_cast<int>(rng.below(n));
    BsSet small(rng.below(std::uint64_t{1} << n));
    BsSet big = small;
    big.insert(static_cast<int>(rng.below(n)));
    const double s1 = sinr(g, 0, serving, small, 1.0, 1e-14);
    const double s2 = sinr(g, 0, serving, big, 1.0, 1e-14);
    CHECK(s2 <= s1);
    CHECK(mcs.best_rate(s2) <= mcs.best_rate(s1));
  }
}

TEST_CASE("property: best_rate non-decreasing") {
  const McsTable d = default_mcs_table();
  double prev = -1.0;
  for (double db = -20.0; db <= 40.0; db += 0.01) {
    const double r = d.best_rate(db_to_linear(db));
    CHECK(r >= prev);
    prev = r;
  }
}

TEST_CASE("property: gains are a pure function of the seed") {
  HexTopologyConfig c;
  c.seed = 11;
  const Topology t = generate_hex_topology(c);
  ChannelModel m;
  CHECK(compute_gains(t, m, 3) == compute_gains(t, m, 3));
  CHECK_FALSE(compute_gains(t, m, 3) == compute_gains(t, m, 4));
}
