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

#include "dms/serialization.h"

#include <string>
#include <vector>

#include "dms/errors.h"

namespace dms {
namespace {

using nlohmann::json;

Point point_from(const json& j) {
  if (!j.is_array() || j.size() != 2) throw ConfigError("point must be [x, y]");
  return {j[0].get<double>(), j[1].get<double>()};
}

template <typename F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw ConfigError(std::string(what) + ": " + e.what());
  }
}

}  // namespace

json topology_to_json(const Topology& t) {
  json bs = json::array();
  for (const auto& p : t.bs_positions) bs.push_back({p.x, p.y});
  json users = json::array();
  for (const auto& p : t.user_positions) users.push_back({p.x, p.y});
  return {{"area_m", {t.area.width, t.area.height}},
          {"isd_m", t.isd},
          {"bs", bs},
          {"users", users},
          {"association", t.association}};
}

Topology topology_from_json(const json& j) {
  return guarded("topology", [&] {
    Topology t;
    const auto& area = j.at("area_m");
    t.area = {area.at(0).get<double>(), area.at(1).get<double>()};
    t.isd = j.at("isd_m").get<double>();
    for (const auto& p : j.at("bs")) t.bs_positions.push_back(point_from(p));
    for (const auto& p : j.at("users")) t.user_positions.push_back(point_from(p));
    t.association = j.at("association").get<std::vector<int>>();
    if (t.association.size() != t.user_positions.size()) {
      throw ConfigError("topology: association size mismatch");
    }
    for (int k : t.association) {
      if (k < 0 || k >= t.num_bs()) {
        throw ConfigError("topology: association index out of range");
      }
    }
    return t;
  });
}

json gains_to_json(const LinkGainMatrix& g) {
  json rows = json::array();
  for (int u = 0; u < g.num_users(); ++u) {
    json row = json::array();
    for (int k = 0; k < g.num_bs(); ++k) row.push_back(g(u, k));
    rows.push_back(std::move(row));
  }
  return {{"n_users", g.num_users()}, {"n_bs", g.num_bs()}, {"gains", rows}};
}

LinkGainMatrix gains_from_json(const json& j) {
  return guarded("gains", [&] {
    const int n_users = j.at("n_users").get<int>();
    const int n_bs = j.at("n_bs").get<int>();
    const auto& rows = j.at("gains");
    if (static_cast<int>(rows.size()) != n_users) {
      throw ConfigError("gains: row count mismatch");
    }
    std::vector<double> flat;
    for (const auto& row : rows) {
      if (static_cast<int>(row.size()) != n_bs) {
        throw ConfigError("gains: column count mismatch");
      }
      for (const auto& v : row) flat.push_back(v.get<double>());
    }
    return LinkGainMatrix(n_users, n_bs, std::move(flat));
  });
}

json action_to_json(const Action& a) {
  json pairs = json::array();
  for (const auto& p : a.pairs()) pairs.push_back({p.user, p.tti});
  return {{"bs", a.owner()}, {"horizon", a.horizon()}, {"pairs", pairs}};
}

Action action_from_json(const json& j) {
  return guarded("action", [&] {
    Action a(j.at("bs").get<int>(), j.at("horizon").get<int>());
    for (const auto& p : j.at("pairs")) {
      const int u = p.at(0).get<int>();
      const int t = p.at(1).get<int>();
      if (t < 0 || t >= a.horizon()) throw ConfigError("action: TTI out of range");
      if (a.user_at(t) != kBlank) {
        throw ConfigError("action: two users in TTI " + std::to_string(t));
      }
      a.assign(t, u);
    }
    return a;
  });
}

json profile_to_json(const ActionProfile& profile) {
  json out = json::array();
  for (const auto& a : profile.actions()) out.push_back(action_to_json(a));
  return out;
}

}  // namespace dms
