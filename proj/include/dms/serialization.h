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

// JSON forms of topologies, gain matrices and schedules.
//
// Topology:
//   {"area_m": [w, h], "isd_m": d,
//    "bs": [[x, y], ...], "users": [[x, y], ...], "association": [k, ...]}
// Gains:
//   {"n_users": U, "n_bs": N, "gains": [[G_u0, G_u1, ...], ...]}
// Action:
//   {"bs": k, "horizon": T, "pairs": [[u, t], ...]}

#ifndef DMS_SERIALIZATION_H_
#define DMS_SERIALIZATION_H_

#include "dms/radio.h"
#include "dms/schedule.h"
#include "json.hpp"

namespace dms {

nlohmann::json topology_to_json(const Topology& topology);
// Throws ConfigError on malformed input.
Topology topology_from_json(const nlohmann::json& j);

nlohmann::json gains_to_json(const LinkGainMatrix& gains);
LinkGainMatrix gains_from_json(const nlohmann::json& j);

nlohmann::json action_to_json(const Action& action);
Action action_from_json(const nlohmann::json& j);

nlohmann::json profile_to_json(const ActionProfile& profile);

}  // namespace dms

#endif  // DMS_SERIALIZATION_H_
