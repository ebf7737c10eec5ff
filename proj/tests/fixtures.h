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

// Shared scenarios for the test suites.

#ifndef DMS_TESTS_FIXTURES_H_
#define DMS_TESTS_FIXTURES_H_

#include <memory>
#include <vector>

#include "dms/game_gamma.h"
#include "dms/rate_model.h"

namespace dms::testing {

// Three stations with one user each over two TTIs. User i gets 5.55 alone,
// 5.11 next to station i+1, 2.73 next to station i+2 and 2.51 next to both
// (indices cyclic).
inline std::shared_ptr<InjectedRateModel> three_cycle_model() {
  auto m = std::make_shared<InjectedRateModel>(3, 3);
  for (int i = 0; i < 3; ++i) {
    const int a = (i + 1) % 3;
    const int b = (i + 2) % 3;
    BsSet none, next, after, both;
    next.insert(a);
    after.insert(b);
    both.insert(a);
    both.insert(b);
    m->set(i, none, 5.55);
    m->set(i, next, 5.11);
    m->set(i, after, 2.73);
    m->set(i, both, 2.51);
  }
  return m;
}

inline GbrScenario three_cycle_scenario() {
  GbrScenario s;
  s.model = three_cycle_model();
  s.users = {{0}, {1}, {2}};
  s.demand = DemandSet({5.0, 5.0, 5.0});
  s.alpha = 1000.0;
  s.penalty = PenaltyMode::fixed(0.1);
  return s;
}

// Station 0 serves its user in TTI 0, station 1 in TTI 1, station 2 idle.
inline ActionProfile three_cycle_start() {
  ActionProfile p(3, 2);
  Action a0(0, 2), a1(1, 2);
  a0.assign(0, 0);
  a1.assign(1, 1);
  p.set(0, a0);
  p.set(1, a1);
  return p;
}

}  // namespace dms::testing

#endif  // DMS_TESTS_FIXTURES_H_
