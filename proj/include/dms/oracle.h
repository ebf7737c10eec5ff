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

// Exact centralized solvers for tiny instances, exhaustive local solvers and
// an independent constraint checker. Used as ground truth by the tests.

#ifndef DMS_ORACLE_H_
#define DMS_ORACLE_H_

#include <string>
#include <vector>

#include "dms/be_local.h"
#include "dms/game_gamma.h"
#include "dms/game_omega.h"
#include "dms/gbr_local.h"

namespace dms {

struct OracleBounds {
  int max_bs = 3;
  int max_users_per_bs = 3;
  int max_ttis = 6;
};

struct CentralGbrSolution {
  int L = 0;                       // last used TTI, 1-based
  std::vector<bool> used_ttis;     // s_t over W
  ActionProfile profile;           // x and y over W
  std::vector<double> served;      // per global user
  std::vector<double> penalties;   // p_u per global user
  std::vector<int> per_bs_usage;   // TTIs each BS is active in
  int total_activity = 0;
  double objective = 0.0;          // L + alpha sum p_u
};

struct CentralBeSolution {
  ActionProfile profile;           // over Z
  std::vector<double> user_volume; // per global user
  std::vector<double> per_bs_min;
  double utility = 0.0;            // sum of per-BS minima
};

// Minimises L + alpha sum p_u over every joint schedule of W TTIs. Among
// optima, the least total station activity wins. The rate model must be
// TTI invariant. Throws CapacityError above `bounds`.
CentralGbrSolution solve_gbr_central(const GbrScenario& scenario, int horizon,
                                     const OracleBounds& bounds = {});

// Maximises the sum over stations of the smallest user volume over Z TTIs.
CentralBeSolution solve_be_central(const BeScenario& scenario, int horizon,
                                   const OracleBounds& bounds = {});

struct BruteForceBounds {
  int max_users = 3;
  int max_ttis = 5;
};

// Exhaustive argmin of the local cost, recomputed from the rate matrix
// without any shared helper. Ties: fewer pairs, then smaller pair list.
GbrLocalSolution brute_force_local(const GbrLocalInput& in,
                                   const BruteForceBounds& bounds = {});

// Exhaustive lexicographic max-min with at most M_i TTIs. Same ties.
BeLocalSolution brute_force_local(const BeLocalInput& in,
                                  const BruteForceBounds& bounds = {});

// Constraint violations of a centralized solution, empty when valid.
std::vector<std::string> check_gbr_solution(const GbrScenario& scenario,
                                            int horizon,
                                            const CentralGbrSolution& sol);
std::vector<std::string> check_be_solution(const BeScenario& scenario,
                                           int horizon,
                                           const CentralBeSolution& sol);

}  // namespace dms

#endif  // DMS_ORACLE_H_
