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

#include "dms/supervisor.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>
#include <utility>

#include "dms/errors.h"
#include "dms/metrics.h"

namespace dms {
namespace {

struct GbrEpoch {
  GammaResult gamma;
  int T = 0;
  bool feasible = true;
  int rounds = 0;
  int probes = 0;
};

GbrEpoch squeeze_or_reserve(const GbrScenario& scenario, int horizon,
                            const GammaOptions& options) {
  GbrEpoch out;
  try {
    SqueezeResult s = time_squeeze(scenario, horizon, options);
    out.T = s.T;
    out.rounds = s.gamma_rounds;
    out.probes = s.state.probes;
    out.gamma = std::move(s.gamma);
  } catch (const InfeasibleError&) {
    out.gamma = run_gamma(scenario, horizon, options);
    out.T = horizon;
    out.feasible = false;
    out.rounds = out.gamma.rounds;
    out.probes = 1;
  }
  return out;
}

double to_mbps(double bits, int horizon, double slot_s) {
  return bits / (horizon * slot_s) / 1e6;
}

}  // namespace

int ceil_log2(int w) {
  return w <= 1 ? 0 : std::bit_width(static_cast<unsigned>(w - 1));
}

bool all_ttis_used(const ActionProfile& profile) {
  for (int t = 0; t < profile.horizon(); ++t) {
    bool used = false;
    for (const Action& a : profile.actions()) {
      if (a.user_at(t) != kBlank) {
        used = true;
        break;
      }
    }
    if (!used) return false;
  }
  return true;
}

SqueezeResult time_squeeze(const GbrScenario& scenario, int horizon,
                           const GammaOptions& gamma, bool stop_when_full) {
  if (horizon < 1) throw ConfigError("horizon W must be at least 1");
  SqueezeResult res;
  SqueezeState& st = res.state;
  st.cap = ceil_log2(horizon);
  st.lo = 1;
  st.hi = horizon;

  auto probe = [&](int T, const std::optional<ActionProfile>& warm) {
    GammaOptions o = gamma;
    o.initial = warm;
    GammaResult g = run_gamma(scenario, T, o);
    ++st.probes;
    res.gamma_rounds += g.rounds;
    res.probes.push_back({T, g.penalty_free(), all_ttis_used(g.profile),
                          g.rounds, g.converged});
    return g;
  };

  GammaResult best = probe(horizon, gamma.initial);
  if (!best.penalty_free()) {
    throw InfeasibleError("guaranteed demand cannot be served within W = " +
                          std::to_string(horizon) + " TTIs (" +
                          std::to_string(best.unserved_users) +
                          " users short)");
  }
  st.best_T = horizon;
  bool done = stop_when_full && all_ttis_used(best.profile);
  ActionProfile last = best.profile;
  int bisections = 0;
  while (!done && bisections < st.cap && st.lo < st.hi) {
    const int mid = (st.lo + st.hi) / 2;
    GammaResult g = probe(mid, last);
    ++bisections;
    last = g.profile;
    if (g.penalty_free()) {
      st.hi = mid;
      done = stop_when_full && all_ttis_used(g.profile);
      if (mid < st.best_T) {
        st.best_T = mid;
        best = std::move(g);
      }
    } else {
      st.lo = mid + 1;
    }
  }
  res.T = st.best_T;
  res.gamma = std::move(best);
  return res;
}

AimdState aimd_init(int n_bs, int Z) {
  AimdState s;
  s.Z = Z;
  const int m_star =
      n_bs > 0 ? std::max(1, (Z + n_bs - 1) / n_bs) : std::max(1, Z);
  s.M.assign(n_bs, m_star);
  s.M_star.assign(n_bs, m_star);
  return s;
}

AimdState aimd_step(AimdState state, std::span<const double> per_bs_eta,
                    AimdChange* change) {
  const int n = static_cast<int>(state.M.size());
  if (static_cast<int>(per_bs_eta.size()) != n) {
    throw std::invalid_argument("need one eta per base station");
  }
  double eta = 0.0;
  for (double e : per_bs_eta) eta += e;
  state.eta_prev = state.eta_curr;

  AimdChange c;
  if (eta > state.eta_prev) {
    for (int i = 0; i < n; ++i) {
      if (state.M[i] < state.Z &&
          (c.bs < 0 || per_bs_eta[i] < per_bs_eta[c.bs])) {
        c.bs = i;
      }
    }
    if (c.bs >= 0) {
      c.from = state.M[c.bs];
      c.to = c.from + 1;
    }
  } else {
    for (int i = 0; i < n; ++i) {
      if (state.M[i] > state.M_star[i] &&
          (c.bs < 0 || per_bs_eta[i] > per_bs_eta[c.bs])) {
        c.bs = i;
      }
    }
    if (c.bs >= 0) {
      c.from = state.M[c.bs];
      c.to = std::max(state.M_star[c.bs], (c.from + 1) / 2);
      eta = 0.0;
    }
  }
  if (c.bs >= 0) state.M[c.bs] = c.to;
  state.eta_curr = eta;
  if (change) *change = c;
  return state;
}

std::vector<RunRecord> run_dms(const DmsSetup& setup, int horizon, int epochs) {
  if (horizon < 1) throw ConfigError("horizon W must be at least 1");
  if (epochs < 0) throw ConfigError("epoch count must be non-negative");
  if (!setup.model || !setup.demand) {
    throw std::invalid_argument("DMS setup needs a rate model and demand");
  }
  const int n = setup.n_bs;
  std::vector<RunRecord> records;
  std::optional<DemandSet> prev_demand;
  ActionProfile gbr_profile;
  std::optional<ActionProfile> be_profile;
  AimdState aimd;
  int T = horizon;
  int prev_Z = -1;

  for (int e = 0; e < epochs; ++e) {
    RunRecord rec;
    rec.epoch = e;
    const auto model = setup.model(e);
    GbrScenario gs;
    gs.model = model;
    gs.users = setup.gbr_users;
    gs.demand = setup.demand(e);
    gs.alpha = setup.alpha;
    gs.penalty = setup.penalty;
    gs.br = setup.br;
    const bool changed =
        !prev_demand || !std::ranges::equal(prev_demand->values(),
                                            gs.demand.values());
    prev_demand = gs.demand;

    GbrEpoch g;
    if (changed) {
      g = squeeze_or_reserve(gs, horizon, setup.gamma);
      rec.squeezed = true;
    } else {
      GammaOptions o = setup.gamma;
      o.initial = gbr_profile;
      g.gamma = run_gamma(gs, T, o);
      g.T = T;
      g.rounds = g.gamma.rounds;
      if (!g.gamma.penalty_free()) {
        const int replay_rounds = g.rounds;
        g = squeeze_or_reserve(gs, horizon, setup.gamma);
        g.rounds += replay_rounds;
        rec.squeezed = true;
      }
    }
    T = g.T;
    gbr_profile = g.gamma.profile;
    rec.T = T;
    rec.gbr_feasible = g.feasible;
    rec.squeeze_probes = g.probes;
    rec.total_penalty = g.gamma.total_penalty;
    rec.unserved_users = g.gamma.unserved_users;
    rec.gamma_rounds = g.rounds;
    rec.gamma_converged = g.gamma.converged;

    double gbr_bits = 0.0;
    std::vector<int> usage;
    for (int bs = 0; bs < n; ++bs) {
      const GbrLocalInput in = player_input(gs, gbr_profile, bs);
      const auto served = served_traffic(gbr_profile[bs], in);
      for (int i = 0; i < in.num_users(); ++i) {
        gbr_bits += std::min(served[i], in.demands[i]);
      }
      usage.push_back(gbr_profile[bs].size());
      rec.gbr_patterns.push_back(pattern_from_action(gbr_profile[bs]).to_hex());
    }
    rec.gbr_throughput_mbps = to_mbps(gbr_bits, horizon, setup.slot_s);
    rec.utilization_index = time_utilization_index(usage, T);

    const int Z = g.feasible ? horizon - T : 0;
    rec.Z = Z;
    rec.be_user_volume.assign(setup.n_users, 0.0);
    rec.per_bs_eta.assign(n, 0.0);
    if (Z > 0) {
      if (Z != prev_Z) {
        aimd = aimd_init(n, Z);
        be_profile.reset();
      }
      BeScenario bs;
      bs.model = model;
      bs.users = setup.be_users;
      bs.options = setup.be;
      bs.tti_offset = T;
      OmegaOptions oo;
      oo.deadline = setup.omega_deadline;
      oo.initial = be_profile;
      const OmegaResult om = run_omega(bs, Z, aimd.M, oo);
      be_profile = om.profile;
      rec.M = aimd.M;
      rec.per_bs_eta = om.per_bs_eta;
      rec.omega_rounds = om.rounds;
      rec.omega_converged = om.converged;
      rec.be_user_volume = om.user_volume;
      for (const auto& p : om.patterns) rec.be_patterns.push_back(p.to_hex());
      double be_bits = 0.0;
      for (double v : om.user_volume) be_bits += v;
      rec.be_throughput_mbps = to_mbps(be_bits, horizon, setup.slot_s);
      for (double v : om.per_bs_eta) rec.eta += v;
      rec.utility = om.utility();
      aimd = aimd_step(std::move(aimd), om.per_bs_eta);
    } else {
      rec.omega_converged = true;
      be_profile.reset();
    }
    prev_Z = Z;

    OverheadParams p;
    p.bits_per_scalar = setup.bits_per_scalar;
    p.horizon = horizon;
    p.n_bs = std::max(1, n);
    p.n_users = std::max(1, setup.n_users);
    p.rounds = std::max(1, rec.gamma_rounds + rec.omega_rounds);
    const OverheadBits bits = overhead_bits(p, Scheme::kDms);
    rec.overhead_ic = bits.ic;
    rec.overhead_ib = bits.ib;
    records.push_back(std::move(rec));
  }
  return records;
}

}  // namespace dms
