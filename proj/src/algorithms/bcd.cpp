// Copyright 2026 The irsopt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "irsopt/algorithms/bcd.hpp"

#include <cmath>
#include <functional>
#include <limits>

#include "irsopt/rng.hpp"

namespace irsopt {
namespace {

struct StageResult {
  RunStatus status = RunStatus::NumericalFailure;
  MatXc w;
  VecX rho;
  double power = 0.0;
  VecX rank_ratios;  // empty for MRT/ZF
};

using StageFn = std::function<StageResult(const MatXc&)>;

StageResult sdr_stage(const SystemConfig& cfg, const MatXc& h, const AlgoOptions& opts) {
  StageResult out;
  const auto res = solve_power_sdr(cfg, h, opts.solver, opts.rank_one_tol);
  if (res.status == conic::SolveStatus::Infeasible) {
    out.status = RunStatus::Infeasible;
    return out;
  }
  if (res.status != conic::SolveStatus::Optimal) return out;
  out.status = RunStatus::Ok;
  out.w = res.w;
  out.rho = res.rho;
  out.power = res.power;
  out.rank_ratios = res.rank_ratios;
  return out;
}

StageResult mrt_stage(const SystemConfig& cfg, const MatXc& h, const AlgoOptions& opts) {
  StageResult out;
  const auto res = solve_mrt_stage(cfg, h, opts.solver);
  if (res.status == conic::SolveStatus::Infeasible) {
    out.status = RunStatus::Infeasible;
    return out;
  }
  if (res.status != conic::SolveStatus::Optimal) return out;
  out.status = RunStatus::Ok;
  out.w = res.w;
  out.rho = res.rho;
  out.power = res.power;
  return out;
}

StageResult zf_stage(const SystemConfig& cfg, const MatXc& h, ZfDiagnostics* diag) {
  StageResult out;
  const auto res = zf_closed_form(cfg, h);
  if (diag != nullptr) *diag = res.diag;
  if (res.degenerate) {
    out.status = RunStatus::Degenerate;
    return out;
  }
  if (!res.ok) return out;
  // the closed form always satisfies the constraints when it exists
  out.status = RunStatus::Ok;
  out.w = res.w;
  out.rho = res.rho;
  out.power = res.power;
  return out;
}

PhaseShifts initial_phases(int n, const AlgoOptions& opts) {
  if (!opts.random_phase_init) return PhaseShifts::all_ones(n);
  Rng rng(opts.phase_init_seed);
  VecX theta(n);
  for (int i = 0; i < n; ++i) theta[i] = rng.uniform(0.0, 2.0 * kPi);
  return PhaseShifts::from_angles(theta);
}

// Shared alternating loop. `guard` re-solves the beam stage at a candidate
// phase vector and rejects updates that would raise the transmit power
// (always off for the SDR stage, whose monotonicity holds by optimality).
RunResult bcd_loop(const SystemConfig& cfg, const ChannelRealization& real,
                   const AlgoOptions& opts, const StageFn& stage, bool guard,
                   const StageFn& probe_stage = nullptr) {
  RunResult out;
  const int n = cfg.num_irs_elements;
  PhaseShifts u = initial_phases(n, opts);

  MatXc w;
  VecX rho;
  double prev_power = std::numeric_limits<double>::infinity();
  int consecutive_rejects = 0;

  for (int it = 0; it < opts.max_iters; ++it) {
    const MatXc h = effective_channels(real, u);
    const auto beam = stage(h);
    if (beam.status != RunStatus::Ok) {
      out.status = beam.status;
      out.trace.stop = StopReason::Failed;
      return out;
    }
    w = beam.w;
    rho = beam.rho;

    BcdIteration rec;
    rec.objective_w = beam.power;
    rec.rank_ratios = beam.rank_ratios;
    rec.margin_objective = std::numeric_limits<double>::quiet_NaN();
    out.trace.iterations.push_back(rec);

    if (it > 0) {
      const double rel = (prev_power - beam.power) / std::max(prev_power, 1e-300);
      if (std::abs(rel) < opts.obj_tol) {
        out.trace.stop = StopReason::Converged;
        break;
      }
    }
    prev_power = beam.power;

    if (n == 0) {
      out.trace.stop = StopReason::NoIrs;
      break;
    }

    // phase stage
    const PhaseData data = compute_phase_data(real, w);
    const auto program = build_phase_sdr(cfg, data, rho, opts.lambda_weight);
    const auto sol = conic::solve(program, opts.solver);
    auto& cur = out.trace.iterations.back();
    bool accepted = false;
    if (sol.status == conic::SolveStatus::Optimal) {
      cur.margin_objective = -sol.objective;
      const MatXc V = program.hermitian_block_matrix(sol.x, "V");
      const auto ext = extract_phases(V, cfg, data, rho, opts.phase_feas_tol);
      cur.v_ratio = ext.v_ratio;
      if (ext.phases.has_value()) {
        bool take = true;
        if (guard && opts.monotone_guard) {
          const auto& probe_fn = probe_stage ? probe_stage : stage;
          const auto probe = probe_fn(effective_channels(real, *ext.phases));
          take = probe.status == RunStatus::Ok &&
                 probe.power <= beam.power * (1.0 + 1e-9);
        }
        if (take) {
          u = *ext.phases;
          accepted = true;
        }
      }
    }
    cur.phase_accepted = accepted;
    consecutive_rejects = accepted ? 0 : consecutive_rejects + 1;
    if (consecutive_rejects >= 2) {
      out.trace.stop = StopReason::PhaseRejected;
      break;
    }
    if (it == opts.max_iters - 1) out.trace.stop = StopReason::IterationCap;
  }

  out.status = RunStatus::Ok;
  out.design.beamformers = w;
  out.design.ps_ratios = rho;
  out.design.phase_shifts = u;
  return out;
}

}  // namespace

const char* to_string(RunStatus s) {
  switch (s) {
    case RunStatus::Ok: return "ok";
    case RunStatus::Infeasible: return "infeasible";
    case RunStatus::Degenerate: return "degenerate";
    case RunStatus::NumericalFailure: return "numerical-failure";
  }
  return "unknown";
}

std::vector<double> BcdTrace::objectives() const {
  std::vector<double> v;
  v.reserve(iterations.size());
  for (const auto& it : iterations) v.push_back(it.objective_w);
  return v;
}

RunResult bcd_sdr(const SystemConfig& cfg, const ChannelRealization& real,
                  const AlgoOptions& opts) {
  return bcd_loop(cfg, real, opts,
                  [&](const MatXc& h) { return sdr_stage(cfg, h, opts); },
                  /*guard=*/false);
}

RunResult bcd_mrt(const SystemConfig& cfg, const ChannelRealization& real,
                  const AlgoOptions& opts) {
  return bcd_loop(cfg, real, opts,
                  [&](const MatXc& h) { return mrt_stage(cfg, h, opts); },
                  /*guard=*/true);
}

RunResult bcd_zf(const SystemConfig& cfg, const ChannelRealization& real,
                 const AlgoOptions& opts) {
  ZfDiagnostics diag;
  RunResult out = bcd_loop(
      cfg, real, opts, [&](const MatXc& h) { return zf_stage(cfg, h, &diag); },
      /*guard=*/true, [&](const MatXc& h) { return zf_stage(cfg, h, nullptr); });
  out.zf_diag = diag;
  return out;
}

RunResult baseline_no_irs(const SystemConfig& cfg, const ChannelRealization& real,
                          BaselineVariant variant, const AlgoOptions& opts) {
  RunResult out;
  StageResult beam;
  switch (variant) {
    case BaselineVariant::Optimal:
      beam = sdr_stage(cfg, real.h_direct, opts);
      break;
    case BaselineVariant::Mrt:
      beam = mrt_stage(cfg, real.h_direct, opts);
      break;
    case BaselineVariant::Zf:
      beam = zf_stage(cfg, real.h_direct, &out.zf_diag);
      break;
  }
  if (beam.status != RunStatus::Ok) {
    out.status = beam.status;
    out.trace.stop = StopReason::Failed;
    return out;
  }
  out.status = RunStatus::Ok;
  out.design.beamformers = beam.w;
  out.design.ps_ratios = beam.rho;
  out.design.phase_shifts = PhaseShifts::all_ones(cfg.num_irs_elements);
  BcdIteration rec;
  rec.objective_w = beam.power;
  rec.rank_ratios = beam.rank_ratios;
  rec.margin_objective = std::numeric_limits<double>::quiet_NaN();
  out.trace.iterations.push_back(rec);
  out.trace.stop = StopReason::NoIrs;
  return out;
}

}  // namespace irsopt
