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

#pragma once

#include <cstdint>
#include <vector>

#include "irsopt/algorithms/subproblems.hpp"
#include "irsopt/design.hpp"

namespace irsopt {

enum class RunStatus { Ok, Infeasible, Degenerate, NumericalFailure };
const char* to_string(RunStatus s);

enum class StopReason {
  Converged,       // relative objective decrease below tolerance
  PhaseRejected,   // two consecutive phase updates rejected
  IterationCap,
  NoIrs,           // N = 0 degenerates to a single beamformer/ratio solve
  Failed,
};

struct BcdIteration {
  double objective_w = 0.0;        // sum ||w_k||^2 after the beam stage
  double margin_objective = 0.0;   // phase-stage sum of margins (NaN if none)
  VecX rank_ratios;                // per-user lambda_2/lambda_1 of the SDR stage
  double v_ratio = 0.0;            // lambda_2/lambda_1 of the phase SDR
  bool phase_accepted = false;
};

struct BcdTrace {
  std::vector<BcdIteration> iterations;
  StopReason stop = StopReason::Failed;
  std::vector<double> objectives() const;
};

struct AlgoOptions {
  double obj_tol = 1e-4;          // relative objective decrease to stop
  int max_iters = 30;
  double rank_one_tol = 1e-4;
  double phase_feas_tol = 1e-9;   // slack when accepting a phase candidate
  double lambda_weight = 1.0;     // harvester-margin weight in the phase stage
  bool random_phase_init = false; // default: all angles 2*pi
  std::uint64_t phase_init_seed = 0;
  bool monotone_guard = true;     // MRT/ZF: reject phase updates that raise power
  conic::SolverOptions solver;
};

struct RunResult {
  RunStatus status = RunStatus::NumericalFailure;
  Design design;
  BcdTrace trace;
  ZfDiagnostics zf_diag;  // populated by the ZF variants
};

// Alternates the SDR beamformer/splitting stage with the phase-margin SDR
// until the transmit power stalls.
RunResult bcd_sdr(const SystemConfig& cfg, const ChannelRealization& real,
                  const AlgoOptions& opts = {});

// Same loop with maximum-ratio directions and the power/splitting SOCP.
RunResult bcd_mrt(const SystemConfig& cfg, const ChannelRealization& real,
                  const AlgoOptions& opts = {});

// Same loop with the zero-forcing closed form (requires M >= K).
RunResult bcd_zf(const SystemConfig& cfg, const ChannelRealization& real,
                 const AlgoOptions& opts = {});

enum class BaselineVariant { Optimal, Mrt, Zf };

// Single-pass designs that ignore the reflecting surface entirely
// (channels are the direct links only; output independent of N).
RunResult baseline_no_irs(const SystemConfig& cfg, const ChannelRealization& real,
                          BaselineVariant variant, const AlgoOptions& opts = {});

}  // namespace irsopt
