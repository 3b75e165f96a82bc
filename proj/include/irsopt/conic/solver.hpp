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

#include "irsopt/conic/program.hpp"

namespace irsopt::conic {

struct SolverOptions {
  double feas_tol = 1e-7;     // primal/dual feasibility
  double rel_gap_tol = 1e-8;  // relative duality gap
  double abs_gap_tol = 1e-10; // absolute duality gap
  int max_iters = 200;
  double step_scale = 0.99;   // fraction of the step to the cone boundary
  int refine_steps = 1;       // iterative refinement of Schur solves
  bool equilibrate = true;    // Ruiz row/block scaling before solving
};

// Primal-dual Nesterov-Todd path-following solver on the homogeneous
// self-dual embedding, with Mehrotra predictor-corrector steps. Rotated
// second-order cones are normalized to plain ones internally. Pure and
// deterministic given identical inputs.
ConicSolution solve(const ConicProgram& p, const SolverOptions& opts = {});

}  // namespace irsopt::conic
