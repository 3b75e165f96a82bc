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

#include <optional>
#include <vector>

#include "irsopt/channel.hpp"
#include "irsopt/config.hpp"
#include "irsopt/conic/solver.hpp"

namespace irsopt {

// --- beamformer / power-splitting stage at fixed phases -------------------

// Semidefinite relaxation of the joint beamformer and power-splitting
// design for fixed composite channels h_k (columns of `h`):
//
//   min sum_k Tr(W_k)
//   s.t. Tr(H_k W_k)/gamma_k - sum_{i != k} Tr(H_k W_i) >= sigma_k^2 + t_k,
//        t_k rho_k >= delta_k^2                      (rotated SOC)
//        sum_i Tr(H_k W_i) >= s_k,
//        s_k (1 - rho_k) >= e_k / eta_k              (rotated SOC)
//        W_k Hermitian PSD (embedded), 0 <= rho_k <= 1,
//
// with H_k = h_k h_k^H. The cones force rho_k strictly inside (0, 1).
conic::ConicProgram build_power_sdr(const SystemConfig& cfg, const MatXc& h);

struct RankOneExtraction {
  VecXc w;
  double ratio = 0.0;   // lambda_2 / lambda_1
  bool fallback = false;  // ratio above tolerance; principal eigenvector used
  bool zero = false;      // matrix numerically zero
};

// w = sqrt(lambda_1) v_1; flags the principal-eigenvector fallback when the
// trailing eigenvalue mass exceeds `tol`.
RankOneExtraction extract_rank_one(const MatXc& W, double tol = 1e-4);

struct PowerSdrResult {
  conic::SolveStatus status = conic::SolveStatus::NumericalFailure;
  MatXc w;       // M x K extracted beamformers
  VecX rho;      // K
  double sdr_objective = 0.0;  // sum_k Tr(W_k), watts
  double power = 0.0;          // sum_k ||w_k||^2 of the extracted beamformers
  VecX rank_ratios;            // per-user lambda_2 / lambda_1
  bool any_fallback = false;
};

PowerSdrResult solve_power_sdr(const SystemConfig& cfg, const MatXc& h,
                               const conic::SolverOptions& sopts = {},
                               double rank_tol = 1e-4);

// --- phase-shift stage at fixed beamformers and splitting ratios ----------

// Per-user data of the fixed-beam system: a(k,i) = h_{b,k}^H w_i and
// b[k][i] = diag(h_{r,k}^H) H_{b,r} w_i, so the composite scalar gain is
// q^H b + a with q = conj(u). G[k][i] hosts the quadratic form
// [v; 1]^H G [v; 1] = |q^H b + a|^2 - |a|^2.
struct PhaseData {
  MatXc a;                               // K x K
  std::vector<std::vector<VecXc>> bvec;  // [k][i], length N
  std::vector<std::vector<MatXc>> G;     // [k][i], (N+1) x (N+1) Hermitian
  Index num_users() const { return a.rows(); }
  Index num_elements() const { return bvec.empty() ? 0 : bvec[0][0].size(); }
};

PhaseData compute_phase_data(const ChannelRealization& real, const MatXc& w);

// Relative margins of the fixed-beam QoS constraints at reflection u.
struct FixedBeamMargins {
  VecX sinr_margin;  // (lhs - rhs) / rhs of the decoder constraint
  VecX eh_margin;    // likewise for the harvester constraint
  double worst() const { return std::min(sinr_margin.minCoeff(), eh_margin.minCoeff()); }
};

FixedBeamMargins fixed_beam_margins(const SystemConfig& cfg, const PhaseData& data,
                                    const VecX& rho, const VecXc& u);

// Margin-maximization SDR over V = [q; 1][q; 1]^H with unit diagonal:
//
//   max sum_k (alpha_k + lambda phi_k)
//   s.t. Tr(G_kk V)/gamma_k - sum_{i != k} Tr(G_ki V) >= rhs1_k + alpha_k,
//        sum_i Tr(G_ki V) >= rhs2_k + phi_k,
//        diag(V) = 1, V PSD (embedded), alpha, phi >= 0,
//
// where the |a|^2 constants are folded into the affine right-hand sides.
conic::ConicProgram build_phase_sdr(const SystemConfig& cfg, const PhaseData& data,
                                    const VecX& rho, double lambda_weight = 1.0);

struct PhaseExtraction {
  std::optional<PhaseShifts> phases;  // empty = keep previous
  double v_ratio = 0.0;               // lambda_2 / lambda_1 of V
  int eigenvector_rank = -1;          // 0 = principal
};

// Scans eigenvectors of V in decreasing eigenvalue order, projects each to
// unit modulus after normalizing the final entry's phase, and returns the
// first candidate whose fixed-beam margins stay above -feas_tol.
PhaseExtraction extract_phases(const MatXc& V, const SystemConfig& cfg,
                               const PhaseData& data, const VecX& rho,
                               double feas_tol = 1e-9);

// --- maximum-ratio-transmission stage --------------------------------------

// SOCP over transmit powers and splitting ratios for fixed unit beam
// directions, with gains c(k,i) = |h_k^H wbar_i|^2:
//
//   min sum_k P_k
//   s.t. (1+gamma_k) c_kk P_k = z_k + gamma_k (Pbar_k + sigma_k^2),
//        Pbar_k = sum_i c_ki P_i,
//        || [2 sqrt(gamma_k delta_k^2); z_k - rho_k] || <= z_k + rho_k,
//        || [2 sqrt(e_k/eta_k); (1-rho_k) - Pbar_k] || <= (1-rho_k) + Pbar_k,
//        P, z, Pbar >= 0, 0 <= rho_k <= 1.
conic::ConicProgram build_mrt_socp(const SystemConfig& cfg, const MatX& gains);

struct MrtResult {
  conic::SolveStatus status = conic::SolveStatus::NumericalFailure;
  MatXc w;   // M x K scaled beamformers sqrt(P_k) wbar_k
  VecX rho;
  VecX power_per_user;
  double power = 0.0;
};

MrtResult solve_mrt_stage(const SystemConfig& cfg, const MatXc& h,
                          const conic::SolverOptions& sopts = {});

// --- zero-forcing closed form ----------------------------------------------

// Positive root of rho^2 + (kappa + theta - 1) rho - theta = 0.
double zf_ps_ratio(double kappa, double theta);

struct ZfDiagnostics {
  // Relative harvested-power equality residual of each constant set,
  // max over users: the (gamma_k + 1)-denominator set and the re-derived
  // gamma_k set. The set attaining equality is the one used.
  double residual_gamma_plus_one = 0.0;
  double residual_gamma = 0.0;
  bool used_gamma_form = true;
};

struct ZfResult {
  bool ok = false;
  bool degenerate = false;  // some user's channel lies in the others' span
  MatXc w;   // M x K
  VecX rho;
  double power = 0.0;
  ZfDiagnostics diag;
};

// Interference-free design: w_k is the scaled projection of h_k onto the
// null space of the other users' channels, and rho_k solves the two active
// QoS constraints in closed form. Requires M >= K.
ZfResult zf_closed_form(const SystemConfig& cfg, const MatXc& h);

}  // namespace irsopt
