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

#include "irsopt/algorithms/subproblems.hpp"

#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace irsopt {
namespace {

std::string numbered(const char* stem, int k) { return std::string(stem) + std::to_string(k + 1); }

}  // namespace

conic::ConicProgram build_power_sdr(const SystemConfig& cfg, const MatXc& h) {
  const int m = cfg.num_bs_antennas;
  const int k = cfg.num_users;
  if (h.rows() != m || h.cols() != k) {
    throw std::invalid_argument("build_power_sdr: channel matrix must be M x K");
  }

  conic::ConicProgram p;
  std::vector<Index> W(k);
  for (int u = 0; u < k; ++u) W[u] = p.add_hermitian_psd_block(numbered("W", u), m);
  const Index rho = p.add_nonneg_block("rho", k);
  const Index sinr_slack = p.add_nonneg_block("sinr_slack", k);
  const Index eh_slack = p.add_nonneg_block("eh_slack", k);
  const Index rho_box = p.add_nonneg_block("rho_box", k);
  std::vector<Index> id_hyp(k), eh_hyp(k);
  for (int u = 0; u < k; ++u) id_hyp[u] = p.add_rotated_soc_block(numbered("id_hyp", u), 3);
  for (int u = 0; u < k; ++u) eh_hyp[u] = p.add_rotated_soc_block(numbered("eh_hyp", u), 3);

  for (int u = 0; u < k; ++u) {
    const MatXc Hk = h.col(u) * h.col(u).adjoint();

    // decoder constraint with the splitting slack t_u = id_hyp[u][0]
    Index r = p.add_row(cfg.antenna_noise_w[u]);
    for (int i = 0; i < k; ++i) {
      p.add_row_hermitian_trace(r, W[i], Hk, i == u ? 1.0 / cfg.sinr_target[u] : -1.0);
    }
    p.add_entry(r, id_hyp[u], -1.0);
    p.add_entry(r, sinr_slack + u, -1.0);

    // harvester constraint with the slack s_u = eh_hyp[u][0]
    r = p.add_row(0.0);
    for (int i = 0; i < k; ++i) p.add_row_hermitian_trace(r, W[i], Hk, 1.0);
    p.add_entry(r, eh_hyp[u], -1.0);
    p.add_entry(r, eh_slack + u, -1.0);

    // rho_u + box = 1
    r = p.add_row(1.0);
    p.add_entry(r, rho + u, 1.0);
    p.add_entry(r, rho_box + u, 1.0);

    // t_u rho_u >= delta^2: wire the cone's (y, z, x) to (t, rho, sqrt(delta^2))
    r = p.add_row(0.0);
    p.add_entry(r, id_hyp[u] + 1, 1.0);
    p.add_entry(r, rho + u, -1.0);
    r = p.add_row(std::sqrt(cfg.id_noise_w[u]));
    p.add_entry(r, id_hyp[u] + 2, 1.0);

    // s_u (1 - rho_u) >= e/eta
    r = p.add_row(1.0);
    p.add_entry(r, eh_hyp[u] + 1, 1.0);
    p.add_entry(r, rho + u, 1.0);
    r = p.add_row(std::sqrt(cfg.eh_target_w[u] / cfg.eh_efficiency[u]));
    p.add_entry(r, eh_hyp[u] + 2, 1.0);

    p.add_obj_hermitian_trace(W[u], MatXc::Identity(m, m), 1.0);
  }
  return p;
}

RankOneExtraction extract_rank_one(const MatXc& W, double tol) {
  RankOneExtraction out;
  Eigen::SelfAdjointEigenSolver<MatXc> es(W);
  const Index d = W.rows();
  const double l1 = std::max(es.eigenvalues()[d - 1], 0.0);
  const double l2 = d > 1 ? std::max(es.eigenvalues()[d - 2], 0.0) : 0.0;
  if (l1 <= 1e-18) {
    out.zero = true;
    out.w = VecXc::Zero(d);
    return out;
  }
  out.ratio = l2 / l1;
  out.fallback = out.ratio > tol;
  out.w = std::sqrt(l1) * es.eigenvectors().col(d - 1);
  return out;
}

PowerSdrResult solve_power_sdr(const SystemConfig& cfg, const MatXc& h,
                               const conic::SolverOptions& sopts, double rank_tol) {
  const int k = cfg.num_users;
  const auto program = build_power_sdr(cfg, h);
  const auto sol = conic::solve(program, sopts);

  PowerSdrResult out;
  out.status = sol.status;
  if (sol.status != conic::SolveStatus::Optimal) return out;

  out.w.resize(cfg.num_bs_antennas, k);
  out.rho = program.block_values(sol.x, "rho");
  out.rank_ratios.resize(k);
  out.sdr_objective = sol.objective;
  for (int u = 0; u < k; ++u) {
    const MatXc Wu = program.hermitian_block_matrix(sol.x, numbered("W", u));
    const auto ext = extract_rank_one(Wu, rank_tol);
    if (ext.zero) {
      // positive targets make a vanishing transmit covariance inconsistent
      out.status = conic::SolveStatus::NumericalFailure;
      return out;
    }
    out.w.col(u) = ext.w;
    out.rank_ratios[u] = ext.ratio;
    out.any_fallback = out.any_fallback || ext.fallback;
  }
  out.power = out.w.squaredNorm();
  return out;
}

PhaseData compute_phase_data(const ChannelRealization& real, const MatXc& w) {
  const Index k = real.num_users();
  const Index n = real.num_irs_elements();
  PhaseData data;
  data.a.resize(k, k);
  data.bvec.assign(k, std::vector<VecXc>(k));
  data.G.assign(k, std::vector<MatXc>(k));
  for (Index ku = 0; ku < k; ++ku) {
    const VecXc hr_conj = real.h_irs_user.col(ku).conjugate();
    for (Index i = 0; i < k; ++i) {
      data.a(ku, i) = real.h_direct.col(ku).dot(w.col(i));
      const VecXc b = hr_conj.cwiseProduct(real.H_bs_irs * w.col(i));
      data.bvec[ku][i] = b;
      MatXc G(n + 1, n + 1);
      G.topLeftCorner(n, n) = b * b.adjoint();
      G.topRightCorner(n, 1) = b * std::conj(data.a(ku, i));
      G.bottomLeftCorner(1, n) = data.a(ku, i) * b.adjoint();
      G(n, n) = 0.0;
      data.G[ku][i] = G;
    }
  }
  return data;
}

FixedBeamMargins fixed_beam_margins(const SystemConfig& cfg, const PhaseData& data,
                                    const VecX& rho, const VecXc& u) {
  const Index k = data.num_users();
  FixedBeamMargins out;
  out.sinr_margin.resize(k);
  out.eh_margin.resize(k);
  for (Index ku = 0; ku < k; ++ku) {
    double signal = 0.0, interference = 0.0, total = 0.0;
    for (Index i = 0; i < k; ++i) {
      // composite gain q^H b + a with q = conj(u)
      const cxd s = u.cwiseProduct(data.bvec[ku][i]).sum() + data.a(ku, i);
      const double p2 = std::norm(s);
      total += p2;
      if (i == ku) signal = p2;
      else interference += p2;
    }
    const double rhs1 = cfg.antenna_noise_w[ku] + cfg.id_noise_w[ku] / rho[ku];
    out.sinr_margin[ku] =
        (signal / cfg.sinr_target[ku] - interference - rhs1) / rhs1;
    const double rhs2 = cfg.eh_target_w[ku] / (cfg.eh_efficiency[ku] * (1.0 - rho[ku]));
    out.eh_margin[ku] = (total - rhs2) / rhs2;
  }
  return out;
}

conic::ConicProgram build_phase_sdr(const SystemConfig& cfg, const PhaseData& data,
                                    const VecX& rho, double lambda_weight) {
  const Index k = data.num_users();
  const Index n = data.num_elements();
  conic::ConicProgram p;
  const Index V = p.add_hermitian_psd_block("V", n + 1);
  const Index alpha = p.add_nonneg_block("alpha", k);
  const Index phi = p.add_nonneg_block("phi", k);
  const Index s1 = p.add_nonneg_block("sinr_slack", k);
  const Index s2 = p.add_nonneg_block("eh_slack", k);

  // unit diagonal
  for (Index d = 0; d <= n; ++d) {
    MatXc E = MatXc::Zero(n + 1, n + 1);
    E(d, d) = 1.0;
    p.add_row_hermitian_trace(p.add_row(1.0), V, E);
  }

  for (Index ku = 0; ku < k; ++ku) {
    // |a|^2 constants live on the affine side since G's corner is zero
    double rhs1 = cfg.antenna_noise_w[ku] + cfg.id_noise_w[ku] / rho[ku] -
                  std::norm(data.a(ku, ku)) / cfg.sinr_target[ku];
    double rhs2 = cfg.eh_target_w[ku] / (cfg.eh_efficiency[ku] * (1.0 - rho[ku]));
    for (Index i = 0; i < k; ++i) {
      if (i != ku) rhs1 += std::norm(data.a(ku, i));
      rhs2 -= std::norm(data.a(ku, i));
    }

    Index r = p.add_row(rhs1);
    for (Index i = 0; i < k; ++i) {
      p.add_row_hermitian_trace(r, V, data.G[ku][i],
                                i == ku ? 1.0 / cfg.sinr_target[ku] : -1.0);
    }
    p.add_entry(r, alpha + ku, -1.0);
    p.add_entry(r, s1 + ku, -1.0);

    r = p.add_row(rhs2);
    for (Index i = 0; i < k; ++i) p.add_row_hermitian_trace(r, V, data.G[ku][i], 1.0);
    p.add_entry(r, phi + ku, -1.0);
    p.add_entry(r, s2 + ku, -1.0);

    p.set_objective(alpha + ku, -1.0);
    p.set_objective(phi + ku, -lambda_weight);
  }
  return p;
}

PhaseExtraction extract_phases(const MatXc& V, const SystemConfig& cfg,
                               const PhaseData& data, const VecX& rho,
                               double feas_tol) {
  const Index n = V.rows() - 1;
  PhaseExtraction out;
  Eigen::SelfAdjointEigenSolver<MatXc> es(V);
  const double l1 = std::max(es.eigenvalues()[n], 0.0);
  const double l2 = n >= 1 ? std::max(es.eigenvalues()[n - 1], 0.0) : 0.0;
  out.v_ratio = l1 > 0.0 ? l2 / l1 : 0.0;

  for (Index rank = 0; rank <= n; ++rank) {
    const VecXc v = es.eigenvectors().col(n - rank);
    // rotate the final entry onto the positive real axis, then project
    const cxd last = v[n];
    const cxd rot = std::abs(last) > 0.0 ? cxd(std::conj(last) / std::abs(last)) : cxd(1.0);
    VecXc q(n);
    for (Index j = 0; j < n; ++j) {
      const cxd vj = v[j] * rot;
      q[j] = std::abs(vj) > 0.0 ? vj / std::abs(vj) : cxd(1.0);
    }
    const VecXc u = q.conjugate();
    if (fixed_beam_margins(cfg, data, rho, u).worst() >= -feas_tol) {
      PhaseShifts ps;
      ps.u = u;
      out.phases = ps;
      out.eigenvector_rank = static_cast<int>(rank);
      return out;
    }
  }
  return out;  // keep previous phases
}

conic::ConicProgram build_mrt_socp(const SystemConfig& cfg, const MatX& gains) {
  const int k = cfg.num_users;
  if (gains.rows() != k || gains.cols() != k) {
    throw std::invalid_argument("build_mrt_socp: gain matrix must be K x K");
  }
  conic::ConicProgram p;
  const Index P = p.add_nonneg_block("P", k);
  const Index rho = p.add_nonneg_block("rho", k);
  const Index Pbar = p.add_nonneg_block("Pbar", k);
  const Index zvar = p.add_nonneg_block("z", k);
  const Index rho_box = p.add_nonneg_block("rho_box", k);
  std::vector<Index> id_soc(k), eh_soc(k);
  for (int u = 0; u < k; ++u) id_soc[u] = p.add_soc_block(numbered("id_soc", u), 3);
  for (int u = 0; u < k; ++u) eh_soc[u] = p.add_soc_block(numbered("eh_soc", u), 3);

  for (int u = 0; u < k; ++u) {
    const double gamma = cfg.sinr_target[u];

    // (1 + gamma) c_uu P_u = z_u + gamma (Pbar_u + sigma^2)
    Index r = p.add_row(gamma * cfg.antenna_noise_w[u]);
    p.add_entry(r, P + u, (1.0 + gamma) * gains(u, u));
    p.add_entry(r, zvar + u, -1.0);
    p.add_entry(r, Pbar + u, -gamma);

    // Pbar_u = sum_i c_ui P_i
    r = p.add_row(0.0);
    p.add_entry(r, Pbar + u, 1.0);
    for (int i = 0; i < k; ++i) p.add_entry(r, P + i, -gains(u, i));

    // rho box
    r = p.add_row(1.0);
    p.add_entry(r, rho + u, 1.0);
    p.add_entry(r, rho_box + u, 1.0);

    // || [2 sqrt(gamma delta^2); z - rho] || <= z + rho
    r = p.add_row(0.0);
    p.add_entry(r, id_soc[u], 1.0);
    p.add_entry(r, zvar + u, -1.0);
    p.add_entry(r, rho + u, -1.0);
    r = p.add_row(2.0 * std::sqrt(gamma * cfg.id_noise_w[u]));
    p.add_entry(r, id_soc[u] + 1, 1.0);
    r = p.add_row(0.0);
    p.add_entry(r, id_soc[u] + 2, 1.0);
    p.add_entry(r, zvar + u, -1.0);
    p.add_entry(r, rho + u, 1.0);

    // || [2 sqrt(e/eta); (1-rho) - Pbar] || <= (1-rho) + Pbar
    r = p.add_row(1.0);
    p.add_entry(r, eh_soc[u], 1.0);
    p.add_entry(r, rho + u, 1.0);
    p.add_entry(r, Pbar + u, -1.0);
    r = p.add_row(2.0 * std::sqrt(cfg.eh_target_w[u] / cfg.eh_efficiency[u]));
    p.add_entry(r, eh_soc[u] + 1, 1.0);
    r = p.add_row(1.0);
    p.add_entry(r, eh_soc[u] + 2, 1.0);
    p.add_entry(r, rho + u, 1.0);
    p.add_entry(r, Pbar + u, 1.0);

    p.set_objective(P + u, 1.0);
  }
  return p;
}

MrtResult solve_mrt_stage(const SystemConfig& cfg, const MatXc& h,
                          const conic::SolverOptions& sopts) {
  const int k = cfg.num_users;
  MatXc wbar(h.rows(), k);
  for (int u = 0; u < k; ++u) wbar.col(u) = h.col(u) / h.col(u).norm();
  MatX gains(k, k);
  for (int u = 0; u < k; ++u)
    for (int i = 0; i < k; ++i) gains(u, i) = std::norm(h.col(u).dot(wbar.col(i)));

  const auto program = build_mrt_socp(cfg, gains);
  const auto sol = conic::solve(program, sopts);

  MrtResult out;
  out.status = sol.status;
  if (sol.status != conic::SolveStatus::Optimal) return out;
  out.power_per_user = program.block_values(sol.x, "P");
  out.rho = program.block_values(sol.x, "rho");
  out.w.resize(h.rows(), k);
  for (int u = 0; u < k; ++u) {
    out.w.col(u) = std::sqrt(std::max(out.power_per_user[u], 0.0)) * wbar.col(u);
  }
  out.power = out.power_per_user.sum();
  return out;
}

double zf_ps_ratio(double kappa, double theta) {
  const double s = kappa + theta - 1.0;
  return 0.5 * (-s + std::sqrt(s * s + 4.0 * theta));
}

ZfResult zf_closed_form(const SystemConfig& cfg, const MatXc& h) {
  const int m = cfg.num_bs_antennas;
  const int k = cfg.num_users;
  if (m < k) {
    throw std::invalid_argument("zf_closed_form: requires num_bs_antennas >= num_users");
  }

  ZfResult out;
  out.w.resize(m, k);
  out.rho.resize(k);

  // rho candidates from both constant sets; the harvested-power equality
  // residual decides which one the closed form actually solves.
  double worst_res_g1 = 0.0, worst_res_g = 0.0;
  MatXc w_g1(m, k), w_g(m, k);
  VecX rho_g1(k), rho_g(k);

  for (int u = 0; u < k; ++u) {
    MatXc others(m, k - 1);
    for (int i = 0, col = 0; i < k; ++i) {
      if (i != u) others.col(col++) = h.col(i);
    }
    MatXc proj;  // projector onto null(others^H)
    if (k == 1) {
      proj = MatXc::Identity(m, m);
    } else {
      Eigen::JacobiSVD<MatXc> svd(others.adjoint(), Eigen::ComputeFullV);
      const auto& sv = svd.singularValues();
      const double cutoff = 1e-10 * sv[0];
      Index rank = 0;
      for (Index i = 0; i < sv.size(); ++i) {
        if (sv[i] > cutoff) ++rank;
      }
      const MatXc U = svd.matrixV().rightCols(m - rank);
      proj = U * U.adjoint();
    }
    const VecXc g = proj * h.col(u);
    const double hg = std::real(h.col(u).dot(g));  // = ||g||^2
    if (hg <= 1e-30) {
      out.degenerate = true;
      return out;
    }

    const double sigma2 = cfg.antenna_noise_w[u];
    const double delta2 = cfg.id_noise_w[u];
    const double gamma = cfg.sinr_target[u];
    const double e_over_eta = cfg.eh_target_w[u] / cfg.eh_efficiency[u];

    auto build = [&](double kappa, double theta, VecXc& w_out, double& rho_out) {
      rho_out = zf_ps_ratio(kappa, theta);
      const double target2 = gamma * (sigma2 + delta2 / rho_out);
      w_out = std::sqrt(target2) * g / hg;
      // relative harvested-power equality residual
      const double harvested = cfg.eh_efficiency[u] * (1.0 - rho_out) * target2;
      return std::abs(harvested - cfg.eh_target_w[u]) / cfg.eh_target_w[u];
    };

    VecXc wa, wb;
    double ra, rb;
    const double res_g1 = build(e_over_eta / ((gamma + 1.0) * sigma2),
                                gamma * delta2 / ((gamma + 1.0) * sigma2), wa, ra);
    const double res_g = build(e_over_eta / (gamma * sigma2), delta2 / sigma2, wb, rb);
    w_g1.col(u) = wa;
    rho_g1[u] = ra;
    w_g.col(u) = wb;
    rho_g[u] = rb;
    worst_res_g1 = std::max(worst_res_g1, res_g1);
    worst_res_g = std::max(worst_res_g, res_g);
  }

  out.diag.residual_gamma_plus_one = worst_res_g1;
  out.diag.residual_gamma = worst_res_g;
  out.diag.used_gamma_form = worst_res_g <= worst_res_g1;
  if (out.diag.used_gamma_form) {
    out.w = w_g;
    out.rho = rho_g;
  } else {
    out.w = w_g1;
    out.rho = rho_g1;
  }
  out.power = out.w.squaredNorm();
  out.ok = true;
  return out;
}

}  // namespace irsopt
