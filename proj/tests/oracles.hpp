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
//
// Brute-force reference solutions, kept independent of the implementation
// paths they check.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "irsopt/config.hpp"
#include "irsopt/types.hpp"

namespace irsopt::oracles {

// Minimum transmit power of the single-user scalar system with channel
// power h2: the decoder needs p >= gamma (sigma2 + delta2/rho) / h2 and the
// harvester needs p >= e / (eta (1 - rho) h2). 2-D reduced to a 1-D grid
// over rho with local refinement.
inline double scalar_power_min(double h2, double sigma2, double delta2, double eta,
                               double gamma, double e, double coarse = 1e-3,
                               double fine = 1e-6) {
  auto power_at = [&](double rho) {
    const double id = gamma * (sigma2 + delta2 / rho) / h2;
    const double eh = e > 0.0 ? e / (eta * (1.0 - rho) * h2) : 0.0;
    return std::max(id, eh);
  };
  double best = std::numeric_limits<double>::infinity(), best_rho = 0.5;
  for (double rho = coarse; rho < 1.0; rho += coarse) {
    const double p = power_at(rho);
    if (p < best) {
      best = p;
      best_rho = rho;
    }
  }
  const double lo = std::max(fine, best_rho - coarse);
  const double hi = std::min(1.0 - fine, best_rho + coarse);
  for (double rho = lo; rho <= hi; rho += fine) {
    best = std::min(best, power_at(rho));
  }
  return best;
}

// Per-user 1-D search over rho for the interference-free design: w_k points
// along the projection g_k of h_k onto the other users' null space, so
// ||w_k||^2 = max(required decoder power, required harvester power)/||g_k||^2.
inline double zf_power_min(const SystemConfig& cfg, const MatXc& h,
                           const std::vector<VecXc>& projections, double step = 1e-5) {
  double total = 0.0;
  for (int k = 0; k < cfg.num_users; ++k) {
    const double g2 = projections[k].squaredNorm();
    const double sigma2 = cfg.antenna_noise_w[k];
    const double delta2 = cfg.id_noise_w[k];
    const double gamma = cfg.sinr_target[k];
    const double e_over_eta = cfg.eh_target_w[k] / cfg.eh_efficiency[k];
    double best = std::numeric_limits<double>::infinity();
    for (double rho = step; rho < 1.0; rho += step) {
      const double need =
          std::max(gamma * (sigma2 + delta2 / rho), e_over_eta / (1.0 - rho));
      best = std::min(best, need / g2);
    }
    total += best;
  }
  (void)h;
  return total;
}

// Independent decoder-SINR recomputation with raw loops over std::complex,
// avoiding the Eigen reductions used by the library path.
inline double raw_sinr(const std::vector<std::vector<cxd>>& h_cols,
                       const std::vector<std::vector<cxd>>& w_cols, double rho,
                       double sigma2, double delta2, int user) {
  const int k = static_cast<int>(w_cols.size());
  const int m = static_cast<int>(h_cols[user].size());
  double signal = 0.0, interference = 0.0;
  for (int i = 0; i < k; ++i) {
    cxd dot{0.0, 0.0};
    for (int a = 0; a < m; ++a) dot += std::conj(h_cols[user][a]) * w_cols[i][a];
    const double p = std::norm(dot);
    if (i == user) signal = p;
    else interference += p;
  }
  return rho * signal / (rho * interference + rho * sigma2 + delta2);
}

// Best achievable |q b + a|^2 for scalar q on the unit circle, by sweep.
inline double phase_sweep_max(cxd b, cxd a, int steps = 20000) {
  double best = 0.0;
  for (int i = 0; i < steps; ++i) {
    const double th = 2.0 * kPi * (i + 1) / steps;
    best = std::max(best, std::norm(std::polar(1.0, th) * b + a));
  }
  return best;
}

}  // namespace irsopt::oracles
