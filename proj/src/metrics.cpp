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

#include "irsopt/metrics.hpp"

#include <stdexcept>

namespace irsopt {
namespace {

constexpr double kMarginSlack = 1e-6;

void check_shapes(const Design& design, const ChannelRealization& real,
                  const SystemConfig& cfg) {
  if (design.beamformers.rows() != real.num_bs_antennas() ||
      design.beamformers.cols() != real.num_users() ||
      design.ps_ratios.size() != real.num_users() ||
      design.phase_shifts.size() != real.num_irs_elements() ||
      cfg.num_users != real.num_users() || cfg.num_bs_antennas != real.num_bs_antennas()) {
    throw std::invalid_argument("qos: design/realization/config dimensions disagree");
  }
}

}  // namespace

double sinr(const Design& design, const ChannelRealization& real,
            const SystemConfig& cfg, int user) {
  check_shapes(design, real, cfg);
  const VecXc h = effective_channel(real, design.phase_shifts, user);
  const double rho = design.ps_ratios[user];
  double signal = 0.0, interference = 0.0;
  for (Index i = 0; i < design.num_users(); ++i) {
    const double p = std::norm(h.dot(design.beamformers.col(i)));
    if (i == user) signal = p;
    else interference += p;
  }
  const double denom =
      rho * interference + rho * cfg.antenna_noise_w[user] + cfg.id_noise_w[user];
  return rho * signal / denom;
}

double harvested_power(const Design& design, const ChannelRealization& real,
                       const SystemConfig& cfg, int user) {
  check_shapes(design, real, cfg);
  const VecXc h = effective_channel(real, design.phase_shifts, user);
  double received = 0.0;
  for (Index i = 0; i < design.num_users(); ++i) {
    received += std::norm(h.dot(design.beamformers.col(i)));
  }
  return cfg.eh_efficiency[user] * (1.0 - design.ps_ratios[user]) * received;
}

QosReport qos_check(const Design& design, const ChannelRealization& real,
                    const SystemConfig& cfg) {
  check_shapes(design, real, cfg);
  const int k = cfg.num_users;

  QosReport rep;
  rep.sinr.resize(k);
  rep.sinr_db.resize(k);
  rep.rate_bps_hz.resize(k);
  rep.harvested_w.resize(k);
  rep.sinr_margin.resize(k);
  rep.eh_margin.resize(k);
  rep.total_power_w = design.total_power();

  rep.structural_ok = design.phase_shifts.unit_modulus();
  for (int u = 0; u < k; ++u) {
    const double rho = design.ps_ratios[u];
    if (!(rho > 0.0) || !(rho < 1.0)) rep.structural_ok = false;
  }

  for (int u = 0; u < k; ++u) {
    rep.sinr[u] = sinr(design, real, cfg, u);
    rep.sinr_db[u] = linear_to_db(rep.sinr[u]);
    rep.rate_bps_hz[u] = std::log2(1.0 + rep.sinr[u]);
    rep.harvested_w[u] = harvested_power(design, real, cfg, u);
    rep.sinr_margin[u] = rep.sinr[u] / cfg.sinr_target[u] - 1.0;
    rep.eh_margin[u] = rep.harvested_w[u] / cfg.eh_target_w[u] - 1.0;
  }

  const double worst = std::min(rep.sinr_margin.minCoeff(), rep.eh_margin.minCoeff());
  rep.worst_violation = std::max(0.0, -worst);
  rep.feasible = rep.structural_ok && worst >= -kMarginSlack;
  return rep;
}

}  // namespace irsopt
