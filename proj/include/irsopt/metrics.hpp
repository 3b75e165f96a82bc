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

#include "irsopt/config.hpp"
#include "irsopt/design.hpp"

namespace irsopt {

// QoS evaluation of a design on one channel realization.
struct QosReport {
  VecX sinr;          // linear
  VecX sinr_db;
  VecX rate_bps_hz;   // log2(1 + SINR); derived, never a constraint surface
  VecX harvested_w;
  VecX sinr_margin;   // SINR_k / gamma_k - 1
  VecX eh_margin;     // P_k / e_k - 1
  double total_power_w = 0.0;
  bool structural_ok = false;  // 0 < rho < 1 and unit-modulus phases
  bool feasible = false;       // structural_ok and both margins >= -1e-6
  double worst_violation = 0.0;  // most negative margin, clamped at 0
};

// Decoder-input SINR: rho |h_k^H w_k|^2 over
// (rho sum_{i != k} |h_k^H w_i|^2 + rho sigma_k^2 + delta_k^2).
double sinr(const Design& design, const ChannelRealization& real,
            const SystemConfig& cfg, int user);

// Harvester-input power: eta (1 - rho) sum_i |h_k^H w_i|^2 (noise omitted).
double harvested_power(const Design& design, const ChannelRealization& real,
                       const SystemConfig& cfg, int user);

// Evaluates every user's constraints; throws std::invalid_argument on
// dimension mismatches.
QosReport qos_check(const Design& design, const ChannelRealization& real,
                    const SystemConfig& cfg);

}  // namespace irsopt
