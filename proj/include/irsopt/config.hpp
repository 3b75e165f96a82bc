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

#include <string>

#include "irsopt/types.hpp"

namespace irsopt {

// Static description of one system instance: array sizes, per-user QoS
// targets, noise powers, conversion efficiencies, geometry, and fading
// parameters. Targets and noise are ingested in dB/dBm and mirrored in
// linear scale (watts / plain ratios) by finalize().
struct SystemConfig {
  int num_bs_antennas = 4;   // M
  int num_irs_elements = 50; // N; 0 means no reflecting surface
  int num_users = 2;         // K

  // Per-user values; a length-1 vector is broadcast to all K users.
  VecX sinr_target_db;    // gamma_k, dB
  VecX eh_target_dbm;     // e_k, dBm
  VecX antenna_noise_dbm; // sigma_k^2, dBm
  VecX id_noise_dbm;      // delta_k^2 (decoder-side), dBm
  VecX eh_efficiency;     // eta_k in (0, 1]

  Vec2 bs_position{0.0, 0.0};
  Vec2 irs_position{10.0, 0.0};
  // Users are drawn uniformly from an axis-aligned square.
  Vec2 user_area_center{12.5, 0.0};
  double user_area_side = 5.0;

  double pathloss_ref_db = -30.0;     // C0 at D0 = 1 m
  double pathloss_exponent = 2.0;     // alpha
  double rician_factor_db = 5.0;      // K_r; -inf = Rayleigh, +inf = pure LOS
  double carrier_spacing_ratio = 0.5; // element spacing over wavelength

  // Linear-scale mirrors, valid after finalize().
  VecX sinr_target;     // gamma_k (ratio)
  VecX eh_target_w;     // e_k (watts)
  VecX antenna_noise_w; // sigma_k^2 (watts)
  VecX id_noise_w;      // delta_k^2 (watts)
  double pathloss_ref = 0.0; // C0 (ratio)
  double rician_factor = 0.0; // K_r (ratio)
  bool finalized = false;

  // Table-style defaults: eta = 0.5, sigma^2 = -70 dBm, delta^2 = -50 dBm,
  // gamma = 10 dB, e = -10 dBm.
  static SystemConfig defaults(int M = 4, int N = 50, int K = 2);

  // Broadcasts per-user vectors, validates invariants, fills the linear
  // mirrors. Throws std::invalid_argument on any violation.
  void finalize();

  // Sweep helpers; each returns a finalized copy.
  SystemConfig with_num_bs_antennas(int M) const;
  SystemConfig with_num_irs_elements(int N) const;
  SystemConfig with_sinr_target_db(double db) const;
  SystemConfig with_eh_target_dbm(double dbm) const;
};

}  // namespace irsopt
