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

#include "irsopt/config.hpp"
#include "irsopt/types.hpp"

namespace irsopt {

// Unit-modulus reflection coefficients u_n = exp(j theta_n), theta in (0, 2pi].
struct PhaseShifts {
  VecXc u;

  static PhaseShifts all_ones(int n);                 // theta_n = 2pi
  static PhaseShifts from_angles(const VecX& theta);  // u_n = exp(j theta_n)

  Index size() const { return u.size(); }
  VecX angles() const;  // arg(u_n) mapped into (0, 2pi]
  bool unit_modulus(double tol = 1e-12) const;
};

// One coherence block of channels. Columns index users.
struct ChannelRealization {
  MatXc h_direct;        // M x K, BS-to-user links h_{b,k}
  MatXc h_irs_user;      // N x K, IRS-to-user links h_{r,k}
  MatXc H_bs_irs;        // N x M, BS-to-IRS matrix
  MatX user_positions;   // 2 x K, meters
  std::uint64_t seed = 0;

  Index num_bs_antennas() const { return h_direct.rows(); }
  Index num_irs_elements() const { return H_bs_irs.rows(); }
  Index num_users() const { return h_direct.cols(); }

  // Copy with the reflecting surface removed (IRS-side links zeroed); used
  // by the baselines that must ignore the reflected path.
  ChannelRealization without_irs() const;
};

// C0 * (d / D0)^(-alpha) with D0 = 1 m, in linear power scale.
// Throws std::domain_error for d <= 0.
double path_loss_linear(double d, const SystemConfig& cfg);

// [1, e^{j theta}, ..., e^{j (L-1) theta}] with theta = -2pi * ratio * sin(aoa).
VecXc ula_steering(int length, double aoa, double spacing_ratio);

// Draws user positions and Rician-faded links for one coherence block.
// Pure in (cfg, seed); each link uses its own named substream, so h_direct
// does not depend on the number of IRS elements.
ChannelRealization draw_realization(const SystemConfig& cfg, std::uint64_t seed);

// Composite BS-to-user channel h_k with h_k^H = h_{b,k}^H + h_{r,k}^H diag(u) H_{b,r}.
VecXc effective_channel(const ChannelRealization& real, const PhaseShifts& phases,
                        int user);

// All users at once, M x K.
MatXc effective_channels(const ChannelRealization& real, const PhaseShifts& phases);

}  // namespace irsopt
