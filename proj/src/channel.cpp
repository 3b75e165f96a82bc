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

#include "irsopt/channel.hpp"

#include <stdexcept>

#include "irsopt/rng.hpp"

namespace irsopt {
namespace {

// Substream tags so that each link family has its own RNG stream. Keeping
// the direct-link stream independent of N makes the no-IRS baselines exactly
// constant across an N sweep on the same trial seed.
enum Stream : std::uint64_t {
  kPositions = 1,
  kDirect = 2,
  kIrsUser = 3,
  kBsIrs = 4,
};

// sqrt(K_r / (1 + K_r)) and sqrt(1 / (1 + K_r)), with the limits
// K_r = +inf -> (1, 0) and K_r = 0 -> (0, 1).
std::pair<double, double> rician_weights(double k_linear) {
  if (std::isinf(k_linear)) return {1.0, 0.0};
  return {std::sqrt(k_linear / (1.0 + k_linear)), std::sqrt(1.0 / (1.0 + k_linear))};
}

double angle_of(const Vec2& from, const Vec2& to) {
  return std::atan2(to.y() - from.y(), to.x() - from.x());
}

MatXc cgaussian(Index rows, Index cols, Rng& rng) {
  MatXc m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = rng.cnormal();
  return m;
}

}  // namespace

PhaseShifts PhaseShifts::all_ones(int n) {
  PhaseShifts p;
  p.u = VecXc::Ones(n);
  return p;
}

PhaseShifts PhaseShifts::from_angles(const VecX& theta) {
  PhaseShifts p;
  p.u = theta.unaryExpr([](double t) { return std::polar(1.0, t); });
  return p;
}

VecX PhaseShifts::angles() const {
  VecX theta(u.size());
  for (Index n = 0; n < u.size(); ++n) {
    const double t = std::arg(u[n]);  // (-pi, pi]
    theta[n] = t > 0.0 ? t : t + 2.0 * kPi;
  }
  return theta;
}

bool PhaseShifts::unit_modulus(double tol) const {
  for (Index n = 0; n < u.size(); ++n) {
    if (std::abs(std::abs(u[n]) - 1.0) > tol) return false;
  }
  return true;
}

ChannelRealization ChannelRealization::without_irs() const {
  ChannelRealization r = *this;
  r.h_irs_user.setZero();
  r.H_bs_irs.setZero();
  return r;
}

double path_loss_linear(double d, const SystemConfig& cfg) {
  if (!(d > 0.0)) throw std::domain_error("path_loss_linear: distance must be > 0");
  return cfg.pathloss_ref * std::pow(d, -cfg.pathloss_exponent);
}

VecXc ula_steering(int length, double aoa, double spacing_ratio) {
  if (length < 1) throw std::invalid_argument("ula_steering: length must be >= 1");
  const double theta = -2.0 * kPi * spacing_ratio * std::sin(aoa);
  VecXc v(length);
  for (int n = 0; n < length; ++n) v[n] = std::polar(1.0, theta * n);
  return v;
}

ChannelRealization draw_realization(const SystemConfig& cfg, std::uint64_t seed) {
  if (!cfg.finalized) throw std::invalid_argument("draw_realization: config not finalized");
  const int m = cfg.num_bs_antennas;
  const int n = cfg.num_irs_elements;
  const int k = cfg.num_users;
  const double ratio = cfg.carrier_spacing_ratio;
  const auto [w_los, w_nlos] = rician_weights(cfg.rician_factor);

  ChannelRealization real;
  real.seed = seed;

  Rng pos_rng(derive_seed(seed, kPositions));
  real.user_positions.resize(2, k);
  const double half = 0.5 * cfg.user_area_side;
  for (int j = 0; j < k; ++j) {
    real.user_positions(0, j) = cfg.user_area_center.x() + pos_rng.uniform(-half, half);
    real.user_positions(1, j) = cfg.user_area_center.y() + pos_rng.uniform(-half, half);
  }

  // Direct BS-to-user links.
  Rng direct_rng(derive_seed(seed, kDirect));
  real.h_direct.resize(m, k);
  for (int j = 0; j < k; ++j) {
    const Vec2 user = real.user_positions.col(j);
    const double gain = std::sqrt(path_loss_linear((user - cfg.bs_position).norm(), cfg));
    const VecXc los = ula_steering(m, angle_of(cfg.bs_position, user), ratio);
    const MatXc nlos = cgaussian(m, 1, direct_rng);
    real.h_direct.col(j) = gain * (w_los * los + w_nlos * nlos.col(0));
  }

  // IRS-to-user links.
  Rng irs_rng(derive_seed(seed, kIrsUser));
  real.h_irs_user.resize(n, k);
  for (int j = 0; j < k && n > 0; ++j) {
    const Vec2 user = real.user_positions.col(j);
    const double gain = std::sqrt(path_loss_linear((user - cfg.irs_position).norm(), cfg));
    const VecXc los = ula_steering(n, angle_of(cfg.irs_position, user), ratio);
    const MatXc nlos = cgaussian(n, 1, irs_rng);
    real.h_irs_user.col(j) = gain * (w_los * los + w_nlos * nlos.col(0));
  }

  // BS-to-IRS matrix; LOS part is the outer product of the arrival and
  // departure steering vectors.
  Rng bsirs_rng(derive_seed(seed, kBsIrs));
  real.H_bs_irs.resize(n, m);
  if (n > 0) {
    const double d_bi = (cfg.irs_position - cfg.bs_position).norm();
    const double gain_bi = std::sqrt(path_loss_linear(d_bi, cfg));
    const VecXc arrive = ula_steering(n, angle_of(cfg.irs_position, cfg.bs_position), ratio);
    const VecXc depart = ula_steering(m, angle_of(cfg.bs_position, cfg.irs_position), ratio);
    const MatXc nlos_bi = cgaussian(n, m, bsirs_rng);
    real.H_bs_irs = gain_bi * (w_los * (arrive * depart.adjoint()) + w_nlos * nlos_bi);
  }
  return real;
}

VecXc effective_channel(const ChannelRealization& real, const PhaseShifts& phases,
                        int user) {
  if (user < 0 || user >= real.num_users()) {
    throw std::out_of_range("effective_channel: user index");
  }
  const Index n = real.num_irs_elements();
  if (phases.size() != n) {
    throw std::invalid_argument("effective_channel: phase vector length mismatch");
  }
  VecXc h = real.h_direct.col(user);
  if (n > 0) {
    // h^H = h_b^H + h_r^H diag(u) H  =>  h = h_b + H^H (conj(u) .* h_r)
    h += real.H_bs_irs.adjoint() *
         (phases.u.conjugate().cwiseProduct(real.h_irs_user.col(user)));
  }
  return h;
}

MatXc effective_channels(const ChannelRealization& real, const PhaseShifts& phases) {
  MatXc h(real.num_bs_antennas(), real.num_users());
  for (Index k = 0; k < real.num_users(); ++k) {
    h.col(k) = effective_channel(real, phases, static_cast<int>(k));
  }
  return h;
}

}  // namespace irsopt
