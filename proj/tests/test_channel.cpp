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

#include <cmath>
#include <limits>
#include <set>

#include "doctest.h"
#include "irsopt/channel.hpp"
#include "irsopt/rng.hpp"

using namespace irsopt;

TEST_CASE("path loss reference values") {
  auto cfg = SystemConfig::defaults();
  CHECK(path_loss_linear(1.0, cfg) == doctest::Approx(1e-3).epsilon(1e-12));
  CHECK(path_loss_linear(10.0, cfg) == doctest::Approx(1e-5).epsilon(1e-12));

  // at the reference distance the exponent is irrelevant
  cfg.pathloss_exponent = 3.7;
  CHECK(path_loss_linear(1.0, cfg) == doctest::Approx(cfg.pathloss_ref).epsilon(1e-15));

  CHECK_THROWS_AS(path_loss_linear(0.0, cfg), std::domain_error);
  CHECK_THROWS_AS(path_loss_linear(-2.0, cfg), std::domain_error);
}

TEST_CASE("path loss strictly decreasing in distance") {
  const auto cfg = SystemConfig::defaults();
  double prev = path_loss_linear(0.5, cfg);
  for (double d = 1.0; d < 100.0; d *= 1.7) {
    const double cur = path_loss_linear(d, cfg);
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("ULA steering vectors") {
  CHECK(ula_steering(1, 1.234, 0.5).size() == 1);
  CHECK(ula_steering(1, 1.234, 0.5)[0] == cxd(1.0, 0.0));

  const VecXc broadside = ula_steering(4, 0.0, 0.5);
  for (int i = 0; i < 4; ++i) CHECK(std::abs(broadside[i] - cxd(1.0, 0.0)) < 1e-15);

  // theta = -2 pi (1/2) sin(pi/2) = -pi, so the second entry is -1
  const VecXc v = ula_steering(2, kPi / 2.0, 0.5);
  CHECK(std::abs(v[0] - cxd(1.0, 0.0)) < 1e-12);
  CHECK(std::abs(v[1] - cxd(-1.0, 0.0)) < 1e-12);

  // all entries unit modulus
  Rng rng(7);
  for (int t = 0; t < 20; ++t) {
    const VecXc s = ula_steering(1 + (t % 8), rng.uniform(-kPi, kPi), rng.uniform01());
    for (Index i = 0; i < s.size(); ++i) CHECK(std::abs(std::abs(s[i]) - 1.0) < 1e-14);
  }
}

TEST_CASE("pure LOS limit reproduces deterministic channels") {
  auto cfg = SystemConfig::defaults(3, 4, 2);
  cfg.rician_factor_db = std::numeric_limits<double>::infinity();
  cfg.finalize();
  const auto real = draw_realization(cfg, 11);

  for (int k = 0; k < 2; ++k) {
    const Vec2 user = real.user_positions.col(k);
    const double d = (user - cfg.bs_position).norm();
    const double phi = std::atan2(user.y() - cfg.bs_position.y(), user.x() - cfg.bs_position.x());
    const VecXc expected =
        std::sqrt(path_loss_linear(d, cfg)) * ula_steering(3, phi, 0.5);
    CHECK((real.h_direct.col(k) - expected).norm() < 1e-14);
  }
}

TEST_CASE("Rayleigh limit has unit per-entry variance") {
  auto cfg = SystemConfig::defaults(2, 0, 1);
  cfg.rician_factor_db = -std::numeric_limits<double>::infinity();
  cfg.finalize();

  double acc = 0.0;
  int count = 0;
  for (int t = 0; t < 10000; ++t) {
    const auto real = draw_realization(cfg, 1000 + t);
    const double gain =
        path_loss_linear((Vec2(real.user_positions.col(0)) - cfg.bs_position).norm(), cfg);
    for (int i = 0; i < 2; ++i) {
      acc += std::norm(real.h_direct(i, 0)) / gain;
      ++count;
    }
  }
  CHECK(acc / count == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("same seed and config reproduce the realization bit for bit") {
  const auto cfg = SystemConfig::defaults(4, 6, 2);
  const auto a = draw_realization(cfg, 42);
  const auto b = draw_realization(cfg, 42);
  CHECK((a.h_direct - b.h_direct).norm() == 0.0);
  CHECK((a.h_irs_user - b.h_irs_user).norm() == 0.0);
  CHECK((a.H_bs_irs - b.H_bs_irs).norm() == 0.0);
  CHECK((a.user_positions - b.user_positions).norm() == 0.0);

  const auto c = draw_realization(cfg, 43);
  CHECK((a.h_direct - c.h_direct).norm() != 0.0);
}

TEST_CASE("direct links and positions do not depend on the IRS size") {
  const auto cfg10 = SystemConfig::defaults(4, 10, 2);
  const auto cfg50 = SystemConfig::defaults(4, 50, 2);
  const auto a = draw_realization(cfg10, 5);
  const auto b = draw_realization(cfg50, 5);
  CHECK((a.h_direct - b.h_direct).norm() == 0.0);
  CHECK((a.user_positions - b.user_positions).norm() == 0.0);
}

TEST_CASE("effective channel composition") {
  const auto cfg = SystemConfig::defaults(3, 4, 1);
  const auto real = draw_realization(cfg, 2);

  SUBCASE("zero reflected link leaves the direct channel") {
    auto r = real.without_irs();
    const auto h = effective_channel(r, PhaseShifts::all_ones(4), 0);
    CHECK((h - r.h_direct.col(0)).norm() == 0.0);
  }

  SUBCASE("no surface at all") {
    const auto cfg0 = SystemConfig::defaults(3, 0, 1);
    const auto r0 = draw_realization(cfg0, 2);
    const auto h = effective_channel(r0, PhaseShifts::all_ones(0), 0);
    CHECK((h - r0.h_direct.col(0)).norm() == 0.0);
  }

  SUBCASE("scalar composition") {
    ChannelRealization r;
    r.h_direct = MatXc::Ones(1, 1);
    r.h_irs_user = MatXc::Ones(1, 1);
    r.H_bs_irs = MatXc::Ones(1, 1);
    const auto h = effective_channel(r, PhaseShifts::all_ones(1), 0);
    CHECK(std::abs(h[0] - cxd(2.0, 0.0)) < 1e-15);
  }
}

TEST_CASE("reflected part is linear in the conjugated phase vector") {
  const auto cfg = SystemConfig::defaults(3, 5, 2);
  const auto real = draw_realization(cfg, 9);
  Rng rng(3);
  for (int t = 0; t < 10; ++t) {
    VecX theta(5);
    for (int i = 0; i < 5; ++i) theta[i] = rng.uniform(0.0, 2.0 * kPi);
    const auto phases = PhaseShifts::from_angles(theta);
    for (int k = 0; k < 2; ++k) {
      const VecXc lhs =
          (effective_channel(real, phases, k) - real.h_direct.col(k)).conjugate();
      // h_k^H(u) - h_{b,k}^H = q^H diag(h_{r,k}^H) H_{b,r} with q = conj(u)
      const VecXc q = phases.u.conjugate();
      const VecXc rhs = (q.adjoint() *
                         real.h_irs_user.col(k).conjugate().asDiagonal().toDenseMatrix() *
                         real.H_bs_irs)
                            .transpose();
      CHECK((lhs - rhs).norm() < 1e-12 * (1.0 + rhs.norm()));
    }
  }
}

TEST_CASE("phase shift helpers") {
  const auto p = PhaseShifts::all_ones(6);
  CHECK(p.unit_modulus());
  CHECK(p.angles().isApproxToConstant(2.0 * kPi));

  VecX theta(3);
  theta << 0.5, 1.5, 6.0;
  const auto q = PhaseShifts::from_angles(theta);
  CHECK(q.unit_modulus());
  CHECK((q.angles() - theta).norm() < 1e-12);
}

TEST_CASE("child seed derivation is collision free on experiment grids") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t si = 0; si < 64; ++si) {
    for (std::uint64_t t = 0; t < 1024; ++t) {
      seen.insert(derive_seed(123456789ULL, si, t));
    }
  }
  CHECK(seen.size() == 64u * 1024u);
}
