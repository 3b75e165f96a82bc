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

#include "irsopt/config.hpp"

#include <stdexcept>

namespace irsopt {
namespace {

void broadcast(VecX& v, int k, const char* name) {
  if (v.size() == 1 && k > 1) v = VecX::Constant(k, v[0]);
  if (v.size() != k) {
    throw std::invalid_argument(std::string(name) +
                                ": expected 1 or K per-user entries");
  }
}

}  // namespace

SystemConfig SystemConfig::defaults(int M, int N, int K) {
  SystemConfig cfg;
  cfg.num_bs_antennas = M;
  cfg.num_irs_elements = N;
  cfg.num_users = K;
  cfg.sinr_target_db = VecX::Constant(1, 10.0);
  cfg.eh_target_dbm = VecX::Constant(1, -10.0);
  cfg.antenna_noise_dbm = VecX::Constant(1, -70.0);
  cfg.id_noise_dbm = VecX::Constant(1, -50.0);
  cfg.eh_efficiency = VecX::Constant(1, 0.5);
  cfg.finalize();
  return cfg;
}

void SystemConfig::finalize() {
  if (num_bs_antennas < 1) throw std::invalid_argument("num_bs_antennas must be >= 1");
  if (num_users < 1) throw std::invalid_argument("num_users must be >= 1");
  if (num_irs_elements < 0) throw std::invalid_argument("num_irs_elements must be >= 0");
  if (!(user_area_side > 0.0)) throw std::invalid_argument("user_area_side must be > 0");
  if (!(carrier_spacing_ratio > 0.0)) {
    throw std::invalid_argument("carrier_spacing_ratio must be > 0");
  }

  const int k = num_users;
  broadcast(sinr_target_db, k, "sinr_target_db");
  broadcast(eh_target_dbm, k, "eh_target_dbm");
  broadcast(antenna_noise_dbm, k, "antenna_noise_dbm");
  broadcast(id_noise_dbm, k, "id_noise_dbm");
  broadcast(eh_efficiency, k, "eh_efficiency");

  sinr_target = sinr_target_db.unaryExpr([](double v) { return db_to_linear(v); });
  eh_target_w = eh_target_dbm.unaryExpr([](double v) { return dbm_to_watts(v); });
  antenna_noise_w = antenna_noise_dbm.unaryExpr([](double v) { return dbm_to_watts(v); });
  id_noise_w = id_noise_dbm.unaryExpr([](double v) { return dbm_to_watts(v); });
  pathloss_ref = db_to_linear(pathloss_ref_db);
  rician_factor = db_to_linear(rician_factor_db);

  for (int i = 0; i < k; ++i) {
    if (!(sinr_target[i] > 0.0)) throw std::invalid_argument("sinr target must be > 0");
    if (!(eh_target_w[i] > 0.0)) throw std::invalid_argument("eh target must be > 0");
    if (!(antenna_noise_w[i] > 0.0)) throw std::invalid_argument("antenna noise must be > 0");
    if (!(id_noise_w[i] > 0.0)) throw std::invalid_argument("id noise must be > 0");
    if (!(eh_efficiency[i] > 0.0) || eh_efficiency[i] > 1.0) {
      throw std::invalid_argument("eh_efficiency must lie in (0, 1]");
    }
  }
  finalized = true;
}

SystemConfig SystemConfig::with_num_bs_antennas(int M) const {
  SystemConfig c = *this;
  c.num_bs_antennas = M;
  c.finalize();
  return c;
}

SystemConfig SystemConfig::with_num_irs_elements(int N) const {
  SystemConfig c = *this;
  c.num_irs_elements = N;
  c.finalize();
  return c;
}

SystemConfig SystemConfig::with_sinr_target_db(double db) const {
  SystemConfig c = *this;
  c.sinr_target_db = VecX::Constant(num_users, db);
  c.finalize();
  return c;
}

SystemConfig SystemConfig::with_eh_target_dbm(double dbm) const {
  SystemConfig c = *this;
  c.eh_target_dbm = VecX::Constant(num_users, dbm);
  c.finalize();
  return c;
}

}  // namespace irsopt
