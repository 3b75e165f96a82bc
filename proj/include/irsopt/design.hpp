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

#include "irsopt/channel.hpp"
#include "irsopt/types.hpp"

namespace irsopt {

// The decision variables: transmit beamformers (columns per user), IRS
// reflection coefficients, and receive power-splitting ratios.
struct Design {
  MatXc beamformers;       // M x K
  PhaseShifts phase_shifts;
  VecX ps_ratios;          // K, each in (0, 1)

  Index num_users() const { return beamformers.cols(); }
  double total_power() const { return beamformers.squaredNorm(); }
};

}  // namespace irsopt
