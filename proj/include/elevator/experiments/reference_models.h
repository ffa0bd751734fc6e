// Copyright 2026 Elevator Codes Contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ELEVATOR_EXPERIMENTS_REFERENCE_MODELS_H
#define ELEVATOR_EXPERIMENTS_REFERENCE_MODELS_H

#include <optional>

#include "elevator/codes/classical_code.h"
#include "elevator/experiments/fit.h"

namespace elevator {

enum class SurfaceKind {
    Rotated,
    Xzzx,
};

/// Published fit parameters for per-round logical error rates.
FitModel rep_z_reference();
FitModel rep_x_reference();
/// General concatenated phase-flip model; n_b and k are supplied at evaluation.
FitModel concat_z_reference();
/// Bit-flip model of an outer code with the given ancilla count, if published.
std::optional<FitModel> concat_x_reference(OuterCodeId outer, size_t ancillae);
/// Rotated rows switch regime at p_z = 1e-2: p_z >= 1e-2 uses the near-threshold
/// rows, lower p_z the general rows. Throws for d_x outside {3, 5}.
FitModel surface_z_reference(SurfaceKind kind, size_t d_x, double p_z);
FitModel surface_x_reference(SurfaceKind kind, size_t d_x);

const char *surface_kind_name(SurfaceKind kind);

}  // namespace elevator

#endif
