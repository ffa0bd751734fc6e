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

#ifndef ELEVATOR_EXPERIMENTS_OVERHEAD_H
#define ELEVATOR_EXPERIMENTS_OVERHEAD_H

#include <optional>
#include <string>
#include <vector>

#include "elevator/codes/classical_code.h"
#include "elevator/experiments/fit.h"
#include "elevator/experiments/reference_models.h"

namespace elevator {

enum class OverheadFamily {
    Repetition,
    Concat,
    Surface,
    Xzzx,
};

/// A family with optional fixed parameters; unset parameters are scanned.
struct FamilyQuery {
    OverheadFamily family = OverheadFamily::Concat;
    std::optional<OuterCodeId> outer;
    std::optional<size_t> ancillae;
    std::optional<size_t> d_x;
};

/// Phase-flip rate and bias; p_x = p_z / eta, and eta = +inf means p_x = 0.
struct NoisePoint {
    double p_z = 1e-3;
    double eta = 1e6;

    double p_x() const;
};

/// Models used for the families this toolkit simulates. Surface and XZZX
/// always use the published tables.
struct OverheadModels {
    FitModel rep_z = rep_z_reference();
    FitModel rep_x = rep_x_reference();
    FitModel concat_z = concat_z_reference();
};

struct OverheadPoint {
    OverheadFamily family = OverheadFamily::Concat;
    bool reachable = false;
    std::optional<OuterCodeId> outer;
    std::optional<size_t> ancillae;
    std::optional<size_t> d_x;
    size_t d_z = 0;
    size_t total_qubits = 0;
    size_t logicals = 0;
    double qubits_per_logical = 0;
    /// Per round and per logical qubit.
    double p_l = 0;
    double target = 0;
    NoisePoint noise;

    std::string describe() const;
};

struct ScanLimits {
    /// Largest odd d_z tried.
    size_t max_d_z = 401;
};

/// Per-round, per-logical p_L of one concrete configuration.
double family_rate(OverheadFamily family,
                   std::optional<OuterCodeId> outer,
                   size_t ancillae,
                   size_t d_x,
                   size_t d_z,
                   const NoisePoint &noise,
                   const OverheadModels &models = {});

/// Smallest qubits-per-logical configuration with p_L <= target, scanning
/// odd d_z ascending plus the free parameters of `query`. An unreachable
/// result has reachable == false.
OverheadPoint overhead_search(const FamilyQuery &query,
                              const NoisePoint &noise,
                              double target,
                              const OverheadModels &models = {},
                              const ScanLimits &limits = {});

/// `per_decade` log-spaced values from lo to hi inclusive.
std::vector<double> log_grid(double lo, double hi, size_t per_decade);

struct SweepRow {
    double eta = 0;
    /// Repetition, Concat, Surface, Xzzx in that order.
    std::vector<OverheadPoint> best;
};

std::vector<SweepRow> eta_sweep(double p_z,
                                double target,
                                const std::vector<double> &etas,
                                const OverheadModels &models = {});

struct TargetRow {
    double target = 0;
    std::vector<OverheadPoint> best;
};

std::vector<TargetRow> target_sweep(const NoisePoint &noise,
                                    const std::vector<double> &targets,
                                    const OverheadModels &models = {});

/// True when the concatenated family is reachable and strictly cheaper than
/// every other reachable family.
bool concat_cheapest(const std::vector<OverheadPoint> &best);

/// Smallest eta in [lo, hi] from which the concatenated family stays
/// cheapest up to hi, located on a grid and refined by bisection. Empty if
/// concat is not cheapest at hi.
std::optional<double> concat_crossover(double p_z,
                                       double target,
                                       double lo,
                                       double hi,
                                       const OverheadModels &models = {});

const char *overhead_family_name(OverheadFamily family);

}  // namespace elevator

#endif
