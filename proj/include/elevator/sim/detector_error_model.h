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

#ifndef ELEVATOR_SIM_DETECTOR_ERROR_MODEL_H
#define ELEVATOR_SIM_DETECTOR_ERROR_MODEL_H

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "elevator/circuit/circuit.h"
#include "elevator/codes/binary_matrix.h"
#include "elevator/sim/frame_sampler.h"

namespace elevator {

/// An independent fault: flips `detectors` and the observables in the
/// `observables` bit mask with probability `p`.
struct DemMechanism {
    double p = 0;
    std::vector<uint32_t> detectors;
    uint64_t observables = 0;

    bool operator==(const DemMechanism &other) const = default;
};

struct DetectorErrorModel {
    size_t num_detectors = 0;
    size_t num_observables = 0;
    std::vector<DemMechanism> mechanisms;
    /// Total probability (combined as independent flips) of faults that flip
    /// observables without flipping any detector. Only nonzero when extraction
    /// ran with allow_undetectable.
    double undetectable_logical_p = 0;
    uint64_t undetectable_logical_mask = 0;

    SparseBinaryMatrix check_matrix() const;
    size_t max_detector_degree() const;
    bool is_graphlike() const {
        return max_detector_degree() <= 2;
    }

    /// Text format: "detectors N", "observables K", then one
    /// "error p D3 D17 L0" line per mechanism.
    std::string to_text() const;
    static DetectorErrorModel from_text(std::string_view text);

    bool operator==(const DetectorErrorModel &other) const = default;
};

struct DemOptions {
    /// Accept faults that flip observables but no detector (codes with a
    /// distance-1 side). Otherwise such a fault is a construction error.
    bool allow_undetectable = false;
};

/// Propagates every Error instruction of a noisy circuit to its detector and
/// observable signature (backward sensitivity sweep), merges identical
/// signatures with p <- p1(1-p2) + p2(1-p1), and drops faults with an empty
/// signature. Requires at most 64 observables and error probabilities <= 0.5.
DetectorErrorModel extract_dem(const Circuit &circuit, const DemOptions &options = {});

/// Samples syndromes directly from the mechanism list.
SampleResult sample_dem(const DetectorErrorModel &dem, size_t shots, uint64_t seed);

/// p1(1-p2) + p2(1-p1).
double combine_flip_probabilities(double p1, double p2);

}  // namespace elevator

#endif
