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

#ifndef ELEVATOR_DECODER_ML_DECODER_H
#define ELEVATOR_DECODER_ML_DECODER_H

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "elevator/sim/detector_error_model.h"

namespace elevator {

/// Exact maximum-likelihood decoding by enumerating the coset of
/// syndrome-consistent error patterns. Intended as a test oracle.
///
/// Requires at most 64 mechanisms and a kernel dimension of at most
/// `max_kernel_dim`; otherwise the constructor throws InfeasibleError.
class MlDecoder {
   public:
    static constexpr size_t kDefaultMaxKernelDim = 24;

    explicit MlDecoder(const DetectorErrorModel &dem, size_t max_kernel_dim = kDefaultMaxKernelDim);

    /// Total probability of each observable class consistent with the
    /// syndrome, normalized to sum to 1. Empty if no pattern matches.
    std::map<uint64_t, double> class_probabilities(std::span<const uint8_t> syndrome) const;

    /// Most probable observable class; ties go to the smaller mask.
    /// Throws InvariantViolation for a syndrome outside the column space.
    uint64_t decode(std::span<const uint8_t> syndrome) const;

    size_t kernel_dim() const {
        return kernel_.size();
    }

   private:
    std::optional<uint64_t> particular_solution(std::span<const uint8_t> syndrome) const;

    size_t num_detectors_ = 0;
    size_t num_mechanisms_ = 0;
    std::vector<double> log_odds_;
    std::vector<uint64_t> obs_;
    // Column-echelon data: for each pivot row, the mechanism combination
    // that produces a vector with that lowest row.
    std::vector<std::vector<uint64_t>> basis_rows_;
    std::vector<uint64_t> basis_combo_;
    std::vector<int32_t> pivot_of_;
    std::vector<uint64_t> kernel_;
};

}  // namespace elevator

#endif
