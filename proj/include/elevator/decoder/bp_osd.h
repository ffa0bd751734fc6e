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

#ifndef ELEVATOR_DECODER_BP_OSD_H
#define ELEVATOR_DECODER_BP_OSD_H

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "elevator/sim/detector_error_model.h"

namespace elevator {

enum class BpVariant {
    ProductSum,
    MinSum,
};

enum class BpSchedule {
    /// Flooding: all check updates, then all variable updates.
    Parallel,
    /// Variable-serial: each variable gathers fresh check messages and
    /// immediately publishes its own.
    Serial,
};

struct DecoderConfig {
    BpVariant variant = BpVariant::ProductSum;
    /// Normalization applied to min-sum check messages.
    double min_sum_scale = 0.625;
    size_t max_iterations = 30;
    size_t osd_order = 0;
    BpSchedule schedule = BpSchedule::Serial;

    void validate() const;
};

struct BpResult {
    std::vector<double> posterior_llr;
    std::vector<uint8_t> hard_decision;
    bool converged = false;
    size_t iterations = 0;
};

struct DecodeOutcome {
    uint64_t predicted_observables = 0;
    std::vector<uint8_t> error_estimate;
    bool bp_converged = false;
    size_t iterations = 0;
    bool osd_used = false;
};

/// Belief propagation with ordered-statistics post-processing on the
/// detector-by-mechanism incidence matrix of a detector error model.
///
/// An instance owns mutable workspace; use one instance per thread.
class BpOsdDecoder {
   public:
    BpOsdDecoder(const DetectorErrorModel &dem, DecoderConfig config = {});

    /// `syndrome` holds one 0/1 byte per detector.
    BpResult bp(std::span<const uint8_t> syndrome);

    /// Syndrome-consistent estimate from reliability-ordered elimination.
    /// `llr` ranks mechanisms (most likely flipped first); an empty span
    /// falls back to the priors. Throws InvariantViolation when the syndrome
    /// is outside the column space.
    std::vector<uint8_t> osd(std::span<const uint8_t> syndrome, std::span<const double> llr);

    DecodeOutcome decode(std::span<const uint8_t> syndrome);

    const DecoderConfig &config() const {
        return config_;
    }
    size_t num_detectors() const {
        return num_checks_;
    }
    size_t num_mechanisms() const {
        return num_vars_;
    }
    const std::vector<double> &prior_llr() const {
        return prior_;
    }

    /// H * estimate == syndrome over GF(2).
    bool satisfies(std::span<const uint8_t> syndrome, std::span<const uint8_t> estimate) const;
    uint64_t observables_of(std::span<const uint8_t> estimate) const;

   private:
    void check_update_parallel(std::span<const uint8_t> syndrome);
    void serial_sweep(std::span<const uint8_t> syndrome);
    bool hard_satisfies(std::span<const uint8_t> syndrome, const std::vector<uint8_t> &hard) const;

    DecoderConfig config_;
    size_t num_checks_ = 0;
    size_t num_vars_ = 0;
    std::vector<double> prior_;
    std::vector<uint64_t> var_obs_;
    // Edges sorted by check.
    std::vector<uint32_t> check_start_;
    std::vector<uint32_t> edge_var_;
    std::vector<uint32_t> edge_check_;
    // Edge ids grouped by variable.
    std::vector<uint32_t> var_start_;
    std::vector<uint32_t> var_edges_;
    // Column supports.
    std::vector<std::vector<uint32_t>> columns_;

    // Workspace.
    std::vector<double> vc_;
    std::vector<double> cv_;
    std::vector<double> tanh_;
    std::vector<double> check_product_;
    std::vector<double> posterior_;
    std::vector<uint8_t> hard_;
};

const char *variant_name(BpVariant v);
const char *schedule_name(BpSchedule s);

}  // namespace elevator

#endif
