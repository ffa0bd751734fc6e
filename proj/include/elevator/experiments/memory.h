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

#ifndef ELEVATOR_EXPERIMENTS_MEMORY_H
#define ELEVATOR_EXPERIMENTS_MEMORY_H

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "elevator/circuit/memory_circuits.h"
#include "elevator/circuit/noise.h"
#include "elevator/codes/classical_code.h"
#include "elevator/decoder/bp_osd.h"

namespace elevator {

enum class CodeFamily {
    Repetition,
    Elevator,
};

struct MemoryRequest {
    CodeFamily family = CodeFamily::Repetition;
    size_t d_z = 3;
    /// Inner rounds for the repetition family; 0 means 3 * d_z.
    size_t rounds = 0;
    OuterCodeId outer = OuterCodeId::code_15_9_3;
    size_t ancillae = 1;
    size_t outer_rounds = 1;
    MemoryBasis basis = MemoryBasis::X;
    NoiseModel noise;
    size_t shots = 1000;
    uint64_t seed = 0;
    /// Worker threads, 0 = all cores. Results do not depend on this.
    size_t threads = 1;
    DecoderConfig decoder;

    void validate() const;
};

struct MemoryResult {
    MemoryRequest request;
    /// Logical qubits k.
    size_t num_logicals = 0;
    size_t qubits = 0;
    size_t inner_rounds = 0;
    size_t num_detectors = 0;
    size_t num_mechanisms = 0;
    size_t failures = 0;
    std::vector<size_t> failures_per_observable;
    size_t bp_converged = 0;
    double p_shot = 0;
    /// Per inner round and per logical qubit.
    double p_round = 0;
    /// Wilson 95% bounds on p_shot, converted like p_round.
    double ci_lo = 0;
    double ci_hi = 0;
    /// p_shot >= 0.5: the per-round conversion is meaningless.
    bool saturated = false;
    double seconds = 0;
};

/// Builds the memory circuit, samples it, decodes each shot with BP+OSD and
/// counts shots where any logical observable is mispredicted.
MemoryResult run_memory(const MemoryRequest &request);

struct RoundRate {
    double value = 0;
    bool saturated = false;
};

/// (1 - (1 - 2 p_shot)^(1/rounds)) / 2. For p_shot >= 0.5 returns 0.5 with
/// the saturated flag set.
RoundRate per_round_rate(double p_shot, size_t rounds);

/// Wilson score interval for `failures` out of `shots` at normal quantile z.
std::pair<double, double> wilson_interval(size_t failures, size_t shots, double z = 1.96);

const char *family_name(CodeFamily family);

/// CSV columns: family,outer,d_z,ancillae,basis,p_x,p_z,shots,failures,
/// rounds,p_shot,p_round,ci_lo,ci_hi.
std::string memory_csv_header();
std::string memory_csv_row(const MemoryResult &result);

}  // namespace elevator

#endif
