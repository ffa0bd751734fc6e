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

#ifndef ELEVATOR_SIM_FRAME_SAMPLER_H
#define ELEVATOR_SIM_FRAME_SAMPLER_H

#include <cstdint>
#include <span>
#include <vector>

#include "elevator/circuit/circuit.h"

namespace elevator {

/// Shot-major bit table: row s holds `bits` bits packed little-endian into
/// bytes (bit i of the row is bit i%8 of byte i/8).
struct BitTable {
    size_t rows = 0;
    size_t bits = 0;
    size_t bytes_per_row = 0;
    std::vector<uint8_t> data;

    BitTable() = default;
    BitTable(size_t rows, size_t bits);

    bool get(size_t row, size_t bit) const {
        return (data[row * bytes_per_row + bit / 8] >> (bit % 8)) & 1;
    }
    void set(size_t row, size_t bit, bool value = true);
    std::span<const uint8_t> row(size_t r) const {
        return {data.data() + r * bytes_per_row, bytes_per_row};
    }
    std::span<uint8_t> row(size_t r) {
        return {data.data() + r * bytes_per_row, bytes_per_row};
    }
};

struct SampleResult {
    BitTable detectors;
    BitTable observables;
};

/// Pauli-frame simulator processing 64 shots per batch, one shot per bit of
/// a 64-bit word.
///
/// Batch b of seed s draws all of its randomness from a generator seeded
/// with (s, b), so results do not depend on how batches are distributed over
/// threads. Error instructions fire independently; each probability class is
/// sampled by geometric gap skipping over (instruction, shot) pairs.
/// Preparations and measurements randomize the frame component that the
/// resulting state is insensitive to, so a detector that is not truly
/// deterministic shows up as a coin flip.
class FrameSampler {
   public:
    static constexpr size_t kBatch = 64;

    explicit FrameSampler(const Circuit &circuit);

    size_t num_detectors() const {
        return circuit_.detectors.size();
    }
    size_t num_observables() const {
        return circuit_.observables.size();
    }
    size_t num_error_instructions() const {
        return error_positions_.size();
    }

    /// Samples one batch. `det_words` receives num_detectors() words and
    /// `obs_words` num_observables() words; bit j of each word is shot j of
    /// the batch. When `fired` is non-null it receives one mask per Error
    /// instruction (in instruction order) with the shots where it fired.
    void sample_batch(uint64_t seed,
                      uint64_t batch_index,
                      std::span<uint64_t> det_words,
                      std::span<uint64_t> obs_words,
                      std::vector<uint64_t> *fired = nullptr) const;

    const Circuit &circuit() const {
        return circuit_;
    }

   private:
    Circuit circuit_;
    std::vector<uint32_t> error_positions_;
    /// Error-instruction ordinals grouped by identical probability.
    std::vector<std::pair<double, std::vector<uint32_t>>> probability_groups_;
    std::vector<std::vector<uint32_t>> detector_meas_;
    std::vector<std::vector<uint32_t>> observable_meas_;
};

/// Samples `shots` shots using up to `threads` worker threads (0 = hardware
/// concurrency). Output is identical for every thread count.
SampleResult sample(const Circuit &circuit, size_t shots, uint64_t seed, size_t threads = 1);

/// Resolves a user-facing thread count (0 = hardware concurrency, at least 1).
size_t resolve_threads(size_t requested);

}  // namespace elevator

#endif
