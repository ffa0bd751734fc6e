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

#include "elevator/sim/frame_sampler.h"

#include <algorithm>
#include <bit>
#include <map>
#include <random>
#include <stdexcept>
#include <thread>

namespace elevator {

BitTable::BitTable(size_t rows, size_t bits)
    : rows(rows), bits(bits), bytes_per_row((bits + 7) / 8), data(rows * ((bits + 7) / 8), 0) {
}

void BitTable::set(size_t r, size_t bit, bool value) {
    uint8_t &byte = data[r * bytes_per_row + bit / 8];
    uint8_t mask = uint8_t(1u << (bit % 8));
    byte = value ? (byte | mask) : (byte & ~mask);
}

FrameSampler::FrameSampler(const Circuit &circuit) : circuit_(circuit) {
    std::map<double, std::vector<uint32_t>> groups;
    for (size_t pos = 0; pos < circuit_.instructions.size(); pos++) {
        const Instruction &inst = circuit_.instructions[pos];
        auto check_qubit = [&](uint32_t q) {
            if (q >= circuit_.num_qubits) {
                throw std::invalid_argument("instruction refers to qubit " + std::to_string(q) + " out of range");
            }
        };
        if (inst.gate == Gate::Tick) {
            continue;
        }
        check_qubit(inst.q0);
        if (inst.gate == Gate::CNOT || (inst.gate == Gate::Error && inst.q1 != kNoQubit)) {
            check_qubit(inst.q1);
        }
        if (inst.gate == Gate::Error) {
            uint32_t ordinal = (uint32_t)error_positions_.size();
            error_positions_.push_back((uint32_t)pos);
            if (inst.p > 0) {
                groups[inst.p].push_back(ordinal);
            }
        }
    }
    probability_groups_.assign(groups.begin(), groups.end());
    for (const auto &det : circuit_.detectors) {
        detector_meas_.push_back(det.measurements);
    }
    for (const auto &obs : circuit_.observables) {
        observable_meas_.push_back(obs.measurements);
    }
}

void FrameSampler::sample_batch(uint64_t seed,
                                uint64_t batch_index,
                                std::span<uint64_t> det_words,
                                std::span<uint64_t> obs_words,
                                std::vector<uint64_t> *fired) const {
    if (det_words.size() != num_detectors() || obs_words.size() != num_observables()) {
        throw std::invalid_argument("output spans do not match detector/observable counts");
    }
    std::seed_seq seq{uint32_t(seed), uint32_t(seed >> 32), uint32_t(batch_index), uint32_t(batch_index >> 32)};
    std::mt19937_64 rng(seq);

    std::vector<uint64_t> fire(error_positions_.size(), 0);
    for (const auto &[p, members] : probability_groups_) {
        if (p >= 1) {
            for (uint32_t e : members) {
                fire[e] = ~uint64_t{0};
            }
            continue;
        }
        uint64_t trials = members.size() * kBatch;
        std::geometric_distribution<uint64_t> gap(p);
        uint64_t at = 0;
        while (true) {
            at += gap(rng);
            if (at >= trials) {
                break;
            }
            fire[members[at / kBatch]] |= uint64_t{1} << (at % kBatch);
            at++;
        }
    }

    std::vector<uint64_t> x(circuit_.num_qubits, 0);
    std::vector<uint64_t> z(circuit_.num_qubits, 0);
    std::vector<uint64_t> flips(circuit_.num_measurements, 0);
    size_t error_ordinal = 0;
    auto apply_pauli = [&](Pauli p, uint32_t q, uint64_t mask) {
        if (p == Pauli::X) {
            x[q] ^= mask;
        } else if (p == Pauli::Z) {
            z[q] ^= mask;
        }
    };
    for (const Instruction &inst : circuit_.instructions) {
        switch (inst.gate) {
            case Gate::PrepZ:
                x[inst.q0] = 0;
                z[inst.q0] = rng();
                break;
            case Gate::PrepX:
                z[inst.q0] = 0;
                x[inst.q0] = rng();
                break;
            case Gate::MeasZ:
                flips[inst.meas] = x[inst.q0];
                z[inst.q0] = rng();
                break;
            case Gate::MeasX:
                flips[inst.meas] = z[inst.q0];
                x[inst.q0] = rng();
                break;
            case Gate::CNOT:
                x[inst.q1] ^= x[inst.q0];
                z[inst.q0] ^= z[inst.q1];
                break;
            case Gate::Tick:
                break;
            case Gate::Error: {
                uint64_t mask = fire[error_ordinal++];
                if (mask) {
                    apply_pauli(inst.pauli0, inst.q0, mask);
                    if (inst.q1 != kNoQubit) {
                        apply_pauli(inst.pauli1, inst.q1, mask);
                    }
                }
                break;
            }
        }
    }
    for (size_t d = 0; d < detector_meas_.size(); d++) {
        uint64_t acc = 0;
        for (uint32_t m : detector_meas_[d]) {
            acc ^= flips[m];
        }
        det_words[d] = acc;
    }
    for (size_t k = 0; k < observable_meas_.size(); k++) {
        uint64_t acc = 0;
        for (uint32_t m : observable_meas_[k]) {
            acc ^= flips[m];
        }
        obs_words[k] = acc;
    }
    if (fired) {
        *fired = std::move(fire);
    }
}

size_t resolve_threads(size_t requested) {
    if (requested == 0) {
        requested = std::thread::hardware_concurrency();
    }
    return std::max<size_t>(requested, 1);
}

SampleResult sample(const Circuit &circuit, size_t shots, uint64_t seed, size_t threads) {
    FrameSampler sampler(circuit);
    SampleResult result{BitTable(shots, sampler.num_detectors()), BitTable(shots, sampler.num_observables())};
    size_t batches = (shots + FrameSampler::kBatch - 1) / FrameSampler::kBatch;
    threads = std::min(resolve_threads(threads), std::max<size_t>(batches, 1));

    auto worker = [&](size_t w) {
        std::vector<uint64_t> det(sampler.num_detectors());
        std::vector<uint64_t> obs(sampler.num_observables());
        for (size_t b = w; b < batches; b += threads) {
            sampler.sample_batch(seed, b, det, obs);
            size_t first = b * FrameSampler::kBatch;
            size_t count = std::min(FrameSampler::kBatch, shots - first);
            for (size_t d = 0; d < det.size(); d++) {
                for (uint64_t bits = det[d]; bits; bits &= bits - 1) {
                    size_t s = std::countr_zero(bits);
                    if (s < count) {
                        result.detectors.set(first + s, d);
                    }
                }
            }
            for (size_t k = 0; k < obs.size(); k++) {
                for (uint64_t bits = obs[k]; bits; bits &= bits - 1) {
                    size_t s = std::countr_zero(bits);
                    if (s < count) {
                        result.observables.set(first + s, k);
                    }
                }
            }
        }
    };
    if (threads <= 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (size_t w = 0; w < threads; w++) {
            pool.emplace_back(worker, w);
        }
        for (auto &t : pool) {
            t.join();
        }
    }
    return result;
}

}  // namespace elevator
