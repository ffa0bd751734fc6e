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

#include "elevator/experiments/memory.h"

#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "elevator/errors.h"
#include "elevator/sim/detector_error_model.h"
#include "elevator/sim/frame_sampler.h"
#include "elevator/util/format.h"

namespace elevator {

namespace {

constexpr size_t kChunkShots = 1024;

uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

struct ChunkTally {
    size_t failures = 0;
    size_t converged = 0;
    std::vector<size_t> per_observable;
};

}  // namespace

void MemoryRequest::validate() const {
    if (d_z == 0) {
        throw std::invalid_argument("d_z must be at least 1");
    }
    if (shots == 0) {
        throw std::invalid_argument("shots must be at least 1");
    }
    if (family == CodeFamily::Elevator && outer_rounds == 0) {
        throw std::invalid_argument("outer_rounds must be at least 1");
    }
    noise.validate();
    decoder.validate();
}

const char *family_name(CodeFamily family) {
    return family == CodeFamily::Repetition ? "repetition" : "elevator";
}

RoundRate per_round_rate(double p_shot, size_t rounds) {
    if (rounds == 0) {
        throw std::invalid_argument("rounds must be at least 1");
    }
    if (!(p_shot >= 0) || p_shot > 1) {
        throw std::invalid_argument("p_shot must lie in [0, 1]");
    }
    if (p_shot >= 0.5) {
        return {0.5, true};
    }
    // expm1/log1p keep precision for small p_shot.
    double v = -std::expm1(std::log1p(-2 * p_shot) / (double)rounds) / 2;
    return {v, false};
}

std::pair<double, double> wilson_interval(size_t failures, size_t shots, double z) {
    if (shots == 0) {
        throw std::invalid_argument("wilson interval needs at least one shot");
    }
    if (failures > shots) {
        throw std::invalid_argument("failures exceed shots");
    }
    double n = (double)shots;
    double p = failures / n;
    double z2 = z * z;
    double denom = 1 + z2 / n;
    double center = (p + z2 / (2 * n)) / denom;
    double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

MemoryResult run_memory(const MemoryRequest &request) {
    request.validate();
    auto start = std::chrono::steady_clock::now();
    MemoryResult result;
    result.request = request;

    Circuit circuit;
    DemOptions dem_options;
    if (request.family == CodeFamily::Repetition) {
        size_t rounds = request.rounds ? request.rounds : 3 * request.d_z;
        circuit = build_repetition_memory(request.d_z, rounds, request.basis);
        result.num_logicals = 1;
        result.qubits = 2 * request.d_z - 1;
        result.inner_rounds = rounds;
        // A phase-flip repetition code has d_X = 1: single X faults flip the
        // Z observable without any detector.
        dem_options.allow_undetectable = request.basis == MemoryBasis::Z;
    } else {
        ElevatorSpec spec;
        spec.outer = builtin_outer(request.outer);
        spec.d_z = request.d_z;
        spec.n_ancilla_blocks = request.ancillae;
        circuit = build_elevator_memory(spec, request.outer_rounds, request.basis);
        ResourceCount rc = count_resources(spec, request.outer_rounds);
        result.num_logicals = spec.outer.k;
        result.qubits = rc.qubits;
        result.inner_rounds = rc.inner_rounds;
        dem_options.allow_undetectable = request.d_z == 1 && request.basis == MemoryBasis::X;
    }
    Circuit noisy = apply_noise(circuit, request.noise);
    DetectorErrorModel dem = extract_dem(noisy, dem_options);
    result.num_detectors = dem.num_detectors;
    result.num_mechanisms = dem.mechanisms.size();
    const size_t k_obs = noisy.observables.size();

    const size_t chunks = (request.shots + kChunkShots - 1) / kChunkShots;
    std::vector<ChunkTally> tallies(chunks);
    std::atomic<size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr error;
    auto worker = [&]() {
        try {
            BpOsdDecoder decoder(dem, request.decoder);
            std::vector<uint8_t> syndrome(dem.num_detectors);
            for (size_t c = next++; c < chunks; c = next++) {
                size_t shots = std::min(kChunkShots, request.shots - c * kChunkShots);
                SampleResult s = sample(noisy, shots, splitmix64(request.seed ^ splitmix64(c)), 1);
                ChunkTally &t = tallies[c];
                t.per_observable.assign(k_obs, 0);
                for (size_t shot = 0; shot < shots; shot++) {
                    uint64_t predicted = 0;
                    bool any = false;
                    for (size_t d = 0; d < dem.num_detectors; d++) {
                        syndrome[d] = s.detectors.get(shot, d);
                        any |= syndrome[d] != 0;
                    }
                    if (any) {
                        DecodeOutcome out = decoder.decode(syndrome);
                        predicted = out.predicted_observables;
                        t.converged += out.bp_converged;
                    } else {
                        t.converged++;
                    }
                    uint64_t diff = predicted;
                    for (size_t l = 0; l < k_obs; l++) {
                        diff ^= uint64_t(s.observables.get(shot, l)) << l;
                    }
                    if (diff) {
                        t.failures++;
                        for (size_t l = 0; l < k_obs; l++) {
                            t.per_observable[l] += (diff >> l) & 1;
                        }
                    }
                }
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!error) {
                error = std::current_exception();
            }
            next = chunks;
        }
    };
    size_t threads = std::min(resolve_threads(request.threads), chunks);
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (size_t i = 0; i < threads; i++) {
            pool.emplace_back(worker);
        }
        for (auto &th : pool) {
            th.join();
        }
    }
    if (error) {
        std::rethrow_exception(error);
    }

    result.failures_per_observable.assign(k_obs, 0);
    for (const auto &t : tallies) {
        result.failures += t.failures;
        result.bp_converged += t.converged;
        for (size_t l = 0; l < t.per_observable.size(); l++) {
            result.failures_per_observable[l] += t.per_observable[l];
        }
    }
    double k = (double)result.num_logicals;
    result.p_shot = (double)result.failures / (double)request.shots;
    RoundRate rr = per_round_rate(result.p_shot, result.inner_rounds);
    result.saturated = rr.saturated;
    result.p_round = rr.value / k;
    auto [lo, hi] = wilson_interval(result.failures, request.shots);
    result.ci_lo = per_round_rate(std::min(lo, 0.5), result.inner_rounds).value / k;
    result.ci_hi = per_round_rate(std::min(hi, 0.5), result.inner_rounds).value / k;
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

std::string memory_csv_header() {
    return "family,outer,d_z,ancillae,basis,p_x,p_z,shots,failures,rounds,p_shot,p_round,ci_lo,ci_hi";
}

std::string memory_csv_row(const MemoryResult &r) {
    const MemoryRequest &q = r.request;
    bool elevator = q.family == CodeFamily::Elevator;
    std::ostringstream out;
    out << family_name(q.family) << ',' << (elevator ? std::string(outer_code_name(q.outer)) : std::string("none")) << ','
        << q.d_z << ',' << (elevator ? q.ancillae : 0) << ',' << basis_name(q.basis) << ',' << format_prob(q.noise.p_x)
        << ',' << format_prob(q.noise.p_z) << ',' << q.shots << ',' << r.failures << ',' << r.inner_rounds << ','
        << format_prob(r.p_shot) << ',' << format_prob(r.p_round) << ',' << format_prob(r.ci_lo) << ','
        << format_prob(r.ci_hi);
    return out.str();
}

}  // namespace elevator
