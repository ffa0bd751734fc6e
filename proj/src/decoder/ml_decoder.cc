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

#include "elevator/decoder/ml_decoder.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "elevator/errors.h"

namespace elevator {

namespace {

size_t lowest_set(const std::vector<uint64_t> &v) {
    for (size_t w = 0; w < v.size(); w++) {
        if (v[w]) {
            return w * 64 + std::countr_zero(v[w]);
        }
    }
    return std::numeric_limits<size_t>::max();
}

double log_add(double a, double b) {
    if (a < b) {
        std::swap(a, b);
    }
    if (b == -std::numeric_limits<double>::infinity()) {
        return a;
    }
    return a + std::log1p(std::exp(b - a));
}

}  // namespace

MlDecoder::MlDecoder(const DetectorErrorModel &dem, size_t max_kernel_dim)
    : num_detectors_(dem.num_detectors), num_mechanisms_(dem.mechanisms.size()) {
    if (num_mechanisms_ > 64) {
        throw InfeasibleError(
            "exhaustive decoding supports at most 64 mechanisms, got " + std::to_string(num_mechanisms_));
    }
    const size_t words = (num_detectors_ + 63) / 64;
    pivot_of_.assign(num_detectors_, -1);
    for (size_t i = 0; i < num_mechanisms_; i++) {
        const auto &m = dem.mechanisms[i];
        double p = std::clamp(m.p, 1e-300, 1 - 1e-16);
        log_odds_.push_back(std::log(p) - std::log1p(-p));
        obs_.push_back(m.observables);
        std::vector<uint64_t> v(words, 0);
        for (uint32_t d : m.detectors) {
            if (d >= num_detectors_) {
                throw std::invalid_argument("mechanism refers to a detector out of range");
            }
            v[d / 64] ^= uint64_t{1} << (d % 64);
        }
        uint64_t combo = uint64_t{1} << i;
        for (size_t low = lowest_set(v); low < num_detectors_; low = lowest_set(v)) {
            int32_t b = pivot_of_[low];
            if (b < 0) {
                pivot_of_[low] = (int32_t)basis_rows_.size();
                basis_rows_.push_back(v);
                basis_combo_.push_back(combo);
                combo = 0;
                break;
            }
            for (size_t w = 0; w < words; w++) {
                v[w] ^= basis_rows_[b][w];
            }
            combo ^= basis_combo_[b];
        }
        if (combo) {
            kernel_.push_back(combo);
        }
    }
    if (kernel_.size() > max_kernel_dim) {
        throw InfeasibleError(
            "coset enumeration needs 2^" + std::to_string(kernel_.size()) + " patterns, limit is 2^" +
            std::to_string(max_kernel_dim));
    }
}

std::optional<uint64_t> MlDecoder::particular_solution(std::span<const uint8_t> syndrome) const {
    if (syndrome.size() != num_detectors_) {
        throw std::invalid_argument("syndrome length does not match detector count");
    }
    const size_t words = (num_detectors_ + 63) / 64;
    std::vector<uint64_t> s(words, 0);
    for (size_t d = 0; d < num_detectors_; d++) {
        if (syndrome[d] & 1) {
            s[d / 64] |= uint64_t{1} << (d % 64);
        }
    }
    uint64_t e = 0;
    for (size_t low = lowest_set(s); low < num_detectors_; low = lowest_set(s)) {
        int32_t b = pivot_of_[low];
        if (b < 0) {
            return std::nullopt;
        }
        for (size_t w = 0; w < words; w++) {
            s[w] ^= basis_rows_[b][w];
        }
        e ^= basis_combo_[b];
    }
    return e;
}

std::map<uint64_t, double> MlDecoder::class_probabilities(std::span<const uint8_t> syndrome) const {
    std::map<uint64_t, double> out;
    auto e0 = particular_solution(syndrome);
    if (!e0) {
        return out;
    }
    auto weight_of = [&](uint64_t e) {
        double w = 0;
        for (; e; e &= e - 1) {
            w += log_odds_[std::countr_zero(e)];
        }
        return w;
    };
    auto obs_of = [&](uint64_t e) {
        uint64_t o = 0;
        for (; e; e &= e - 1) {
            o ^= obs_[std::countr_zero(e)];
        }
        return o;
    };
    // Log-probabilities relative to the all-zero pattern, accumulated per class.
    std::map<uint64_t, double> log_mass;
    uint64_t e = *e0;
    uint64_t obs = obs_of(e);
    double w = weight_of(e);
    const uint64_t count = uint64_t{1} << kernel_.size();
    for (uint64_t g = 0; g < count; g++) {
        if (g > 0) {
            // Gray-code step toggles kernel vector countr_zero(g).
            uint64_t k = kernel_[std::countr_zero(g)];
            uint64_t added = k & ~e;
            uint64_t removed = k & e;
            w += weight_of(added) - weight_of(removed);
            e ^= k;
            obs ^= obs_of(k);
        }
        auto [it, inserted] = log_mass.try_emplace(obs, w);
        if (!inserted) {
            it->second = log_add(it->second, w);
        }
    }
    double total = -std::numeric_limits<double>::infinity();
    for (const auto &[o, lm] : log_mass) {
        total = log_add(total, lm);
    }
    for (const auto &[o, lm] : log_mass) {
        out[o] = std::exp(lm - total);
    }
    return out;
}

uint64_t MlDecoder::decode(std::span<const uint8_t> syndrome) const {
    auto classes = class_probabilities(syndrome);
    if (classes.empty()) {
        throw InvariantViolation("syndrome is not in the column space of the detector error model");
    }
    uint64_t best = classes.begin()->first;
    double best_p = classes.begin()->second;
    for (const auto &[o, p] : classes) {
        if (p > best_p * (1 + 1e-12)) {
            best = o;
            best_p = p;
        }
    }
    return best;
}

}  // namespace elevator
