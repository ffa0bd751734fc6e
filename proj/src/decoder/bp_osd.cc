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

#include "elevator/decoder/bp_osd.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "elevator/errors.h"

namespace elevator {

namespace {

constexpr double kMinPrior = 1e-12;
constexpr double kTanhClamp = 1 - 1e-15;

double llr_from_p(double p) {
    p = std::clamp(p, kMinPrior, 1 - kMinPrior);
    return std::log((1 - p) / p);
}

double check_message_from_product(double product, bool flipped) {
    product = std::clamp(product, -kTanhClamp, kTanhClamp);
    double m = 2 * std::atanh(product);
    return flipped ? -m : m;
}

/// Dense GF(2) vectors over detectors used during OSD elimination.
struct DenseVec {
    static size_t lowest(const uint64_t *v, size_t words, size_t &from_word) {
        for (; from_word < words; from_word++) {
            if (v[from_word]) {
                return from_word * 64 + std::countr_zero(v[from_word]);
            }
        }
        return std::numeric_limits<size_t>::max();
    }
};

}  // namespace

void DecoderConfig::validate() const {
    if (max_iterations < 1) {
        throw std::invalid_argument("max_iterations must be at least 1");
    }
    if (variant == BpVariant::MinSum && !(min_sum_scale > 0 && min_sum_scale <= 1)) {
        throw std::invalid_argument("min-sum scale must lie in (0, 1]");
    }
    if (osd_order > 20) {
        throw std::invalid_argument("osd_order above 20 is not supported");
    }
}

const char *variant_name(BpVariant v) {
    return v == BpVariant::ProductSum ? "product_sum" : "min_sum";
}

const char *schedule_name(BpSchedule s) {
    return s == BpSchedule::Serial ? "serial" : "parallel";
}

BpOsdDecoder::BpOsdDecoder(const DetectorErrorModel &dem, DecoderConfig config) : config_(config) {
    config_.validate();
    num_checks_ = dem.num_detectors;
    num_vars_ = dem.mechanisms.size();
    prior_.resize(num_vars_);
    var_obs_.resize(num_vars_);
    columns_.resize(num_vars_);
    std::vector<uint32_t> check_degree(num_checks_, 0);
    for (size_t v = 0; v < num_vars_; v++) {
        const auto &m = dem.mechanisms[v];
        prior_[v] = llr_from_p(m.p);
        var_obs_[v] = m.observables;
        columns_[v] = m.detectors;
        for (uint32_t c : m.detectors) {
            if (c >= num_checks_) {
                throw std::invalid_argument("mechanism refers to a detector out of range");
            }
            check_degree[c]++;
        }
    }
    check_start_.assign(num_checks_ + 1, 0);
    for (size_t c = 0; c < num_checks_; c++) {
        check_start_[c + 1] = check_start_[c] + check_degree[c];
    }
    size_t num_edges = check_start_[num_checks_];
    edge_var_.resize(num_edges);
    edge_check_.resize(num_edges);
    std::vector<uint32_t> fill(check_start_.begin(), check_start_.end() - 1);
    var_start_.assign(num_vars_ + 1, 0);
    var_edges_.resize(num_edges);
    for (size_t v = 0; v < num_vars_; v++) {
        var_start_[v + 1] = var_start_[v] + (uint32_t)columns_[v].size();
        size_t k = var_start_[v];
        for (uint32_t c : columns_[v]) {
            uint32_t e = fill[c]++;
            edge_var_[e] = (uint32_t)v;
            edge_check_[e] = c;
            var_edges_[k++] = e;
        }
    }
    vc_.resize(num_edges);
    cv_.resize(num_edges);
    tanh_.resize(num_edges);
    check_product_.resize(num_checks_);
    posterior_.resize(num_vars_);
    hard_.resize(num_vars_);
}

bool BpOsdDecoder::hard_satisfies(std::span<const uint8_t> syndrome, const std::vector<uint8_t> &hard) const {
    for (size_t c = 0; c < num_checks_; c++) {
        uint8_t parity = syndrome[c] & 1;
        for (uint32_t e = check_start_[c]; e < check_start_[c + 1]; e++) {
            parity ^= hard[edge_var_[e]];
        }
        if (parity) {
            return false;
        }
    }
    return true;
}

bool BpOsdDecoder::satisfies(std::span<const uint8_t> syndrome, std::span<const uint8_t> estimate) const {
    std::vector<uint8_t> hard(estimate.begin(), estimate.end());
    return estimate.size() == num_vars_ && syndrome.size() == num_checks_ && hard_satisfies(syndrome, hard);
}

uint64_t BpOsdDecoder::observables_of(std::span<const uint8_t> estimate) const {
    uint64_t obs = 0;
    for (size_t v = 0; v < num_vars_; v++) {
        if (estimate[v]) {
            obs ^= var_obs_[v];
        }
    }
    return obs;
}

void BpOsdDecoder::check_update_parallel(std::span<const uint8_t> syndrome) {
    for (size_t c = 0; c < num_checks_; c++) {
        uint32_t begin = check_start_[c];
        uint32_t end = check_start_[c + 1];
        bool flipped = syndrome[c] & 1;
        if (config_.variant == BpVariant::MinSum) {
            bool sign = flipped;
            double min1 = std::numeric_limits<double>::infinity();
            double min2 = min1;
            uint32_t arg = begin;
            for (uint32_t e = begin; e < end; e++) {
                double m = vc_[e];
                sign ^= m < 0;
                double a = std::fabs(m);
                if (a < min1) {
                    min2 = min1;
                    min1 = a;
                    arg = e;
                } else if (a < min2) {
                    min2 = a;
                }
            }
            for (uint32_t e = begin; e < end; e++) {
                double mag = (e == arg ? min2 : min1) * config_.min_sum_scale;
                bool s = sign ^ (vc_[e] < 0);
                cv_[e] = s ? -mag : mag;
            }
        } else {
            // Prefix/suffix products avoid dividing by near-zero tanh values.
            double prefix = 1;
            for (uint32_t e = begin; e < end; e++) {
                tanh_[e] = std::tanh(vc_[e] / 2);
                cv_[e] = prefix;
                prefix *= tanh_[e];
            }
            double suffix = 1;
            for (uint32_t e = end; e-- > begin;) {
                cv_[e] = check_message_from_product(cv_[e] * suffix, flipped);
                suffix *= tanh_[e];
            }
        }
    }
}

void BpOsdDecoder::serial_sweep(std::span<const uint8_t> syndrome) {
    bool product_sum = config_.variant == BpVariant::ProductSum;
    if (product_sum) {
        for (size_t c = 0; c < num_checks_; c++) {
            double prod = 1;
            for (uint32_t e = check_start_[c]; e < check_start_[c + 1]; e++) {
                tanh_[e] = std::tanh(vc_[e] / 2);
                prod *= tanh_[e];
            }
            check_product_[c] = prod;
        }
    }
    auto exclusive_product = [&](uint32_t e) {
        uint32_t c = edge_check_[e];
        if (std::fabs(tanh_[e]) > 1e-8) {
            return check_product_[c] / tanh_[e];
        }
        double prod = 1;
        for (uint32_t f = check_start_[c]; f < check_start_[c + 1]; f++) {
            if (f != e) {
                prod *= tanh_[f];
            }
        }
        return prod;
    };
    auto min_sum_message = [&](uint32_t e) {
        uint32_t c = edge_check_[e];
        bool sign = syndrome[c] & 1;
        double mn = std::numeric_limits<double>::infinity();
        for (uint32_t f = check_start_[c]; f < check_start_[c + 1]; f++) {
            if (f != e) {
                sign ^= vc_[f] < 0;
                mn = std::min(mn, std::fabs(vc_[f]));
            }
        }
        double mag = mn * config_.min_sum_scale;
        return sign ? -mag : mag;
    };

    for (size_t v = 0; v < num_vars_; v++) {
        double sum = prior_[v];
        for (uint32_t k = var_start_[v]; k < var_start_[v + 1]; k++) {
            uint32_t e = var_edges_[k];
            cv_[e] = product_sum ? check_message_from_product(exclusive_product(e), syndrome[edge_check_[e]] & 1)
                                 : min_sum_message(e);
            sum += cv_[e];
        }
        posterior_[v] = sum;
        for (uint32_t k = var_start_[v]; k < var_start_[v + 1]; k++) {
            uint32_t e = var_edges_[k];
            double msg = sum - cv_[e];
            vc_[e] = msg;
            if (product_sum) {
                uint32_t c = edge_check_[e];
                double t = std::tanh(msg / 2);
                if (std::fabs(tanh_[e]) > 1e-8) {
                    check_product_[c] = check_product_[c] / tanh_[e] * t;
                    tanh_[e] = t;
                } else {
                    tanh_[e] = t;
                    double prod = 1;
                    for (uint32_t f = check_start_[c]; f < check_start_[c + 1]; f++) {
                        prod *= tanh_[f];
                    }
                    check_product_[c] = prod;
                }
            }
        }
    }
}

BpResult BpOsdDecoder::bp(std::span<const uint8_t> syndrome) {
    if (syndrome.size() != num_checks_) {
        throw std::invalid_argument(
            "syndrome has " + std::to_string(syndrome.size()) + " bits, expected " + std::to_string(num_checks_));
    }
    for (size_t v = 0; v < num_vars_; v++) {
        posterior_[v] = prior_[v];
        hard_[v] = prior_[v] < 0;
        for (uint32_t k = var_start_[v]; k < var_start_[v + 1]; k++) {
            vc_[var_edges_[k]] = prior_[v];
        }
    }
    BpResult result;
    if (hard_satisfies(syndrome, hard_)) {
        result.converged = true;
    }
    while (!result.converged && result.iterations < config_.max_iterations) {
        result.iterations++;
        if (config_.schedule == BpSchedule::Parallel) {
            check_update_parallel(syndrome);
            for (size_t v = 0; v < num_vars_; v++) {
                double sum = prior_[v];
                for (uint32_t k = var_start_[v]; k < var_start_[v + 1]; k++) {
                    sum += cv_[var_edges_[k]];
                }
                posterior_[v] = sum;
                for (uint32_t k = var_start_[v]; k < var_start_[v + 1]; k++) {
                    uint32_t e = var_edges_[k];
                    vc_[e] = sum - cv_[e];
                }
            }
        } else {
            serial_sweep(syndrome);
        }
        for (size_t v = 0; v < num_vars_; v++) {
            hard_[v] = posterior_[v] < 0;
        }
        result.converged = hard_satisfies(syndrome, hard_);
    }
    result.posterior_llr = posterior_;
    result.hard_decision = hard_;
    return result;
}

std::vector<uint8_t> BpOsdDecoder::osd(std::span<const uint8_t> syndrome, std::span<const double> llr) {
    if (syndrome.size() != num_checks_) {
        throw std::invalid_argument("syndrome length does not match detector count");
    }
    std::span<const double> ranking = llr.empty() ? std::span<const double>(prior_) : llr;
    if (ranking.size() != num_vars_) {
        throw std::invalid_argument("soft input length does not match mechanism count");
    }
    std::vector<uint32_t> order(num_vars_);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) { return ranking[a] < ranking[b]; });

    const size_t words = (num_checks_ + 63) / 64;
    std::vector<uint64_t> s(words, 0);
    for (size_t c = 0; c < num_checks_; c++) {
        if (syndrome[c] & 1) {
            s[c / 64] |= uint64_t{1} << (c % 64);
        }
    }
    std::vector<uint8_t> estimate(num_vars_, 0);
    bool s_zero = std::all_of(s.begin(), s.end(), [](uint64_t w) { return w == 0; });
    if (s_zero && config_.osd_order == 0) {
        return estimate;
    }

    // Echelon basis: basis vector b has a unique lowest set row. It equals
    // column col_of[b] XOR the basis vectors listed in parents[b].
    std::vector<uint64_t> basis;
    std::vector<uint32_t> col_of;
    std::vector<std::vector<uint32_t>> parents;
    std::vector<int32_t> pivot_of(num_checks_, -1);
    std::vector<uint32_t> non_pivot;

    std::vector<uint32_t> s_parents;
    size_t s_word = 0;
    size_t s_low = DenseVec::lowest(s.data(), words, s_word);
    auto advance_syndrome = [&]() {
        while (s_low < num_checks_ && pivot_of[s_low] >= 0) {
            uint32_t b = (uint32_t)pivot_of[s_low];
            const uint64_t *bv = basis.data() + (size_t)b * words;
            for (size_t w = s_word; w < words; w++) {
                s[w] ^= bv[w];
            }
            s_parents.push_back(b);
            s_low = DenseVec::lowest(s.data(), words, s_word);
        }
    };

    std::vector<uint64_t> v(words);
    bool need_full_rank = config_.osd_order > 0;
    for (uint32_t col : order) {
        if (!need_full_rank && s_low >= num_checks_) {
            break;
        }
        std::fill(v.begin(), v.end(), 0);
        for (uint32_t c : columns_[col]) {
            v[c / 64] ^= uint64_t{1} << (c % 64);
        }
        std::vector<uint32_t> used;
        size_t word = 0;
        size_t low = DenseVec::lowest(v.data(), words, word);
        while (low < num_checks_ && pivot_of[low] >= 0) {
            uint32_t b = (uint32_t)pivot_of[low];
            const uint64_t *bv = basis.data() + (size_t)b * words;
            for (size_t w = word; w < words; w++) {
                v[w] ^= bv[w];
            }
            used.push_back(b);
            low = DenseVec::lowest(v.data(), words, word);
        }
        if (low >= num_checks_) {
            non_pivot.push_back(col);
            continue;
        }
        uint32_t b = (uint32_t)col_of.size();
        pivot_of[low] = (int32_t)b;
        basis.insert(basis.end(), v.begin(), v.end());
        col_of.push_back(col);
        parents.push_back(std::move(used));
        if (low == s_low) {
            advance_syndrome();
        }
    }
    if (s_low < num_checks_) {
        throw InvariantViolation("syndrome is not in the column space of the detector error model");
    }

    auto expand = [&](const std::vector<uint32_t> &selected_basis, std::vector<uint8_t> &out) {
        std::vector<uint8_t> sel(col_of.size(), 0);
        for (uint32_t b : selected_basis) {
            sel[b] ^= 1;
        }
        for (size_t b = col_of.size(); b-- > 0;) {
            if (sel[b]) {
                out[col_of[b]] ^= 1;
                for (uint32_t p : parents[b]) {
                    sel[p] ^= 1;
                }
            }
        }
    };
    expand(s_parents, estimate);
    if (config_.osd_order == 0) {
        return estimate;
    }

    // Exhaustive search over the most reliable-ranked non-pivot columns.
    size_t lambda = std::min(config_.osd_order, non_pivot.size());
    auto cost_of = [&](const std::vector<uint8_t> &x) {
        double cost = 0;
        for (size_t i = 0; i < num_vars_; i++) {
            if (x[i]) {
                cost += prior_[i];
            }
        }
        return cost;
    };
    std::vector<uint8_t> best = estimate;
    double best_cost = cost_of(best);
    std::vector<uint64_t> base(words, 0);
    for (size_t c = 0; c < num_checks_; c++) {
        if (syndrome[c] & 1) {
            base[c / 64] |= uint64_t{1} << (c % 64);
        }
    }
    for (uint64_t mask = 1; mask < (uint64_t{1} << lambda); mask++) {
        std::vector<uint64_t> t = base;
        std::vector<uint8_t> x(num_vars_, 0);
        for (size_t i = 0; i < lambda; i++) {
            if ((mask >> i) & 1) {
                uint32_t col = non_pivot[i];
                x[col] ^= 1;
                for (uint32_t c : columns_[col]) {
                    t[c / 64] ^= uint64_t{1} << (c % 64);
                }
            }
        }
        std::vector<uint32_t> used;
        size_t word = 0;
        size_t low = DenseVec::lowest(t.data(), words, word);
        while (low < num_checks_) {
            if (pivot_of[low] < 0) {
                throw InvariantViolation("OSD test pattern left the column space");
            }
            uint32_t b = (uint32_t)pivot_of[low];
            const uint64_t *bv = basis.data() + (size_t)b * words;
            for (size_t w = word; w < words; w++) {
                t[w] ^= bv[w];
            }
            used.push_back(b);
            low = DenseVec::lowest(t.data(), words, word);
        }
        expand(used, x);
        double cost = cost_of(x);
        if (cost < best_cost) {
            best_cost = cost;
            best = std::move(x);
        }
    }
    return best;
}

DecodeOutcome BpOsdDecoder::decode(std::span<const uint8_t> syndrome) {
    BpResult r = bp(syndrome);
    DecodeOutcome out;
    out.bp_converged = r.converged;
    out.iterations = r.iterations;
    if (r.converged) {
        out.error_estimate = std::move(r.hard_decision);
    } else {
        out.osd_used = true;
        out.error_estimate = osd(syndrome, r.posterior_llr);
    }
    if (!hard_satisfies(syndrome, out.error_estimate)) {
        throw InvariantViolation("decoder output does not reproduce the syndrome");
    }
    out.predicted_observables = observables_of(out.error_estimate);
    return out;
}

}  // namespace elevator
