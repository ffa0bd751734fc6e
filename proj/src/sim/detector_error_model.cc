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

#include "elevator/sim/detector_error_model.h"

#include <algorithm>
#include <bit>
#include <charconv>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

#include "elevator/errors.h"
#include "elevator/util/format.h"

namespace elevator {

namespace {

struct Signature {
    std::vector<uint32_t> dets;
    uint64_t obs = 0;

    void operator^=(const Signature &other) {
        std::vector<uint32_t> out;
        out.reserve(dets.size() + other.dets.size());
        std::set_symmetric_difference(
            dets.begin(), dets.end(), other.dets.begin(), other.dets.end(), std::back_inserter(out));
        dets = std::move(out);
        obs ^= other.obs;
    }
    void clear() {
        dets.clear();
        obs = 0;
    }
};

uint32_t parse_index(std::string_view s, std::string_view what) {
    uint32_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw std::invalid_argument("bad " + std::string(what) + " index '" + std::string(s) + "'");
    }
    return v;
}

}  // namespace

double combine_flip_probabilities(double p1, double p2) {
    return p1 * (1 - p2) + p2 * (1 - p1);
}

SparseBinaryMatrix DetectorErrorModel::check_matrix() const {
    std::vector<std::vector<uint32_t>> columns;
    columns.reserve(mechanisms.size());
    for (const auto &m : mechanisms) {
        columns.push_back(m.detectors);
    }
    return SparseBinaryMatrix::from_columns(num_detectors, std::move(columns));
}

size_t DetectorErrorModel::max_detector_degree() const {
    size_t best = 0;
    for (const auto &m : mechanisms) {
        best = std::max(best, m.detectors.size());
    }
    return best;
}

std::string DetectorErrorModel::to_text() const {
    std::ostringstream out;
    out << "detectors " << num_detectors << "\n";
    out << "observables " << num_observables << "\n";
    for (const auto &m : mechanisms) {
        out << "error " << format_exact(m.p);
        for (uint32_t d : m.detectors) {
            out << " D" << d;
        }
        for (size_t k = 0; k < 64; k++) {
            if ((m.observables >> k) & 1) {
                out << " L" << k;
            }
        }
        out << "\n";
    }
    return out.str();
}

DetectorErrorModel DetectorErrorModel::from_text(std::string_view text) {
    DetectorErrorModel dem;
    std::istringstream in{std::string(text)};
    std::string line;
    bool have_d = false;
    bool have_k = false;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        line_no++;
        size_t hash = line.find('#');
        if (hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) {
            tok.push_back(t);
        }
        if (tok.empty()) {
            continue;
        }
        auto where = [&]() { return "line " + std::to_string(line_no) + ": "; };
        if (tok[0] == "detectors" && tok.size() == 2) {
            dem.num_detectors = parse_index(tok[1], "detector count");
            have_d = true;
        } else if (tok[0] == "observables" && tok.size() == 2) {
            dem.num_observables = parse_index(tok[1], "observable count");
            have_k = true;
        } else if (tok[0] == "error" && tok.size() >= 2) {
            DemMechanism m;
            m.p = parse_probability(tok[1]);
            for (size_t k = 2; k < tok.size(); k++) {
                std::string_view t = tok[k];
                if (t.size() >= 2 && t[0] == 'D') {
                    m.detectors.push_back(parse_index(t.substr(1), "detector"));
                } else if (t.size() >= 2 && t[0] == 'L') {
                    uint32_t l = parse_index(t.substr(1), "observable");
                    if (l >= 64) {
                        throw std::invalid_argument(where() + "observable index must be below 64");
                    }
                    m.observables ^= uint64_t{1} << l;
                } else {
                    throw std::invalid_argument(where() + "unexpected token '" + tok[k] + "'");
                }
            }
            std::sort(m.detectors.begin(), m.detectors.end());
            if (std::adjacent_find(m.detectors.begin(), m.detectors.end()) != m.detectors.end()) {
                throw std::invalid_argument(where() + "repeated detector in one mechanism");
            }
            dem.mechanisms.push_back(std::move(m));
        } else {
            throw std::invalid_argument(where() + "unrecognized line");
        }
    }
    if (!have_d || !have_k) {
        // Infer missing counts from the mechanisms.
        size_t max_d = 0;
        uint64_t all_obs = 0;
        for (const auto &m : dem.mechanisms) {
            for (uint32_t d : m.detectors) {
                max_d = std::max<size_t>(max_d, d + 1);
            }
            all_obs |= m.observables;
        }
        if (!have_d) {
            dem.num_detectors = max_d;
        }
        if (!have_k) {
            dem.num_observables = all_obs ? 64 - std::countl_zero(all_obs) : 0;
        }
    }
    for (const auto &m : dem.mechanisms) {
        for (uint32_t d : m.detectors) {
            if (d >= dem.num_detectors) {
                throw std::invalid_argument("mechanism refers to detector D" + std::to_string(d) + " out of range");
            }
        }
        if (dem.num_observables < 64 && (m.observables >> dem.num_observables)) {
            throw std::invalid_argument("mechanism refers to an observable out of range");
        }
    }
    return dem;
}

DetectorErrorModel extract_dem(const Circuit &circuit, const DemOptions &options) {
    if (circuit.observables.size() > 64) {
        throw std::invalid_argument("detector error models support at most 64 observables");
    }
    std::vector<Signature> meas_targets(circuit.num_measurements);
    for (size_t d = 0; d < circuit.detectors.size(); d++) {
        for (uint32_t m : circuit.detectors[d].measurements) {
            // Detector lists are built in ascending order, so push_back keeps them sorted.
            auto &v = meas_targets[m].dets;
            if (!v.empty() && v.back() == d) {
                v.pop_back();
            } else {
                v.push_back((uint32_t)d);
            }
        }
    }
    for (size_t k = 0; k < circuit.observables.size(); k++) {
        for (uint32_t m : circuit.observables[k].measurements) {
            meas_targets[m].obs ^= uint64_t{1} << k;
        }
    }

    std::vector<Signature> xs(circuit.num_qubits);
    std::vector<Signature> zs(circuit.num_qubits);
    std::map<std::pair<std::vector<uint32_t>, uint64_t>, double> merged;
    double undetectable_p = 0;
    uint64_t undetectable_mask = 0;

    for (size_t pos = circuit.instructions.size(); pos-- > 0;) {
        const Instruction &inst = circuit.instructions[pos];
        switch (inst.gate) {
            case Gate::PrepZ:
            case Gate::PrepX:
                xs[inst.q0].clear();
                zs[inst.q0].clear();
                break;
            case Gate::MeasZ:
                xs[inst.q0] ^= meas_targets[inst.meas];
                zs[inst.q0].clear();
                break;
            case Gate::MeasX:
                zs[inst.q0] ^= meas_targets[inst.meas];
                xs[inst.q0].clear();
                break;
            case Gate::CNOT:
                xs[inst.q0] ^= xs[inst.q1];
                zs[inst.q1] ^= zs[inst.q0];
                break;
            case Gate::Tick:
                break;
            case Gate::Error: {
                if (inst.p <= 0) {
                    break;
                }
                if (inst.p > 0.5) {
                    throw std::invalid_argument(
                        "error probability " + format_prob(inst.p) + " exceeds 0.5 and cannot enter a detector error model");
                }
                Signature sig;
                auto add = [&](Pauli p, uint32_t q) {
                    if (p == Pauli::X) {
                        sig ^= xs[q];
                    } else if (p == Pauli::Z) {
                        sig ^= zs[q];
                    }
                };
                add(inst.pauli0, inst.q0);
                if (inst.q1 != kNoQubit) {
                    add(inst.pauli1, inst.q1);
                }
                if (sig.dets.empty()) {
                    if (sig.obs == 0) {
                        break;
                    }
                    if (!options.allow_undetectable) {
                        throw InvariantViolation(
                            "a fault at instruction " + std::to_string(pos) +
                            " flips a logical observable without flipping any detector");
                    }
                    undetectable_p = combine_flip_probabilities(undetectable_p, inst.p);
                    undetectable_mask |= sig.obs;
                    break;
                }
                auto key = std::make_pair(std::move(sig.dets), sig.obs);
                auto it = merged.find(key);
                if (it == merged.end()) {
                    merged.emplace(std::move(key), inst.p);
                } else {
                    it->second = combine_flip_probabilities(it->second, inst.p);
                }
                break;
            }
        }
    }

    DetectorErrorModel dem;
    dem.num_detectors = circuit.detectors.size();
    dem.num_observables = circuit.observables.size();
    dem.undetectable_logical_p = undetectable_p;
    dem.undetectable_logical_mask = undetectable_mask;
    dem.mechanisms.reserve(merged.size());
    for (auto &[key, p] : merged) {
        dem.mechanisms.push_back(DemMechanism{p, key.first, key.second});
    }
    return dem;
}

SampleResult sample_dem(const DetectorErrorModel &dem, size_t shots, uint64_t seed) {
    SampleResult out{BitTable(shots, dem.num_detectors), BitTable(shots, dem.num_observables)};
    std::seed_seq seq{uint32_t(seed), uint32_t(seed >> 32), 0x64656dU};
    std::mt19937_64 rng(seq);
    for (const auto &m : dem.mechanisms) {
        if (m.p <= 0) {
            continue;
        }
        std::geometric_distribution<uint64_t> gap(std::min(m.p, 0.5));
        bool always = m.p >= 1;
        for (uint64_t s = always ? 0 : gap(rng); s < shots; s += always ? 1 : 1 + gap(rng)) {
            for (uint32_t d : m.detectors) {
                out.detectors.data[s * out.detectors.bytes_per_row + d / 8] ^= uint8_t(1u << (d % 8));
            }
            for (size_t k = 0; k < dem.num_observables; k++) {
                if ((m.observables >> k) & 1) {
                    out.observables.data[s * out.observables.bytes_per_row + k / 8] ^= uint8_t(1u << (k % 8));
                }
            }
        }
    }
    return out;
}

}  // namespace elevator
