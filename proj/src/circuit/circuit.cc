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

#include "elevator/circuit/circuit.h"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <stdexcept>

#include "elevator/util/format.h"

namespace elevator {

namespace {

uint32_t parse_u32(const std::string &token, size_t line_no) {
    uint32_t value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw std::invalid_argument(
            "line " + std::to_string(line_no) + ": expected a non-negative integer, got '" + token + "'");
    }
    return value;
}

Pauli parse_pauli(const std::string &token, size_t line_no) {
    if (token == "X") {
        return Pauli::X;
    }
    if (token == "Z") {
        return Pauli::Z;
    }
    throw std::invalid_argument("line " + std::to_string(line_no) + ": unsupported Pauli '" + token + "'");
}

const char *detector_kind_name(DetectorKind kind) {
    switch (kind) {
        case DetectorKind::Inner:
            return "inner";
        case DetectorKind::Outer:
            return "outer";
        case DetectorKind::Boundary:
            return "boundary";
    }
    return "inner";
}

}  // namespace

char pauli_char(Pauli p) {
    switch (p) {
        case Pauli::X:
            return 'X';
        case Pauli::Z:
            return 'Z';
        default:
            return 'I';
    }
}

void Circuit::prep_z(uint32_t q) {
    instructions.push_back({.gate = Gate::PrepZ, .q0 = q});
}

void Circuit::prep_x(uint32_t q) {
    instructions.push_back({.gate = Gate::PrepX, .q0 = q});
}

uint32_t Circuit::meas_z(uint32_t q) {
    instructions.push_back({.gate = Gate::MeasZ, .q0 = q, .meas = num_measurements});
    return num_measurements++;
}

uint32_t Circuit::meas_x(uint32_t q) {
    instructions.push_back({.gate = Gate::MeasX, .q0 = q, .meas = num_measurements});
    return num_measurements++;
}

void Circuit::cnot(uint32_t control, uint32_t target) {
    if (control == target) {
        throw std::invalid_argument("CNOT control and target must differ");
    }
    instructions.push_back({.gate = Gate::CNOT, .q0 = control, .q1 = target});
}

void Circuit::tick() {
    instructions.push_back({.gate = Gate::Tick});
}

void Circuit::error(double p, Pauli p0, uint32_t q0, Pauli p1, uint32_t q1) {
    if (!(p >= 0 && p <= 1)) {
        throw std::invalid_argument("error probability must lie in [0, 1]");
    }
    instructions.push_back({.gate = Gate::Error, .q0 = q0, .q1 = q1, .pauli0 = p0, .pauli1 = p1, .p = p});
}

void Circuit::mark_round() {
    round_markers.push_back(instructions.size());
}

size_t Circuit::count_gate(Gate gate) const {
    return std::count_if(
        instructions.begin(), instructions.end(), [&](const Instruction &inst) { return inst.gate == gate; });
}

bool Circuit::has_noise() const {
    return count_gate(Gate::Error) > 0;
}

std::string Circuit::to_text() const {
    std::ostringstream out;
    out << "QUBITS " << num_qubits << "\n";
    size_t next_round = 0;
    for (size_t pos = 0; pos < instructions.size(); pos++) {
        while (next_round < round_markers.size() && round_markers[next_round] == pos) {
            out << "ROUND\n";
            next_round++;
        }
        const Instruction &inst = instructions[pos];
        switch (inst.gate) {
            case Gate::PrepZ:
                out << "PREPZ " << inst.q0 << "\n";
                break;
            case Gate::PrepX:
                out << "PREPX " << inst.q0 << "\n";
                break;
            case Gate::MeasZ:
                out << "MZ " << inst.q0 << " -> " << inst.meas << "\n";
                break;
            case Gate::MeasX:
                out << "MX " << inst.q0 << " -> " << inst.meas << "\n";
                break;
            case Gate::CNOT:
                out << "CNOT " << inst.q0 << " " << inst.q1 << "\n";
                break;
            case Gate::Tick:
                out << "TICK\n";
                break;
            case Gate::Error:
                out << "ERROR " << format_exact(inst.p) << " " << pauli_char(inst.pauli0) << " " << inst.q0;
                if (inst.q1 != kNoQubit) {
                    out << " " << pauli_char(inst.pauli1) << " " << inst.q1;
                }
                out << "\n";
                break;
        }
    }
    while (next_round < round_markers.size()) {
        out << "ROUND\n";
        next_round++;
    }
    for (const Detector &det : detectors) {
        out << "DETECTOR";
        for (uint32_t m : det.measurements) {
            out << " " << m;
        }
        out << " # " << detector_kind_name(det.kind) << " " << det.round << "\n";
    }
    for (const Observable &obs : observables) {
        out << "OBSERVABLE " << obs.label;
        for (uint32_t m : obs.measurements) {
            out << " " << m;
        }
        out << "\n";
    }
    return out.str();
}

Circuit Circuit::from_text(std::string_view text) {
    Circuit c;
    std::istringstream in{std::string(text)};
    std::string line;
    size_t line_no = 0;
    bool saw_qubits = false;
    uint32_t max_qubit_plus_one = 0;
    auto note_qubit = [&](uint32_t q) { max_qubit_plus_one = std::max(max_qubit_plus_one, q + 1); };
    while (std::getline(in, line)) {
        line_no++;
        std::string comment;
        size_t hash = line.find('#');
        if (hash != std::string::npos) {
            comment = line.substr(hash + 1);
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
        const std::string &op = tok[0];
        auto expect = [&](size_t n) {
            if (tok.size() != n) {
                throw std::invalid_argument(
                    "line " + std::to_string(line_no) + ": '" + op + "' expects " + std::to_string(n - 1) +
                    " arguments");
            }
        };
        if (op == "QUBITS") {
            expect(2);
            c.num_qubits = parse_u32(tok[1], line_no);
            saw_qubits = true;
        } else if (op == "ROUND") {
            expect(1);
            c.mark_round();
        } else if (op == "PREPZ" || op == "PREPX") {
            expect(2);
            uint32_t q = parse_u32(tok[1], line_no);
            note_qubit(q);
            op == "PREPZ" ? c.prep_z(q) : c.prep_x(q);
        } else if (op == "MZ" || op == "MX") {
            if (tok.size() != 4 || tok[2] != "->") {
                throw std::invalid_argument("line " + std::to_string(line_no) + ": expected '" + op + " q -> m'");
            }
            uint32_t q = parse_u32(tok[1], line_no);
            uint32_t m = parse_u32(tok[3], line_no);
            if (m != c.num_measurements) {
                throw std::invalid_argument(
                    "line " + std::to_string(line_no) + ": measurement index " + std::to_string(m) +
                    " out of sequence (expected " + std::to_string(c.num_measurements) + ")");
            }
            note_qubit(q);
            op == "MZ" ? c.meas_z(q) : c.meas_x(q);
        } else if (op == "CNOT") {
            expect(3);
            uint32_t a = parse_u32(tok[1], line_no);
            uint32_t b = parse_u32(tok[2], line_no);
            note_qubit(a);
            note_qubit(b);
            c.cnot(a, b);
        } else if (op == "TICK") {
            expect(1);
            c.tick();
        } else if (op == "ERROR") {
            if (tok.size() != 4 && tok.size() != 6) {
                throw std::invalid_argument(
                    "line " + std::to_string(line_no) + ": expected 'ERROR p P q [P q]'");
            }
            double p = parse_probability(tok[1]);
            Pauli p0 = parse_pauli(tok[2], line_no);
            uint32_t q0 = parse_u32(tok[3], line_no);
            note_qubit(q0);
            if (tok.size() == 6) {
                Pauli p1 = parse_pauli(tok[4], line_no);
                uint32_t q1 = parse_u32(tok[5], line_no);
                note_qubit(q1);
                c.error(p, p0, q0, p1, q1);
            } else {
                c.error(p, p0, q0);
            }
        } else if (op == "DETECTOR") {
            Detector det;
            for (size_t k = 1; k < tok.size(); k++) {
                det.measurements.push_back(parse_u32(tok[k], line_no));
            }
            std::istringstream cs(comment);
            std::string kind;
            uint32_t round = 0;
            if (cs >> kind >> round) {
                det.kind = kind == "outer" ? DetectorKind::Outer
                           : kind == "boundary" ? DetectorKind::Boundary
                                                : DetectorKind::Inner;
                det.round = round;
            }
            c.detectors.push_back(std::move(det));
        } else if (op == "OBSERVABLE") {
            if (tok.size() < 2) {
                throw std::invalid_argument("line " + std::to_string(line_no) + ": OBSERVABLE needs a label");
            }
            Observable obs;
            obs.label = tok[1];
            for (size_t k = 2; k < tok.size(); k++) {
                obs.measurements.push_back(parse_u32(tok[k], line_no));
            }
            c.observables.push_back(std::move(obs));
        } else {
            throw std::invalid_argument("line " + std::to_string(line_no) + ": unknown instruction '" + op + "'");
        }
    }
    if (!saw_qubits) {
        c.num_qubits = max_qubit_plus_one;
    } else if (max_qubit_plus_one > c.num_qubits) {
        throw std::invalid_argument("qubit index exceeds declared QUBITS count");
    }
    auto check_meas = [&](const std::vector<uint32_t> &ms) {
        for (uint32_t m : ms) {
            if (m >= c.num_measurements) {
                throw std::invalid_argument("annotation refers to measurement " + std::to_string(m) + " which does not exist");
            }
        }
    };
    for (const auto &d : c.detectors) {
        check_meas(d.measurements);
    }
    for (const auto &o : c.observables) {
        check_meas(o.measurements);
    }
    return c;
}

ResourceCount count_resources(const Circuit &circuit) {
    return ResourceCount{
        .qubits = circuit.num_qubits,
        .inner_rounds = circuit.round_markers.size(),
        .cnot_count = circuit.count_gate(Gate::CNOT),
    };
}

}  // namespace elevator
