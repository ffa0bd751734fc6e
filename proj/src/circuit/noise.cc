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

#include "elevator/circuit/noise.h"

#include <stdexcept>

namespace elevator {

std::optional<double> NoiseModel::eta() const {
    if (p_x <= 0) {
        return std::nullopt;
    }
    return p_z / p_x;
}

void NoiseModel::validate() const {
    if (!(p_x >= 0 && p_x <= 1) || !(p_z >= 0 && p_z <= 1)) {
        throw std::invalid_argument("noise probabilities must lie in [0, 1]");
    }
}

Circuit apply_noise(const Circuit &circuit, const NoiseModel &noise) {
    noise.validate();
    Circuit out;
    out.num_qubits = circuit.num_qubits;
    out.num_measurements = circuit.num_measurements;
    out.detectors = circuit.detectors;
    out.observables = circuit.observables;

    auto emit = [&](double p, Pauli a, uint32_t qa, Pauli b = Pauli::I, uint32_t qb = kNoQubit) {
        if (p > 0) {
            out.error(p, a, qa, b, qb);
        }
    };
    std::vector<uint8_t> touched(circuit.num_qubits, 0);
    bool step_open = false;
    auto close_step = [&]() {
        for (uint32_t q = 0; q < circuit.num_qubits; q++) {
            if (!touched[q]) {
                emit(noise.p_z, Pauli::Z, q);
                emit(noise.p_x, Pauli::X, q);
            }
            touched[q] = 0;
        }
    };

    size_t next_marker = 0;
    const auto &markers = circuit.round_markers;
    for (size_t pos = 0; pos < circuit.instructions.size(); pos++) {
        while (next_marker < markers.size() && markers[next_marker] == pos) {
            out.round_markers.push_back(out.instructions.size());
            next_marker++;
        }
        const Instruction &inst = circuit.instructions[pos];
        switch (inst.gate) {
            case Gate::PrepZ:
                out.instructions.push_back(inst);
                emit(noise.p_x, Pauli::X, inst.q0);
                touched[inst.q0] = 1;
                step_open = true;
                break;
            case Gate::PrepX:
                out.instructions.push_back(inst);
                emit(noise.p_z, Pauli::Z, inst.q0);
                touched[inst.q0] = 1;
                step_open = true;
                break;
            case Gate::MeasZ:
                emit(noise.p_x, Pauli::X, inst.q0);
                out.instructions.push_back(inst);
                touched[inst.q0] = 1;
                step_open = true;
                break;
            case Gate::MeasX:
                emit(noise.p_z, Pauli::Z, inst.q0);
                out.instructions.push_back(inst);
                touched[inst.q0] = 1;
                step_open = true;
                break;
            case Gate::CNOT: {
                out.instructions.push_back(inst);
                uint32_t c = inst.q0;
                uint32_t t = inst.q1;
                emit(noise.p_z / 3, Pauli::Z, t);
                emit(noise.p_z / 3, Pauli::Z, c);
                emit(noise.p_z / 3, Pauli::Z, c, Pauli::Z, t);
                emit(noise.p_x / 3, Pauli::X, t);
                emit(noise.p_x / 3, Pauli::X, c);
                emit(noise.p_x / 3, Pauli::X, c, Pauli::X, t);
                touched[c] = 1;
                touched[t] = 1;
                step_open = true;
                break;
            }
            case Gate::Tick:
                close_step();
                out.instructions.push_back(inst);
                step_open = false;
                break;
            case Gate::Error:
                out.instructions.push_back(inst);
                break;
        }
    }
    if (step_open) {
        close_step();
    }
    while (next_marker < markers.size()) {
        out.round_markers.push_back(out.instructions.size());
        next_marker++;
    }
    return out;
}

}  // namespace elevator
