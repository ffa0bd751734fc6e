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

#ifndef ELEVATOR_CIRCUIT_CIRCUIT_H
#define ELEVATOR_CIRCUIT_CIRCUIT_H

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

namespace elevator {

enum class Gate : uint8_t {
    PrepZ,
    PrepX,
    MeasZ,
    MeasX,
    CNOT,
    Tick,
    Error,
};

/// Single-qubit Pauli. Y is intentionally absent from the noise model.
enum class Pauli : uint8_t {
    I = 0,
    X = 1,
    Z = 2,
};

constexpr uint32_t kNoQubit = std::numeric_limits<uint32_t>::max();

struct Instruction {
    Gate gate = Gate::Tick;
    uint32_t q0 = kNoQubit;
    /// CNOT target, or second qubit of a two-qubit error pattern.
    uint32_t q1 = kNoQubit;
    /// Measurement record index for MeasZ/MeasX.
    uint32_t meas = 0;
    Pauli pauli0 = Pauli::I;
    Pauli pauli1 = Pauli::I;
    /// Firing probability for Error.
    double p = 0;

    bool operator==(const Instruction &other) const = default;
};

enum class DetectorKind : uint8_t {
    /// Consecutive comparison of an inner repetition-code X check.
    Inner,
    /// Consecutive comparison of an outer-code check measured by an ancilla block.
    Outer,
    /// Comparison against the final transversal data measurement.
    Boundary,
};

struct Detector {
    std::vector<uint32_t> measurements;
    DetectorKind kind = DetectorKind::Inner;
    uint32_t round = 0;

    bool operator==(const Detector &other) const = default;
};

struct Observable {
    std::vector<uint32_t> measurements;
    std::string label;

    bool operator==(const Observable &other) const = default;
};

/// Instruction list plus detector and observable annotations.
///
/// Instructions between two Tick instructions form one time step. A qubit not
/// acted on during a step is idle for that step.
struct Circuit {
    uint32_t num_qubits = 0;
    uint32_t num_measurements = 0;
    std::vector<Instruction> instructions;
    std::vector<Detector> detectors;
    std::vector<Observable> observables;
    /// Instruction position at which each inner syndrome round starts.
    std::vector<size_t> round_markers;

    void prep_z(uint32_t q);
    void prep_x(uint32_t q);
    uint32_t meas_z(uint32_t q);
    uint32_t meas_x(uint32_t q);
    void cnot(uint32_t control, uint32_t target);
    void tick();
    void error(double p, Pauli p0, uint32_t q0, Pauli p1 = Pauli::I, uint32_t q1 = kNoQubit);
    void mark_round();

    size_t count_gate(Gate gate) const;
    bool has_noise() const;

    /// Line-oriented text format; see README for the grammar.
    std::string to_text() const;
    static Circuit from_text(std::string_view text);

    bool operator==(const Circuit &other) const = default;
};

struct ResourceCount {
    size_t qubits = 0;
    size_t inner_rounds = 0;
    size_t cnot_count = 0;
};

ResourceCount count_resources(const Circuit &circuit);

char pauli_char(Pauli p);

}  // namespace elevator

#endif
