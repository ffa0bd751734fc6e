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

#ifndef ELEVATOR_CIRCUIT_MEMORY_CIRCUITS_H
#define ELEVATOR_CIRCUIT_MEMORY_CIRCUITS_H

#include "elevator/circuit/circuit.h"
#include "elevator/circuit/schedule.h"

namespace elevator {

enum class MemoryBasis {
    /// Prepare and measure data in Z; logical Z observables; sensitive to X errors.
    Z,
    /// Prepare and measure data in X; logical X observables; sensitive to Z errors.
    X,
};

enum class DetectorSet {
    /// Only detectors that can see errors affecting the memory observables:
    /// inner X-check detectors for X memory, outer-check detectors for Z memory.
    MemoryBasis,
    /// Every deterministic comparison, on both sides.
    All,
};

/// Qubit layout shared by all memory circuits: block slot s occupies qubits
/// s*(2d-1) ... s*(2d-1)+2d-2, data qubit i at offset 2i and the inner check
/// ancilla between data i and i+1 at offset 2i+1.
///
/// One inner round is four time steps: PrepX checks, CNOT check->left data,
/// CNOT check->right data, MeasX checks.
Circuit build_repetition_memory(
    size_t d, size_t rounds, MemoryBasis basis, DetectorSet detectors = DetectorSet::MemoryBasis);

/// Elevator-code memory over `outer_rounds` repetitions of every outer check,
/// following build_elevator_schedule. The boundary plan after inner round t
/// shares time steps with the inner rounds: ancilla MeasZ and the first
/// transversal CNOT layer run alongside the check measurements of round t,
/// ancilla PrepZ and the last layer alongside the check preparations of
/// round t+1. A Swap's middle layer gets a time step of its own.
Circuit build_elevator_memory(const ElevatorSpec &spec,
                              size_t outer_rounds,
                              MemoryBasis basis,
                              DetectorSet detectors = DetectorSet::MemoryBasis);

/// Counts for the circuit build_elevator_memory would produce, without building it.
ResourceCount count_resources(const ElevatorSpec &spec, size_t outer_rounds = 1);

const char *basis_name(MemoryBasis basis);

}  // namespace elevator

#endif
