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

#ifndef ELEVATOR_CIRCUIT_NOISE_H
#define ELEVATOR_CIRCUIT_NOISE_H

#include <optional>

#include "elevator/circuit/circuit.h"

namespace elevator {

/// Biased Pauli noise without Y errors.
struct NoiseModel {
    double p_x = 0;
    double p_z = 0;

    /// p_z / p_x, undefined when p_x == 0.
    std::optional<double> eta() const;
    void validate() const;
};

/// Inserts Error instructions according to the gate-level model:
///   PrepZ / MeasZ: X with p_x (after prep, before measurement)
///   PrepX / MeasX: Z with p_z (after prep, before measurement)
///   idle qubit per time step: Z with p_z, X with p_x
///   CNOT: IZ, ZI, ZZ with p_z/3 each; IX, XI, XX with p_x/3 each
/// Every pattern becomes its own independent Error instruction; zero
/// probabilities are skipped, so noise (0, 0) returns the circuit unchanged.
Circuit apply_noise(const Circuit &circuit, const NoiseModel &noise);

}  // namespace elevator

#endif
