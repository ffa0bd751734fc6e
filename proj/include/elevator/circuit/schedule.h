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

#ifndef ELEVATOR_CIRCUIT_SCHEDULE_H
#define ELEVATOR_CIRCUIT_SCHEDULE_H

#include <vector>

#include "elevator/codes/classical_code.h"

namespace elevator {

/// Column of repetition-code blocks: n data blocks (ids 0..n-1) and one or
/// two ancilla blocks (ids n, n+1).
struct ElevatorSpec {
    ClassicalCode outer;
    size_t d_z = 3;
    size_t n_ancilla_blocks = 1;
    /// block_order[slot] = block id occupying that slot at the start. Empty
    /// means the default [n, 0, 1, ..., n-1] (plus n+1 at the bottom with two
    /// ancillae).
    std::vector<size_t> block_order;

    size_t n_data() const {
        return outer.n;
    }
    size_t n_blocks() const {
        return outer.n + n_ancilla_blocks;
    }
    /// Validates and returns the effective initial order.
    std::vector<size_t> initial_order() const;
};

enum class StepKind {
    /// Transversal CNOT from a support block onto the ancilla, then SWAP. Two CNOT layers.
    CnotSwap,
    /// Plain SWAP of the ancilla with a neighbouring block. Three CNOT layers.
    Swap,
    /// Inner round with no logical operation on this ancilla.
    Pad,
    /// Inner round where the ancilla wanted to move but a neighbour was busy.
    Stall,
};

struct ScheduleStep {
    StepKind kind = StepKind::Pad;
    /// Partner block of a CnotSwap/Swap.
    size_t block = 0;
    /// Index of the inner round preceding this step.
    size_t round = 0;
};

/// One measurement of one outer check by one ancilla block.
struct CheckSchedule {
    size_t outer_round = 0;
    size_t row = 0;
    size_t ancilla = 0;
    /// First inner round after the ancilla reset.
    size_t reset_round = 0;
    /// Inner round after which the ancilla is measured.
    size_t measure_round = 0;
    /// One entry per inner round of the span, describing what follows it.
    std::vector<ScheduleStep> steps;

    /// Number of transversal logical operations (CnotSwap + Swap).
    size_t n_l() const;
    /// Inner rounds from reset to measurement, inclusive.
    size_t span() const {
        return measure_round - reset_round + 1;
    }
    /// Data blocks that received a CnotSwap, in order.
    std::vector<size_t> touched_blocks() const;
};

struct TransversalOp {
    StepKind kind = StepKind::CnotSwap;
    size_t ancilla_slot = 0;
    size_t other_slot = 0;
    size_t ancilla_block = 0;
    size_t other_block = 0;
};

/// Work done between inner round t and inner round t+1.
struct BoundaryPlan {
    std::vector<TransversalOp> ops;
    /// Checks (indices into Schedule::checks) whose ancilla is measured.
    std::vector<size_t> measured_checks;
    /// Ancilla blocks reset after measurement.
    std::vector<size_t> reset_blocks;

    bool empty() const {
        return ops.empty() && measured_checks.empty() && reset_blocks.empty();
    }
};

struct Schedule {
    size_t n_data = 0;
    size_t n_blocks = 0;
    size_t d_z = 0;
    size_t outer_rounds = 0;
    std::vector<size_t> initial_order;
    std::vector<size_t> final_order;
    std::vector<CheckSchedule> checks;
    /// boundaries[t] follows inner round t; size equals total_rounds.
    std::vector<BoundaryPlan> boundaries;
    size_t total_rounds = 0;
};

/// Lockstep elevator schedule for `outer_rounds` repetitions of every outer
/// check. Each ancilla walks toward the remaining support blocks of its
/// current check one slot per inner round, applying CnotSwap at support
/// blocks and Swap elsewhere, then pads until the reset-to-measure span
/// reaches d_z. The block permutation is carried across checks.
Schedule build_elevator_schedule(const ElevatorSpec &spec, size_t outer_rounds = 1);

}  // namespace elevator

#endif
