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

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "elevator/circuit/circuit.h"
#include "elevator/circuit/memory_circuits.h"
#include "elevator/circuit/noise.h"
#include "elevator/circuit/schedule.h"
#include "elevator/codes/classical_code.h"
#include "elevator/sim/frame_sampler.h"

namespace elevator {
namespace {

ElevatorSpec make_spec(OuterCodeId id, size_t d_z, size_t anc = 1) {
    ElevatorSpec s;
    s.outer = builtin_outer(id);
    s.d_z = d_z;
    s.n_ancilla_blocks = anc;
    return s;
}

void expect_noiseless_deterministic(const Circuit &c, size_t shots = 256) {
    SampleResult r = sample(c, shots, 99);
    for (size_t s = 0; s < shots; s++) {
        for (size_t d = 0; d < r.detectors.bits; d++) {
            ASSERT_FALSE(r.detectors.get(s, d)) << "detector " << d << " shot " << s;
        }
        for (size_t l = 0; l < r.observables.bits; l++) {
            ASSERT_FALSE(r.observables.get(s, l)) << "observable " << l << " shot " << s;
        }
    }
}

TEST(RepetitionMemory, SmallShapes) {
    Circuit c = build_repetition_memory(3, 1, MemoryBasis::X);
    EXPECT_EQ(c.num_qubits, 5u);
    EXPECT_EQ(c.count_gate(Gate::MeasX), 2u + 3u);
    EXPECT_EQ(c.observables.size(), 1u);
    expect_noiseless_deterministic(c);

    Circuit z = build_repetition_memory(3, 2, MemoryBasis::Z);
    EXPECT_EQ(z.count_gate(Gate::MeasZ), 3u);
    expect_noiseless_deterministic(z);
    expect_noiseless_deterministic(build_repetition_memory(3, 2, MemoryBasis::Z, DetectorSet::All));

    Circuit c9 = build_repetition_memory(9, 27, MemoryBasis::X);
    EXPECT_EQ(count_resources(c9).inner_rounds, 27u);
    EXPECT_EQ(count_resources(c9).qubits, 17u);
    EXPECT_EQ(c9.round_markers.size(), 27u);
}

TEST(RepetitionMemory, EachRoundUsesTwoCnotLayers) {
    for (size_t d : {3, 5, 7}) {
        Circuit c = build_repetition_memory(d, 4, MemoryBasis::X);
        EXPECT_EQ(c.count_gate(Gate::CNOT), 4 * 2 * (d - 1));
    }
}

TEST(Circuit, TextRoundTrip) {
    Circuit c = apply_noise(build_elevator_memory(make_spec(OuterCodeId::code_15_9_3, 3), 1, MemoryBasis::X),
                            {1e-3, 7.5e-3});
    Circuit back = Circuit::from_text(c.to_text());
    EXPECT_EQ(back.instructions, c.instructions);
    EXPECT_EQ(back.detectors, c.detectors);
    EXPECT_EQ(back.observables, c.observables);
    EXPECT_EQ(back.num_qubits, c.num_qubits);
    EXPECT_THROW(Circuit::from_text("CNOT 0\n"), std::invalid_argument);
}

TEST(ElevatorSchedule, SingleCheckOnFirstBlock) {
    ElevatorSpec s;
    s.outer = ClassicalCode::from_parity_check(BinaryMatrix::from_strings({"100"}), "one");
    s.d_z = 3;
    Schedule sched = build_elevator_schedule(s);
    ASSERT_EQ(sched.checks.size(), 1u);
    const CheckSchedule &cs = sched.checks[0];
    EXPECT_EQ(cs.n_l(), 1u);
    ASSERT_EQ(cs.steps.size(), 3u);
    EXPECT_EQ(cs.steps[0].kind, StepKind::CnotSwap);
    EXPECT_EQ(cs.steps[1].kind, StepKind::Pad);
    EXPECT_EQ(cs.steps[2].kind, StepKind::Pad);
}

TEST(ElevatorSchedule, FirstCheckWalksToDeepestSupportThenPads) {
    ElevatorSpec s = make_spec(OuterCodeId::code_15_9_3, 9);
    Schedule sched = build_elevator_schedule(s);
    const CheckSchedule &cs = sched.checks[0];
    // The ancilla starts above block 0 with the default order, so it crosses
    // every block up to the deepest one in the row support.
    auto support = s.outer.h.row_support(0);
    size_t deepest = *std::max_element(support.begin(), support.end());
    EXPECT_EQ(cs.n_l(), deepest + 1);
    EXPECT_EQ(cs.steps.size(), s.d_z);
    size_t pads = std::count_if(cs.steps.begin(), cs.steps.end(), [](const ScheduleStep &st) {
        return st.kind == StepKind::Pad;
    });
    EXPECT_EQ(pads, s.d_z - cs.n_l());
}

// Replays every transversal op against an independently tracked column order.
void check_schedule_consistency(const ElevatorSpec &spec, size_t outer_rounds) {
    Schedule sched = build_elevator_schedule(spec, outer_rounds);
    std::vector<size_t> order = sched.initial_order;
    ASSERT_EQ(sched.boundaries.size(), sched.total_rounds);
    std::vector<std::multiset<size_t>> touched(sched.checks.size());
    for (size_t t = 0; t < sched.boundaries.size(); t++) {
        for (const TransversalOp &op : sched.boundaries[t].ops) {
            ASSERT_EQ(std::max(op.ancilla_slot, op.other_slot) - std::min(op.ancilla_slot, op.other_slot), 1u);
            ASSERT_EQ(order[op.ancilla_slot], op.ancilla_block);
            ASSERT_EQ(order[op.other_slot], op.other_block);
            std::swap(order[op.ancilla_slot], order[op.other_slot]);
        }
    }
    EXPECT_EQ(order, sched.final_order);
    for (size_t i = 0; i < sched.checks.size(); i++) {
        const CheckSchedule &cs = sched.checks[i];
        EXPECT_GE(cs.span(), spec.d_z);
        EXPECT_EQ(cs.steps.size(), cs.span());
        auto tb = cs.touched_blocks();
        std::vector<size_t> sorted(tb.begin(), tb.end());
        std::sort(sorted.begin(), sorted.end());
        EXPECT_EQ(sorted, spec.outer.h.row_support(cs.row)) << "check " << i;
    }
}

TEST(ElevatorSchedule, TouchedBlocksEqualRowSupports) {
    for (OuterCodeId id : all_outer_codes()) {
        for (size_t anc : {1, 2}) {
            for (size_t dz : {3, 9}) {
                SCOPED_TRACE(std::string(outer_code_name(id)) + " anc=" + std::to_string(anc) + " dz=" +
                             std::to_string(dz));
                check_schedule_consistency(make_spec(id, dz, anc), 2);
            }
        }
    }
}

TEST(ElevatorSchedule, RejectsBadSpecs) {
    ElevatorSpec s = make_spec(OuterCodeId::code_15_9_3, 3);
    s.n_ancilla_blocks = 3;
    EXPECT_THROW(build_elevator_schedule(s), std::invalid_argument);
    s.n_ancilla_blocks = 1;
    s.block_order = {0, 1, 2};
    EXPECT_THROW(build_elevator_schedule(s), std::invalid_argument);
    s.block_order.assign(16, 0);
    EXPECT_THROW(build_elevator_schedule(s), std::invalid_argument);
}

TEST(ElevatorMemory, ResourceCounts) {
    EXPECT_EQ(count_resources(make_spec(OuterCodeId::code_15_9_3, 9)).qubits, 16u * 17u);
    EXPECT_EQ(count_resources(make_spec(OuterCodeId::code_15_6_5, 9, 2)).qubits, 17u * 17u);
    EXPECT_EQ(count_resources(build_repetition_memory(9, 1, MemoryBasis::X)).qubits, 17u);

    ElevatorSpec s = make_spec(OuterCodeId::code_15_9_3, 3);
    Circuit c = build_elevator_memory(s, 1, MemoryBasis::Z);
    ResourceCount a = count_resources(c);
    ResourceCount b = count_resources(s, 1);
    EXPECT_EQ(a.qubits, b.qubits);
    EXPECT_EQ(a.inner_rounds, b.inner_rounds);
    EXPECT_EQ(a.cnot_count, b.cnot_count);
}

TEST(ElevatorMemory, OuterRoundLengthWhenEveryCheckPads) {
    // At d_z = 17 no check needs more than 16 inner rounds of travel, so each
    // check lasts exactly d_z rounds and five outer rounds take 5 m d_z.
    ElevatorSpec s = make_spec(OuterCodeId::code_15_9_3, 17);
    size_t m = s.outer.h.rows();
    Schedule sched = build_elevator_schedule(s, 5);
    for (const auto &cs : sched.checks) {
        ASSERT_LT(cs.n_l(), s.d_z);
        ASSERT_EQ(cs.span(), s.d_z);
    }
    EXPECT_EQ(count_resources(s, 5).inner_rounds, 5 * m * 17);

    // Long walks stretch checks beyond d_z, never below it.
    ElevatorSpec s9 = make_spec(OuterCodeId::code_15_9_3, 9);
    Schedule sched9 = build_elevator_schedule(s9, 5);
    size_t total = 0;
    for (const auto &cs : sched9.checks) {
        total += cs.span();
    }
    EXPECT_EQ(sched9.total_rounds, total);
    EXPECT_GE(sched9.total_rounds, 5 * m * 9);
}

TEST(ElevatorMemory, CnotSwapUsesTwoLayersAndSwapThree) {
    for (OuterCodeId id : all_outer_codes()) {
        ElevatorSpec s = make_spec(id, 3);
        Schedule sched = build_elevator_schedule(s, 1);
        size_t transversal = 0;
        for (const auto &b : sched.boundaries) {
            for (const auto &op : b.ops) {
                transversal += (op.kind == StepKind::CnotSwap ? 2 : 3) * s.d_z;
            }
        }
        size_t inner = sched.total_rounds * s.n_blocks() * 2 * (s.d_z - 1);
        EXPECT_EQ(build_elevator_memory(s, 1, MemoryBasis::X).count_gate(Gate::CNOT), inner + transversal)
            << outer_code_name(id);
    }
}

TEST(ElevatorMemory, NoiselessDeterminismSmall) {
    for (OuterCodeId id : all_outer_codes()) {
        for (size_t anc : {1, 2}) {
            for (MemoryBasis basis : {MemoryBasis::X, MemoryBasis::Z}) {
                SCOPED_TRACE(std::string(outer_code_name(id)) + " anc=" + std::to_string(anc) + " " +
                             basis_name(basis));
                ElevatorSpec s = make_spec(id, 3, anc);
                expect_noiseless_deterministic(build_elevator_memory(s, 1, basis), 64);
                expect_noiseless_deterministic(build_elevator_memory(s, 2, basis, DetectorSet::All), 64);
            }
        }
    }
}

TEST(Noise, ZeroNoiseLeavesCircuitUnchanged) {
    Circuit c = build_repetition_memory(3, 2, MemoryBasis::X);
    Circuit n = apply_noise(c, {0, 0});
    EXPECT_EQ(n.instructions, c.instructions);
    EXPECT_FALSE(n.has_noise());
}

TEST(Noise, CnotChannels) {
    Circuit c;
    c.num_qubits = 2;
    c.cnot(0, 1);
    Circuit n = apply_noise(c, {3e-4, 3e-2});
    std::multiset<std::tuple<Pauli, uint32_t, Pauli, uint32_t, double>> got;
    for (const auto &inst : n.instructions) {
        if (inst.gate == Gate::Error) {
            got.insert({inst.pauli0, inst.q0, inst.pauli1, inst.q1, inst.p});
        }
    }
    ASSERT_EQ(got.size(), 6u);
    size_t z_count = 0;
    size_t x_count = 0;
    for (const auto &[p0, q0, p1, q1, p] : got) {
        if (p0 == Pauli::Z) {
            EXPECT_DOUBLE_EQ(p, 1e-2);
            z_count++;
        } else {
            EXPECT_EQ(p0, Pauli::X);
            EXPECT_DOUBLE_EQ(p, 1e-4);
            x_count++;
        }
        if (q1 != kNoQubit) {
            EXPECT_EQ(p1, p0);
            EXPECT_NE(q0, q1);
        }
    }
    EXPECT_EQ(z_count, 3u);
    EXPECT_EQ(x_count, 3u);
}

TEST(Noise, IdleAndPrepMeasureChannels) {
    Circuit c;
    c.num_qubits = 3;
    c.cnot(0, 1);
    c.tick();
    Circuit n = apply_noise(c, {2e-4, 5e-3});
    std::vector<Instruction> idle;
    for (const auto &inst : n.instructions) {
        if (inst.gate == Gate::Error && inst.q0 == 2) {
            idle.push_back(inst);
        }
    }
    ASSERT_EQ(idle.size(), 2u);
    EXPECT_EQ(idle[0].pauli0, Pauli::Z);
    EXPECT_DOUBLE_EQ(idle[0].p, 5e-3);
    EXPECT_EQ(idle[1].pauli0, Pauli::X);
    EXPECT_DOUBLE_EQ(idle[1].p, 2e-4);

    Circuit m;
    m.num_qubits = 1;
    m.prep_x(0);
    m.tick();
    m.meas_z(0);
    Circuit mn = apply_noise(m, {2e-4, 5e-3});
    // PrepX is followed by a Z flip; MeasZ is preceded by an X flip.
    ASSERT_EQ(mn.instructions.size(), 5u);
    EXPECT_EQ(mn.instructions[1].gate, Gate::Error);
    EXPECT_EQ(mn.instructions[1].pauli0, Pauli::Z);
    EXPECT_EQ(mn.instructions[3].gate, Gate::Error);
    EXPECT_EQ(mn.instructions[3].pauli0, Pauli::X);
    EXPECT_EQ(mn.instructions[4].gate, Gate::MeasZ);
}

TEST(Noise, RejectsOutOfRangeProbabilities) {
    Circuit c = build_repetition_memory(3, 1, MemoryBasis::X);
    EXPECT_THROW(apply_noise(c, {-1e-3, 0}), std::invalid_argument);
    EXPECT_THROW(apply_noise(c, {0, 1.5}), std::invalid_argument);
    EXPECT_FALSE((NoiseModel{0, 1e-3}.eta().has_value()));
    EXPECT_DOUBLE_EQ(*(NoiseModel{1e-6, 1e-3}.eta()), 1e3);
}

}  // namespace
}  // namespace elevator
