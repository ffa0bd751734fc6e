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

#include "elevator/circuit/memory_circuits.h"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "elevator/codes/binary_matrix.h"
#include "elevator/errors.h"

namespace elevator {

namespace {

constexpr uint32_t kSymbolBit = uint32_t{1} << 31;

/// GF(2) combination of measurement records and unknown random bits
/// ("symbols", tagged with kSymbolBit). Kept sorted.
using Expr = std::vector<uint32_t>;

Expr xor_expr(const Expr &a, const Expr &b) {
    Expr out;
    out.reserve(a.size() + b.size());
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool has_symbol(const Expr &e) {
    return !e.empty() && (e.back() & kSymbolBit);
}

/// Builds a column of repetition-code block slots and tracks, per slot, the
/// value of every X-type operator on the slot's data qubits as an Expr. The
/// X group of a slot is generated by its d-1 inner checks and X on data
/// qubit 0 ("xbar").
class ColumnBuilder {
   public:
    ColumnBuilder(size_t n_slots, size_t d, bool emit_inner)
        : n_slots_(n_slots), d_(d), emit_inner_(emit_inner), chk_(n_slots, std::vector<Expr>(d - 1)), xbar_(n_slots) {
        circuit.num_qubits = (uint32_t)(n_slots * (2 * d - 1));
    }

    Circuit circuit;

    uint32_t data(size_t slot, size_t i) const {
        return (uint32_t)(slot * (2 * d_ - 1) + 2 * i);
    }
    uint32_t check(size_t slot, size_t i) const {
        return (uint32_t)(slot * (2 * d_ - 1) + 2 * i + 1);
    }

    void randomize_x(size_t slot) {
        for (auto &e : chk_[slot]) {
            e = {fresh_symbol()};
        }
        xbar_[slot] = {fresh_symbol()};
    }

    void clear_x(size_t slot) {
        for (auto &e : chk_[slot]) {
            e.clear();
        }
        xbar_[slot].clear();
    }

    /// `on_prep` and `on_meas` add gates on data qubits to the check
    /// preparation and check measurement time steps, where data qubits are
    /// otherwise idle.
    template <typename Prep, typename Meas>
    void inner_round(uint32_t round, Prep &&on_prep, Meas &&on_meas) {
        circuit.mark_round();
        for (size_t s = 0; s < n_slots_; s++) {
            for (size_t i = 0; i + 1 < d_; i++) {
                circuit.prep_x(check(s, i));
            }
        }
        on_prep();
        circuit.tick();
        for (size_t s = 0; s < n_slots_; s++) {
            for (size_t i = 0; i + 1 < d_; i++) {
                circuit.cnot(check(s, i), data(s, i));
            }
        }
        circuit.tick();
        for (size_t s = 0; s < n_slots_; s++) {
            for (size_t i = 0; i + 1 < d_; i++) {
                circuit.cnot(check(s, i), data(s, i + 1));
            }
        }
        circuit.tick();
        for (size_t s = 0; s < n_slots_; s++) {
            for (size_t i = 0; i + 1 < d_; i++) {
                uint32_t m = circuit.meas_x(check(s, i));
                observe(chk_[s][i], m, DetectorKind::Inner, round);
            }
        }
        on_meas();
        circuit.tick();
    }

    void inner_round(uint32_t round) {
        inner_round(round, [] {}, [] {});
    }

    /// Transversal CNOT from every data qubit of slot a onto slot b.
    void transversal_cnot(size_t a, size_t b) {
        for (size_t i = 0; i < d_; i++) {
            circuit.cnot(data(a, i), data(b, i));
        }
        for (size_t i = 0; i + 1 < d_; i++) {
            chk_[a][i] = xor_expr(chk_[a][i], chk_[b][i]);
        }
        xbar_[a] = xor_expr(xbar_[a], xbar_[b]);
    }

    /// Final transversal MeasX of a slot, emitting boundary detectors.
    /// Returns the measurement indices of the slot's data qubits.
    std::vector<uint32_t> measure_x_final(size_t slot, uint32_t round) {
        std::vector<uint32_t> ms;
        for (size_t i = 0; i < d_; i++) {
            ms.push_back(circuit.meas_x(data(slot, i)));
        }
        for (size_t i = 0; i + 1 < d_; i++) {
            Expr m_pair{ms[i], ms[i + 1]};
            Expr value = xor_expr(chk_[slot][i], m_pair);
            if (!has_symbol(value)) {
                if (emit_inner_) {
                    circuit.detectors.push_back({value, DetectorKind::Boundary, round});
                }
            } else {
                substitute(value);
            }
        }
        return ms;
    }

    std::vector<uint32_t> measure_z(size_t slot) {
        std::vector<uint32_t> ms;
        for (size_t i = 0; i < d_; i++) {
            ms.push_back(circuit.meas_z(data(slot, i)));
        }
        randomize_x(slot);
        return ms;
    }

    void prep_z(size_t slot) {
        for (size_t i = 0; i < d_; i++) {
            circuit.prep_z(data(slot, i));
        }
        randomize_x(slot);
    }

    void prep_x(size_t slot) {
        for (size_t i = 0; i < d_; i++) {
            circuit.prep_x(data(slot, i));
        }
        clear_x(slot);
    }

    const Expr &xbar(size_t slot) const {
        return xbar_[slot];
    }

   private:
    uint32_t fresh_symbol() {
        return kSymbolBit | next_symbol_++;
    }

    /// Records that the measurement `m` revealed the tracked value `e`.
    void observe(Expr &e, uint32_t m, DetectorKind kind, uint32_t round) {
        Expr value = xor_expr(e, {m});
        if (!has_symbol(value)) {
            if (emit_inner_) {
                circuit.detectors.push_back({value, kind, round});
            }
        } else {
            substitute(value);
        }
        e = {m};
    }

    /// `relation` is known to evaluate to 0. Eliminates its largest symbol from
    /// every tracked expression.
    void substitute(const Expr &relation) {
        uint32_t pivot = relation.back();
        auto apply = [&](Expr &x) {
            if (std::binary_search(x.begin(), x.end(), pivot)) {
                x = xor_expr(x, relation);
            }
        };
        for (auto &slot : chk_) {
            for (auto &e : slot) {
                apply(e);
            }
        }
        for (auto &e : xbar_) {
            apply(e);
        }
    }

    size_t n_slots_;
    size_t d_;
    bool emit_inner_;
    std::vector<std::vector<Expr>> chk_;
    std::vector<Expr> xbar_;
    uint32_t next_symbol_ = 0;
};

std::vector<uint32_t> sorted(std::vector<uint32_t> v) {
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

const char *basis_name(MemoryBasis basis) {
    return basis == MemoryBasis::Z ? "z" : "x";
}

Circuit build_repetition_memory(size_t d, size_t rounds, MemoryBasis basis, DetectorSet detectors) {
    if (d == 0) {
        throw std::invalid_argument("repetition distance must be at least 1");
    }
    if (rounds == 0) {
        throw std::invalid_argument("rounds must be at least 1");
    }
    bool emit_inner = basis == MemoryBasis::X || detectors == DetectorSet::All;
    ColumnBuilder b(1, d, emit_inner);
    if (basis == MemoryBasis::X) {
        b.prep_x(0);
    } else {
        b.prep_z(0);
    }
    b.circuit.tick();
    for (size_t r = 0; r < rounds; r++) {
        b.inner_round((uint32_t)r);
    }
    if (basis == MemoryBasis::X) {
        std::vector<uint32_t> ms = b.measure_x_final(0, (uint32_t)rounds);
        Expr obs = xor_expr({ms[0]}, b.xbar(0));
        if (has_symbol(obs)) {
            throw InvariantViolation("logical X observable is not deterministic");
        }
        b.circuit.observables.push_back({obs, "X0"});
    } else {
        std::vector<uint32_t> ms = b.measure_z(0);
        b.circuit.observables.push_back({sorted(ms), "Z0"});
    }
    return std::move(b.circuit);
}

Circuit build_elevator_memory(const ElevatorSpec &spec,
                              size_t outer_rounds,
                              MemoryBasis basis,
                              DetectorSet detectors) {
    Schedule sched = build_elevator_schedule(spec, outer_rounds);
    const size_t n = sched.n_data;
    const size_t nb = sched.n_blocks;
    const size_t d = spec.d_z;
    const BinaryMatrix &h = spec.outer.h;
    bool emit_inner = basis == MemoryBasis::X || detectors == DetectorSet::All;
    bool emit_outer = basis == MemoryBasis::Z || detectors == DetectorSet::All;

    ColumnBuilder b(nb, d, emit_inner);
    Circuit &c = b.circuit;
    std::vector<size_t> order = sched.initial_order;
    std::vector<size_t> pos(nb);
    for (size_t s = 0; s < nb; s++) {
        pos[order[s]] = s;
    }

    for (size_t s = 0; s < nb; s++) {
        if (order[s] < n && basis == MemoryBasis::X) {
            b.prep_x(s);
        } else {
            b.prep_z(s);
        }
    }
    c.tick();

    // Most recent outer-check outcome per row, as a set of MeasZ records.
    std::vector<std::optional<std::vector<uint32_t>>> last_outcome(h.rows());
    auto measure_check = [&](size_t check_id) {
        const CheckSchedule &cs = sched.checks[check_id];
        std::vector<uint32_t> ms = b.measure_z(pos[spec.outer.n + cs.ancilla]);
        if (emit_outer) {
            if (last_outcome[cs.row]) {
                c.detectors.push_back(
                    {xor_expr(ms, *last_outcome[cs.row]), DetectorKind::Outer, (uint32_t)cs.outer_round});
            } else if (basis == MemoryBasis::Z) {
                c.detectors.push_back({ms, DetectorKind::Outer, (uint32_t)cs.outer_round});
            }
        }
        last_outcome[cs.row] = ms;
    };

    // Transversal layers of boundary t run in the check-measurement step of
    // round t, an extra step when a Swap needs a third layer, and the
    // check-preparation step of round t+1. Each op ends in the last slot.
    auto emit_layer = [&](const BoundaryPlan &plan, size_t slot, size_t n_slots) {
        for (const auto &op : plan.ops) {
            size_t layers = op.kind == StepKind::Swap ? 3 : 2;
            if (slot + layers < n_slots) {
                continue;
            }
            size_t j = slot + layers - n_slots;
            if (j % 2 == 0) {
                b.transversal_cnot(op.ancilla_slot, op.other_slot);
            } else {
                b.transversal_cnot(op.other_slot, op.ancilla_slot);
            }
        }
    };
    const BoundaryPlan *pending = nullptr;
    size_t pending_slots = 0;
    auto finish_pending = [&]() {
        if (!pending) {
            return;
        }
        for (size_t blk : pending->reset_blocks) {
            b.prep_z(pos[blk]);
        }
        emit_layer(*pending, pending_slots - 1, pending_slots);
        for (const auto &op : pending->ops) {
            std::swap(order[op.ancilla_slot], order[op.other_slot]);
            pos[order[op.ancilla_slot]] = op.ancilla_slot;
            pos[order[op.other_slot]] = op.other_slot;
        }
        pending = nullptr;
    };

    size_t last = sched.total_rounds - 1;
    for (size_t t = 0; t < sched.total_rounds; t++) {
        const BoundaryPlan &plan = sched.boundaries[t];
        if (t == last && (!plan.ops.empty() || !plan.reset_blocks.empty())) {
            throw InvariantViolation("final boundary must only measure ancillas");
        }
        auto on_meas = [&]() {
            if (t == last) {
                return;
            }
            for (size_t id : plan.measured_checks) {
                measure_check(id);
            }
            if (plan.ops.empty() && plan.reset_blocks.empty()) {
                return;
            }
            bool any_swap = std::any_of(
                plan.ops.begin(), plan.ops.end(), [](const TransversalOp &op) { return op.kind == StepKind::Swap; });
            pending = &plan;
            pending_slots = any_swap ? 3 : 2;
            emit_layer(plan, 0, pending_slots);
        };
        b.inner_round((uint32_t)t, finish_pending, on_meas);
        if (pending && pending_slots == 3) {
            emit_layer(*pending, 1, 3);
            c.tick();
        }
    }

    // Final time step: remaining ancilla measurements and transversal data readout.
    for (size_t id : sched.boundaries[last].measured_checks) {
        measure_check(id);
    }
    uint32_t final_round = (uint32_t)sched.total_rounds;
    std::vector<std::vector<uint32_t>> final_ms(n);
    for (size_t j = 0; j < n; j++) {
        if (basis == MemoryBasis::X) {
            final_ms[j] = b.measure_x_final(pos[j], final_round);
        } else {
            final_ms[j] = b.measure_z(pos[j]);
        }
    }

    BinaryMatrix codewords = h.null_space();
    std::vector<size_t> free_cols = h.rref().free_columns;
    if (basis == MemoryBasis::Z) {
        if (emit_outer) {
            for (size_t row = 0; row < h.rows(); row++) {
                Expr det = last_outcome[row].value_or(Expr{});
                for (size_t j : h.row_support(row)) {
                    det = xor_expr(det, sorted(final_ms[j]));
                }
                c.detectors.push_back({det, DetectorKind::Boundary, (uint32_t)outer_rounds});
            }
        }
        for (size_t l = 0; l < free_cols.size(); l++) {
            c.observables.push_back({sorted(final_ms[free_cols[l]]), "Z" + std::to_string(l)});
        }
    } else {
        for (size_t l = 0; l < codewords.rows(); l++) {
            Expr obs;
            for (size_t j : codewords.row_support(l)) {
                obs = xor_expr(obs, xor_expr({final_ms[j][0]}, b.xbar(pos[j])));
            }
            if (has_symbol(obs)) {
                throw InvariantViolation("logical X observable " + std::to_string(l) + " is not deterministic");
            }
            c.observables.push_back({obs, "X" + std::to_string(l)});
        }
    }
    return std::move(b.circuit);
}

ResourceCount count_resources(const ElevatorSpec &spec, size_t outer_rounds) {
    Schedule sched = build_elevator_schedule(spec, outer_rounds);
    size_t d = spec.d_z;
    ResourceCount rc;
    rc.qubits = sched.n_blocks * (2 * d - 1);
    rc.inner_rounds = sched.total_rounds;
    rc.cnot_count = sched.total_rounds * sched.n_blocks * 2 * (d - 1);
    for (const auto &plan : sched.boundaries) {
        for (const auto &op : plan.ops) {
            rc.cnot_count += (op.kind == StepKind::Swap ? 3 : 2) * d;
        }
    }
    return rc;
}

}  // namespace elevator
