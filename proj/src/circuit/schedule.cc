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

#include "elevator/circuit/schedule.h"

#include <deque>
#include <optional>
#include <stdexcept>

#include "elevator/errors.h"

namespace elevator {

std::vector<size_t> ElevatorSpec::initial_order() const {
    if (outer.n == 0) {
        throw std::invalid_argument("outer code has no bits");
    }
    if (d_z == 0) {
        throw std::invalid_argument("d_z must be at least 1");
    }
    if (n_ancilla_blocks != 1 && n_ancilla_blocks != 2) {
        throw std::invalid_argument("n_ancilla_blocks must be 1 or 2");
    }
    size_t nb = n_blocks();
    if (block_order.empty()) {
        std::vector<size_t> order{outer.n};
        for (size_t j = 0; j < outer.n; j++) {
            order.push_back(j);
        }
        if (n_ancilla_blocks == 2) {
            order.push_back(outer.n + 1);
        }
        return order;
    }
    if (block_order.size() != nb) {
        throw std::invalid_argument(
            "block order has " + std::to_string(block_order.size()) + " entries but the column holds " +
            std::to_string(nb) + " blocks");
    }
    std::vector<bool> seen(nb, false);
    for (size_t b : block_order) {
        if (b >= nb || seen[b]) {
            throw std::invalid_argument("block order is not a permutation of 0.." + std::to_string(nb - 1));
        }
        seen[b] = true;
    }
    return block_order;
}

size_t CheckSchedule::n_l() const {
    size_t total = 0;
    for (const auto &s : steps) {
        total += s.kind == StepKind::CnotSwap || s.kind == StepKind::Swap;
    }
    return total;
}

std::vector<size_t> CheckSchedule::touched_blocks() const {
    std::vector<size_t> out;
    for (const auto &s : steps) {
        if (s.kind == StepKind::CnotSwap) {
            out.push_back(s.block);
        }
    }
    return out;
}

namespace {

struct AncillaState {
    size_t block = 0;
    std::deque<size_t> queue;
    std::optional<size_t> active;
    std::vector<bool> remaining;
    size_t remaining_count = 0;
    size_t rounds_since_reset = 0;
    int dir = 0;
};

}  // namespace

Schedule build_elevator_schedule(const ElevatorSpec &spec, size_t outer_rounds) {
    if (outer_rounds == 0) {
        throw std::invalid_argument("outer_rounds must be at least 1");
    }
    Schedule sched;
    sched.n_data = spec.n_data();
    sched.n_blocks = spec.n_blocks();
    sched.d_z = spec.d_z;
    sched.outer_rounds = outer_rounds;
    sched.initial_order = spec.initial_order();

    const size_t n = sched.n_data;
    const size_t n_anc = spec.n_ancilla_blocks;
    std::vector<size_t> order = sched.initial_order;
    std::vector<size_t> pos(sched.n_blocks);
    for (size_t s = 0; s < order.size(); s++) {
        pos[order[s]] = s;
    }

    std::vector<AncillaState> anc(n_anc);
    for (size_t a = 0; a < n_anc; a++) {
        anc[a].block = n + a;
    }
    for (size_t r = 0; r < outer_rounds; r++) {
        for (size_t row = 0; row < spec.outer.h.rows(); row++) {
            size_t a = n_anc == 1 ? 0 : (row % 2 == 0 ? 1 : 0);
            CheckSchedule cs;
            cs.outer_round = r;
            cs.row = row;
            cs.ancilla = a;
            sched.checks.push_back(std::move(cs));
            anc[a].queue.push_back(sched.checks.size() - 1);
        }
    }

    auto start_next = [&](AncillaState &st, size_t first_round) {
        if (st.queue.empty()) {
            st.active.reset();
            return;
        }
        size_t id = st.queue.front();
        st.queue.pop_front();
        st.active = id;
        st.remaining.assign(n, false);
        st.remaining_count = 0;
        for (size_t b : spec.outer.h.row_support(sched.checks[id].row)) {
            st.remaining[b] = true;
            st.remaining_count++;
        }
        st.rounds_since_reset = 0;
        st.dir = 0;
        sched.checks[id].reset_round = first_round;
    };
    for (auto &st : anc) {
        start_next(st, 0);
    }

    // Generous bound: every check needs at most a full column sweep in each
    // direction plus d_z rounds, and stalls are at most one per round.
    size_t limit = 16 + 4 * sched.checks.size() * (2 * sched.n_blocks + spec.d_z + 2);
    for (size_t t = 0;; t++) {
        bool any_active = false;
        for (auto &st : anc) {
            if (st.active) {
                any_active = true;
                st.rounds_since_reset++;
            }
        }
        if (!any_active) {
            break;
        }
        if (t > limit) {
            throw InvariantViolation("elevator schedule failed to terminate");
        }
        sched.total_rounds = t + 1;
        BoundaryPlan plan;
        std::vector<bool> busy(sched.n_blocks, false);
        std::vector<bool> planned(n_anc, false);
        for (size_t a = 0; a < n_anc; a++) {
            AncillaState &st = anc[a];
            if (!st.active || planned[a]) {
                continue;
            }
            planned[a] = true;
            CheckSchedule &cs = sched.checks[*st.active];
            size_t p = pos[st.block];
            if (st.remaining_count == 0) {
                if (st.rounds_since_reset >= spec.d_z && !busy[p]) {
                    cs.steps.push_back({StepKind::Pad, 0, t});
                    cs.measure_round = t;
                    plan.measured_checks.push_back(*st.active);
                    busy[p] = true;
                    start_next(st, t + 1);
                    if (st.active) {
                        plan.reset_blocks.push_back(st.block);
                    }
                } else {
                    cs.steps.push_back({st.rounds_since_reset >= spec.d_z ? StepKind::Stall : StepKind::Pad, 0, t});
                }
                continue;
            }

            bool below = false;
            bool above = false;
            size_t far_below = p;
            size_t far_above = p;
            for (size_t b = 0; b < n; b++) {
                if (!st.remaining[b]) {
                    continue;
                }
                if (pos[b] > p) {
                    below = true;
                    far_below = std::max(far_below, pos[b]);
                } else {
                    above = true;
                    far_above = std::min(far_above, pos[b]);
                }
            }
            int dir;
            if (below && !above) {
                dir = +1;
            } else if (above && !below) {
                dir = -1;
            } else if (st.dir != 0) {
                dir = st.dir;
            } else {
                dir = (far_below - p) <= (p - far_above) ? +1 : -1;
            }
            st.dir = dir;
            size_t np = dir > 0 ? p + 1 : p - 1;
            size_t other = order[np];
            bool blocked = busy[p] || busy[np];
            if (!blocked && other >= n) {
                // The other ancilla is carried along passively, which needs it
                // to be past its first post-reset round.
                AncillaState &ot = anc[other - n];
                blocked = planned[other - n] || (ot.active && ot.rounds_since_reset < 1);
            }
            if (blocked) {
                cs.steps.push_back({StepKind::Stall, 0, t});
                continue;
            }
            StepKind kind = StepKind::Swap;
            if (other < n && st.remaining[other]) {
                kind = StepKind::CnotSwap;
                st.remaining[other] = false;
                st.remaining_count--;
            }
            if (other >= n) {
                AncillaState &ot = anc[other - n];
                planned[other - n] = true;
                if (ot.active) {
                    sched.checks[*ot.active].steps.push_back({StepKind::Swap, st.block, t});
                }
            }
            plan.ops.push_back(TransversalOp{
                .kind = kind,
                .ancilla_slot = p,
                .other_slot = np,
                .ancilla_block = st.block,
                .other_block = other,
            });
            cs.steps.push_back({kind, other, t});
            std::swap(order[p], order[np]);
            pos[order[p]] = p;
            pos[order[np]] = np;
            busy[p] = true;
            busy[np] = true;
        }
        sched.boundaries.push_back(std::move(plan));
    }
    sched.final_order = order;
    return sched;
}

}  // namespace elevator
