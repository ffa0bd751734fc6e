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

#include "elevator/experiments/overhead.h"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "elevator/util/format.h"

namespace elevator {

namespace {

struct Candidate {
    std::optional<OuterCodeId> outer;
    size_t ancillae = 0;
    size_t d_x = 0;
    size_t n_b = 0;
    size_t k = 1;
};

std::vector<Candidate> candidates(const FamilyQuery &q) {
    std::vector<Candidate> out;
    switch (q.family) {
        case OverheadFamily::Repetition:
            out.push_back({});
            break;
        case OverheadFamily::Concat: {
            std::vector<OuterCodeId> outers =
                q.outer ? std::vector<OuterCodeId>{*q.outer} : all_outer_codes();
            std::vector<size_t> ancs = q.ancillae ? std::vector<size_t>{*q.ancillae} : std::vector<size_t>{1, 2};
            for (OuterCodeId o : outers) {
                for (size_t a : ancs) {
                    if (!concat_x_reference(o, a)) {
                        continue;
                    }
                    ClassicalCode code = builtin_outer(o);
                    out.push_back({o, a, 0, code.n + a, code.k});
                }
            }
            if (out.empty()) {
                throw std::invalid_argument("no published bit-flip model for the requested outer code and ancilla count");
            }
            break;
        }
        case OverheadFamily::Surface:
        case OverheadFamily::Xzzx: {
            std::vector<size_t> dxs = q.d_x ? std::vector<size_t>{*q.d_x} : std::vector<size_t>{3, 5};
            for (size_t dx : dxs) {
                out.push_back({std::nullopt, 0, dx, 0, 1});
            }
            break;
        }
    }
    return out;
}

size_t qubits_of(OverheadFamily family, const Candidate &c, size_t d_z) {
    switch (family) {
        case OverheadFamily::Repetition:
            return 2 * d_z - 1;
        case OverheadFamily::Concat:
            return c.n_b * (2 * d_z - 1);
        case OverheadFamily::Surface:
            return 2 * c.d_x * d_z - 1;
        case OverheadFamily::Xzzx:
            return (2 * c.d_x - 1) * (2 * d_z - 1);
    }
    return 0;
}

}  // namespace

double NoisePoint::p_x() const {
    if (!(eta > 0)) {
        throw std::invalid_argument("noise bias eta must be positive");
    }
    return std::isinf(eta) ? 0.0 : p_z / eta;
}

const char *overhead_family_name(OverheadFamily family) {
    switch (family) {
        case OverheadFamily::Repetition:
            return "repetition";
        case OverheadFamily::Concat:
            return "concat";
        case OverheadFamily::Surface:
            return "surface";
        case OverheadFamily::Xzzx:
            return "xzzx";
    }
    return "?";
}

std::string OverheadPoint::describe() const {
    std::ostringstream out;
    out << overhead_family_name(family);
    if (!reachable) {
        out << " unreachable at p_z=" << format_prob(noise.p_z) << " eta=" << format_prob(noise.eta)
            << " target=" << format_prob(target);
        return out.str();
    }
    if (outer) {
        out << ' ' << outer_code_name(*outer) << " ancillae=" << *ancillae;
    }
    if (d_x) {
        out << " d_x=" << *d_x;
    }
    out << " d_z=" << d_z << " qubits/logical=" << qubits_per_logical << " p_L=" << format_prob(p_l);
    return out.str();
}

double family_rate(OverheadFamily family,
                   std::optional<OuterCodeId> outer,
                   size_t ancillae,
                   size_t d_x,
                   size_t d_z,
                   const NoisePoint &noise,
                   const OverheadModels &models) {
    double pz = noise.p_z;
    double px = noise.p_x();
    switch (family) {
        case OverheadFamily::Repetition:
            return total_rate(eval_model(models.rep_z, pz, d_z), eval_model(models.rep_x, px, d_z));
        case OverheadFamily::Concat: {
            if (!outer) {
                throw std::invalid_argument("concat rate needs an outer code");
            }
            auto mx = concat_x_reference(*outer, ancillae);
            if (!mx) {
                throw std::invalid_argument("no published bit-flip model for this outer code and ancilla count");
            }
            ClassicalCode code = builtin_outer(*outer);
            return total_rate(eval_model(models.concat_z, pz, d_z, code.n + ancillae, code.k),
                              eval_model(*mx, px, d_z));
        }
        case OverheadFamily::Surface:
        case OverheadFamily::Xzzx: {
            SurfaceKind kind = family == OverheadFamily::Surface ? SurfaceKind::Rotated : SurfaceKind::Xzzx;
            return total_rate(eval_model(surface_z_reference(kind, d_x, pz), pz, d_z),
                              eval_model(surface_x_reference(kind, d_x), px, d_z));
        }
    }
    return 0;
}

OverheadPoint overhead_search(const FamilyQuery &query,
                              const NoisePoint &noise,
                              double target,
                              const OverheadModels &models,
                              const ScanLimits &limits) {
    if (!(target > 0)) {
        throw std::invalid_argument("target logical error rate must be positive");
    }
    if (!(noise.p_z >= 0 && noise.p_z <= 1)) {
        throw std::invalid_argument("p_z must lie in [0, 1]");
    }
    OverheadPoint best;
    best.family = query.family;
    best.target = target;
    best.noise = noise;
    best.qubits_per_logical = std::numeric_limits<double>::infinity();
    for (const Candidate &c : candidates(query)) {
        for (size_t d = 3; d <= limits.max_d_z; d += 2) {
            double p_l = family_rate(query.family, c.outer, c.ancillae, c.d_x, d, noise, models);
            if (!(p_l <= target)) {
                continue;
            }
            size_t q = qubits_of(query.family, c, d);
            double qpl = (double)q / (double)c.k;
            if (qpl < best.qubits_per_logical) {
                best.reachable = true;
                best.outer = c.outer;
                best.ancillae = c.outer ? std::optional<size_t>(c.ancillae) : std::nullopt;
                best.d_x = c.d_x ? std::optional<size_t>(c.d_x) : std::nullopt;
                best.d_z = d;
                best.total_qubits = q;
                best.logicals = c.k;
                best.qubits_per_logical = qpl;
                best.p_l = p_l;
            }
            // Qubit count grows with d_z, so the first feasible d_z is optimal here.
            break;
        }
    }
    return best;
}

std::vector<double> log_grid(double lo, double hi, size_t per_decade) {
    if (!(lo > 0) || !(hi >= lo) || per_decade == 0) {
        throw std::invalid_argument("log grid needs 0 < lo <= hi and per_decade >= 1");
    }
    double decades = std::log10(hi / lo);
    size_t steps = (size_t)std::ceil(decades * (double)per_decade - 1e-9);
    std::vector<double> out;
    for (size_t i = 0; i <= steps; i++) {
        double v = i == steps ? hi : lo * std::pow(10.0, (double)i / (double)per_decade);
        out.push_back(v);
    }
    return out;
}

namespace {

std::vector<OverheadPoint> all_families(const NoisePoint &noise, double target, const OverheadModels &models) {
    std::vector<OverheadPoint> best;
    for (OverheadFamily f :
         {OverheadFamily::Repetition, OverheadFamily::Concat, OverheadFamily::Surface, OverheadFamily::Xzzx}) {
        FamilyQuery q;
        q.family = f;
        best.push_back(overhead_search(q, noise, target, models));
    }
    return best;
}

}  // namespace

std::vector<SweepRow> eta_sweep(double p_z,
                                double target,
                                const std::vector<double> &etas,
                                const OverheadModels &models) {
    std::vector<SweepRow> rows;
    for (double eta : etas) {
        rows.push_back({eta, all_families({p_z, eta}, target, models)});
    }
    return rows;
}

std::vector<TargetRow> target_sweep(const NoisePoint &noise,
                                    const std::vector<double> &targets,
                                    const OverheadModels &models) {
    std::vector<TargetRow> rows;
    for (double t : targets) {
        rows.push_back({t, all_families(noise, t, models)});
    }
    return rows;
}

bool concat_cheapest(const std::vector<OverheadPoint> &best) {
    const OverheadPoint *concat = nullptr;
    for (const auto &p : best) {
        if (p.family == OverheadFamily::Concat) {
            concat = &p;
        }
    }
    if (!concat || !concat->reachable) {
        return false;
    }
    for (const auto &p : best) {
        if (&p != concat && p.reachable && p.qubits_per_logical <= concat->qubits_per_logical) {
            return false;
        }
    }
    return true;
}

std::optional<double> concat_crossover(double p_z,
                                       double target,
                                       double lo,
                                       double hi,
                                       const OverheadModels &models) {
    auto cheapest = [&](double eta) { return concat_cheapest(all_families({p_z, eta}, target, models)); };
    std::vector<double> grid = log_grid(lo, hi, 50);
    if (!cheapest(grid.back())) {
        return std::nullopt;
    }
    size_t i = grid.size() - 1;
    while (i > 0 && cheapest(grid[i - 1])) {
        i--;
    }
    if (i == 0) {
        return grid[0];
    }
    double a = std::log(grid[i - 1]);
    double b = std::log(grid[i]);
    for (int it = 0; it < 60; it++) {
        double m = (a + b) / 2;
        if (cheapest(std::exp(m))) {
            b = m;
        } else {
            a = m;
        }
    }
    return std::exp(b);
}

}  // namespace elevator
