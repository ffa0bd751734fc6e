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

#include <cmath>
#include <limits>
#include <random>

#include "elevator/codes/classical_code.h"
#include "elevator/experiments/fit.h"
#include "elevator/experiments/memory.h"
#include "elevator/experiments/overhead.h"
#include "elevator/experiments/reference_models.h"

namespace elevator {
namespace {

std::vector<FitPoint> synthetic(const FitModel &m, const std::vector<double> &ps, const std::vector<size_t> &ds,
                                std::optional<size_t> n_b = {}, std::optional<size_t> k = {}) {
    std::vector<FitPoint> pts;
    for (double p : ps) {
        for (size_t d : ds) {
            pts.push_back({p, d, eval_model(m, p, d, n_b, k)});
        }
    }
    return pts;
}

void expect_rel(double got, double want, double tol) {
    EXPECT_NEAR(got / want, 1.0, tol) << got << " vs " << want;
}

TEST(PerRoundRate, ClosedForm) {
    EXPECT_EQ(per_round_rate(0, 7).value, 0);
    EXPECT_DOUBLE_EQ(per_round_rate(0.013, 1).value, 0.013);
    double want = (1 - std::pow(1 - 2 * 0.01, 1.0 / 10)) / 2;
    EXPECT_NEAR(per_round_rate(0.01, 10).value, want, 1e-15);
    EXPECT_NEAR(want, 1.00912e-3, 1e-8);
    EXPECT_TRUE(per_round_rate(0.5, 10).saturated);
    EXPECT_TRUE(per_round_rate(0.7, 10).saturated);
    EXPECT_FALSE(per_round_rate(0.49, 10).saturated);
}

TEST(PerRoundRate, MonotoneAndInvertible) {
    double prev = -1;
    for (double p = 1e-6; p < 0.49; p *= 1.7) {
        double r = per_round_rate(p, 25).value;
        EXPECT_GT(r, prev);
        prev = r;
        EXPECT_GT(per_round_rate(p, 10).value, per_round_rate(p, 11).value);
        double back = -std::expm1(25.0 * std::log1p(-2 * r)) / 2;
        EXPECT_NEAR(back / p, 1.0, 1e-10);
    }
}

TEST(WilsonInterval, ContainsEstimate) {
    auto [lo, hi] = wilson_interval(30, 1000);
    EXPECT_LT(lo, 0.03);
    EXPECT_GT(hi, 0.03);
    auto [lo0, hi0] = wilson_interval(0, 1000);
    EXPECT_EQ(lo0, 0);
    EXPECT_GT(hi0, 0);
}

TEST(FitModels, EvaluationExamples) {
    FitModel cx = *concat_x_reference(OuterCodeId::code_15_9_3, 1);
    EXPECT_NEAR(eval_model(cx, 1e-5, 9) / (std::pow(9.0, 2.33) * std::pow(37.18e-5, 1.94)), 1.0, 1e-12);
    EXPECT_EQ(eval_model(cx, 0, 9), 0);
    EXPECT_EQ(eval_model(rep_z_reference(), 0, 9), 0);

    FitModel sx = surface_x_reference(SurfaceKind::Xzzx, 3);
    EXPECT_NEAR(eval_model(sx, 1e-4, 9) / (std::pow(9.0, 1.03) * std::pow(0.97e-4, 1.99)), 1.0, 1e-12);

    FitModel rx = rep_x_reference();
    EXPECT_NEAR(eval_model(rx, 1e-3, 5), 3.88 * 1e-3 * 5, 1e-15);

    EXPECT_NEAR(eval_model(rep_z_reference(), 0.02, 3), 0.13 * std::pow(25.02 * 0.02, 0.99 * 2), 1e-15);
}

TEST(FitModels, ConcatZPrefactorScaling) {
    FitModel cz = concat_z_reference();
    double base = eval_model(cz, 5e-3, 9, 16, 9);
    EXPECT_NEAR(base, 0.12 * std::pow(34.4 * 5e-3, 0.94 * 5), 1e-15);
    EXPECT_NEAR(eval_model(cz, 5e-3, 9, 17, 9) / base, 17.0 / 16.0, 1e-12);
    EXPECT_NEAR(eval_model(cz, 5e-3, 9, 16, 6) / base, 9.0 / 6.0, 1e-12);
    EXPECT_NEAR(eval_model(cz, 5e-3, 9, 17, 3) / base, (17.0 / 16.0) * 3.0, 1e-12);
    EXPECT_THROW(eval_model(cz, 5e-3, 9), std::invalid_argument);
}

TEST(FitModels, TotalRate) {
    EXPECT_EQ(total_rate(0, 3e-7), 3e-7);
    EXPECT_EQ(total_rate(3e-7, 0), 3e-7);
    EXPECT_NEAR(total_rate(1e-13, 9e-13), 1e-12, 1e-27);
}

TEST(FitPowerLaw, RoundTripConcatX) {
    FitModel truth{FitFamily::ConcatX, 37.18, 1.94, 2.33};
    FitResult r = fit_power_law(synthetic(truth, {1e-6, 3e-6, 1e-5}, {9, 11, 13, 15}), FitFamily::ConcatX);
    EXPECT_NEAR(r.model.a, 37.18, 37.18 * 1e-6);
    EXPECT_NEAR(r.model.b, 1.94, 1.94 * 1e-6);
    EXPECT_NEAR(r.model.c, 2.33, 2.33 * 1e-6);
    EXPECT_LT(r.rms_log_residual, 1e-9);
}

TEST(FitPowerLaw, RoundTripOtherFamilies) {
    FitModel rz = rep_z_reference();
    FitResult r = fit_power_law(synthetic(rz, {5e-3, 1e-2, 2e-2}, {3, 5, 7, 9}), FitFamily::RepZ);
    EXPECT_NEAR(r.model.a, rz.a, 1e-6 * rz.a);
    EXPECT_NEAR(r.model.b, 25.02, 25.02 * 1e-6);
    EXPECT_NEAR(r.model.c, 0.99, 0.99 * 1e-6);

    FitModel cz = concat_z_reference();
    FitResult z = fit_power_law(synthetic(cz, {5e-3, 7.5e-3, 1e-2}, {9, 11, 13}, 17, 6), FitFamily::ConcatZ, 17, 6);
    EXPECT_NEAR(z.model.a, 0.12, 1e-6 * 0.12);
    EXPECT_NEAR(z.model.b, 34.4, 1e-6 * 34.4);
    EXPECT_NEAR(z.model.c, 0.94, 1e-6 * 0.94);

    FitModel rx{FitFamily::RepX, 3.88, 0, 0};
    FitResult x = fit_power_law(synthetic(rx, {1e-4, 1e-3}, {3, 5, 7}), FitFamily::RepX);
    EXPECT_NEAR(x.model.a, 3.88, 3.88 * 1e-9);

    FitModel sx = surface_x_reference(SurfaceKind::Rotated, 5);
    FitResult s = fit_power_law(synthetic(sx, {1e-5, 1e-4}, {9, 15, 21}), FitFamily::SurfaceX);
    EXPECT_NEAR(s.model.a, sx.a, 1e-6 * sx.a);
    EXPECT_NEAR(s.model.b, sx.b, 1e-6 * sx.b);
    EXPECT_NEAR(s.model.c, sx.c, 1e-6 * sx.c);
}

TEST(FitPowerLaw, DegenerateDesignsNameTheMissingVariation) {
    FitModel truth{FitFamily::ConcatX, 37.18, 1.94, 2.33};
    try {
        fit_power_law(synthetic(truth, {1e-6, 3e-6, 1e-5}, {9}), FitFamily::ConcatX);
        FAIL() << "single-distance data accepted";
    } catch (const std::invalid_argument &e) {
        EXPECT_NE(std::string(e.what()).find("d_z"), std::string::npos) << e.what();
    }
    try {
        fit_power_law(synthetic(truth, {1e-6}, {9, 11, 13}), FitFamily::ConcatX);
        FAIL() << "single-rate data accepted";
    } catch (const std::invalid_argument &e) {
        EXPECT_NE(std::string(e.what()).find(" p"), std::string::npos) << e.what();
    }
    EXPECT_THROW(fit_power_law({{1e-3, 3, 1e-4}}, FitFamily::RepZ), std::invalid_argument);
    EXPECT_THROW(fit_power_law(synthetic(truth, {1e-6, 1e-5}, {9, 11}), FitFamily::ConcatZ), std::invalid_argument);
}

TEST(FitPowerLaw, NoisyDataStaysClose) {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> noise(0, 0.02);
    FitModel rz = rep_z_reference();
    auto pts = synthetic(rz, {5e-3, 1e-2, 1.5e-2, 2e-2}, {3, 5, 7, 9});
    for (auto &p : pts) {
        p.p_round *= std::exp(noise(rng));
    }
    FitResult r = fit_power_law(pts, FitFamily::RepZ);
    EXPECT_NEAR(r.model.b, 25.02, 2.5);
    EXPECT_NEAR(r.model.c, 0.99, 0.05);
}

TEST(FitFamilyNames, RoundTrip) {
    for (FitFamily f : {FitFamily::ConcatX, FitFamily::ConcatZ, FitFamily::RepZ, FitFamily::RepX,
                        FitFamily::SurfaceZ, FitFamily::SurfaceX}) {
        EXPECT_EQ(parse_fit_family(fit_family_name(f)), f);
    }
    EXPECT_FALSE(parse_fit_family("nope").has_value());
}

TEST(ReferenceModels, RotatedRegimeSplit) {
    EXPECT_EQ(surface_z_reference(SurfaceKind::Rotated, 3, 1e-2).regime, "pz_eq_1e-2");
    EXPECT_EQ(surface_z_reference(SurfaceKind::Rotated, 3, 1e-3).regime, "pz_lt_1e-2");
    EXPECT_THROW(surface_z_reference(SurfaceKind::Xzzx, 7, 1e-3), std::invalid_argument);
    EXPECT_FALSE(concat_x_reference(OuterCodeId::code_16_3_8, 2).has_value());
}

// Exhaustive minimum over every configuration the search may consider.
double brute_force_overhead(OverheadFamily family, const NoisePoint &noise, double target, size_t max_d) {
    double best = std::numeric_limits<double>::infinity();
    struct Config {
        std::optional<OuterCodeId> outer;
        size_t anc;
        size_t d_x;
    };
    std::vector<Config> configs;
    if (family == OverheadFamily::Concat) {
        for (OuterCodeId id : all_outer_codes()) {
            for (size_t a : {1, 2}) {
                if (concat_x_reference(id, a)) {
                    configs.push_back({id, a, 0});
                }
            }
        }
    } else if (family == OverheadFamily::Repetition) {
        configs.push_back({std::nullopt, 0, 0});
    } else {
        configs.push_back({std::nullopt, 0, 3});
        configs.push_back({std::nullopt, 0, 5});
    }
    for (const auto &c : configs) {
        for (size_t d = 3; d <= max_d; d += 2) {
            if (family_rate(family, c.outer, c.anc, c.d_x, d, noise) > target) {
                continue;
            }
            double q = 0;
            switch (family) {
                case OverheadFamily::Repetition:
                    q = 2.0 * d - 1;
                    break;
                case OverheadFamily::Concat: {
                    ClassicalCode code = builtin_outer(*c.outer);
                    q = double((code.n + c.anc) * (2 * d - 1)) / code.k;
                    break;
                }
                case OverheadFamily::Surface:
                    q = 2.0 * c.d_x * d - 1;
                    break;
                case OverheadFamily::Xzzx:
                    q = double((2 * c.d_x - 1) * (2 * d - 1));
                    break;
            }
            best = std::min(best, q);
        }
    }
    return best;
}

TEST(Overhead, SearchIsOptimalOnItsGrid) {
    for (OverheadFamily f :
         {OverheadFamily::Repetition, OverheadFamily::Concat, OverheadFamily::Surface, OverheadFamily::Xzzx}) {
        for (double pz : {1e-3, 1e-2}) {
            for (double eta : {1e4, 1e6, std::numeric_limits<double>::infinity()}) {
                for (double target : {1e-6, 1e-9, 1e-12}) {
                    NoisePoint noise{pz, eta};
                    FamilyQuery q;
                    q.family = f;
                    OverheadPoint p = overhead_search(q, noise, target, {}, {61});
                    double want = brute_force_overhead(f, noise, target, 61);
                    if (std::isinf(want)) {
                        EXPECT_FALSE(p.reachable);
                    } else {
                        ASSERT_TRUE(p.reachable);
                        EXPECT_DOUBLE_EQ(p.qubits_per_logical, want) << overhead_family_name(f);
                        EXPECT_LE(p.p_l, target);
                        EXPECT_DOUBLE_EQ(p.qubits_per_logical, double(p.total_qubits) / p.logicals);
                    }
                }
            }
        }
    }
}

TEST(Overhead, RepetitionWithoutBitFlips) {
    FamilyQuery q;
    q.family = OverheadFamily::Repetition;
    OverheadPoint p = overhead_search(q, {1e-3, std::numeric_limits<double>::infinity()}, 1e-12);
    ASSERT_TRUE(p.reachable);
    EXPECT_EQ(p.total_qubits, 2 * p.d_z - 1);
    EXPECT_EQ(p.logicals, 1u);
}

TEST(Overhead, ConcatBeatsSurfaceFamiliesAtHighBias) {
    NoisePoint noise{1e-3, 2e6};
    FamilyQuery c;
    c.family = OverheadFamily::Concat;
    c.outer = OuterCodeId::code_15_9_3;
    c.ancillae = 1;
    OverheadPoint cp = overhead_search(c, noise, 1e-12);
    FamilyQuery s;
    s.family = OverheadFamily::Surface;
    FamilyQuery x;
    x.family = OverheadFamily::Xzzx;
    ASSERT_TRUE(cp.reachable);
    EXPECT_LT(cp.qubits_per_logical, overhead_search(s, noise, 1e-12).qubits_per_logical);
    EXPECT_LT(cp.qubits_per_logical, overhead_search(x, noise, 1e-12).qubits_per_logical);
}

TEST(Overhead, CrossoverInsideExpectedDecades) {
    auto eta = concat_crossover(1e-3, 1e-12, 1e3, 1e7);
    ASSERT_TRUE(eta.has_value());
    EXPECT_GE(*eta, 1e4);
    EXPECT_LE(*eta, 1e6);
    auto rows = eta_sweep(1e-3, 1e-12, log_grid(1e3, 1e7, 4));
    ASSERT_EQ(rows.size(), 17u);
    EXPECT_FALSE(concat_cheapest(rows.front().best));
    EXPECT_TRUE(concat_cheapest(rows.back().best));
}

// Geometric-mean XZZX/concat overhead ratio over each regime's plotted
// target range (half-decade grid), at eta = 1e6.
double mean_xzzx_ratio(double pz, double lo, double hi) {
    auto rows = target_sweep({pz, 1e6}, log_grid(lo, hi, 2));
    double sum = 0;
    for (const auto &r : rows) {
        EXPECT_TRUE(r.best[1].reachable && r.best[3].reachable);
        sum += std::log(r.best[3].qubits_per_logical / r.best[1].qubits_per_logical);
    }
    return std::exp(sum / rows.size());
}

TEST(Overhead, XzzxRatioStableAcrossPhaseFlipRates) {
    double low_pz = mean_xzzx_ratio(1e-3, 1e-15, 1e-8);
    double high_pz = mean_xzzx_ratio(1e-2, 1e-11, 1e-6);
    EXPECT_NEAR(low_pz / high_pz, 1.0, 0.35) << low_pz << " " << high_pz;
}

TEST(Overhead, LogGrid) {
    auto g = log_grid(1e3, 1e7, 10);
    ASSERT_EQ(g.size(), 41u);
    EXPECT_DOUBLE_EQ(g.front(), 1e3);
    EXPECT_NEAR(g.back(), 1e7, 1e-3);
    EXPECT_NEAR(g[10], 1e4, 1e-8);
}

TEST(MemoryExperiment, ZeroNoiseHasNoFailures) {
    MemoryRequest rep;
    rep.d_z = 5;
    rep.shots = 200;
    EXPECT_EQ(run_memory(rep).failures, 0u);
    rep.basis = MemoryBasis::Z;
    EXPECT_EQ(run_memory(rep).failures, 0u);

    MemoryRequest el;
    el.family = CodeFamily::Elevator;
    el.d_z = 3;
    el.shots = 64;
    MemoryResult r = run_memory(el);
    EXPECT_EQ(r.failures, 0u);
    EXPECT_EQ(r.num_logicals, 9u);
    EXPECT_EQ(r.qubits, 16u * 5u);
}

TEST(MemoryExperiment, DeterministicAcrossThreadCounts) {
    MemoryRequest q;
    q.d_z = 5;
    q.noise = {0, 2e-2};
    q.shots = 3000;
    q.seed = 17;
    q.threads = 1;
    MemoryResult a = run_memory(q);
    q.threads = 3;
    MemoryResult b = run_memory(q);
    EXPECT_EQ(a.failures, b.failures);
    EXPECT_EQ(memory_csv_row(a), memory_csv_row(b));
}

TEST(MemoryExperiment, RepetitionPhaseFlipRateNearModel) {
    MemoryRequest q;
    q.d_z = 3;
    q.noise = {0, 2e-2};
    q.shots = 100000;
    q.seed = 5;
    q.threads = 0;
    MemoryResult r = run_memory(q);
    double model = 0.13 * std::pow(25.02 * 0.02, 0.99 * 2);
    double sigma = std::sqrt(r.p_shot * (1 - r.p_shot) / q.shots) / (3 * q.d_z);
    EXPECT_NEAR(r.p_round, model, 3 * sigma + 0.5 * model) << r.p_round << " vs " << model;
    EXPECT_EQ(r.inner_rounds, 9u);
}

TEST(MemoryExperiment, RepetitionBitFlipRateNearModel) {
    MemoryRequest q;
    q.d_z = 5;
    q.basis = MemoryBasis::Z;
    q.noise = {1e-3, 0};
    q.shots = 20000;
    q.seed = 6;
    q.threads = 0;
    MemoryResult r = run_memory(q);
    double model = 3.88e-3 * 5;
    EXPECT_GT(r.p_round, model / 1.5);
    EXPECT_LT(r.p_round, model * 1.5);
}

TEST(MemoryExperiment, CsvLayout) {
    EXPECT_EQ(memory_csv_header(),
              "family,outer,d_z,ancillae,basis,p_x,p_z,shots,failures,rounds,p_shot,p_round,ci_lo,ci_hi");
    MemoryRequest q;
    q.shots = 10;
    std::string row = memory_csv_row(run_memory(q));
    EXPECT_EQ(std::count(row.begin(), row.end(), ','), 13);
    EXPECT_EQ(row.rfind("repetition,none,3,0,x,", 0), 0u);
}

TEST(MemoryExperiment, RejectsBadRequests) {
    MemoryRequest q;
    q.shots = 0;
    EXPECT_THROW(run_memory(q), std::invalid_argument);
    q.shots = 10;
    q.family = CodeFamily::Elevator;
    q.ancillae = 3;
    EXPECT_THROW(run_memory(q), std::invalid_argument);
}

}  // namespace
}  // namespace elevator
