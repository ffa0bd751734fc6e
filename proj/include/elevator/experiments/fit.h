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

#ifndef ELEVATOR_EXPERIMENTS_FIT_H
#define ELEVATOR_EXPERIMENTS_FIT_H

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace elevator {

/// Closed forms for per-round logical error rates, with p the physical rate
/// of the relevant Pauli type and u = (d_z + 1) / 2:
///   ConcatX   d_z^c (a p)^b
///   ConcatZ   (n_b / 16) (9 / k) a (b p)^(c u)
///   RepZ      a (b p)^(c u)
///   RepX      a p d_z                 (b and c unused)
///   SurfaceZ  a (b p)^(c u)
///   SurfaceX  d_z^a (b p)^c
enum class FitFamily {
    ConcatX,
    ConcatZ,
    RepZ,
    RepX,
    SurfaceZ,
    SurfaceX,
};

struct FitModel {
    FitFamily family = FitFamily::RepZ;
    double a = 0;
    double b = 0;
    double c = 0;
    std::optional<size_t> n_b;
    std::optional<size_t> k;
    std::optional<size_t> d_x;
    /// Free-form tag, e.g. the rotated-surface regime ("pz_eq_1e-2").
    std::string regime;
};

/// Evaluates the model. ConcatZ needs n_b and k, either from the arguments
/// or from the model; otherwise std::invalid_argument.
double eval_model(const FitModel &model,
                  double p,
                  size_t d_z,
                  std::optional<size_t> n_b = {},
                  std::optional<size_t> k = {});

struct FitPoint {
    double p = 0;
    size_t d_z = 0;
    double p_round = 0;
};

struct FitResult {
    FitModel model;
    /// log(measured) - log(model) per point.
    std::vector<double> residuals;
    double rms_log_residual = 0;
};

/// Unweighted least squares on log p_round against the family's log-linear
/// form. For ConcatZ the prefactor n_b/16 * 9/k is taken from `n_b`/`k` and
/// divided out before fitting a, b, c. Throws std::invalid_argument with the
/// missing variation named when the design is degenerate.
FitResult fit_power_law(const std::vector<FitPoint> &points,
                        FitFamily family,
                        std::optional<size_t> n_b = {},
                        std::optional<size_t> k = {});

/// p_L = p_ZL + p_XL.
double total_rate(double p_zl, double p_xl);

const char *fit_family_name(FitFamily family);
std::optional<FitFamily> parse_fit_family(std::string_view name);

}  // namespace elevator

#endif
