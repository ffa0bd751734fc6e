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

#include "elevator/experiments/fit.h"

#include <Eigen/Dense>
#include <cmath>
#include <set>
#include <stdexcept>

namespace elevator {

namespace {

double half_distance(size_t d_z) {
    return (double(d_z) + 1) / 2;
}

double concat_prefactor(size_t n_b, size_t k) {
    if (k == 0) {
        throw std::invalid_argument("concat_z prefactor needs k >= 1");
    }
    return (double(n_b) / 16.0) * (9.0 / double(k));
}

}  // namespace

const char *fit_family_name(FitFamily family) {
    switch (family) {
        case FitFamily::ConcatX:
            return "concat_x";
        case FitFamily::ConcatZ:
            return "concat_z";
        case FitFamily::RepZ:
            return "rep_z";
        case FitFamily::RepX:
            return "rep_x";
        case FitFamily::SurfaceZ:
            return "surface_z";
        case FitFamily::SurfaceX:
            return "surface_x";
    }
    return "?";
}

std::optional<FitFamily> parse_fit_family(std::string_view name) {
    for (FitFamily f : {FitFamily::ConcatX,
                        FitFamily::ConcatZ,
                        FitFamily::RepZ,
                        FitFamily::RepX,
                        FitFamily::SurfaceZ,
                        FitFamily::SurfaceX}) {
        if (name == fit_family_name(f)) {
            return f;
        }
    }
    return std::nullopt;
}

double eval_model(const FitModel &m, double p, size_t d_z, std::optional<size_t> n_b, std::optional<size_t> k) {
    if (p < 0) {
        throw std::invalid_argument("physical error rate must be non-negative");
    }
    double d = (double)d_z;
    double u = half_distance(d_z);
    switch (m.family) {
        case FitFamily::ConcatX:
            return std::pow(d, m.c) * std::pow(m.a * p, m.b);
        case FitFamily::ConcatZ: {
            auto nb = n_b ? n_b : m.n_b;
            auto kk = k ? k : m.k;
            if (!nb || !kk) {
                throw std::invalid_argument("concat_z evaluation needs n_b and k");
            }
            return concat_prefactor(*nb, *kk) * m.a * std::pow(m.b * p, m.c * u);
        }
        case FitFamily::RepZ:
        case FitFamily::SurfaceZ:
            return m.a * std::pow(m.b * p, m.c * u);
        case FitFamily::RepX:
            return m.a * p * d;
        case FitFamily::SurfaceX:
            return std::pow(d, m.a) * std::pow(m.b * p, m.c);
    }
    return 0;
}

double total_rate(double p_zl, double p_xl) {
    return p_zl + p_xl;
}

FitResult fit_power_law(const std::vector<FitPoint> &points,
                        FitFamily family,
                        std::optional<size_t> n_b,
                        std::optional<size_t> k) {
    if (points.size() < 3) {
        throw std::invalid_argument("fitting needs at least 3 points, got " + std::to_string(points.size()));
    }
    std::set<double> ps;
    std::set<size_t> ds;
    std::set<std::pair<double, size_t>> distinct;
    for (const auto &pt : points) {
        if (!(pt.p > 0) || !(pt.p_round > 0) || pt.d_z == 0) {
            throw std::invalid_argument("fit points need p > 0, p_round > 0 and d_z >= 1");
        }
        ps.insert(pt.p);
        ds.insert(pt.d_z);
        distinct.insert({pt.p, pt.d_z});
    }
    if (distinct.size() < 3) {
        throw std::invalid_argument("fitting needs at least 3 distinct (p, d_z) points");
    }
    bool needs_d = family != FitFamily::RepX;
    bool needs_p = family != FitFamily::RepX;
    if (needs_d && ds.size() < 2) {
        throw std::invalid_argument(
            std::string("all points share d_z = ") + std::to_string(*ds.begin()) + "; " + fit_family_name(family) +
            " needs distance variation to identify its distance exponent");
    }
    if (needs_p && ps.size() < 2) {
        throw std::invalid_argument(std::string("all points share one physical error rate; ") +
                                    fit_family_name(family) + " needs variation in p to identify its p exponent");
    }
    double prefactor = 1;
    if (family == FitFamily::ConcatZ) {
        if (!n_b || !k) {
            throw std::invalid_argument("concat_z fitting needs n_b and k");
        }
        prefactor = concat_prefactor(*n_b, *k);
    }

    const Eigen::Index rows = (Eigen::Index)points.size();
    const Eigen::Index cols = family == FitFamily::RepX ? 1 : 3;
    Eigen::MatrixXd a(rows, cols);
    Eigen::VectorXd y(rows);
    for (Eigen::Index i = 0; i < rows; i++) {
        const auto &pt = points[(size_t)i];
        double lp = std::log(pt.p);
        double ld = std::log((double)pt.d_z);
        double u = half_distance(pt.d_z);
        double ly = std::log(pt.p_round / prefactor);
        switch (family) {
            case FitFamily::ConcatX:
                // log y = c log d + b log a + b log p
                a.row(i) << ld, 1, lp;
                y(i) = ly;
                break;
            case FitFamily::ConcatZ:
            case FitFamily::RepZ:
            case FitFamily::SurfaceZ:
                // log y = log a + u (c log b) + c (u log p)
                a.row(i) << 1, u, u * lp;
                y(i) = ly;
                break;
            case FitFamily::RepX:
                a(i, 0) = 1;
                y(i) = ly - lp - ld;
                break;
            case FitFamily::SurfaceX:
                // log y = a log d + c log b + c log p
                a.row(i) << ld, 1, lp;
                y(i) = ly;
                break;
        }
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
    if (qr.rank() < cols) {
        throw std::invalid_argument(std::string("degenerate design for ") + fit_family_name(family) +
                                    ": points need joint variation in p and d_z");
    }
    Eigen::VectorXd x = qr.solve(y);

    FitResult res;
    FitModel &m = res.model;
    m.family = family;
    switch (family) {
        case FitFamily::ConcatX:
            m.c = x(0);
            m.b = x(2);
            m.a = std::exp(x(1) / m.b);
            break;
        case FitFamily::ConcatZ:
        case FitFamily::RepZ:
        case FitFamily::SurfaceZ:
            m.a = std::exp(x(0));
            m.c = x(2);
            m.b = std::exp(x(1) / m.c);
            break;
        case FitFamily::RepX:
            m.a = std::exp(x(0));
            m.b = 1;
            m.c = 1;
            break;
        case FitFamily::SurfaceX:
            m.a = x(0);
            m.c = x(2);
            m.b = std::exp(x(1) / m.c);
            break;
    }
    if (family == FitFamily::ConcatZ) {
        m.n_b = n_b;
        m.k = k;
    }
    double ss = 0;
    for (const auto &pt : points) {
        double r = std::log(pt.p_round) - std::log(eval_model(m, pt.p, pt.d_z));
        res.residuals.push_back(r);
        ss += r * r;
    }
    res.rms_log_residual = std::sqrt(ss / (double)points.size());
    return res;
}

}  // namespace elevator
