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

#include "elevator/experiments/reference_models.h"

#include <stdexcept>
#include <string>

namespace elevator {

namespace {

FitModel make(FitFamily family, double a, double b, double c) {
    FitModel m;
    m.family = family;
    m.a = a;
    m.b = b;
    m.c = c;
    return m;
}

void check_dx(size_t d_x) {
    if (d_x != 3 && d_x != 5) {
        throw std::invalid_argument("surface models exist for d_x = 3 and 5, got " + std::to_string(d_x));
    }
}

}  // namespace

const char *surface_kind_name(SurfaceKind kind) {
    return kind == SurfaceKind::Rotated ? "rotated" : "xzzx";
}

FitModel rep_z_reference() {
    return make(FitFamily::RepZ, 0.13, 25.02, 0.99);
}

FitModel rep_x_reference() {
    return make(FitFamily::RepX, 3.88, 1, 1);
}

FitModel concat_z_reference() {
    return make(FitFamily::ConcatZ, 0.12, 34.4, 0.94);
}

std::optional<FitModel> concat_x_reference(OuterCodeId outer, size_t ancillae) {
    switch (outer) {
        case OuterCodeId::code_15_9_3:
            if (ancillae == 1) {
                return make(FitFamily::ConcatX, 37.18, 1.94, 2.33);
            }
            break;
        case OuterCodeId::code_15_6_5:
            if (ancillae == 1) {
                return make(FitFamily::ConcatX, 115.14, 2.76, 3.73);
            }
            if (ancillae == 2) {
                return make(FitFamily::ConcatX, 88.47, 2.86, 3.89);
            }
            break;
        case OuterCodeId::code_16_3_8:
            if (ancillae == 1) {
                return make(FitFamily::ConcatX, 61.99, 3.57, 5.74);
            }
            break;
    }
    return std::nullopt;
}

FitModel surface_z_reference(SurfaceKind kind, size_t d_x, double p_z) {
    check_dx(d_x);
    FitModel m;
    if (kind == SurfaceKind::Xzzx) {
        m = d_x == 3 ? make(FitFamily::SurfaceZ, 0.36, 30.60, 1.00) : make(FitFamily::SurfaceZ, 0.64, 28.92, 1.01);
    } else if (p_z >= 1e-2) {
        m = d_x == 3 ? make(FitFamily::SurfaceZ, 0.05, 4.23, 0.08) : make(FitFamily::SurfaceZ, 0.04, 2.18, 0.03);
        m.regime = "pz_eq_1e-2";
    } else {
        m = d_x == 3 ? make(FitFamily::SurfaceZ, 0.14, 72.66, 0.97) : make(FitFamily::SurfaceZ, 0.16, 84.69, 0.94);
        m.regime = "pz_lt_1e-2";
    }
    m.d_x = d_x;
    return m;
}

FitModel surface_x_reference(SurfaceKind kind, size_t d_x) {
    check_dx(d_x);
    FitModel m;
    if (kind == SurfaceKind::Rotated) {
        m = d_x == 3 ? make(FitFamily::SurfaceX, 1.06, 19.30, 2.00) : make(FitFamily::SurfaceX, 1.19, 19.30, 2.97);
    } else {
        m = d_x == 3 ? make(FitFamily::SurfaceX, 1.03, 0.97, 1.99) : make(FitFamily::SurfaceX, 1.06, 12.38, 2.93);
    }
    m.d_x = d_x;
    return m;
}

}  // namespace elevator
