// Copyright 2026 The muxctl Authors
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

#pragma once

#include <cmath>

#include "muxctl/complex_matrix.hpp"
#include "muxctl/units.hpp"

namespace muxctl {

/// U3(theta, phi, lambda) =
///   [ cos(t/2)              -e^{i lambda} sin(t/2)        ]
///   [ e^{i phi} sin(t/2)     e^{i(phi+lambda)} cos(t/2)   ]
struct U3Params {
    double theta = 0.0;
    double phi = 0.0;
    double lambda = 0.0;
};

inline ComplexMatrix u3_matrix(const U3Params& p) {
    ComplexMatrix m(2, 2);
    const double c = std::cos(p.theta / 2.0);
    const double s = std::sin(p.theta / 2.0);
    m.at(0, 0) = c;
    m.at(0, 1) = -std::polar(s, p.lambda);
    m.at(1, 0) = std::polar(s, p.phi);
    m.at(1, 1) = std::polar(c, p.phi + p.lambda);
    return m;
}

inline ComplexMatrix rz_matrix(double lambda) {
    ComplexMatrix m(2, 2);
    m.at(0, 0) = std::polar(1.0, -lambda / 2.0);
    m.at(1, 1) = std::polar(1.0, lambda / 2.0);
    return m;
}

/// sqrt(X): squares exactly to the Pauli X matrix.
inline ComplexMatrix sx_matrix() {
    ComplexMatrix m(2, 2);
    m.at(0, 0) = Complex(0.5, 0.5);
    m.at(0, 1) = Complex(0.5, -0.5);
    m.at(1, 0) = Complex(0.5, -0.5);
    m.at(1, 1) = Complex(0.5, 0.5);
    return m;
}

inline ComplexMatrix x_matrix() {
    ComplexMatrix m(2, 2);
    m.at(0, 1) = 1.0;
    m.at(1, 0) = 1.0;
    return m;
}

inline ComplexMatrix cz_matrix() {
    ComplexMatrix m = ComplexMatrix::identity(4);
    m.at(3, 3) = -1.0;
    return m;
}

/// Controlled phase pi/2. The sign of the conditional phase is a convention;
/// +1 is the library default and -1 is selectable where it matters.
inline ComplexMatrix sqrt_cz_matrix(int sign = +1) {
    ComplexMatrix m = ComplexMatrix::identity(4);
    m.at(3, 3) = Complex(0.0, sign >= 0 ? 1.0 : -1.0);
    return m;
}

inline bool is_unitary(const ComplexMatrix& u, double tol = 1e-10) {
    if (u.rows != u.cols) return false;
    const ComplexMatrix p = matmul(u.dagger(), u);
    return max_abs_diff(p, ComplexMatrix::identity(u.rows)) <= tol;
}

/// Extracts canonical U3 angles from a 2x2 unitary, discarding the global
/// phase. theta lands in [0, pi]. The gauge freedom of (anti)diagonal
/// matrices is fixed deterministically: diagonal U gives phi = 0,
/// antidiagonal U gives lambda = 0.
inline U3Params u3_params_from_unitary(const ComplexMatrix& u) {
    const double off = std::max(std::abs(u.at(0, 1)), std::abs(u.at(1, 0)));
    const double diag = std::max(std::abs(u.at(0, 0)), std::abs(u.at(1, 1)));
    const double scale = std::max(off, diag);

    U3Params p;
    if (off <= 1e-13 * scale) {
        // Diagonal: U ~ diag(1, e^{i(phi+lambda)}) up to phase.
        p.theta = 0.0;
        p.phi = 0.0;
        p.lambda = std::arg(u.at(1, 1) / u.at(0, 0));
        return p;
    }
    if (diag <= 1e-13 * scale) {
        // Antidiagonal: theta = pi, lambda fixed to 0.
        p.theta = kPi;
        p.lambda = 0.0;
        const double alpha = std::arg(-u.at(0, 1));
        p.phi = wrap_phase(std::arg(u.at(1, 0)) - alpha);
        return p;
    }
    p.theta = 2.0 * std::atan2(std::abs(u.at(1, 0)), std::abs(u.at(0, 0)));
    const double alpha = std::arg(u.at(0, 0));
    p.phi = wrap_phase(std::arg(u.at(1, 0)) - alpha);
    p.lambda = wrap_phase(std::arg(-u.at(0, 1)) - alpha);
    return p;
}

}  // namespace muxctl
