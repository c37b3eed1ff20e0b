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
#include <cstddef>
#include <functional>

#include "muxctl/complex_matrix.hpp"
#include "muxctl/errors.hpp"

namespace muxctl {

/// Action of H(t) on a state: out = H(t) * psi. H is in rad/s (hbar = 1).
using HamiltonianAction =
    std::function<void(double t, const StateVector& psi, StateVector& out)>;

/// Matrix-valued H(t), for callers that prefer to hand over dense matrices.
using HamiltonianMatrixFn = std::function<ComplexMatrix(double t)>;

constexpr double kNormDriftTol = 1e-6;

/// Fixed-step 4th-order Runge-Kutta on i dpsi/dt = H(t) psi.
///
/// The step count is ceil(t_span / dt_max) so the final time is hit exactly
/// and the result is deterministic for fixed inputs. Callers are responsible
/// for choosing dt_max against the largest frequency scale in H; the
/// simulator modules use dt <= 1/(40 f_max) or tighter.
///
/// Throws NormDrift if the pre-renormalization norm error exceeds 1e-6
/// (the step size was too large). On success the returned state is
/// renormalized to the initial norm.
inline StateVector evolve(const HamiltonianAction& h_apply, StateVector psi, double t0,
                          double t_span, double dt_max) {
    if (t_span <= 0.0 || psi.empty()) return psi;
    const std::size_t steps = static_cast<std::size_t>(std::ceil(t_span / dt_max));
    const double dt = t_span / static_cast<double>(steps);
    const double norm0 = norm(psi);

    const std::size_t n = psi.size();
    StateVector k1(n), k2(n), k3(n), k4(n), tmp(n);
    const Complex mi(0.0, -1.0);

    for (std::size_t s = 0; s < steps; ++s) {
        const double t = t0 + dt * static_cast<double>(s);

        h_apply(t, psi, k1);
        for (std::size_t i = 0; i < n; ++i) {
            k1[i] *= mi;
            tmp[i] = psi[i] + 0.5 * dt * k1[i];
        }
        h_apply(t + 0.5 * dt, tmp, k2);
        for (std::size_t i = 0; i < n; ++i) {
            k2[i] *= mi;
            tmp[i] = psi[i] + 0.5 * dt * k2[i];
        }
        h_apply(t + 0.5 * dt, tmp, k3);
        for (std::size_t i = 0; i < n; ++i) {
            k3[i] *= mi;
            tmp[i] = psi[i] + dt * k3[i];
        }
        h_apply(t + dt, tmp, k4);
        for (std::size_t i = 0; i < n; ++i) {
            k4[i] *= mi;
            psi[i] += (dt / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
    }

    const double norm1 = norm(psi);
    if (norm0 > 0.0) {
        if (std::abs(norm1 / norm0 - 1.0) > kNormDriftTol)
            throw NormDrift("evolve: norm drift " + std::to_string(std::abs(norm1 / norm0 - 1.0)) +
                            " exceeds 1e-6; reduce dt");
        for (Complex& z : psi) z *= norm0 / norm1;
    }
    return psi;
}

inline StateVector evolve(const HamiltonianMatrixFn& h_of_t, const StateVector& psi0, double t0,
                          double t_span, double dt_max) {
    HamiltonianAction apply = [&h_of_t](double t, const StateVector& psi, StateVector& out) {
        const ComplexMatrix h = h_of_t(t);
        out = matvec(h, psi);
    };
    return evolve(apply, psi0, t0, t_span, dt_max);
}

}  // namespace muxctl
