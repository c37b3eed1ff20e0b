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

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "muxctl/complex_matrix.hpp"
#include "muxctl/errors.hpp"

namespace muxctl {

constexpr std::size_t kMaxEighDim = 512;

struct EighResult {
    /// Ascending.
    std::vector<double> eigenvalues;
    /// Column k is the eigenvector of eigenvalues[k].
    ComplexMatrix eigenvectors;
};

/// Dense Hermitian eigendecomposition.
///
/// Eigenvalues come back ascending. Each eigenvector is phase-fixed so that
/// its first component of non-negligible magnitude is real and positive,
/// which keeps state labeling stable across nearby inputs and across
/// degenerate subspaces.
inline EighResult eigh(const ComplexMatrix& h) {
    require_hermitian(h, "eigh");
    const std::size_t n = h.rows;
    if (n > kMaxEighDim) throw DimensionOverflow("eigh: dimension exceeds 512");

    Eigen::MatrixXcd m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = h.at(i, j);
    // Symmetrize exactly; the input is Hermitian within 1e-12 by contract.
    m = (m + m.adjoint()).eval() * 0.5;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
    if (solver.info() != Eigen::Success) throw NoConvergence("eigh: iteration failed to converge");

    EighResult out;
    out.eigenvalues.resize(n);
    out.eigenvectors = ComplexMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.eigenvalues[k] = solver.eigenvalues()(static_cast<Eigen::Index>(k));
        // Phase convention: first component with |v_i| > 1e-12 made real-positive.
        Complex fix = 1.0;
        for (std::size_t i = 0; i < n; ++i) {
            const Complex v = solver.eigenvectors()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
            if (std::abs(v) > 1e-12) {
                fix = std::conj(v) / std::abs(v);
                break;
            }
        }
        for (std::size_t i = 0; i < n; ++i)
            out.eigenvectors.at(i, k) =
                fix * solver.eigenvectors()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
    }
    return out;
}

/// exp(-i H t) by spectral decomposition. Only sensible for small dims;
/// used as the reference propagator for time-independent Hamiltonians.
inline ComplexMatrix expm_hermitian(const ComplexMatrix& h, double t) {
    EighResult e = eigh(h);
    const std::size_t n = h.rows;
    ComplexMatrix u(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Complex acc{};
            for (std::size_t k = 0; k < n; ++k) {
                const Complex phase = std::polar(1.0, -e.eigenvalues[k] * t);
                acc += e.eigenvectors.at(i, k) * phase * std::conj(e.eigenvectors.at(j, k));
            }
            u.at(i, j) = acc;
        }
    return u;
}

}  // namespace muxctl
