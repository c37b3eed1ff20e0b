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

#include <cassert>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "muxctl/errors.hpp"

namespace muxctl {

using Complex = std::complex<double>;

/// State amplitudes of a pure state, basis-ordered.
using StateVector = std::vector<Complex>;

constexpr double kHermitianTol = 1e-12;

/// Dense row-major complex matrix. Deliberately minimal: every Hamiltonian
/// and unitary in the library lives in one of these.
struct ComplexMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Complex> data;

    ComplexMatrix() = default;
    ComplexMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}

    Complex& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    const Complex& at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

    static ComplexMatrix zero(std::size_t n) { return ComplexMatrix(n, n); }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
        return m;
    }

    ComplexMatrix dagger() const {
        ComplexMatrix m(cols, rows);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) m.at(j, i) = std::conj(at(i, j));
        return m;
    }

    double max_abs() const {
        double m = 0.0;
        for (const Complex& z : data) m = std::max(m, std::abs(z));
        return m;
    }

    /// max |A - A^dagger|, the Hermiticity defect.
    double hermiticity_defect() const {
        assert(rows == cols);
        double m = 0.0;
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = i; j < cols; ++j)
                m = std::max(m, std::abs(at(i, j) - std::conj(at(j, i))));
        return m;
    }

    bool is_hermitian(double tol = kHermitianTol) const { return hermiticity_defect() <= tol; }
};

inline ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    assert(a.cols == b.rows);
    ComplexMatrix c(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i) {
        for (std::size_t k = 0; k < a.cols; ++k) {
            const Complex aik = a.at(i, k);
            if (aik == Complex{}) continue;
            for (std::size_t j = 0; j < b.cols; ++j) c.at(i, j) += aik * b.at(k, j);
        }
    }
    return c;
}

inline StateVector matvec(const ComplexMatrix& a, const StateVector& x) {
    assert(a.cols == x.size());
    StateVector y(a.rows);
    for (std::size_t i = 0; i < a.rows; ++i) {
        Complex acc{};
        for (std::size_t j = 0; j < a.cols; ++j) acc += a.at(i, j) * x[j];
        y[i] = acc;
    }
    return y;
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix c(a.rows * b.rows, a.cols * b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j) {
            const Complex aij = a.at(i, j);
            if (aij == Complex{}) continue;
            for (std::size_t k = 0; k < b.rows; ++k)
                for (std::size_t l = 0; l < b.cols; ++l)
                    c.at(i * b.rows + k, j * b.cols + l) = aij * b.at(k, l);
        }
    return c;
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    assert(a.rows == b.rows && a.cols == b.cols);
    double m = 0.0;
    for (std::size_t i = 0; i < a.data.size(); ++i) m = std::max(m, std::abs(a.data[i] - b.data[i]));
    return m;
}

/// max-norm distance between two matrices after removing one global phase.
/// The phase is read off the largest entry of `a`.
inline double max_abs_diff_up_to_phase(const ComplexMatrix& a, const ComplexMatrix& b) {
    assert(a.rows == b.rows && a.cols == b.cols);
    std::size_t imax = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < a.data.size(); ++i) {
        if (std::abs(a.data[i]) > best) {
            best = std::abs(a.data[i]);
            imax = i;
        }
    }
    if (best <= 0.0 || std::abs(b.data[imax]) == 0.0) return max_abs_diff(a, b);
    Complex phase = (a.data[imax] / b.data[imax]);
    phase /= std::abs(phase);
    double m = 0.0;
    for (std::size_t i = 0; i < a.data.size(); ++i)
        m = std::max(m, std::abs(a.data[i] - phase * b.data[i]));
    return m;
}

inline double norm(const StateVector& v) {
    double s = 0.0;
    for (const Complex& z : v) s += std::norm(z);
    return std::sqrt(s);
}

inline void normalize(StateVector& v) {
    const double n = norm(v);
    if (n == 0.0) return;
    for (Complex& z : v) z /= n;
}

inline Complex inner(const StateVector& a, const StateVector& b) {
    assert(a.size() == b.size());
    Complex s{};
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

inline StateVector basis_state(std::size_t dim, std::size_t index) {
    StateVector v(dim);
    v.at(index) = 1.0;
    return v;
}

/// Validates the Hermiticity invariant on construction paths that promise it.
inline const ComplexMatrix& require_hermitian(const ComplexMatrix& h, const char* context) {
    if (h.rows != h.cols)
        throw NonHermitianInput(std::string(context) + ": matrix is not square");
    if (!h.is_hermitian())
        throw NonHermitianInput(std::string(context) + ": Hermiticity defect exceeds 1e-12");
    return h;
}

}  // namespace muxctl
