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

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <vector>

#include "muxctl/eigh.hpp"
#include "muxctl/units.hpp"

namespace muxctl {

/// One bosonic-like mode with an explicit level list. The Duffing factory
/// covers transmons; a custom energy ladder plus per-transition coupling
/// elements covers generic level structures (e.g. fluxonium profiles)
/// without any circuit quantization.
struct ModeSpec {
    int levels = 4;
    double base_frequency_hz = 0.0;     // anchor for frequency overrides
    std::vector<double> energies_hz;    // size = levels, energies_hz[0] = 0
    std::vector<double> ladder;         // size = levels-1, <j|a^dag|j+1>-type weights

    static ModeSpec duffing(double f_hz, double anharmonicity_hz, int levels) {
        ModeSpec m;
        m.levels = levels;
        m.base_frequency_hz = f_hz;
        m.energies_hz.resize(static_cast<std::size_t>(levels));
        for (int j = 0; j < levels; ++j)
            m.energies_hz[static_cast<std::size_t>(j)] =
                static_cast<double>(j) * f_hz +
                anharmonicity_hz * 0.5 * static_cast<double>(j) * static_cast<double>(j - 1);
        m.ladder.resize(static_cast<std::size_t>(levels - 1));
        for (int j = 0; j + 1 < levels; ++j)
            m.ladder[static_cast<std::size_t>(j)] = std::sqrt(static_cast<double>(j + 1));
        return m;
    }

    /// Level energies with the linear part re-anchored at f_hz.
    double energy_hz(int j, double f_hz) const {
        return energies_hz[static_cast<std::size_t>(j)] +
               static_cast<double>(j) * (f_hz - base_frequency_hz);
    }
};

/// Qubit - tunable coupler - qubit system with exchange couplings.
/// Basis ordering is |q1, c, q2> with the coupler in the middle; the flat
/// index is (n1 * d_c + nc) * d_2 + n2.
struct CouplerSystemSpec {
    ModeSpec qubit1 = ModeSpec::duffing(5.3e9, -200e6, 4);
    ModeSpec coupler = ModeSpec::duffing(6.5e9, -200e6, 4);
    ModeSpec qubit2 = ModeSpec::duffing(5.0e9, -200e6, 4);
    double g1c_hz = 100e6;
    double g2c_hz = 100e6;
    double g12_hz = 10e6;

    int dim() const { return qubit1.levels * coupler.levels * qubit2.levels; }

    int index(int n1, int nc, int n2) const {
        return (n1 * coupler.levels + nc) * qubit2.levels + n2;
    }

    std::array<int, 3> occupations(int idx) const {
        const int n2 = idx % qubit2.levels;
        const int rest = idx / qubit2.levels;
        return {rest / coupler.levels, rest % coupler.levels, n2};
    }

    void validate() const {
        if (qubit1.levels < 3 || coupler.levels < 3 || qubit2.levels < 3)
            throw ValidationError("coupler system: every mode needs >= 3 levels");
        if (dim() > 512) throw DimensionOverflow("coupler system: Hilbert dimension exceeds 512");
    }
};

/// H = sum_m [w_m n_m + anharmonic ladder] + sum_{1c,2c,12} g (a^dag b + a b^dag),
/// in rad/s, with the coupler's linear frequency overridden to omega_c_hz.
inline ComplexMatrix build_hamiltonian(const CouplerSystemSpec& spec, double omega_c_hz) {
    spec.validate();
    const int dim = spec.dim();
    ComplexMatrix h(static_cast<std::size_t>(dim), static_cast<std::size_t>(dim));

    for (int i = 0; i < dim; ++i) {
        const auto [n1, nc, n2] = spec.occupations(i);
        const double e_hz = spec.qubit1.energy_hz(n1, spec.qubit1.base_frequency_hz) +
                            spec.coupler.energy_hz(nc, omega_c_hz) +
                            spec.qubit2.energy_hz(n2, spec.qubit2.base_frequency_hz);
        h.at(static_cast<std::size_t>(i), static_cast<std::size_t>(i)) = hz_to_rad(e_hz);
    }

    // Exchange coupling g (a^dag b + a b^dag) between modes (m raise, n lower).
    auto add_exchange = [&](int mode_raise, int mode_lower, double g_hz) {
        if (g_hz == 0.0) return;
        const double g = hz_to_rad(g_hz);
        const ModeSpec* modes[3] = {&spec.qubit1, &spec.coupler, &spec.qubit2};
        for (int i = 0; i < dim; ++i) {
            const auto occ = spec.occupations(i);
            if (occ[static_cast<std::size_t>(mode_raise)] + 1 >= modes[mode_raise]->levels) continue;
            if (occ[static_cast<std::size_t>(mode_lower)] == 0) continue;
            auto occ2 = occ;
            ++occ2[static_cast<std::size_t>(mode_raise)];
            --occ2[static_cast<std::size_t>(mode_lower)];
            const int j = spec.index(occ2[0], occ2[1], occ2[2]);
            const double w = modes[mode_raise]->ladder[static_cast<std::size_t>(occ[static_cast<std::size_t>(mode_raise)])] *
                             modes[mode_lower]->ladder[static_cast<std::size_t>(occ[static_cast<std::size_t>(mode_lower)] - 1)];
            h.at(static_cast<std::size_t>(j), static_cast<std::size_t>(i)) += g * w;
            h.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) += g * w;
        }
    };
    add_exchange(0, 1, spec.g1c_hz);  // q1 <-> coupler
    add_exchange(2, 1, spec.g2c_hz);  // q2 <-> coupler
    add_exchange(0, 2, spec.g12_hz);  // q1 <-> q2 direct

    require_hermitian(h, "build_hamiltonian");
    return h;
}

/// Dressed eigenstate labeled |n1 nc n2>-like by maximum bare overlap.
struct DressedSpectrum {
    double omega_c_hz = 0.0;
    std::vector<double> energy_hz;    // by bare label index, relative (E[000] as is)
    std::vector<double> overlap;      // winning overlap per label
    std::vector<int> eigenindex;      // label -> eigenstate column
    ComplexMatrix eigenvectors;       // columns in eigensolver order
    double zeta_hz = 0.0;             // E(101) + E(000) - E(100) - E(001)
    double omega_c_ab_hz[2][2] = {};  // coupler transition per qubit state |a b>

    double energy_of(const CouplerSystemSpec& spec, int n1, int nc, int n2) const {
        return energy_hz[static_cast<std::size_t>(spec.index(n1, nc, n2))];
    }
};

constexpr double kLabelOverlapThreshold = 0.5;

/// Eigensolve + bijective assignment of bare labels, greedy by descending
/// overlap. The computational manifold (both qubits in {0,1}, coupler in
/// {0,1}) must win its labels with overlap > 0.5 or the point is declared
/// ambiguous (strong hybridization; treat as diabatic).
inline DressedSpectrum dressed_spectrum(const CouplerSystemSpec& spec, double omega_c_hz) {
    const ComplexMatrix h = build_hamiltonian(spec, omega_c_hz);
    const EighResult e = eigh(h);
    const int dim = spec.dim();

    // Collect all |<bare_i | eig_k>|^2 and assign greedily.
    struct Entry {
        double w;
        int label;
        int col;
    };
    std::vector<Entry> entries;
    entries.reserve(static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim));
    for (int label = 0; label < dim; ++label)
        for (int col = 0; col < dim; ++col)
            entries.push_back({std::norm(e.eigenvectors.at(static_cast<std::size_t>(label),
                                                           static_cast<std::size_t>(col))),
                               label, col});
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        if (a.w != b.w) return a.w > b.w;
        if (a.label != b.label) return a.label < b.label;
        return a.col < b.col;
    });

    std::vector<int> label_to_col(static_cast<std::size_t>(dim), -1);
    std::vector<int> col_taken(static_cast<std::size_t>(dim), 0);
    std::vector<double> label_overlap(static_cast<std::size_t>(dim), 0.0);
    int assigned = 0;
    for (const Entry& en : entries) {
        if (assigned == dim) break;
        if (label_to_col[static_cast<std::size_t>(en.label)] >= 0 || col_taken[static_cast<std::size_t>(en.col)]) continue;
        label_to_col[static_cast<std::size_t>(en.label)] = en.col;
        col_taken[static_cast<std::size_t>(en.col)] = 1;
        label_overlap[static_cast<std::size_t>(en.label)] = en.w;
        ++assigned;
    }

    DressedSpectrum out;
    out.omega_c_hz = omega_c_hz;
    out.energy_hz.resize(static_cast<std::size_t>(dim));
    out.overlap = label_overlap;
    out.eigenindex = label_to_col;
    out.eigenvectors = e.eigenvectors;
    for (int label = 0; label < dim; ++label)
        out.energy_hz[static_cast<std::size_t>(label)] =
            rad_to_hz(e.eigenvalues[static_cast<std::size_t>(label_to_col[static_cast<std::size_t>(label)])]);

    for (int a = 0; a <= 1; ++a)
        for (int nc = 0; nc <= 1; ++nc)
            for (int b = 0; b <= 1; ++b) {
                const int label = spec.index(a, nc, b);
                if (label_overlap[static_cast<std::size_t>(label)] < kLabelOverlapThreshold)
                    throw LabelAmbiguity("dressed_spectrum: label |" + std::to_string(a) +
                                         std::to_string(nc) + std::to_string(b) +
                                         "> wins with overlap below 0.5 at omega_c = " +
                                         std::to_string(omega_c_hz * 1e-9) + " GHz");
            }

    auto en = [&](int n1, int nc, int n2) { return out.energy_hz[static_cast<std::size_t>(spec.index(n1, nc, n2))]; };
    out.zeta_hz = en(1, 0, 1) + en(0, 0, 0) - en(1, 0, 0) - en(0, 0, 1);
    for (int a = 0; a <= 1; ++a)
        for (int b = 0; b <= 1; ++b) out.omega_c_ab_hz[a][b] = en(a, 1, b) - en(a, 0, b);
    return out;
}

struct ZzSweepPoint {
    double omega_c_hz = 0.0;
    double zeta_hz = 0.0;
    double omega_c_ab_hz[2][2] = {};
    bool ambiguous = false;
};

/// Maps dressed_spectrum over an omega_c grid; ambiguous points are flagged
/// rather than fatal.
inline std::vector<ZzSweepPoint> zz_vs_coupler(const CouplerSystemSpec& spec,
                                               const std::vector<double>& omega_c_hz) {
    std::vector<ZzSweepPoint> out(omega_c_hz.size());
    for (std::size_t i = 0; i < omega_c_hz.size(); ++i) {
        out[i].omega_c_hz = omega_c_hz[i];
        try {
            const DressedSpectrum ds = dressed_spectrum(spec, omega_c_hz[i]);
            out[i].zeta_hz = ds.zeta_hz;
            for (int a = 0; a <= 1; ++a)
                for (int b = 0; b <= 1; ++b) out[i].omega_c_ab_hz[a][b] = ds.omega_c_ab_hz[a][b];
        } catch (const LabelAmbiguity&) {
            out[i].ambiguous = true;
        }
    }
    return out;
}

}  // namespace muxctl
