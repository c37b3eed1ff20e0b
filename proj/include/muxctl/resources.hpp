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
#include <string>

#include "muxctl/errors.hpp"
#include "muxctl/units.hpp"

namespace muxctl {

// ---------------------------------------------------------------------------
// Lattice and wiring
// ---------------------------------------------------------------------------

/// Square lattice of qubits with nearest-neighbor tunable couplers
/// (couplers sit on the edges of the grid graph).
struct LatticeSpec {
    int rows = 0;
    int cols = 0;

    long qubit_count() const { return static_cast<long>(rows) * cols; }

    /// Edge count of the grid graph: 2 R C - R - C.
    long coupler_count() const {
        return 2L * rows * cols - rows - cols;
    }
};

enum class WiringScheme { Traditional, Multiplexed };

/// How couplers are grouped into shared-line rows. The banded reading
/// groups each qubit row's horizontal couplers with the vertical couplers
/// below it (one band per qubit row); the per-orientation reading gives
/// every horizontal and vertical coupler row its own lines.
enum class CouplerRowConvention { InterleavedBands, PerOrientationRows };

struct WireCounts {
    long qubit_xy = 0;
    long coupler_z = 0;
    long coupler_xy = 0;

    long total() const { return qubit_xy + coupler_z + coupler_xy; }
};

/// Control-line counts for a lattice. Readout lines are excluded; the
/// scheme addresses control wiring only.
///
/// Traditional: one XY line per qubit, one Z line per coupler.
/// Multiplexed: one shared XY line per qubit row, two interleaved shared Z
/// lines plus one shared coupler-XY line per coupler row. Shared XY lines
/// split when their element count exceeds the multiplicity cap M; Z lines
/// have no multiplicity limit.
inline WireCounts wire_counts(const LatticeSpec& lattice, WiringScheme scheme, long m_cap,
                              CouplerRowConvention rows = CouplerRowConvention::InterleavedBands) {
    if (lattice.rows <= 0 || lattice.cols <= 0)
        throw ValidationError("wire_counts: lattice dimensions must be positive");
    WireCounts w;
    if (scheme == WiringScheme::Traditional) {
        w.qubit_xy = lattice.qubit_count();
        w.coupler_z = lattice.coupler_count();
        return w;
    }
    if (m_cap <= 0) throw ValidationError("wire_counts: multiplicity cap must be positive");

    const long R = lattice.rows, C = lattice.cols;
    auto split = [m_cap](long members) { return (members + m_cap - 1) / m_cap; };

    for (long r = 0; r < R; ++r) w.qubit_xy += split(C);

    // Couplers per row band.
    if (rows == CouplerRowConvention::InterleavedBands) {
        for (long r = 0; r < R; ++r) {
            const long horizontal = C - 1;
            const long vertical = (r + 1 < R) ? C : 0;
            const long members = horizontal + vertical;
            if (members == 0) continue;
            w.coupler_z += 2;  // interleaved pair; no multiplicity limit
            w.coupler_xy += split(members);
        }
    } else {
        for (long r = 0; r < R; ++r) {
            if (C - 1 <= 0) continue;
            w.coupler_z += 2;
            w.coupler_xy += split(C - 1);
        }
        for (long r = 0; r + 1 < R; ++r) {
            w.coupler_z += 2;
            w.coupler_xy += split(C);
        }
    }
    return w;
}

// ---------------------------------------------------------------------------
// Scaling arithmetic
// ---------------------------------------------------------------------------

/// Shared-line multiplicity: M = floor(W / delta_f).
inline long multiplicity(double band_w_hz, double delta_f_hz) {
    if (delta_f_hz <= 0.0 || band_w_hz < delta_f_hz)
        throw ValidationError("multiplicity: need W >= delta_f > 0");
    return static_cast<long>(std::floor(band_w_hz / delta_f_hz));
}

struct HeatLoad {
    double watts = 0.0;
    double dbm = 0.0;
};

/// Active dissipation per drive tone,
///   P = (sqrt(pi)/6) hbar omega_q T1 Omega_d^2,
/// with omega_q and Omega_d angular. Under multiplexing the load on one
/// attenuator is M times this.
inline HeatLoad heat_load_per_tone(double omega_q_rad_s, double t1_s, double omega_d_rad_s) {
    if (omega_q_rad_s <= 0.0 || t1_s <= 0.0 || omega_d_rad_s <= 0.0)
        throw ValidationError("heat_load_per_tone: all inputs must be positive");
    HeatLoad h;
    h.watts = (std::sqrt(kPi) / 6.0) * kHbar * omega_q_rad_s * t1_s * omega_d_rad_s * omega_d_rad_s;
    h.dbm = 10.0 * std::log10(h.watts / 1e-3);
    return h;
}

struct ErrorScaling {
    double t1_scale = 1.0;      // 1/s^2
    double t_gate_scale = 1.0;  // 1/s
    double error_scale = 1.0;   // s
};

/// Environmental-coupling scaling: T1 ~ 1/g^2, t_gate ~ 1/g,
/// error ~ t_gate / T1 ~ g.
inline ErrorScaling error_scaling(double g_scale) {
    if (g_scale <= 0.0) throw ValidationError("error_scaling: scale must be positive");
    return {1.0 / (g_scale * g_scale), 1.0 / g_scale, g_scale};
}

// ---------------------------------------------------------------------------
// System feasibility
// ---------------------------------------------------------------------------

struct BudgetSpec {
    double band_w_hz = 1e9;
    double delta_f_hz = 10e6;
    long cable_budget = 1000;
    long num_qubits = 0;
    double qubit_freq_hz = 5e9;
    double t1_s = 10e-3;
    double rabi_hz = 1.6e6;  // Omega_d / 2 pi
    double gate_time_s = 200e-9;
};

struct FeasibilityReport {
    long multiplicity = 0;
    long qubit_xy_cables = 0;     // ceil(N / M): the multiplexed XY demand
    long coupler_count = 0;
    long coupler_xy_cables = 0;   // informational, same multiplicity
    double per_tone_watts = 0.0;
    double per_tone_dbm = 0.0;
    double per_attenuator_watts = 0.0;  // M tones on one shared-line attenuator
    double total_active_watts = 0.0;    // N tones
    bool feasible = false;
    std::string note;
};

/// Combines multiplicity, cable demand and active heat load. The cable
/// accounting follows the shared-XY bottleneck: the pass criterion compares
/// ceil(N_qubits / M) against the budget, with coupler Z lines taking no
/// multiplicity limit; coupler-XY demand is reported alongside. Readout
/// lines are excluded throughout.
inline FeasibilityReport system_feasibility(const BudgetSpec& budget) {
    FeasibilityReport rep;
    rep.multiplicity = multiplicity(budget.band_w_hz, budget.delta_f_hz);
    if (budget.num_qubits < 0) throw ValidationError("system_feasibility: negative qubit count");
    rep.qubit_xy_cables = budget.num_qubits == 0
                              ? 0
                              : (budget.num_qubits + rep.multiplicity - 1) / rep.multiplicity;
    // Near-square lattice estimate for the coupler count.
    const long side = static_cast<long>(std::llround(std::sqrt(static_cast<double>(budget.num_qubits))));
    if (side > 1) {
        LatticeSpec lat{static_cast<int>(side),
                        static_cast<int>((budget.num_qubits + side - 1) / side)};
        rep.coupler_count = lat.coupler_count();
        rep.coupler_xy_cables = (rep.coupler_count + rep.multiplicity - 1) / rep.multiplicity;
    }
    const HeatLoad per_tone = heat_load_per_tone(hz_to_rad(budget.qubit_freq_hz), budget.t1_s,
                                                 hz_to_rad(budget.rabi_hz));
    rep.per_tone_watts = per_tone.watts;
    rep.per_tone_dbm = per_tone.dbm;
    rep.per_attenuator_watts = per_tone.watts * static_cast<double>(rep.multiplicity);
    rep.total_active_watts = per_tone.watts * static_cast<double>(budget.num_qubits);
    rep.feasible = rep.qubit_xy_cables <= budget.cable_budget;
    rep.note = "counts qubit XY cables against the budget; shared Z lines have no multiplicity "
               "limit and readout lines are excluded";
    return rep;
}

}  // namespace muxctl
