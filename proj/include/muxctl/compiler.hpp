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
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "muxctl/gates.hpp"
#include "muxctl/layering.hpp"
#include "muxctl/units.hpp"

namespace muxctl {

// ---------------------------------------------------------------------------
// ZXZXZ decomposition
//
// Every single-qubit unitary is realized as
//     Rz(post_z) * SX * Rz(mid_z) * SX * Rz(pre_z)      (pre_z acts first)
// up to a tracked global phase. The Z rotations are virtual (frame updates),
// so the only physical pulses are the two SX gates.
// ---------------------------------------------------------------------------

struct ZxzxzDecomposition {
    double pre_z = 0.0;
    double mid_z = 0.0;
    double post_z = 0.0;
    double global_phase = 0.0;
};

inline ComplexMatrix zxzxz_matrix(const ZxzxzDecomposition& d) {
    const ComplexMatrix sx = sx_matrix();
    ComplexMatrix m = matmul(sx, rz_matrix(d.pre_z));
    m = matmul(rz_matrix(d.mid_z), m);
    m = matmul(sx, m);
    m = matmul(rz_matrix(d.post_z), m);
    const Complex g = std::polar(1.0, d.global_phase);
    for (Complex& z : m.data) z *= g;
    return m;
}

constexpr double kZxzxzReconstructionTol = 1e-12;

/// Decomposes a 2x2 unitary into the ZXZXZ form.
///
/// Gauge fixing: diagonal inputs (theta = 0) use mid_z = -pi with the whole
/// rotation folded into pre_z; antidiagonal inputs (theta = pi) use the
/// lambda = 0 gauge. This keeps outputs deterministic for golden tests.
inline ZxzxzDecomposition decompose_u3(const ComplexMatrix& u) {
    if (u.rows != 2 || u.cols != 2 || !is_unitary(u, 1e-10))
        throw NotUnitary("decompose_u3: input is not unitary within 1e-10");

    const U3Params p = u3_params_from_unitary(u);

    ZxzxzDecomposition d;
    if (p.theta == 0.0) {
        d.pre_z = wrap_phase(p.phi + p.lambda - kPi);
        d.mid_z = -kPi;
        d.post_z = 0.0;
    } else {
        // Rz(phi) SX Rz(pi - theta) SX Rz(lambda + pi) ~ U3(theta, phi, lambda)
        d.pre_z = wrap_phase(p.lambda + kPi);
        d.mid_z = wrap_phase(kPi - p.theta);
        d.post_z = wrap_phase(p.phi);
    }

    // Fix the global phase from the largest entry, then verify.
    ComplexMatrix r = zxzxz_matrix(d);
    std::size_t imax = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < 4; ++i)
        if (std::abs(r.data[i]) > best) best = std::abs(r.data[i]), imax = i;
    d.global_phase = wrap_phase(std::arg(u.data[imax]) - std::arg(r.data[imax]));

    r = zxzxz_matrix(d);
    const double resid = max_abs_diff(r, u);
    if (resid > kZxzxzReconstructionTol)
        throw NotUnitary("decompose_u3: reconstruction residual " + std::to_string(resid) +
                         " exceeds 1e-12");
    return d;
}

// ---------------------------------------------------------------------------
// Physical cycles
// ---------------------------------------------------------------------------

/// Accumulated virtual-Z phase per qubit, reduced to (-pi, pi].
struct VirtualZFrame {
    std::vector<double> phase;

    explicit VirtualZFrame(int num_qubits = 0) : phase(static_cast<std::size_t>(num_qubits), 0.0) {}
};

/// One uniform single-qubit gate cycle: every qubit plays exactly two SX
/// pulses with identical envelopes; only the carrier phases differ.
///
/// A pulse with carrier phase phi implements Rz(-phi) SX Rz(phi).
struct OneQubitCycle {
    struct PhasePair {
        double phi1 = 0.0;
        double phi2 = 0.0;
    };
    std::vector<PhasePair> pulses;  // indexed by qubit

    explicit OneQubitCycle(int num_qubits = 0) : pulses(static_cast<std::size_t>(num_qubits)) {}
};

/// One shared sqrt(CZ) slot. All pairs of the layer occupy the same slot,
/// so a single flux pulse on the shared Z line serves every pair; the pair
/// role records whether the slot is half of a CZ or half of a dressed
/// Identity.
struct TwoQubitCycle {
    std::vector<QubitPair> pairs;
    int slot = 0;  // 0 = first sqrt(CZ) slot of its layer, 1 = second
};

using PhysicalCycle = std::variant<OneQubitCycle, TwoQubitCycle>;

struct CompiledProgram {
    int num_qubits = 0;
    int sqrt_cz_sign = +1;
    std::vector<PhysicalCycle> cycles;
    VirtualZFrame final_frame;
    double global_phase = 0.0;
};

// ---------------------------------------------------------------------------
// Passes
// ---------------------------------------------------------------------------

struct TwoQubitLayerCompilation {
    TwoQubitCycle slot0;
    OneQubitCycle mid;  // dressing cycle between the two sqrt(CZ) slots
    TwoQubitCycle slot1;
    /// Closing single-qubit corrections, absorbed into the next
    /// single-qubit layer (they act first there).
    std::vector<std::pair<int, ComplexMatrix>> closing;
    double global_phase = 0.0;
};

/// Compiles one two-qubit layer into two shared sqrt(CZ) slots.
///
/// CZ pairs:        sqrtCZ . I . sqrtCZ = CZ (either sign convention).
/// Identity pairs:  sqrtCZ . (X x I) . sqrtCZ = (X x I)(I x diag(1, s i)),
///                  closed by X on the first qubit and Rz(-s pi/2) on the
///                  second. Net effect: identity, up to a tracked global
///                  phase of s pi/4.
/// Both variants occupy the same two physical slots, so CZ and Identity are
/// indistinguishable at the flux-pulse level.
///
/// `frame` is the per-qubit virtual-Z accumulation at the time the layer
/// starts (read-only; the mid cycle leaves every frame unchanged).
inline TwoQubitLayerCompilation compile_two_qubit_layer(const TwoQubitLayer& layer, int num_qubits,
                                                        const std::vector<double>& frame,
                                                        int sqrt_cz_sign = +1) {
    std::vector<bool> used(static_cast<std::size_t>(num_qubits), false);
    for (const QubitPair& p : layer.pairs) {
        if (p.a >= p.b || p.b >= num_qubits || p.a < 0)
            throw CompileError("two-qubit layer: malformed pair");
        if (used[static_cast<std::size_t>(p.a)] || used[static_cast<std::size_t>(p.b)])
            throw CompileError("two-qubit layer: pairs are not disjoint");
        used[static_cast<std::size_t>(p.a)] = used[static_cast<std::size_t>(p.b)] = true;
    }

    TwoQubitLayerCompilation out;
    out.slot0.pairs = layer.pairs;
    out.slot0.slot = 0;
    out.slot1.pairs = layer.pairs;
    out.slot1.slot = 1;
    out.mid = OneQubitCycle(num_qubits);

    // Mid cycle: X on the first qubit of every identity pair (two SX pulses
    // at the current frame phase realize X exactly), identity elsewhere
    // (SX . Rz(-pi) . SX = i I, tracked as -pi/2 each).
    const double s = sqrt_cz_sign >= 0 ? 1.0 : -1.0;
    for (int q = 0; q < num_qubits; ++q) {
        const std::size_t uq = static_cast<std::size_t>(q);
        bool is_id_first = false;
        for (const QubitPair& p : layer.pairs)
            if (p.role == PairRole::Identity && p.a == q) is_id_first = true;
        const double f0 = frame[uq];
        if (is_id_first) {
            out.mid.pulses[uq].phi1 = wrap_phase(f0);
            out.mid.pulses[uq].phi2 = wrap_phase(f0);
        } else {
            out.mid.pulses[uq].phi1 = wrap_phase(f0 + kPi);
            out.mid.pulses[uq].phi2 = wrap_phase(f0);
            out.global_phase = wrap_phase(out.global_phase - kPi / 2.0);
        }
    }

    for (const QubitPair& p : layer.pairs) {
        if (p.role != PairRole::Identity) continue;
        out.closing.emplace_back(p.a, x_matrix());
        out.closing.emplace_back(p.b, rz_matrix(-s * kPi / 2.0));
        out.global_phase = wrap_phase(out.global_phase - s * kPi / 4.0);
    }
    return out;
}

/// Compiles a layered circuit into the pulse-shape-invariant program: every
/// 1q layer becomes one uniform two-pulse cycle, every 2q layer two shared
/// sqrt(CZ) slots with a dressing cycle in between. Global phases are
/// tracked exactly, so the program unitary
///     e^{i global_phase} Rz(final_frame) . product(cycle primitives)
/// equals the circuit unitary as a matrix, not just up to phase.
inline CompiledProgram compile(const LayeredCircuit& lc, int sqrt_cz_sign = +1) {
    CompiledProgram out;
    out.num_qubits = lc.num_qubits;
    out.sqrt_cz_sign = sqrt_cz_sign >= 0 ? +1 : -1;

    // The frame is kept unwrapped during compilation: Rz is 4 pi periodic as
    // a matrix, so every 2 pi of wrapping costs a global phase of pi, paid
    // once at the end.
    std::vector<double> frame(static_cast<std::size_t>(lc.num_qubits), 0.0);
    std::vector<ComplexMatrix> carry(static_cast<std::size_t>(lc.num_qubits));

    for (std::size_t i = 0; i < lc.layers.size(); ++i) {
        const bool expect_single = (i % 2 == 0);
        if (expect_single != std::holds_alternative<SingleQubitLayer>(lc.layers[i]))
            throw CompileError("layered circuit does not alternate 1q/2q layers");
        if (expect_single) {
            const auto& layer = std::get<SingleQubitLayer>(lc.layers[i]);
            OneQubitCycle cycle(out.num_qubits);
            for (int q = 0; q < out.num_qubits; ++q) {
                const std::size_t uq = static_cast<std::size_t>(q);
                ComplexMatrix u = u3_matrix(layer.ops[uq]);
                if (carry[uq].rows != 0) {
                    u = matmul(u, carry[uq]);  // carry acts first
                    carry[uq] = ComplexMatrix();
                }
                const ZxzxzDecomposition d = decompose_u3(u);
                cycle.pulses[uq].phi1 = wrap_phase(frame[uq] + d.pre_z);
                cycle.pulses[uq].phi2 = wrap_phase(frame[uq] + d.pre_z + d.mid_z);
                frame[uq] += d.pre_z + d.mid_z + d.post_z;
                out.global_phase = wrap_phase(out.global_phase + d.global_phase);
            }
            out.cycles.emplace_back(std::move(cycle));
        } else {
            TwoQubitLayerCompilation t = compile_two_qubit_layer(std::get<TwoQubitLayer>(lc.layers[i]),
                                                                 lc.num_qubits, frame, out.sqrt_cz_sign);
            out.cycles.emplace_back(std::move(t.slot0));
            out.cycles.emplace_back(std::move(t.mid));
            out.cycles.emplace_back(std::move(t.slot1));
            for (auto& [q, m] : t.closing) {
                auto& c = carry[static_cast<std::size_t>(q)];
                c = (c.rows == 0) ? m : matmul(m, c);
            }
            out.global_phase = wrap_phase(out.global_phase + t.global_phase);
        }
    }
    if (!lc.layers.empty() && !std::holds_alternative<SingleQubitLayer>(lc.layers.back()))
        throw CompileError("layered circuit must end with a single-qubit layer");

    out.final_frame = VirtualZFrame(lc.num_qubits);
    for (int q = 0; q < lc.num_qubits; ++q) {
        const double unwrapped = frame[static_cast<std::size_t>(q)];
        const double wrapped = wrap_phase(unwrapped);
        const double k = std::round((unwrapped - wrapped) / kTwoPi);
        out.final_frame.phase[static_cast<std::size_t>(q)] = wrapped;
        out.global_phase = wrap_phase(out.global_phase + kPi * k);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

inline nlohmann::json compiled_program_to_json(const CompiledProgram& p) {
    nlohmann::json cycles = nlohmann::json::array();
    for (const PhysicalCycle& c : p.cycles) {
        if (const auto* oq = std::get_if<OneQubitCycle>(&c)) {
            nlohmann::json phases = nlohmann::json::array();
            for (const auto& pp : oq->pulses) phases.push_back({pp.phi1, pp.phi2});
            cycles.push_back({{"type", "1q"}, {"pulse_phases", phases}});
        } else {
            const auto& tq = std::get<TwoQubitCycle>(c);
            nlohmann::json pairs = nlohmann::json::array();
            for (const QubitPair& pr : tq.pairs)
                pairs.push_back({{"qubits", {pr.a, pr.b}},
                                 {"role", pr.role == PairRole::Cz ? "cz" : "id"}});
            cycles.push_back({{"type", "2q"}, {"slot", tq.slot}, {"pairs", pairs}});
        }
    }
    return {{"num_qubits", p.num_qubits},
            {"sqrt_cz_sign", p.sqrt_cz_sign},
            {"cycles", cycles},
            {"final_frame", p.final_frame.phase},
            {"global_phase", p.global_phase}};
}

}  // namespace muxctl
