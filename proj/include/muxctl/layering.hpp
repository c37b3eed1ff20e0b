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
#include <map>
#include <variant>
#include <vector>

#include "muxctl/circuit.hpp"
#include "muxctl/gates.hpp"

namespace muxctl {

/// One layer of single-qubit operations. Covers every qubit; untouched
/// qubits carry an explicit identity. The whole control scheme pulses every
/// qubit every cycle, so identities are materialized, never implied.
struct SingleQubitLayer {
    std::vector<U3Params> ops;  // indexed by qubit

    explicit SingleQubitLayer(int num_qubits = 0) : ops(static_cast<std::size_t>(num_qubits)) {}
};

enum class PairRole { Cz, Identity };

struct QubitPair {
    int a = 0;  // a < b
    int b = 0;
    PairRole role = PairRole::Cz;
};

struct TwoQubitLayer {
    std::vector<QubitPair> pairs;  // disjoint, sorted by first qubit
};

using Layer = std::variant<SingleQubitLayer, TwoQubitLayer>;

/// Alternating 1q / 2q / 1q ... layer structure, starting and ending with a
/// SingleQubitLayer (empty circuit has no layers at all).
struct LayeredCircuit {
    int num_qubits = 0;
    std::vector<Layer> layers;
};

namespace detail {

struct SlotBuilder {
    // Even slots hold composed single-qubit matrices, odd slots hold pairs.
    std::vector<std::map<int, ComplexMatrix>> one_q;   // by slot/2
    std::vector<std::vector<QubitPair>> two_q;         // by (slot-1)/2
    std::vector<std::vector<std::pair<int, int>>> pending_half;  // unmatched sqrt_cz
    std::vector<int> frontier;                          // per qubit, slot index

    explicit SlotBuilder(int num_qubits) : frontier(static_cast<std::size_t>(num_qubits), 0) {}

    void ensure(int slot) {
        while (static_cast<int>(one_q.size()) * 2 - 1 < slot + 1) {
            one_q.emplace_back();
            two_q.emplace_back();
            pending_half.emplace_back();
        }
    }

    bool slot_blocks(int odd_slot, int a, int b) const {
        const std::size_t k = static_cast<std::size_t>(odd_slot / 2);
        if (k >= two_q.size()) return false;
        for (const QubitPair& p : two_q[k])
            if (p.a == a || p.a == b || p.b == a || p.b == b) return true;
        for (const auto& [x, y] : pending_half[k])
            if (x == a || x == b || y == a || y == b) return true;
        return false;
    }

    bool has_pending(int odd_slot, int a, int b) const {
        const std::size_t k = static_cast<std::size_t>(odd_slot / 2);
        if (k >= pending_half.size()) return false;
        for (const auto& [x, y] : pending_half[k])
            if (x == a && y == b) return true;
        return false;
    }
};

}  // namespace detail

/// Greedy as-soon-as-possible layering. Consecutive single-qubit gates on a
/// qubit are composed into one U3 per layer; cz gates are packed into
/// two-qubit layers of disjoint pairs (two gates sharing a qubit are always
/// sequenced into separate layers); identity padding fills every
/// single-qubit layer. A sqrt_cz input must be immediately followed by its
/// partner sqrt_cz on the same pair, which together form one cz.
inline LayeredCircuit layerize(const Circuit& c) {
    for (std::size_t i = 0; i < c.gates.size(); ++i) validate_gate(c.gates[i], c.num_qubits, i);

    detail::SlotBuilder sb(c.num_qubits);

    for (const Gate& g : c.gates) {
        if (!g.is_two_qubit()) {
            const int q = g.qubits[0];
            int slot = sb.frontier[static_cast<std::size_t>(q)];
            if (slot % 2 != 0) ++slot;  // round up to a 1q slot
            sb.ensure(slot);
            auto& m = sb.one_q[static_cast<std::size_t>(slot / 2)];
            const ComplexMatrix gm = u3_matrix(g.u3);
            auto it = m.find(q);
            if (it == m.end())
                m.emplace(q, gm);
            else
                it->second = matmul(gm, it->second);
            sb.frontier[static_cast<std::size_t>(q)] = slot;
            continue;
        }

        int a = g.qubits[0], b = g.qubits[1];
        if (a > b) std::swap(a, b);
        int slot = std::max(sb.frontier[static_cast<std::size_t>(a)],
                            sb.frontier[static_cast<std::size_t>(b)]);
        if (slot % 2 == 0) ++slot;  // round up to a 2q slot

        if (g.name == GateName::SQRT_CZ) {
            sb.ensure(slot);
            if (sb.has_pending(slot, a, b)) {
                auto& pend = sb.pending_half[static_cast<std::size_t>(slot / 2)];
                pend.erase(std::find(pend.begin(), pend.end(), std::make_pair(a, b)));
                sb.two_q[static_cast<std::size_t>(slot / 2)].push_back({a, b, PairRole::Cz});
                sb.frontier[static_cast<std::size_t>(a)] = slot + 1;
                sb.frontier[static_cast<std::size_t>(b)] = slot + 1;
            } else {
                while (sb.slot_blocks(slot, a, b)) slot += 2;
                sb.ensure(slot);
                sb.pending_half[static_cast<std::size_t>(slot / 2)].emplace_back(a, b);
                sb.frontier[static_cast<std::size_t>(a)] = slot;
                sb.frontier[static_cast<std::size_t>(b)] = slot;
            }
            continue;
        }

        while (sb.slot_blocks(slot, a, b)) slot += 2;
        sb.ensure(slot);
        sb.two_q[static_cast<std::size_t>(slot / 2)].push_back({a, b, PairRole::Cz});
        sb.frontier[static_cast<std::size_t>(a)] = slot + 1;
        sb.frontier[static_cast<std::size_t>(b)] = slot + 1;
    }

    for (const auto& pend : sb.pending_half)
        if (!pend.empty())
            throw ValidationError(
                "layerize: sqrt_cz without an adjacent partner sqrt_cz on the same pair; "
                "only sqrt_cz pairs forming a full cz are schedulable");

    LayeredCircuit lc;
    lc.num_qubits = c.num_qubits;
    if (sb.one_q.empty()) return lc;

    // Trim trailing groups that hold neither gates nor a preceding 2q layer.
    std::size_t groups = sb.one_q.size();
    while (groups >= 2 && sb.two_q[groups - 2].empty() && sb.one_q[groups - 1].empty()) --groups;

    for (std::size_t k = 0; k < groups; ++k) {
        SingleQubitLayer sl(c.num_qubits);
        for (auto& [q, m] : sb.one_q[k]) sl.ops[static_cast<std::size_t>(q)] = u3_params_from_unitary(m);
        lc.layers.emplace_back(std::move(sl));
        if (k + 1 < groups) {
            TwoQubitLayer tl;
            tl.pairs = sb.two_q[k];
            std::sort(tl.pairs.begin(), tl.pairs.end(),
                      [](const QubitPair& x, const QubitPair& y) { return x.a < y.a; });
            lc.layers.emplace_back(std::move(tl));
        }
    }
    return lc;
}

/// Inverse of layerize up to gate grouping: emits the layers back as a flat
/// gate list (explicit identities included).
inline Circuit flatten(const LayeredCircuit& lc) {
    Circuit c;
    c.num_qubits = lc.num_qubits;
    for (const Layer& layer : lc.layers) {
        if (const auto* sl = std::get_if<SingleQubitLayer>(&layer)) {
            for (int q = 0; q < lc.num_qubits; ++q) {
                Gate g;
                g.name = GateName::U3;
                g.qubits = {q};
                g.u3 = sl->ops[static_cast<std::size_t>(q)];
                c.gates.push_back(std::move(g));
            }
        } else {
            const auto& tl = std::get<TwoQubitLayer>(layer);
            for (const QubitPair& p : tl.pairs) {
                if (p.role != PairRole::Cz) continue;  // identity pairs are device-induced
                Gate g;
                g.name = GateName::CZ;
                g.qubits = {p.a, p.b};
                c.gates.push_back(std::move(g));
            }
        }
    }
    return c;
}

}  // namespace muxctl
