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

#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "muxctl/errors.hpp"
#include "muxctl/gates.hpp"
#include "muxctl/units.hpp"

namespace muxctl {

enum class GateName { U3, X, SX, H, RZ, ID, CZ, SQRT_CZ };

inline const char* gate_name_str(GateName g) {
    switch (g) {
        case GateName::U3: return "u3";
        case GateName::X: return "x";
        case GateName::SX: return "sx";
        case GateName::H: return "h";
        case GateName::RZ: return "rz";
        case GateName::ID: return "id";
        case GateName::CZ: return "cz";
        case GateName::SQRT_CZ: return "sqrt_cz";
    }
    return "?";
}

inline bool gate_is_two_qubit(GateName g) { return g == GateName::CZ || g == GateName::SQRT_CZ; }

/// Gate in the circuit IR. Single-qubit gates are stored canonicalized to
/// U3 parameters; the original name is kept for reporting only.
struct Gate {
    GateName name = GateName::ID;
    std::vector<int> qubits;
    U3Params u3;  // valid for single-qubit gates

    bool is_two_qubit() const { return gate_is_two_qubit(name); }
};

struct Circuit {
    int num_qubits = 0;
    std::vector<Gate> gates;
};

/// Canonical U3 parameters of the named single-qubit gates. Equality is up
/// to global phase, which is all the IR promises.
inline U3Params canonical_u3(GateName name, const std::vector<double>& params) {
    switch (name) {
        case GateName::X: return {kPi, 0.0, kPi};
        case GateName::SX: return {kPi / 2.0, -kPi / 2.0, kPi / 2.0};
        case GateName::H: return {kPi / 2.0, 0.0, kPi};
        case GateName::ID: return {0.0, 0.0, 0.0};
        case GateName::RZ: return {0.0, 0.0, params.at(0)};
        case GateName::U3: return {params.at(0), params.at(1), params.at(2)};
        default: throw ValidationError("canonical_u3: not a single-qubit gate");
    }
}

inline void validate_gate(const Gate& g, int num_qubits, std::size_t index) {
    const std::string ctx = "gate #" + std::to_string(index) + " (" + gate_name_str(g.name) + ")";
    const std::size_t arity = g.is_two_qubit() ? 2 : 1;
    if (g.qubits.size() != arity)
        throw ValidationError(ctx + ": expected " + std::to_string(arity) + " qubit index(es), got " +
                              std::to_string(g.qubits.size()));
    for (int q : g.qubits) {
        if (q < 0 || q >= num_qubits)
            throw ValidationError(ctx + ": qubit index " + std::to_string(q) + " out of range [0, " +
                                  std::to_string(num_qubits) + ")");
    }
    if (arity == 2 && g.qubits[0] == g.qubits[1])
        throw ValidationError(ctx + ": two-qubit gate with repeated qubit index");
}

inline GateName gate_name_from_string(const std::string& s, std::size_t index) {
    if (s == "u3") return GateName::U3;
    if (s == "x") return GateName::X;
    if (s == "sx") return GateName::SX;
    if (s == "h") return GateName::H;
    if (s == "rz") return GateName::RZ;
    if (s == "id") return GateName::ID;
    if (s == "cz") return GateName::CZ;
    if (s == "sqrt_cz") return GateName::SQRT_CZ;
    throw ParseError("gate #" + std::to_string(index) + ": unknown gate name '" + s + "'");
}

inline std::size_t expected_param_count(GateName g) {
    switch (g) {
        case GateName::U3: return 3;
        case GateName::RZ: return 1;
        default: return 0;
    }
}

/// Parses the circuit JSON schema:
///   {"num_qubits": N, "gates": [{"name": "...", "qubits": [..], "params": [..]}]}
/// Angles are radians. Named single-qubit gates are canonicalized to U3.
inline Circuit parse_circuit(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("circuit JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("circuit JSON: top level must be an object");
    if (!j.contains("num_qubits") || !j["num_qubits"].is_number_integer())
        throw ParseError("circuit JSON: missing integer field 'num_qubits'");
    Circuit c;
    c.num_qubits = j["num_qubits"].get<int>();
    if (c.num_qubits <= 0) throw ValidationError("circuit JSON: num_qubits must be positive");
    if (!j.contains("gates") || !j["gates"].is_array())
        throw ParseError("circuit JSON: missing array field 'gates'");

    std::size_t index = 0;
    for (const auto& gj : j["gates"]) {
        if (!gj.is_object()) throw ParseError("gate #" + std::to_string(index) + ": must be an object");
        if (!gj.contains("name") || !gj["name"].is_string())
            throw ParseError("gate #" + std::to_string(index) + ": missing string field 'name'");
        Gate g;
        g.name = gate_name_from_string(gj["name"].get<std::string>(), index);
        if (!gj.contains("qubits") || !gj["qubits"].is_array())
            throw ParseError("gate #" + std::to_string(index) + ": missing array field 'qubits'");
        for (const auto& q : gj["qubits"]) {
            if (!q.is_number_integer())
                throw ParseError("gate #" + std::to_string(index) + ": qubit indices must be integers");
            g.qubits.push_back(q.get<int>());
        }
        std::vector<double> params;
        if (gj.contains("params")) {
            if (!gj["params"].is_array())
                throw ParseError("gate #" + std::to_string(index) + ": 'params' must be an array");
            for (const auto& p : gj["params"]) {
                if (!p.is_number())
                    throw ParseError("gate #" + std::to_string(index) + ": params must be numbers");
                params.push_back(p.get<double>());
            }
        }
        const std::size_t want = expected_param_count(g.name);
        if (params.size() != want)
            throw ValidationError("gate #" + std::to_string(index) + " (" + gate_name_str(g.name) +
                                  "): expected " + std::to_string(want) + " params, got " +
                                  std::to_string(params.size()));
        validate_gate(g, c.num_qubits, index);
        if (!g.is_two_qubit()) g.u3 = canonical_u3(g.name, params);
        c.gates.push_back(std::move(g));
        ++index;
    }
    return c;
}

}  // namespace muxctl
