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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "muxctl/coupler_system.hpp"
#include "muxctl/cz_tuning.hpp"
#include "muxctl/layering.hpp"
#include "muxctl/mux.hpp"
#include "muxctl/pulse.hpp"
#include "muxctl/transmon.hpp"

namespace muxctl {

// ---------------------------------------------------------------------------
// Device configuration: one JSON file per device makes every experiment a
// reproducible artifact.
// ---------------------------------------------------------------------------

struct QubitConfig {
    std::string id;
    double frequency_hz = 5e9;
    double anharmonicity_hz = -200e6;
    int levels = 5;
};

struct CouplerConfig {
    std::string id;
    std::string qubit_a;  // first qubit id
    std::string qubit_b;
    double idle_frequency_hz = 6.5e9;
    double hold_frequency_hz = 5.8e9;
    double anharmonicity_hz = -200e6;
    int levels = 4;
    double g1c_hz = 100e6;
    double g2c_hz = 100e6;
    double g12_hz = 10e6;
};

enum class LineRole { QubitXy, CouplerZ, CouplerXy };

struct LineConfig {
    std::string id;
    LineRole role = LineRole::QubitXy;
    std::vector<std::string> members;  // qubit ids or coupler ids
};

struct DeviceConfig {
    std::string name;
    std::vector<QubitConfig> qubits;
    std::vector<CouplerConfig> couplers;
    std::vector<LineConfig> lines;
    FrequencyPlan plan;            // qubit XY plan
    FilterSpec filter_template;    // center filled per element
    SynthTiming timing;
    double flux_flattop_s = 200e-9;
    double flux_ramp_s = 20e-9;
    double integrator_ppp = 100.0;          // lab-frame transmon runs
    double coupler_integrator_ppp = 20.0;   // rotating-frame coupler runs

    int qubit_index(const std::string& id) const {
        for (std::size_t i = 0; i < qubits.size(); ++i)
            if (qubits[i].id == id) return static_cast<int>(i);
        return -1;
    }

    const QubitConfig& qubit(const std::string& id) const {
        const int i = qubit_index(id);
        if (i < 0) throw ValidationError("device: unknown qubit '" + id + "'");
        return qubits[static_cast<std::size_t>(i)];
    }

    const CouplerConfig* coupler_for(int qa, int qb) const {
        for (const CouplerConfig& c : couplers) {
            const int a = qubit_index(c.qubit_a), b = qubit_index(c.qubit_b);
            if ((a == qa && b == qb) || (a == qb && b == qa)) return &c;
        }
        return nullptr;
    }

    const LineConfig* line_with_member(LineRole role, const std::string& member) const {
        for (const LineConfig& l : lines) {
            if (l.role != role) continue;
            for (const std::string& m : l.members)
                if (m == member) return &l;
        }
        return nullptr;
    }

    TransmonSpec transmon_of(const std::string& id) const {
        const QubitConfig& q = qubit(id);
        return TransmonSpec{q.frequency_hz, q.anharmonicity_hz, q.levels};
    }

    CouplerSystemSpec coupler_system_of(const CouplerConfig& c) const {
        const QubitConfig& qa = qubit(c.qubit_a);
        const QubitConfig& qb = qubit(c.qubit_b);
        CouplerSystemSpec s;
        s.qubit1 = ModeSpec::duffing(qa.frequency_hz, qa.anharmonicity_hz, std::min(qa.levels, 4));
        s.coupler = ModeSpec::duffing(c.idle_frequency_hz, c.anharmonicity_hz, c.levels);
        s.qubit2 = ModeSpec::duffing(qb.frequency_hz, qb.anharmonicity_hz, std::min(qb.levels, 4));
        s.g1c_hz = c.g1c_hz;
        s.g2c_hz = c.g2c_hz;
        s.g12_hz = c.g12_hz;
        return s;
    }

    FluxPulse flux_pulse_of(const CouplerConfig& c) const {
        return FluxPulse{c.idle_frequency_hz, c.hold_frequency_hz, flux_flattop_s, flux_ramp_s};
    }

    FilterSpec branch_filter_at(double center_hz) const {
        FilterSpec f = filter_template;
        f.center_hz = center_hz;
        return f;
    }

    LineModel line_model(const LineConfig& line) const {
        LineModel m;
        m.id = line.id;
        for (const std::string& member : line.members) {
            m.members.push_back(member);
            m.branch_filters.push_back(branch_filter_at(plan.frequency_of(member)));
        }
        return m;
    }

    void validate() const {
        if (qubits.empty()) throw ValidationError("device: no qubits");
        plan.validate();
        for (const CouplerConfig& c : couplers) {
            qubit(c.qubit_a);
            qubit(c.qubit_b);
            if (c.qubit_a == c.qubit_b) throw ValidationError("device: coupler joins a qubit to itself");
        }
        for (const LineConfig& l : lines)
            for (const std::string& m : l.members) {
                const bool is_qubit = qubit_index(m) >= 0;
                bool is_coupler = false;
                for (const CouplerConfig& c : couplers) is_coupler |= (c.id == m);
                if (l.role == LineRole::QubitXy && !is_qubit)
                    throw ValidationError("device: line '" + l.id + "' member '" + m + "' is not a qubit");
                if (l.role != LineRole::QubitXy && !is_coupler)
                    throw ValidationError("device: line '" + l.id + "' member '" + m + "' is not a coupler");
            }
        for (const QubitConfig& q : qubits) plan.frequency_of(q.id);  // throws if unassigned
    }
};

// ---------------------------------------------------------------------------
// JSON loading
// ---------------------------------------------------------------------------

inline DeviceConfig parse_device_config(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("device JSON: ") + e.what());
    }
    DeviceConfig d;
    d.name = j.value("name", "device");
    if (!j.contains("qubits") || !j["qubits"].is_array() || j["qubits"].empty())
        throw ParseError("device JSON: missing non-empty 'qubits' array");
    for (const auto& qj : j["qubits"]) {
        QubitConfig q;
        q.id = qj.at("id").get<std::string>();
        q.frequency_hz = qj.at("frequency_hz").get<double>();
        q.anharmonicity_hz = qj.value("anharmonicity_hz", -200e6);
        q.levels = qj.value("levels", 5);
        d.qubits.push_back(std::move(q));
    }
    for (const auto& cj : j.value("couplers", nlohmann::json::array())) {
        CouplerConfig c;
        c.id = cj.at("id").get<std::string>();
        const auto& pair = cj.at("pair");
        c.qubit_a = pair.at(0).get<std::string>();
        c.qubit_b = pair.at(1).get<std::string>();
        c.idle_frequency_hz = cj.value("idle_frequency_hz", 6.5e9);
        c.hold_frequency_hz = cj.value("hold_frequency_hz", 5.8e9);
        c.anharmonicity_hz = cj.value("anharmonicity_hz", -200e6);
        c.levels = cj.value("levels", 4);
        c.g1c_hz = cj.value("g1c_hz", 100e6);
        c.g2c_hz = cj.value("g2c_hz", 100e6);
        c.g12_hz = cj.value("g12_hz", 10e6);
        d.couplers.push_back(std::move(c));
    }
    for (const auto& lj : j.value("lines", nlohmann::json::array())) {
        LineConfig l;
        l.id = lj.at("id").get<std::string>();
        const std::string role = lj.at("role").get<std::string>();
        if (role == "qubit_xy")
            l.role = LineRole::QubitXy;
        else if (role == "coupler_z")
            l.role = LineRole::CouplerZ;
        else if (role == "coupler_xy")
            l.role = LineRole::CouplerXy;
        else
            throw ParseError("device JSON: unknown line role '" + role + "'");
        for (const auto& m : lj.at("members")) l.members.push_back(m.get<std::string>());
        d.lines.push_back(std::move(l));
    }
    if (j.contains("frequency_plan")) {
        const auto& pj = j["frequency_plan"];
        d.plan.base_hz = pj.at("base_hz").get<double>();
        d.plan.spacing_hz = pj.at("spacing_hz").get<double>();
        d.plan.band_hz = pj.value("band_hz", 0.0);
        d.plan.jitter_sigma_hz = pj.value("jitter_sigma_hz", 0.0);
        if (pj.contains("order"))
            for (const auto& id : pj["order"]) d.plan.assignments.push_back(id.get<std::string>());
    }
    if (d.plan.assignments.empty())
        for (const QubitConfig& q : d.qubits) d.plan.assignments.push_back(q.id);
    if (d.plan.spacing_hz <= 0.0 && d.qubits.size() > 1)
        throw ParseError("device JSON: frequency_plan.spacing_hz required for multi-qubit devices");
    if (d.plan.spacing_hz <= 0.0) d.plan.spacing_hz = 50e6;
    if (d.plan.base_hz <= 0.0) d.plan.base_hz = d.qubits.front().frequency_hz;

    if (j.contains("filter")) {
        d.filter_template.bandwidth_hz = j["filter"].value("bandwidth_hz", 50e6);
        d.filter_template.order = j["filter"].value("order", 3);
    } else {
        d.filter_template.bandwidth_hz = d.plan.spacing_hz;
        d.filter_template.order = 3;
    }
    if (j.contains("timing")) {
        d.timing.sx_gate_s = j["timing"].value("sx_gate_ns", 50.0) * 1e-9;
        d.timing.pulse_gap_s = j["timing"].value("pulse_gap_ns", 0.0) * 1e-9;
        d.timing.grid_s = j["timing"].value("grid_ns", 0.1) * 1e-9;
    }
    if (j.contains("flux_pulse")) {
        d.flux_flattop_s = j["flux_pulse"].value("flattop_ns", 200.0) * 1e-9;
        d.flux_ramp_s = j["flux_pulse"].value("ramp_ns", 20.0) * 1e-9;
    }
    if (j.contains("integrator")) {
        d.integrator_ppp = j["integrator"].value("points_per_period", 100.0);
        d.coupler_integrator_ppp = j["integrator"].value("coupler_points_per_period", 20.0);
    }
    d.validate();
    return d;
}

// ---------------------------------------------------------------------------
// Device-aware compilation helpers
// ---------------------------------------------------------------------------

/// Marks identity pairs in every two-qubit layer: couplers that share a
/// pulsed Z line with an active pair receive the dressed-identity role (the
/// shared flux pulse reaches them regardless). Couplers on unpulsed lines
/// stay idle naturally and are not added. A same-line coupler that overlaps
/// an active pair is a scheduling conflict.
inline LayeredCircuit mark_identity_pairs(LayeredCircuit lc, const DeviceConfig& device) {
    for (Layer& layer : lc.layers) {
        auto* tl = std::get_if<TwoQubitLayer>(&layer);
        if (tl == nullptr) continue;
        std::vector<bool> busy(static_cast<std::size_t>(lc.num_qubits), false);
        std::vector<const LineConfig*> pulsed;
        for (const QubitPair& p : tl->pairs) {
            busy[static_cast<std::size_t>(p.a)] = busy[static_cast<std::size_t>(p.b)] = true;
            const CouplerConfig* c = device.coupler_for(p.a, p.b);
            if (c == nullptr)
                throw CompileError("no coupler connects qubits " + std::to_string(p.a) + " and " +
                                   std::to_string(p.b));
            const LineConfig* z = device.line_with_member(LineRole::CouplerZ, c->id);
            if (z != nullptr && std::find(pulsed.begin(), pulsed.end(), z) == pulsed.end())
                pulsed.push_back(z);
        }
        for (const LineConfig* z : pulsed) {
            for (const std::string& member : z->members) {
                const CouplerConfig* c = nullptr;
                for (const CouplerConfig& cc : device.couplers)
                    if (cc.id == member) c = &cc;
                if (c == nullptr) continue;
                int a = device.qubit_index(c->qubit_a);
                int b = device.qubit_index(c->qubit_b);
                if (a > b) std::swap(a, b);
                bool already = false;
                for (const QubitPair& p : tl->pairs) already |= (p.a == a && p.b == b);
                if (already) continue;
                if (busy[static_cast<std::size_t>(a)] || busy[static_cast<std::size_t>(b)])
                    throw CompileError("coupler '" + c->id + "' shares pulsed Z line '" + z->id +
                                       "' but overlaps another pair scheduled in the same layer");
                tl->pairs.push_back({a, b, PairRole::Identity});
                busy[static_cast<std::size_t>(a)] = busy[static_cast<std::size_t>(b)] = true;
            }
        }
        std::sort(tl->pairs.begin(), tl->pairs.end(),
                  [](const QubitPair& x, const QubitPair& y) { return x.a < y.a; });
    }
    return lc;
}

/// Synthesis channels for every qubit, from the plan and line membership.
inline std::vector<QubitChannel> qubit_channels(const DeviceConfig& device) {
    std::vector<QubitChannel> out;
    for (const QubitConfig& q : device.qubits) {
        const LineConfig* line = device.line_with_member(LineRole::QubitXy, q.id);
        QubitChannel ch;
        ch.id = q.id;
        ch.line_id = line != nullptr ? line->id : ("xy_" + q.id);
        ch.frequency_hz = device.plan.frequency_of(q.id);
        out.push_back(std::move(ch));
    }
    return out;
}

inline std::map<std::pair<int, int>, PairFluxChannel> pair_flux_channels(const DeviceConfig& device) {
    std::map<std::pair<int, int>, PairFluxChannel> out;
    for (const CouplerConfig& c : device.couplers) {
        int a = device.qubit_index(c.qubit_a);
        int b = device.qubit_index(c.qubit_b);
        if (a > b) std::swap(a, b);
        const LineConfig* z = device.line_with_member(LineRole::CouplerZ, c.id);
        PairFluxChannel fc;
        fc.z_line_id = z != nullptr ? z->id : ("z_" + c.id);
        fc.excursion_rad_s = hz_to_rad(c.hold_frequency_hz - c.idle_frequency_hz);
        fc.flattop_s = device.flux_flattop_s;
        fc.ramp_s = device.flux_ramp_s;
        out[{a, b}] = fc;
    }
    return out;
}

}  // namespace muxctl
