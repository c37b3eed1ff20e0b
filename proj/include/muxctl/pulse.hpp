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
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "muxctl/compiler.hpp"
#include "muxctl/mux.hpp"
#include "muxctl/units.hpp"

namespace muxctl {

// ---------------------------------------------------------------------------
// Envelopes and tone pulses
// ---------------------------------------------------------------------------

enum class PulseShape { Cosine, Flattop };

/// Pulse envelope in Rabi-rate units (rad/s).
///   Cosine:  Omega(t) = peak * (1 - cos(2 pi t / duration)) / 2
///   Flattop: cosine ramp up over `rise`, hold at `peak`, cosine ramp down
///            over `fall`; duration covers the whole pulse.
struct PulseEnvelope {
    PulseShape shape = PulseShape::Cosine;
    double duration_s = 0.0;
    double rise_s = 0.0;  // flattop only
    double fall_s = 0.0;  // flattop only
    double peak_rad_s = 0.0;

    double value(double tau) const {
        if (tau < 0.0 || tau > duration_s) return 0.0;
        switch (shape) {
            case PulseShape::Cosine:
                return peak_rad_s * (1.0 - std::cos(kTwoPi * tau / duration_s)) / 2.0;
            case PulseShape::Flattop: {
                if (tau < rise_s) return peak_rad_s * (1.0 - std::cos(kPi * tau / rise_s)) / 2.0;
                if (tau > duration_s - fall_s) {
                    const double back = duration_s - tau;
                    return peak_rad_s * (1.0 - std::cos(kPi * back / fall_s)) / 2.0;
                }
                return peak_rad_s;
            }
        }
        return 0.0;
    }
};

/// One carrier tone with an envelope, scheduled at absolute time t0. The
/// instantaneous line signal is Omega(t - t0) * cos(2 pi f t + phase); the
/// carrier phase is defined against absolute time (phase-coherent source),
/// which is what makes virtual-Z phase bookkeeping physical.
struct TonePulse {
    PulseEnvelope envelope;
    double frequency_hz = 0.0;
    double phase_rad = 0.0;
    double t0_s = 0.0;

    double end_s() const { return t0_s + envelope.duration_s; }

    double sample(double t_abs) const {
        const double env = envelope.value(t_abs - t0_s);
        if (env == 0.0) return 0.0;
        return env * std::cos(kTwoPi * frequency_hz * t_abs + phase_rad);
    }
};

struct LineWaveform {
    std::string line_id;
    std::vector<TonePulse> pulses;

    double duration_s() const {
        double d = 0.0;
        for (const TonePulse& p : pulses) d = std::max(d, p.end_s());
        return d;
    }
};

inline std::vector<double> sample_waveform(const LineWaveform& line, double sample_rate_hz,
                                           double t_end_s = -1.0) {
    if (t_end_s < 0.0) t_end_s = line.duration_s();
    const auto n = static_cast<std::size_t>(std::ceil(t_end_s * sample_rate_hz)) + 1;
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / sample_rate_hz;
        double acc = 0.0;
        for (const TonePulse& p : line.pulses) acc += p.sample(t);
        out[i] = acc;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Calibration
// ---------------------------------------------------------------------------

/// Peak Rabi rate of a cosine envelope that integrates to a pi/2 rotation:
/// area = peak * t_g / 2 = pi / 2, hence peak = pi / t_g. This is the
/// two-level resonant value; a closed-loop fine-tune against the multilevel
/// simulator lives next to the transmon model.
inline double calibrate_pi_half_amplitude(double t_gate_s) {
    if (t_gate_s <= 0.0) throw ValidationError("calibrate_pi_half_amplitude: gate time must be positive");
    return kPi / t_gate_s;
}

// ---------------------------------------------------------------------------
// Schedule synthesis
// ---------------------------------------------------------------------------

struct SynthTiming {
    double sx_gate_s = 50e-9;
    double pulse_gap_s = 0.0;   // gap between the two pi/2 pulses of a cycle
    double grid_s = 0.1e-9;     // schedule grid
};

/// Per-qubit routing information the synthesizer needs.
struct QubitChannel {
    std::string id;       // element id in the frequency plan
    std::string line_id;  // shared XY line
    double frequency_hz = 0.0;
    double amp_scale = 1.0;  // per-qubit calibration factor on the pi/2 peak
};

/// Flux scheduling info for one coupler/pair.
struct PairFluxChannel {
    std::string z_line_id;
    double excursion_rad_s = 0.0;  // hold frequency minus idle, angular
    double flattop_s = 200e-9;
    double ramp_s = 20e-9;
};

inline double snap_to_grid(double t, double grid_s, const char* what) {
    const double snapped = std::round(t / grid_s) * grid_s;
    if (t > 0.0 && std::abs(snapped - t) > 0.005 * std::max(t, grid_s))
        throw ValidationError(std::string("schedule time for ") + what +
                              " rounds off the 0.1 ns grid by more than 0.5%");
    return snapped;
}

struct Schedule {
    std::vector<LineWaveform> lines;
    double total_s = 0.0;

    const LineWaveform* find_line(const std::string& id) const {
        for (const LineWaveform& l : lines)
            if (l.line_id == id) return &l;
        return nullptr;
    }
};

/// Synthesizes per-line superposed waveforms from a compiled program.
///
/// Every OneQubitCycle emits, for every qubit, two cosine pi/2 pulses at the
/// qubit's plan frequency whose carrier phases are the compiled (phi1, phi2);
/// envelopes and start times are identical across qubits within a cycle.
/// Every TwoQubitCycle emits one flattop flux pulse per active Z line
/// (frequency 0 entries on the Z line waveform).
inline Schedule synthesize(const CompiledProgram& program, const std::vector<QubitChannel>& channels,
                           const std::map<std::pair<int, int>, PairFluxChannel>& pair_flux,
                           const SynthTiming& timing) {
    if (static_cast<int>(channels.size()) != program.num_qubits)
        throw MissingAssignment("synthesize: every qubit needs a channel assignment");

    Schedule sched;
    auto line_of = [&sched](const std::string& id) -> LineWaveform& {
        for (LineWaveform& l : sched.lines)
            if (l.line_id == id) return l;
        sched.lines.push_back(LineWaveform{id, {}});
        return sched.lines.back();
    };

    const double amp_seed = calibrate_pi_half_amplitude(timing.sx_gate_s);
    double t = 0.0;

    for (const PhysicalCycle& cycle : program.cycles) {
        if (const auto* oq = std::get_if<OneQubitCycle>(&cycle)) {
            const double t1 = snap_to_grid(t, timing.grid_s, "sx pulse");
            const double t2 = snap_to_grid(t + timing.sx_gate_s + timing.pulse_gap_s, timing.grid_s, "sx pulse");
            for (int q = 0; q < program.num_qubits; ++q) {
                const QubitChannel& ch = channels[static_cast<std::size_t>(q)];
                PulseEnvelope env;
                env.shape = PulseShape::Cosine;
                env.duration_s = timing.sx_gate_s;
                env.peak_rad_s = amp_seed * ch.amp_scale;
                const auto& phases = oq->pulses[static_cast<std::size_t>(q)];
                line_of(ch.line_id).pulses.push_back({env, ch.frequency_hz, phases.phi1, t1});
                line_of(ch.line_id).pulses.push_back({env, ch.frequency_hz, phases.phi2, t2});
            }
            t = t2 + timing.sx_gate_s;
        } else {
            const auto& tq = std::get<TwoQubitCycle>(cycle);
            double slot_len = 0.0;
            for (const QubitPair& p : tq.pairs) {
                const auto it = pair_flux.find({p.a, p.b});
                if (it == pair_flux.end())
                    throw MissingAssignment("synthesize: no flux channel for pair (" +
                                            std::to_string(p.a) + ", " + std::to_string(p.b) + ")");
                const PairFluxChannel& fc = it->second;
                const double dur = fc.flattop_s + 2.0 * fc.ramp_s;
                slot_len = std::max(slot_len, dur);
                PulseEnvelope env;
                env.shape = PulseShape::Flattop;
                env.duration_s = dur;
                env.rise_s = fc.ramp_s;
                env.fall_s = fc.ramp_s;
                env.peak_rad_s = fc.excursion_rad_s;
                line_of(fc.z_line_id).pulses.push_back({env, 0.0, 0.0, snap_to_grid(t, timing.grid_s, "flux pulse")});
            }
            t = snap_to_grid(t, timing.grid_s, "flux pulse") + slot_len;
        }
    }
    sched.total_s = t;
    return sched;
}

/// Composes a synthesized line waveform with the multiplexer model: the
/// tone list an element actually sees, with every non-own tone scaled by
/// the element's branch filter.
inline std::vector<TonePulse> element_drive(const std::string& element, const Schedule& sched,
                                            const LineModel& line, const FrequencyPlan& plan) {
    const LineWaveform* wf = sched.find_line(line.id);
    if (wf == nullptr) return {};
    const FilterSpec& filt = line.filter_of(element);
    const double own_hz = plan.frequency_of(element);
    std::vector<TonePulse> tones;
    tones.reserve(wf->pulses.size());
    for (const TonePulse& p : wf->pulses) {
        TonePulse t = p;
        if (p.frequency_hz != own_hz)
            t.envelope.peak_rad_s *= filter_amplitude_scale(filt, p.frequency_hz);
        tones.push_back(t);
    }
    return tones;
}

}  // namespace muxctl
