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
#include <optional>
#include <vector>

#include "muxctl/sweep.hpp"
#include "muxctl/transmon.hpp"

namespace muxctl {

// ---------------------------------------------------------------------------
// Leakage map over two spurious-tone frequencies (the shared-line picture:
// the qubit sees its own pi/2 pulse plus attenuated tones meant for its
// neighbors).
// ---------------------------------------------------------------------------

struct LeakageMapConfig {
    double t_gate_s = 50e-9;
    /// Spurious tone amplitude relative to the calibrated pi/2 peak.
    double spurious_amp_scale = 1.0;
    /// Branch filter applied to the spurious tones; nullopt reproduces the
    /// unattenuated (no-filter) setting.
    std::optional<FilterSpec> filter;
    TransmonIntegratorConfig integrator;
    int workers = 0;
};

struct LeakageMap {
    std::vector<double> omega_a_hz;
    std::vector<double> omega_b_hz;
    std::vector<double> leakage;  // row-major [ia * nb + ib]

    double at(std::size_t ia, std::size_t ib) const { return leakage[ia * omega_b_hz.size() + ib]; }
};

inline std::vector<TonePulse> make_map_tones(const TransmonSpec& spec, const LeakageMapConfig& cfg,
                                             double fa_hz, double fb_hz) {
    const double peak = calibrate_pi_half_amplitude(cfg.t_gate_s);
    PulseEnvelope env{PulseShape::Cosine, cfg.t_gate_s, 0.0, 0.0, peak};

    TonePulse main{env, spec.f01_hz, 0.0, 0.0};
    TonePulse spur_a{env, fa_hz, 0.0, 0.0};
    TonePulse spur_b{env, fb_hz, 0.0, 0.0};
    spur_a.envelope.peak_rad_s = peak * cfg.spurious_amp_scale;
    spur_b.envelope.peak_rad_s = peak * cfg.spurious_amp_scale;
    if (cfg.filter.has_value()) {
        spur_a.envelope.peak_rad_s *= filter_amplitude_scale(*cfg.filter, fa_hz);
        spur_b.envelope.peak_rad_s *= filter_amplitude_scale(*cfg.filter, fb_hz);
    }
    return {main, spur_a, spur_b};
}

/// Total leakage error versus the frequencies of two spurious tones of equal
/// amplitude, averaged over initial states |0> and |1>. Grid points are
/// independent; the sweep runs on the worker pool and writes by index.
inline LeakageMap leakage_map(const TransmonSpec& spec, const std::vector<double>& omega_a_hz,
                              const std::vector<double>& omega_b_hz, const LeakageMapConfig& cfg) {
    LeakageMap map;
    map.omega_a_hz = omega_a_hz;
    map.omega_b_hz = omega_b_hz;
    map.leakage.assign(omega_a_hz.size() * omega_b_hz.size(), 0.0);

    const std::size_t nb = omega_b_hz.size();
    parallel_for(map.leakage.size(), cfg.workers, [&](std::size_t idx) {
        const std::size_t ia = idx / nb;
        const std::size_t ib = idx % nb;
        const auto tones = make_map_tones(spec, cfg, omega_a_hz[ia], omega_b_hz[ib]);
        map.leakage[idx] = average_leakage(spec, tones, cfg.integrator);
    });
    return map;
}

// ---------------------------------------------------------------------------
// Power scaling of leakage transitions
// ---------------------------------------------------------------------------

enum class TransitionClass {
    SinglePhoton12,  // tone at f12, leakage from |1>
    TwoPhoton02,     // tone at f02/2, leakage from |0>
};

struct PowerScalingResult {
    double slope = 0.0;              // d log10(leakage) / d log10(power)
    std::vector<double> log10_power;
    std::vector<double> log10_leakage;
    /// Leakage simulated at the full (scale = 1) spurious amplitude,
    /// saturation included.
    double leakage_at_full = 0.0;
    /// The fitted law extrapolated to full power (10^intercept): the
    /// saturation-free anchor for attenuation projections.
    double perturbative_leak_at_full = 0.0;
};

inline double transition_tone_frequency(const TransmonSpec& spec, TransitionClass cls) {
    return cls == TransitionClass::SinglePhoton12 ? spec.f12_hz() : spec.f02_half_hz();
}

/// Log-log slope of leakage versus spurious signal power. The spurious tone
/// is placed exactly on the transition's resonance, with the initial state
/// the transition's lower level; power is the squared amplitude scale.
inline PowerScalingResult power_scaling(const TransmonSpec& spec, TransitionClass cls,
                                        const std::vector<double>& amp_scales, double t_gate_s = 50e-9,
                                        const TransmonIntegratorConfig& integ = {}) {
    if (amp_scales.size() < 5)
        throw ValidationError("power_scaling: need at least 5 amplitude points");
    const double peak = calibrate_pi_half_amplitude(t_gate_s);
    const double f_tone = transition_tone_frequency(spec, cls);
    const int init = cls == TransitionClass::SinglePhoton12 ? 1 : 0;

    auto leak_at = [&](double scale) {
        PulseEnvelope env{PulseShape::Cosine, t_gate_s, 0.0, 0.0, peak * scale};
        TonePulse tone{env, f_tone, 0.0, 0.0};
        return simulate_driven_transmon(spec, std::vector<TonePulse>{tone}, init, integ).leakage_error;
    };

    PowerScalingResult out;
    for (double s : amp_scales) {
        const double leak = leak_at(s);
        if (leak > 1e-2)
            throw OutOfPerturbativeRegime("power_scaling: leakage " + std::to_string(leak) +
                                          " at amplitude scale " + std::to_string(s) +
                                          " saturates the perturbative fit");
        if (leak <= 0.0)
            throw ValidationError("power_scaling: vanishing leakage cannot be log-fitted");
        out.log10_power.push_back(2.0 * std::log10(s));
        out.log10_leakage.push_back(std::log10(leak));
    }

    // Least squares y = a + slope x.
    const std::size_t n = out.log10_power.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += out.log10_power[i];
        sy += out.log10_leakage[i];
        sxx += out.log10_power[i] * out.log10_power[i];
        sxy += out.log10_power[i] * out.log10_leakage[i];
    }
    const double denom = static_cast<double>(n) * sxx - sx * sx;
    out.slope = (static_cast<double>(n) * sxy - sx * sy) / denom;
    const double intercept = (sy - out.slope * sx) / static_cast<double>(n);
    out.perturbative_leak_at_full = std::pow(10.0, intercept);
    out.leakage_at_full = leak_at(1.0);
    return out;
}

/// Projects a measured leakage under a power attenuation of `attenuation_db`
/// using the fitted scaling law: leak * (10^(-A/10))^slope.
inline double project_leakage_with_attenuation(double leakage_at_full, double attenuation_db,
                                               double slope) {
    return leakage_at_full * std::pow(db_to_power_scale(attenuation_db), slope);
}

}  // namespace muxctl
