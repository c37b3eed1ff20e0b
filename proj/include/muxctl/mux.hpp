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
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "muxctl/errors.hpp"
#include "muxctl/units.hpp"

namespace muxctl {

// ---------------------------------------------------------------------------
// Filters
// ---------------------------------------------------------------------------

/// Bandpass filter, Butterworth magnitude model:
///   A(f) = 10 log10(1 + ((f - center) / (bandwidth/2))^(2 order))  [dB]
/// Symmetric about the center; zero insertion loss in the passband center.
struct FilterSpec {
    double center_hz = 0.0;
    double bandwidth_hz = 0.0;
    int order = 3;
    /// Ideal-filter limit: everything off-center is fully rejected.
    bool infinite_order = false;
};

inline double filter_attenuation_db(const FilterSpec& spec, double f_hz) {
    if (f_hz <= 0.0) throw ValidationError("filter_attenuation_db: frequency must be positive");
    if (spec.infinite_order)
        return f_hz == spec.center_hz ? 0.0 : std::numeric_limits<double>::infinity();
    const double x = std::abs(f_hz - spec.center_hz) / (spec.bandwidth_hz / 2.0);
    return 10.0 * std::log10(1.0 + std::pow(x, 2.0 * spec.order));
}

inline double filter_amplitude_scale(const FilterSpec& spec, double f_hz) {
    const double a = filter_attenuation_db(spec, f_hz);
    return std::isinf(a) ? 0.0 : db_to_amplitude_scale(a);
}

/// Smallest Butterworth order meeting every (offset, attenuation) target.
/// Offsets are measured from the filter center and must lie outside the
/// passband. Throws Infeasible if no order up to 20 suffices.
inline int min_filter_order(double bandwidth_hz,
                            const std::vector<std::pair<double, double>>& targets_offset_db) {
    for (const auto& [offset, db] : targets_offset_db) {
        if (std::abs(offset) <= bandwidth_hz / 2.0)
            throw ValidationError("min_filter_order: target offset " + std::to_string(offset) +
                                  " Hz lies inside the passband");
        (void)db;
    }
    for (int n = 1; n <= 20; ++n) {
        bool ok = true;
        for (const auto& [offset, db] : targets_offset_db) {
            const double x = std::abs(offset) / (bandwidth_hz / 2.0);
            const double a = 10.0 * std::log10(1.0 + std::pow(x, 2.0 * n));
            if (a < db) {
                ok = false;
                break;
            }
        }
        if (ok) return n;
    }
    throw Infeasible("min_filter_order: no order <= 20 meets the attenuation targets");
}

// ---------------------------------------------------------------------------
// Frequency plan
// ---------------------------------------------------------------------------

/// Uniformly spaced tone assignments on one shared line: element k sits at
/// base + k * spacing. The multiplicity is bounded by floor(band / spacing).
struct FrequencyPlan {
    double base_hz = 0.0;
    double spacing_hz = 0.0;
    double band_hz = 0.0;        // total frequency range W available
    double jitter_sigma_hz = 0.0;
    std::vector<std::string> assignments;    // element ids, in slot order
    std::vector<double> realized_hz;         // defaults to nominal

    double nominal_hz(std::size_t slot) const { return base_hz + static_cast<double>(slot) * spacing_hz; }

    int slot_of(const std::string& id) const {
        for (std::size_t i = 0; i < assignments.size(); ++i)
            if (assignments[i] == id) return static_cast<int>(i);
        return -1;
    }

    double frequency_of(const std::string& id) const {
        const int slot = slot_of(id);
        if (slot < 0) throw MissingAssignment("frequency plan has no assignment for '" + id + "'");
        if (!realized_hz.empty()) return realized_hz[static_cast<std::size_t>(slot)];
        return nominal_hz(static_cast<std::size_t>(slot));
    }

    void validate() const {
        if (spacing_hz <= 0.0) throw ValidationError("frequency plan: spacing must be positive");
        if (band_hz > 0.0) {
            const auto max_elems = static_cast<std::size_t>(std::floor(band_hz / spacing_hz));
            if (assignments.size() > max_elems)
                throw ValidationError("frequency plan: " + std::to_string(assignments.size()) +
                                      " assignments exceed multiplicity floor(W/spacing) = " +
                                      std::to_string(max_elems));
        }
        if (!realized_hz.empty() && realized_hz.size() != assignments.size())
            throw ValidationError("frequency plan: realized frequencies must match assignments");
        if (jitter_sigma_hz < 0.0) throw ValidationError("frequency plan: jitter sigma must be >= 0");
    }
};

/// One shared XY line acting as a distributed multiplexer: each connected
/// element taps the line through its own branch bandpass filter.
struct LineModel {
    std::string id;
    std::vector<std::string> members;          // element ids
    std::vector<FilterSpec> branch_filters;    // one per member, same order

    const FilterSpec& filter_of(const std::string& element) const {
        for (std::size_t i = 0; i < members.size(); ++i)
            if (members[i] == element) return branch_filters[i];
        throw MissingAssignment("line '" + id + "' has no member '" + element + "'");
    }
};

struct EffectiveTone {
    double frequency_hz = 0.0;
    double amplitude_scale = 1.0;  // in [0, 1]
    double phase_rad = 0.0;
};

/// Tones seen by one element of a line: every tone on the line, scaled by
/// the element's branch filter. The element's own tone passes at 0 dB
/// (insertion loss is idealized to zero).
inline std::vector<EffectiveTone> effective_tones_at(const std::string& element,
                                                     const LineModel& line,
                                                     const FrequencyPlan& plan) {
    const FilterSpec& filt = line.filter_of(element);
    std::vector<EffectiveTone> tones;
    tones.reserve(line.members.size());
    for (const std::string& m : line.members) {
        const double f = plan.frequency_of(m);
        EffectiveTone t;
        t.frequency_hz = f;
        t.amplitude_scale = (m == element) ? 1.0 : filter_amplitude_scale(filt, f);
        tones.push_back(t);
    }
    return tones;
}

// ---------------------------------------------------------------------------
// Plan validation (Monte-Carlo collision check)
// ---------------------------------------------------------------------------

struct CollisionReport {
    int trials = 0;
    int collisions = 0;              // trials with at least one violation
    double collision_fraction = 0.0;
    double own_band_violation_fraction = 0.0;  // element-level fraction
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Monte-Carlo over Gaussian per-element frequency jitter. A trial collides
/// if any realized frequency falls outside its own filter passband, or
/// within `guard_band_hz` of a neighbor's passband center. The default
/// guard equals half the filter bandwidth, i.e. landing inside a neighbor's
/// passband proper; with bandwidth ~= spacing the passbands tile the band,
/// so a wider guard would declare every positive jitter a collision.
inline CollisionReport validate_plan(const FrequencyPlan& plan, const FilterSpec& filter_template,
                                     int trials, std::uint64_t seed, double guard_band_hz = -1.0) {
    plan.validate();
    if (guard_band_hz < 0.0) guard_band_hz = filter_template.bandwidth_hz / 2.0;
    const std::size_t n = plan.assignments.size();
    const double half_bw = filter_template.bandwidth_hz / 2.0;

    CollisionReport rep;
    rep.trials = trials;
    long own_violations = 0;

    for (int t = 0; t < trials; ++t) {
        // Per-trial substream keeps the result independent of worker count.
        std::mt19937_64 rng(splitmix64(seed ^ (0x51ED2700ULL + static_cast<std::uint64_t>(t))));
        std::normal_distribution<double> gauss(0.0, plan.jitter_sigma_hz);

        bool collided = false;
        std::vector<double> realized(n);
        for (std::size_t k = 0; k < n; ++k) {
            const double jitter = plan.jitter_sigma_hz > 0.0 ? gauss(rng) : 0.0;
            realized[k] = plan.nominal_hz(k) + jitter;
        }
        for (std::size_t k = 0; k < n; ++k) {
            const double center = plan.nominal_hz(k);
            if (std::abs(realized[k] - center) > half_bw) {
                collided = true;
                ++own_violations;
            }
            for (std::size_t m = 0; m < n; ++m) {
                if (m == k) continue;
                if (std::abs(realized[k] - plan.nominal_hz(m)) < guard_band_hz) collided = true;
            }
        }
        if (collided) ++rep.collisions;
    }
    rep.collision_fraction = trials > 0 ? static_cast<double>(rep.collisions) / trials : 0.0;
    rep.own_band_violation_fraction =
        trials > 0 && n > 0 ? static_cast<double>(own_violations) / (static_cast<double>(trials) * n) : 0.0;
    return rep;
}

}  // namespace muxctl
