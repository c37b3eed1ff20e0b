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

namespace muxctl {

// All internal dynamics run in angular frequency (rad/s) with hbar = 1.
// Public module interfaces take frequencies in Hz and convert exactly once,
// here at the boundary.

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

// Planck constant over 2*pi, in J*s. Used only by the resource estimator,
// which reports physical power.
inline constexpr double kHbar = 1.054571817e-34;

inline constexpr double hz_to_rad(double f_hz) { return kTwoPi * f_hz; }
inline constexpr double rad_to_hz(double w_rad) { return w_rad / kTwoPi; }

/// Reduce a phase to the interval (-pi, pi].
inline double wrap_phase(double x) {
    double r = std::remainder(x, kTwoPi);
    if (r <= -kPi) r += kTwoPi;
    return r;
}

inline double db_to_amplitude_scale(double attenuation_db) {
    return std::pow(10.0, -attenuation_db / 20.0);
}

inline double db_to_power_scale(double attenuation_db) {
    return std::pow(10.0, -attenuation_db / 10.0);
}

}  // namespace muxctl
