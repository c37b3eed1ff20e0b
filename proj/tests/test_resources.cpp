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

#include <doctest.h>

#include <cmath>

#include "muxctl/resources.hpp"
#include "muxctl/units.hpp"

using namespace muxctl;

TEST_CASE("multiplicity: floor(W / delta_f)") {
    CHECK(multiplicity(1e9, 10e6) == 100);
    CHECK(multiplicity(50e6, 50e6) == 1);
    CHECK(multiplicity(3e9, 10e6) == 300);  // several hundred within a few GHz
    CHECK_THROWS_AS(multiplicity(5e6, 10e6), ValidationError);
}

TEST_CASE("wire counts: traditional scheme") {
    // 10x10 lattice: 100 XY + 180 Z (grid edges: 2*100 - 10 - 10).
    const WireCounts w = wire_counts(LatticeSpec{10, 10}, WiringScheme::Traditional, 100);
    CHECK(w.qubit_xy == 100);
    CHECK(w.coupler_z == 180);
    CHECK(w.total() == 280);
}

TEST_CASE("wire counts: multiplexed scheme shrinks to tens of lines") {
    const LatticeSpec lat{10, 10};
    const WireCounts trad = wire_counts(lat, WiringScheme::Traditional, 100);
    const WireCounts mux = wire_counts(lat, WiringScheme::Multiplexed, 100);
    // One shared XY per qubit row, two interleaved Z plus one coupler XY
    // per coupler row band.
    CHECK(mux.qubit_xy == 10);
    CHECK(mux.coupler_z == 20);
    CHECK(mux.coupler_xy == 10);
    CHECK(mux.total() == 40);
    CHECK(mux.total() < 100);
    CHECK(trad.total() / static_cast<double>(mux.total()) >= 4.0);
}

TEST_CASE("wire counts: shared lines split when the multiplicity cap binds") {
    const WireCounts mux = wire_counts(LatticeSpec{10, 10}, WiringScheme::Multiplexed, 4);
    CHECK(mux.qubit_xy == 30);  // ceil(10/4) = 3 per row
    const WireCounts unbounded = wire_counts(LatticeSpec{10, 10}, WiringScheme::Multiplexed, 1000);
    CHECK(mux.total() > unbounded.total());
}

TEST_CASE("wire counts: 1x1 lattice is degenerate, both schemes identical") {
    const WireCounts t = wire_counts(LatticeSpec{1, 1}, WiringScheme::Traditional, 10);
    const WireCounts m = wire_counts(LatticeSpec{1, 1}, WiringScheme::Multiplexed, 10);
    CHECK(t.total() == 1);
    CHECK(m.total() == 1);
}

TEST_CASE("wire counts: monotone in lattice size, multiplexed <= traditional from 2x2") {
    long prev_trad = 0, prev_mux = 0;
    for (int n = 2; n <= 24; n += 2) {
        const LatticeSpec lat{n, n};
        const long trad = wire_counts(lat, WiringScheme::Traditional, 100).total();
        const long mux = wire_counts(lat, WiringScheme::Multiplexed, 100).total();
        CHECK(trad >= prev_trad);
        CHECK(mux >= prev_mux);
        CHECK(mux <= trad);
        prev_trad = trad;
        prev_mux = mux;
    }
    // Non-square variants.
    for (auto [r, c] : {std::pair{2, 3}, std::pair{3, 7}, std::pair{5, 2}}) {
        const LatticeSpec lat{r, c};
        CHECK(wire_counts(lat, WiringScheme::Multiplexed, 100).total() <=
              wire_counts(lat, WiringScheme::Traditional, 100).total());
    }
}

TEST_CASE("heat load per tone: paper operating point is about -90 dBm") {
    const HeatLoad h = heat_load_per_tone(hz_to_rad(5e9), 10e-3, hz_to_rad(1.6e6));
    CHECK(std::abs(h.dbm - (-90.0)) <= 0.5);
    CHECK(h.watts == doctest::Approx(1e-12).epsilon(0.3));
    CHECK(h.watts > 0.0);
}

TEST_CASE("heat load: quadratic in the drive, linear in T1 and omega_q") {
    const HeatLoad base = heat_load_per_tone(hz_to_rad(5e9), 10e-3, hz_to_rad(1.6e6));
    const HeatLoad dbl = heat_load_per_tone(hz_to_rad(5e9), 10e-3, hz_to_rad(3.2e6));
    CHECK(dbl.watts == doctest::Approx(4.0 * base.watts).epsilon(1e-12));
    CHECK(heat_load_per_tone(hz_to_rad(10e9), 10e-3, hz_to_rad(1.6e6)).watts ==
          doctest::Approx(2.0 * base.watts).epsilon(1e-12));
    CHECK(heat_load_per_tone(hz_to_rad(5e9), 20e-3, hz_to_rad(1.6e6)).watts ==
          doctest::Approx(2.0 * base.watts).epsilon(1e-12));
    CHECK_THROWS_AS(heat_load_per_tone(-1.0, 10e-3, 1.0), ValidationError);
}

TEST_CASE("error scaling: T1 ~ 1/g^2, gate time ~ 1/g, error ~ g") {
    const ErrorScaling unit = error_scaling(1.0);
    CHECK(unit.t1_scale == 1.0);
    CHECK(unit.t_gate_scale == 1.0);
    CHECK(unit.error_scale == 1.0);

    const ErrorScaling half = error_scaling(0.5);
    CHECK(half.t1_scale == doctest::Approx(4.0));
    CHECK(half.t_gate_scale == doctest::Approx(2.0));
    CHECK(half.error_scale == doctest::Approx(0.5));

    // error * T1 / t_gate is scale-free.
    for (double s : {0.2, 0.71, 1.9, 5.0}) {
        const ErrorScaling e = error_scaling(s);
        CHECK(e.error_scale * e.t1_scale / e.t_gate_scale == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK_THROWS_AS(error_scaling(0.0), ValidationError);
}

TEST_CASE("system feasibility: 1e5 qubits within 1000 cables at M = 100") {
    BudgetSpec budget;
    budget.band_w_hz = 1e9;
    budget.delta_f_hz = 10e6;
    budget.cable_budget = 1000;
    budget.num_qubits = 100000;
    const FeasibilityReport rep = system_feasibility(budget);
    CHECK(rep.multiplicity == 100);
    CHECK(rep.qubit_xy_cables == 1000);
    CHECK(rep.feasible);
    // Multiplexing concentrates M tones on one attenuator.
    CHECK(rep.per_attenuator_watts == doctest::Approx(100.0 * rep.per_tone_watts));
}

TEST_CASE("system feasibility: M = 10 exceeds the cable budget") {
    BudgetSpec budget;
    budget.band_w_hz = 1e9;
    budget.delta_f_hz = 100e6;  // M = 10
    budget.cable_budget = 1000;
    budget.num_qubits = 100000;
    const FeasibilityReport rep = system_feasibility(budget);
    CHECK(rep.multiplicity == 10);
    CHECK(rep.qubit_xy_cables == 10000);
    CHECK_FALSE(rep.feasible);
}

TEST_CASE("system feasibility: zero qubits is trivially feasible") {
    BudgetSpec budget;
    budget.num_qubits = 0;
    const FeasibilityReport rep = system_feasibility(budget);
    CHECK(rep.qubit_xy_cables == 0);
    CHECK(rep.feasible);
}
