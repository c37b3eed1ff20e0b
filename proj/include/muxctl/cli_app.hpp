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

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "muxctl/compiler.hpp"
#include "muxctl/device.hpp"
#include "muxctl/leakage_map.hpp"
#include "muxctl/resources.hpp"
#include "muxctl/version.hpp"

namespace muxctl::cli {

// Exit codes: 0 ok, 1 I/O, 2 validation/parse, 3 compilation, 4 cz-sim.
enum ExitCode : int { kOk = 0, kIoError = 1, kValidationError = 2, kCompileError = 3, kCzSimError = 4 };

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    out << bytes;
    if (!out) throw Error("failed writing '" + path + "'");
}

struct Provenance {
    std::string config_hash;
    std::uint64_t seed = 12345;
    int workers = 0;

    nlohmann::json meta() const {
        return {{"tool", "muxctl"},
                {"version", kVersion},
                {"config_hash", config_hash},
                {"seed", seed},
                {"workers", resolve_worker_count(workers)}};
    }

    std::string csv_header(const std::string& extra = "") const {
        std::ostringstream os;
        os << "# muxctl " << kVersion << "\n";
        os << "# config_hash " << config_hash << "\n";
        os << "# seed " << seed << "\n";
        if (!extra.empty()) os << extra;
        return os.str();
    }
};

// ---------------------------------------------------------------------------
// compile: circuit + device -> schedule JSON
// ---------------------------------------------------------------------------

/// Optional sampled-waveform export: one CSV per line, rows "t_ns,value".
struct SampleExport {
    std::string path_prefix;
    double sample_rate_hz = 50e9;
};

inline std::string sampled_csv(const LineWaveform& line, double rate_hz, const Provenance& prov) {
    std::ostringstream os;
    os << prov.csv_header("# line " + line.line_id + " sampled at " + format_double(rate_hz) +
                          " Hz\n");
    os << "t_ns,value\n";
    const std::vector<double> samples = sample_waveform(line, rate_hz);
    for (std::size_t i = 0; i < samples.size(); ++i)
        os << format_double(static_cast<double>(i) / rate_hz * 1e9) << ","
           << format_double(samples[i]) << "\n";
    return os.str();
}

inline std::string run_compile(const std::string& circuit_json, const std::string& device_json,
                               const Provenance& prov, int sqrt_cz_sign = +1,
                               const SampleExport* samples = nullptr) {
    const Circuit circuit = parse_circuit(circuit_json);
    const DeviceConfig device = parse_device_config(device_json);
    if (circuit.num_qubits > static_cast<int>(device.qubits.size()))
        throw ValidationError("circuit needs " + std::to_string(circuit.num_qubits) +
                              " qubits but the device has " + std::to_string(device.qubits.size()));

    LayeredCircuit lc = mark_identity_pairs(layerize(circuit), device);
    const CompiledProgram program = compile(lc, sqrt_cz_sign);

    std::vector<QubitChannel> channels = qubit_channels(device);
    channels.resize(static_cast<std::size_t>(circuit.num_qubits));
    const Schedule sched = synthesize(program, channels, pair_flux_channels(device), device.timing);

    if (samples != nullptr)
        for (const LineWaveform& line : sched.lines)
            write_file(samples->path_prefix + "_" + line.line_id + ".csv",
                       sampled_csv(line, samples->sample_rate_hz, prov));

    nlohmann::json lines = nlohmann::json::array();
    for (const LineWaveform& l : sched.lines) {
        nlohmann::json pulses = nlohmann::json::array();
        for (const TonePulse& p : l.pulses) {
            pulses.push_back({{"t0_ns", p.t0_s * 1e9},
                              {"duration_ns", p.envelope.duration_s * 1e9},
                              {"shape", p.envelope.shape == PulseShape::Cosine ? "cosine" : "flattop"},
                              {"rise_ns", p.envelope.rise_s * 1e9},
                              {"fall_ns", p.envelope.fall_s * 1e9},
                              {"freq_hz", p.frequency_hz},
                              {"phase_rad", p.phase_rad},
                              {"peak_rad_per_s", p.envelope.peak_rad_s}});
        }
        lines.push_back({{"id", l.line_id}, {"pulses", pulses}});
    }
    nlohmann::json out = {{"_meta", prov.meta()},
                          {"compiled", compiled_program_to_json(program)},
                          {"total_ns", sched.total_s * 1e9},
                          {"lines", lines}};
    return out.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// leakage-map
// ---------------------------------------------------------------------------

struct LeakageMapArgs {
    std::string qubit_id;  // default: first qubit
    double fmin_hz = 4.5e9;
    double fmax_hz = 5.5e9;
    int n = 32;
    bool no_filter = false;
    int workers = 0;
};

inline std::string run_leakage_map(const std::string& device_json, const LeakageMapArgs& args,
                                   const Provenance& prov) {
    const DeviceConfig device = parse_device_config(device_json);
    const std::string qid = args.qubit_id.empty() ? device.qubits.front().id : args.qubit_id;
    const TransmonSpec spec = device.transmon_of(qid);
    if (args.n < 2 || args.fmin_hz <= 0.0 || args.fmax_hz <= args.fmin_hz)
        throw ValidationError("leakage-map: bad grid specification");

    LeakageMapConfig cfg;
    cfg.t_gate_s = device.timing.sx_gate_s;
    cfg.integrator.points_per_period = device.integrator_ppp;
    cfg.workers = args.workers;
    if (!args.no_filter) cfg.filter = device.branch_filter_at(device.plan.frequency_of(qid));

    const std::vector<double> grid = linspace(args.fmin_hz, args.fmax_hz, static_cast<std::size_t>(args.n));
    const LeakageMap map = leakage_map(spec, grid, grid, cfg);

    std::ostringstream os;
    os << prov.csv_header("# qubit " + qid + (args.no_filter ? " (no attenuation)\n" : "\n") +
                          "# axes omega_a = omega_b = [" + format_double(args.fmin_hz) + ", " +
                          format_double(args.fmax_hz) + "] Hz, " + std::to_string(args.n) +
                          " points each\n");
    os << "omega_a_hz,omega_b_hz,leakage_error\n";
    for (std::size_t ia = 0; ia < map.omega_a_hz.size(); ++ia)
        for (std::size_t ib = 0; ib < map.omega_b_hz.size(); ++ib)
            os << format_double(map.omega_a_hz[ia]) << "," << format_double(map.omega_b_hz[ib]) << ","
               << format_double(map.at(ia, ib)) << "\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// cz-spectrum / cz-landscape / cz-tune
// ---------------------------------------------------------------------------

inline const CouplerConfig& select_coupler(const DeviceConfig& device, const std::string& id) {
    if (device.couplers.empty()) throw ValidationError("device has no couplers");
    if (id.empty()) return device.couplers.front();
    for (const CouplerConfig& c : device.couplers)
        if (c.id == id) return c;
    throw ValidationError("unknown coupler '" + id + "'");
}

struct CzSpectrumArgs {
    std::string coupler_id;
    double fmin_hz = 5.5e9;
    double fmax_hz = 6.4e9;
    int n = 61;
};

inline std::string run_cz_spectrum(const std::string& device_json, const CzSpectrumArgs& args,
                                   const Provenance& prov) {
    const DeviceConfig device = parse_device_config(device_json);
    const CouplerConfig& c = select_coupler(device, args.coupler_id);
    const CouplerSystemSpec spec = device.coupler_system_of(c);
    const std::vector<double> grid = linspace(args.fmin_hz, args.fmax_hz, static_cast<std::size_t>(args.n));
    const std::vector<ZzSweepPoint> sweep = zz_vs_coupler(spec, grid);

    std::ostringstream os;
    os << prov.csv_header("# coupler " + c.id + "\n");
    os << "omega_c_hz,zeta_hz,omega_c00_hz,omega_c01_hz,omega_c10_hz,omega_c11_hz,ambiguous\n";
    for (const ZzSweepPoint& p : sweep) {
        os << format_double(p.omega_c_hz) << "," << format_double(p.zeta_hz) << ","
           << format_double(p.omega_c_ab_hz[0][0]) << "," << format_double(p.omega_c_ab_hz[0][1]) << ","
           << format_double(p.omega_c_ab_hz[1][0]) << "," << format_double(p.omega_c_ab_hz[1][1]) << ","
           << (p.ambiguous ? 1 : 0) << "\n";
    }
    return os.str();
}

struct CzLandscapeArgs {
    std::string coupler_id;
    double span_hz = 22e6;      // omega_d scan half-width around omega_c^11
    double rabi_max_hz = 12e6;  // Omega_d / 2 pi maximum
    int n_freq = 25;
    int n_rabi = 25;
    int workers = 0;
};

struct CzLandscapeOutput {
    std::string population_csv;
    std::string phase_csv;
    std::string curve_csv;
};

inline CzLandscapeOutput run_cz_landscape(const std::string& device_json, const CzLandscapeArgs& args,
                                          const Provenance& prov) {
    const DeviceConfig device = parse_device_config(device_json);
    const CouplerConfig& c = select_coupler(device, args.coupler_id);
    const CouplerSystemSpec spec = device.coupler_system_of(c);
    const FluxPulse flux = device.flux_pulse_of(c);

    const DressedSpectrum hold = dressed_spectrum(spec, flux.hold_hz);
    const double f11 = hold.omega_c_ab_hz[1][1];
    const std::vector<double> wd = linspace(f11 - args.span_hz / 2.0, f11 + args.span_hz / 2.0,
                                            static_cast<std::size_t>(args.n_freq));
    std::vector<double> rabi = linspace(hz_to_rad(args.rabi_max_hz) / args.n_rabi,
                                        hz_to_rad(args.rabi_max_hz), static_cast<std::size_t>(args.n_rabi));

    CouplerSimOptions opts;
    opts.points_per_period = device.coupler_integrator_ppp;
    opts.workers = args.workers;
    const TuningLandscape land = tuning_landscape(spec, flux, wd, rabi, opts);

    auto grid_csv = [&](const std::vector<double>& values, const char* value_name) {
        std::ostringstream os;
        os << prov.csv_header("# coupler " + c.id + "\n");
        os << "omega_d_hz,omega_rabi_rad_s," << value_name << "\n";
        for (std::size_t i = 0; i < wd.size(); ++i)
            for (std::size_t j = 0; j < rabi.size(); ++j)
                os << format_double(wd[i]) << "," << format_double(rabi[j]) << ","
                   << format_double(values[i * rabi.size() + j]) << "\n";
        return os.str();
    };

    CzLandscapeOutput out;
    out.population_csv = grid_csv(land.leak, "leak_population");
    out.phase_csv = grid_csv(land.phase, "conditional_phase_rad");
    std::ostringstream os;
    os << prov.csv_header("# coupler " + c.id + " minimal-leakage curve\n");
    os << "omega_d_hz,omega_rabi_rad_s,leak_population,phase_rad\n";
    for (const TuningCurvePoint& p : land.minimal_leak_curve)
        os << format_double(p.omega_d_hz) << "," << format_double(p.omega_rabi_rad_s) << ","
           << format_double(p.leak_population) << "," << format_double(p.phase_rad) << "\n";
    out.curve_csv = os.str();
    return out;
}

struct CzTuneArgs {
    std::string coupler_id;
    double target_rad = kPi / 2.0;
    int workers = 0;
};

inline std::string run_cz_tune(const std::string& device_json, const CzTuneArgs& args,
                               const Provenance& prov) {
    const DeviceConfig device = parse_device_config(device_json);
    const CouplerConfig& c = select_coupler(device, args.coupler_id);
    const CouplerSystemSpec spec = device.coupler_system_of(c);
    const FluxPulse flux = device.flux_pulse_of(c);
    CouplerSimOptions opts;
    opts.points_per_period = device.coupler_integrator_ppp;
    opts.workers = args.workers;
    const CalibrationResult cal = calibrate_phase(spec, flux, args.target_rad, opts);

    nlohmann::json out = {{"_meta", prov.meta()},
                          {"coupler", c.id},
                          {"target_phase_rad", args.target_rad},
                          {"omega_d_hz", cal.drive.frequency_hz},
                          {"omega_rabi_rad_s", cal.drive.peak_rad_s},
                          {"achieved_phase_rad", cal.achieved_phase_rad},
                          {"leak_population", cal.leak_population},
                          {"flux_only_phase_rad", cal.flux_only_phase_rad}};
    return out.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// resources
// ---------------------------------------------------------------------------

struct ResourcesArgs {
    long num_qubits = 100000;
    long cables = 1000;
    double delta_f_hz = 10e6;
    double band_hz = 1e9;
    double qubit_freq_hz = 5e9;
    double t1_s = 10e-3;
    double rabi_hz = 1.6e6;
    double gate_time_s = 200e-9;
    int lattice_rows = 0;  // optional wire-count table
    int lattice_cols = 0;
};

inline std::string run_resources(const ResourcesArgs& args, const Provenance& prov,
                                 std::string* human_table = nullptr) {
    BudgetSpec budget;
    budget.band_w_hz = args.band_hz;
    budget.delta_f_hz = args.delta_f_hz;
    budget.cable_budget = args.cables;
    budget.num_qubits = args.num_qubits;
    budget.qubit_freq_hz = args.qubit_freq_hz;
    budget.t1_s = args.t1_s;
    budget.rabi_hz = args.rabi_hz;
    budget.gate_time_s = args.gate_time_s;
    const FeasibilityReport rep = system_feasibility(budget);

    nlohmann::json out = {{"_meta", prov.meta()},
                          {"multiplicity", rep.multiplicity},
                          {"num_qubits", args.num_qubits},
                          {"cable_budget", args.cables},
                          {"qubit_xy_cables", rep.qubit_xy_cables},
                          {"coupler_count", rep.coupler_count},
                          {"coupler_xy_cables", rep.coupler_xy_cables},
                          {"per_tone_watts", rep.per_tone_watts},
                          {"per_tone_dbm", rep.per_tone_dbm},
                          {"per_attenuator_watts", rep.per_attenuator_watts},
                          {"total_active_watts", rep.total_active_watts},
                          {"feasible", rep.feasible},
                          {"note", rep.note}};
    const ErrorScaling half = error_scaling(0.5);
    out["error_scaling_at_half_coupling"] = {
        {"t1_scale", half.t1_scale}, {"t_gate_scale", half.t_gate_scale}, {"error_scale", half.error_scale}};

    std::ostringstream table;
    table << "multiplicity M            " << rep.multiplicity << "\n"
          << "qubit XY cables           " << rep.qubit_xy_cables << " (budget " << args.cables << ")\n"
          << "per-tone load             " << rep.per_tone_dbm << " dBm\n"
          << "per-attenuator load       " << rep.per_attenuator_watts << " W (x M tones)\n"
          << "feasible                  " << (rep.feasible ? "yes" : "no") << "\n";
    if (args.lattice_rows > 0 && args.lattice_cols > 0) {
        const LatticeSpec lat{args.lattice_rows, args.lattice_cols};
        const WireCounts trad = wire_counts(lat, WiringScheme::Traditional, rep.multiplicity);
        const WireCounts mux = wire_counts(lat, WiringScheme::Multiplexed, rep.multiplicity);
        out["lattice"] = {{"rows", args.lattice_rows},
                          {"cols", args.lattice_cols},
                          {"traditional_lines", trad.total()},
                          {"multiplexed_lines", mux.total()},
                          {"multiplexed_qubit_xy", mux.qubit_xy},
                          {"multiplexed_coupler_z", mux.coupler_z},
                          {"multiplexed_coupler_xy", mux.coupler_xy},
                          {"reduction_ratio", static_cast<double>(trad.total()) /
                                                  static_cast<double>(mux.total())}};
        table << "lattice " << args.lattice_rows << "x" << args.lattice_cols << ": traditional "
              << trad.total() << " lines, multiplexed " << mux.total() << " lines (ratio "
              << static_cast<double>(trad.total()) / static_cast<double>(mux.total()) << ")\n";
    }
    if (human_table) *human_table = table.str();
    return out.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Entry point
// ---------------------------------------------------------------------------

inline int run(std::vector<std::string> args, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
    CLI::App app{"multiplexed control scheme toolkit"};
    app.require_subcommand(1);

    std::string device_path, circuit_path, output_path, qubit_id, coupler_id;
    std::uint64_t seed = 12345;
    int workers = 0;
    app.add_option("--seed", seed, "rng seed recorded in outputs");
    app.add_option("--workers", workers, "worker threads (default: cores; env MUXCTL_WORKERS)");

    auto* c_compile = app.add_subcommand("compile", "compile a circuit into a pulse schedule");
    c_compile->add_option("--circuit", circuit_path, "circuit JSON")->required();
    c_compile->add_option("--device", device_path, "device JSON")->required();
    c_compile->add_option("-o,--output", output_path, "schedule JSON path")->required();
    int sqrt_cz_sign = +1;
    c_compile->add_option("--sqrt-cz-sign", sqrt_cz_sign, "sqrt(CZ) conditional phase sign (+1/-1)");
    std::string samples_prefix;
    double sample_rate_hz = 50e9;
    c_compile->add_option("--samples-csv", samples_prefix,
                          "also write sampled waveforms, one CSV per line, with this path prefix");
    c_compile->add_option("--sample-rate", sample_rate_hz, "sample rate in Hz (default 50e9)");

    auto* c_map = app.add_subcommand("leakage-map", "leakage error vs two spurious tone frequencies");
    c_map->add_option("--device", device_path, "device JSON")->required();
    c_map->add_option("-o,--output", output_path, "CSV path")->required();
    c_map->add_option("--qubit", qubit_id, "qubit id (default: first)");
    std::string grid_spec = "4.5e9,5.5e9,32";
    c_map->add_option("--grid", grid_spec, "fmin_hz,fmax_hz,n (default 4.5e9,5.5e9,32)");
    bool no_filter = false;
    c_map->add_flag("--no-filter", no_filter, "disable branch-filter attenuation");

    auto* c_spec = app.add_subcommand("cz-spectrum", "ZZ strength and coupler transitions vs omega_c");
    c_spec->add_option("--device", device_path, "device JSON")->required();
    c_spec->add_option("-o,--output", output_path, "CSV path")->required();
    c_spec->add_option("--coupler", coupler_id, "coupler id (default: first)");
    std::string cgrid_spec = "5.5e9,6.4e9,61";
    c_spec->add_option("--grid", cgrid_spec, "fmin_hz,fmax_hz,n");

    auto* c_land = app.add_subcommand("cz-landscape", "population/phase vs drive frequency and amplitude");
    c_land->add_option("--device", device_path, "device JSON")->required();
    c_land->add_option("-o,--output", output_path, "output prefix (writes _population/_phase/_curve.csv)")
        ->required();
    c_land->add_option("--coupler", coupler_id, "coupler id (default: first)");
    int n_freq = 25, n_rabi = 25;
    double span_hz = 22e6, rabi_max_hz = 12e6;
    c_land->add_option("--n-freq", n_freq, "drive-frequency grid points");
    c_land->add_option("--n-rabi", n_rabi, "drive-amplitude grid points");
    c_land->add_option("--span-hz", span_hz, "drive-frequency scan width");
    c_land->add_option("--rabi-max-hz", rabi_max_hz, "maximum drive amplitude / 2 pi");

    auto* c_tune = app.add_subcommand("cz-tune", "calibrate a tuning drive to a target conditional phase");
    c_tune->add_option("--device", device_path, "device JSON")->required();
    c_tune->add_option("-o,--output", output_path, "calibration JSON path")->required();
    c_tune->add_option("--coupler", coupler_id, "coupler id (default: first)");
    double target_rad = kPi / 2.0;
    c_tune->add_option("--target-rad", target_rad, "target conditional phase in (-pi, pi]");

    auto* c_res = app.add_subcommand("resources", "wiring and heat-load feasibility report");
    ResourcesArgs res_args;
    c_res->add_option("--qubits", res_args.num_qubits, "qubit count")->required();
    c_res->add_option("--cables", res_args.cables, "cable budget")->required();
    c_res->add_option("--delta-f", res_args.delta_f_hz, "tone spacing in Hz")->required();
    c_res->add_option("--band", res_args.band_hz, "usable band W in Hz")->required();
    c_res->add_option("--qubit-freq", res_args.qubit_freq_hz, "qubit frequency in Hz");
    c_res->add_option("--t1", res_args.t1_s, "relaxation time in s");
    c_res->add_option("--rabi", res_args.rabi_hz, "Rabi frequency in Hz");
    c_res->add_option("--gate-time", res_args.gate_time_s, "gate time in s");
    c_res->add_option("--lattice-rows", res_args.lattice_rows, "optional lattice rows for wire counts");
    c_res->add_option("--lattice-cols", res_args.lattice_cols, "optional lattice cols for wire counts");
    c_res->add_option("-o,--output", output_path, "JSON path (default: stdout only)");

    std::reverse(args.begin(), args.end());  // CLI11 wants argv order reversed in parse(vector)
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kOk;
        }
        err << "error: " << e.what() << "\n";
        return kValidationError;
    }

    Provenance prov;
    prov.seed = seed;
    prov.workers = workers;

    try {
        if (*c_compile) {
            const std::string device_json = read_file(device_path);
            prov.config_hash = hex64(fnv1a64(device_json));
            SampleExport samples{samples_prefix, sample_rate_hz};
            write_file(output_path,
                       run_compile(read_file(circuit_path), device_json, prov, sqrt_cz_sign,
                                   samples_prefix.empty() ? nullptr : &samples));
        } else if (*c_map) {
            const std::string device_json = read_file(device_path);
            prov.config_hash = hex64(fnv1a64(device_json));
            LeakageMapArgs a;
            a.qubit_id = qubit_id;
            a.workers = workers;
            a.no_filter = no_filter;
            if (std::sscanf(grid_spec.c_str(), "%lg,%lg,%d", &a.fmin_hz, &a.fmax_hz, &a.n) != 3)
                throw ValidationError("--grid must be fmin_hz,fmax_hz,n");
            write_file(output_path, run_leakage_map(device_json, a, prov));
        } else if (*c_spec) {
            const std::string device_json = read_file(device_path);
            prov.config_hash = hex64(fnv1a64(device_json));
            CzSpectrumArgs a;
            a.coupler_id = coupler_id;
            if (std::sscanf(cgrid_spec.c_str(), "%lg,%lg,%d", &a.fmin_hz, &a.fmax_hz, &a.n) != 3)
                throw ValidationError("--grid must be fmin_hz,fmax_hz,n");
            write_file(output_path, run_cz_spectrum(device_json, a, prov));
        } else if (*c_land) {
            const std::string device_json = read_file(device_path);
            prov.config_hash = hex64(fnv1a64(device_json));
            CzLandscapeArgs a;
            a.coupler_id = coupler_id;
            a.span_hz = span_hz;
            a.rabi_max_hz = rabi_max_hz;
            a.n_freq = n_freq;
            a.n_rabi = n_rabi;
            a.workers = workers;
            const CzLandscapeOutput res = run_cz_landscape(device_json, a, prov);
            write_file(output_path + "_population.csv", res.population_csv);
            write_file(output_path + "_phase.csv", res.phase_csv);
            write_file(output_path + "_curve.csv", res.curve_csv);
        } else if (*c_tune) {
            const std::string device_json = read_file(device_path);
            prov.config_hash = hex64(fnv1a64(device_json));
            CzTuneArgs a;
            a.coupler_id = coupler_id;
            a.target_rad = target_rad;
            a.workers = workers;
            write_file(output_path, run_cz_tune(device_json, a, prov));
        } else if (*c_res) {
            prov.config_hash = hex64(fnv1a64("resources"));
            std::string table;
            const std::string json_text = run_resources(res_args, prov, &table);
            out << table;
            if (!output_path.empty()) write_file(output_path, json_text);
        }
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kValidationError;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return kValidationError;
    } catch (const MissingAssignment& e) {
        err << "error: " << e.what() << "\n";
        return kValidationError;
    } catch (const CompileError& e) {
        err << "error: " << e.what() << "\n";
        return kCompileError;
    } catch (const NotUnitary& e) {
        err << "error: " << e.what() << "\n";
        return kCompileError;
    } catch (const LabelAmbiguity& e) {
        err << "cz-sim error: " << e.what() << "\n";
        return kCzSimError;
    } catch (const DiabaticTrajectory& e) {
        err << "cz-sim error: " << e.what() << "\n";
        return kCzSimError;
    } catch (const NoSolution& e) {
        err << "cz-sim error: " << e.what() << "\n";
        return kCzSimError;
    } catch (const NormDrift& e) {
        err << "cz-sim error: " << e.what() << "\n";
        return kCzSimError;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kIoError;
    }
    return kOk;
}

}  // namespace muxctl::cli
