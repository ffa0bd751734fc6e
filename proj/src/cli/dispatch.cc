// Copyright 2026 Elevator Codes Contributors
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

#include "elevator/cli/dispatch.h"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <limits>
#include <map>
#include <sstream>

#include "elevator/circuit/memory_circuits.h"
#include "elevator/circuit/noise.h"
#include "elevator/codes/classical_code.h"
#include "elevator/codes/css_code.h"
#include "elevator/decoder/bp_osd.h"
#include "elevator/decoder/ml_decoder.h"
#include "elevator/errors.h"
#include "elevator/experiments/fit.h"
#include "elevator/experiments/memory.h"
#include "elevator/experiments/overhead.h"
#include "elevator/experiments/reference_models.h"
#include "elevator/sim/detector_error_model.h"
#include "elevator/sim/frame_sampler.h"
#include "elevator/util/format.h"

namespace elevator {

namespace {

using json = nlohmann::ordered_json;

/// Probabilities in JSON carry the same 6 significant digits as text output.
double prob(double v) {
    if (!std::isfinite(v)) {
        return v;
    }
    return std::stod(format_prob(v));
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::invalid_argument("cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string &path, const std::string &content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw std::invalid_argument("cannot write '" + path + "'");
    }
    f << content;
}

/// "01": one line of '0'/'1' per shot. "b8": bytes_per_row packed bytes per shot.
std::string encode_bits(const BitTable &t, const std::string &format) {
    std::string s;
    if (format == "b8") {
        s.assign(t.data.begin(), t.data.end());
        return s;
    }
    s.reserve(t.rows * (t.bits + 1));
    for (size_t r = 0; r < t.rows; r++) {
        for (size_t b = 0; b < t.bits; b++) {
            s.push_back(t.get(r, b) ? '1' : '0');
        }
        s.push_back('\n');
    }
    return s;
}

BitTable decode_bits(const std::string &data, size_t bits, const std::string &format) {
    if (format == "b8") {
        size_t bpr = (bits + 7) / 8;
        if (bpr == 0) {
            throw std::invalid_argument("b8 input needs at least one bit per row");
        }
        if (data.size() % bpr != 0) {
            throw std::invalid_argument("b8 input length is not a multiple of the row size");
        }
        BitTable t(data.size() / bpr, bits);
        std::copy(data.begin(), data.end(), t.data.begin());
        return t;
    }
    std::vector<std::string> lines;
    std::istringstream in(data);
    for (std::string line; std::getline(in, line);) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty() && bits > 0) {
            continue;
        }
        lines.push_back(line);
    }
    BitTable t(lines.size(), bits);
    for (size_t r = 0; r < lines.size(); r++) {
        if (lines[r].size() != bits) {
            throw std::invalid_argument("row " + std::to_string(r) + " has " + std::to_string(lines[r].size()) +
                                        " bits, expected " + std::to_string(bits));
        }
        for (size_t b = 0; b < bits; b++) {
            char ch = lines[r][b];
            if (ch != '0' && ch != '1') {
                throw std::invalid_argument("unexpected character in 01 input");
            }
            if (ch == '1') {
                t.set(r, b);
            }
        }
    }
    return t;
}

OuterCodeId require_outer(const std::string &name) {
    auto id = parse_outer_code_name(name);
    if (!id) {
        throw std::invalid_argument("unknown outer code '" + name + "' (expected code_15_9_3, code_15_6_5 or code_16_3_8)");
    }
    return *id;
}

MemoryBasis parse_basis(const std::string &s) {
    if (s == "x" || s == "X") {
        return MemoryBasis::X;
    }
    if (s == "z" || s == "Z") {
        return MemoryBasis::Z;
    }
    throw std::invalid_argument("basis must be x or z, got '" + s + "'");
}

NoiseModel parse_noise(const std::string &s) {
    auto comma = s.find(',');
    if (comma == std::string::npos) {
        throw std::invalid_argument("noise must be given as p_x,p_z");
    }
    NoiseModel n{parse_probability(s.substr(0, comma)), parse_probability(s.substr(comma + 1))};
    n.validate();
    return n;
}

std::vector<std::string> split(const std::string &s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) {
        out.push_back(cur);
    }
    return out;
}

std::vector<double> parse_prob_list(const std::string &s) {
    std::vector<double> out;
    for (const auto &t : split(s, ',')) {
        out.push_back(parse_probability(t));
    }
    if (out.empty()) {
        throw std::invalid_argument("empty probability list");
    }
    return out;
}

std::vector<size_t> parse_size_list(const std::string &s) {
    std::vector<size_t> out;
    for (const auto &t : split(s, ',')) {
        size_t pos = 0;
        unsigned long v = std::stoul(t, &pos);
        if (pos != t.size()) {
            throw std::invalid_argument("bad integer '" + t + "'");
        }
        out.push_back(v);
    }
    if (out.empty()) {
        throw std::invalid_argument("empty integer list");
    }
    return out;
}

struct DecoderFlags {
    std::string variant = "product_sum";
    double ms_scale = 0.625;
    size_t bp_iters = 30;
    size_t osd_order = 0;
    std::string schedule = "serial";

    void add_to(CLI::App *app) {
        app->add_option("--variant", variant, "BP variant")->check(CLI::IsMember({"product_sum", "min_sum"}));
        app->add_option("--ms-scale", ms_scale, "Min-sum scaling factor");
        app->add_option("--bp-iters", bp_iters, "Maximum BP iterations");
        app->add_option("--osd-order", osd_order, "OSD order (0 = OSD-0)");
        app->add_option("--schedule", schedule, "BP schedule")->check(CLI::IsMember({"serial", "parallel"}));
    }

    DecoderConfig config() const {
        DecoderConfig c;
        c.variant = variant == "min_sum" ? BpVariant::MinSum : BpVariant::ProductSum;
        c.min_sum_scale = ms_scale;
        c.max_iterations = bp_iters;
        c.osd_order = osd_order;
        c.schedule = schedule == "parallel" ? BpSchedule::Parallel : BpSchedule::Serial;
        c.validate();
        return c;
    }
};

json decoder_json(const DecoderConfig &c) {
    return json{{"variant", variant_name(c.variant)},
                {"min_sum_scale", c.min_sum_scale},
                {"max_iterations", c.max_iterations},
                {"osd_order", c.osd_order},
                {"schedule", schedule_name(c.schedule)}};
}

json overhead_json(const OverheadPoint &p) {
    json j{{"family", overhead_family_name(p.family)},
           {"reachable", p.reachable},
           {"p_z", prob(p.noise.p_z)},
           {"eta", std::isinf(p.noise.eta) ? json(nullptr) : json(p.noise.eta)},
           {"target", prob(p.target)}};
    if (p.reachable) {
        j["d_z"] = p.d_z;
        j["outer"] = p.outer ? json(std::string(outer_code_name(*p.outer))) : json(nullptr);
        j["ancillae"] = p.ancillae ? json(*p.ancillae) : json(nullptr);
        j["d_x"] = p.d_x ? json(*p.d_x) : json(nullptr);
        j["total_qubits"] = p.total_qubits;
        j["logicals"] = p.logicals;
        j["qubits_per_logical"] = p.qubits_per_logical;
        j["p_l"] = prob(p.p_l);
    }
    return j;
}

std::string overhead_cell(const OverheadPoint &p) {
    if (!p.reachable) {
        return "inf";
    }
    std::ostringstream s;
    s.precision(6);
    s << p.qubits_per_logical;
    return s.str();
}

std::string concat_config(const OverheadPoint &p) {
    if (!p.reachable || !p.outer) {
        return "none";
    }
    return std::string(outer_code_name(*p.outer)) + "/a" + std::to_string(*p.ancillae) + "/dz" +
           std::to_string(p.d_z);
}

const char *kSweepHeader = "repetition,concat,surface,xzzx,concat_config";

std::string sweep_cells(const std::vector<OverheadPoint> &best) {
    std::string s;
    for (const auto &p : best) {
        s += overhead_cell(p) + ",";
    }
    return s + concat_config(best[1]);
}

json memory_json(const MemoryResult &r) {
    const MemoryRequest &q = r.request;
    bool elevator = q.family == CodeFamily::Elevator;
    return json{{"family", family_name(q.family)},
                {"outer", elevator ? json(std::string(outer_code_name(q.outer))) : json(nullptr)},
                {"d_z", q.d_z},
                {"ancillae", elevator ? q.ancillae : 0},
                {"outer_rounds", elevator ? q.outer_rounds : 0},
                {"basis", basis_name(q.basis)},
                {"p_x", prob(q.noise.p_x)},
                {"p_z", prob(q.noise.p_z)},
                {"shots", q.shots},
                {"seed", q.seed},
                {"logicals", r.num_logicals},
                {"qubits", r.qubits},
                {"rounds", r.inner_rounds},
                {"detectors", r.num_detectors},
                {"mechanisms", r.num_mechanisms},
                {"failures", r.failures},
                {"failures_per_observable", r.failures_per_observable},
                {"bp_converged", r.bp_converged},
                {"p_shot", prob(r.p_shot)},
                {"p_round", prob(r.p_round)},
                {"ci_lo", prob(r.ci_lo)},
                {"ci_hi", prob(r.ci_hi)},
                {"saturated", r.saturated},
                {"decoder", decoder_json(q.decoder)},
                {"seconds", r.seconds}};
}

/// Desk-scale repetition phase-flip sweep fitted to the rep_z form.
FitResult desk_scale_rep_z(uint64_t seed, size_t threads, std::ostream &err) {
    std::vector<FitPoint> pts;
    for (size_t d : {3, 5, 7}) {
        for (double pz : {1e-2, 1.5e-2, 2e-2}) {
            MemoryRequest q;
            q.family = CodeFamily::Repetition;
            q.d_z = d;
            q.basis = MemoryBasis::X;
            q.noise = {0, pz};
            q.shots = 4000;
            q.seed = seed + d * 1000 + (uint64_t)std::lround(pz * 1e4);
            q.threads = threads;
            MemoryResult r = run_memory(q);
            err << "desk-scale: " << memory_csv_row(r) << "\n";
            if (r.failures > 0 && !r.saturated) {
                pts.push_back({pz, d, r.p_round});
            }
        }
    }
    return fit_power_law(pts, FitFamily::RepZ);
}

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    size_t column(const std::string &name) const {
        auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) {
            throw std::invalid_argument("CSV lacks column '" + name + "'");
        }
        return (size_t)(it - header.begin());
    }
};

CsvTable parse_csv(const std::string &text) {
    CsvTable t;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        auto cells = split(line, ',');
        if (t.header.empty()) {
            t.header = cells;
        } else if (cells == t.header) {
            continue;
        } else {
            if (cells.size() != t.header.size()) {
                throw std::invalid_argument("CSV row has " + std::to_string(cells.size()) + " cells, header has " +
                                            std::to_string(t.header.size()));
            }
            t.rows.push_back(cells);
        }
    }
    if (t.header.empty()) {
        throw std::invalid_argument("CSV input is empty");
    }
    return t;
}

}  // namespace

int dispatch(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Elevator code simulator and analysis toolkit", "elevator"};
    app.set_config("--config", "", "INI configuration file ([subcommand] sections); flags take precedence");
    app.require_subcommand(1);
    app.fallthrough();
    size_t threads = 0;
    uint64_t seed = 0;
    app.add_option("--threads", threads, "Worker threads (0 = all cores)");
    app.add_option("--seed", seed, "Random seed");

    // code info
    auto *code = app.add_subcommand("code", "Classical and combined code properties");
    code->require_subcommand(1);
    auto *code_info = code->add_subcommand("info", "Parameters of a built-in outer code");
    std::string code_name;
    size_t code_dz = 0;
    code_info->add_option("name", code_name, "Built-in outer code name or parity-check matrix file")->required();
    code_info->add_option("--dz", code_dz, "Also report the code combined with a repetition inner code");

    // circuit build
    auto *circuit_cmd = app.add_subcommand("circuit", "Memory circuit construction");
    circuit_cmd->require_subcommand(1);
    auto *build = circuit_cmd->add_subcommand("build", "Build a memory circuit");
    std::string build_outer = "code_15_9_3";
    size_t build_dz = 3;
    size_t build_rounds = 1;
    std::string build_basis = "z";
    size_t build_anc = 1;
    std::string build_noise;
    std::string build_dets = "memory";
    std::string build_out;
    build->add_option("--outer", build_outer, "Outer code name, or 'repetition' for a bare repetition code");
    build->add_option("--dz", build_dz, "Inner repetition distance");
    build->add_option("--rounds", build_rounds, "Outer rounds (inner rounds for repetition)");
    build->add_option("--basis", build_basis, "Memory basis")->check(CLI::IsMember({"x", "z", "X", "Z"}));
    build->add_option("--ancillae", build_anc, "Ancilla blocks (1 or 2)");
    build->add_option("--noise", build_noise, "Insert noise p_x,p_z");
    build->add_option("--detectors", build_dets, "Detector set")->check(CLI::IsMember({"memory", "all"}));
    build->add_option("-o,--out", build_out, "Write the circuit here and print a JSON summary");

    // sample
    auto *sample_cmd = app.add_subcommand("sample", "Sample detector and observable flips");
    std::string sample_circuit;
    size_t sample_shots = 1000;
    std::string sample_out;
    std::string sample_obs_out;
    std::string sample_format = "b8";
    sample_cmd->add_option("--circuit", sample_circuit, "Circuit file")->required();
    sample_cmd->add_option("--shots", sample_shots, "Shots");
    sample_cmd->add_option("-o,--out", sample_out, "Detector output file");
    sample_cmd->add_option("--obs-out", sample_obs_out, "Observable output file");
    sample_cmd->add_option("--format", sample_format, "Bit format")->check(CLI::IsMember({"01", "b8"}));

    // dem
    auto *dem_cmd = app.add_subcommand("dem", "Extract a detector error model");
    std::string dem_circuit;
    std::string dem_out;
    bool dem_allow = false;
    dem_cmd->add_option("--circuit", dem_circuit, "Noisy circuit file")->required();
    dem_cmd->add_option("-o,--out", dem_out, "DEM output file")->required();
    dem_cmd->add_flag("--allow-undetectable", dem_allow, "Accept faults that flip observables silently");

    // decode
    auto *decode_cmd = app.add_subcommand("decode", "Decode syndromes with BP+OSD");
    std::string dec_dem;
    std::string dec_syn;
    std::string dec_obs;
    std::string dec_out;
    std::string dec_format = "b8";
    bool dec_ml = false;
    DecoderFlags dec_flags;
    decode_cmd->add_option("--dem", dec_dem, "DEM file")->required();
    decode_cmd->add_option("--syndromes", dec_syn, "Detector bit stream")->required();
    decode_cmd->add_option("--observables", dec_obs, "True observable flips, to count failures");
    decode_cmd->add_option("-o,--out", dec_out, "Predicted observable flips");
    decode_cmd->add_option("--format", dec_format, "Bit format")->check(CLI::IsMember({"01", "b8"}));
    decode_cmd->add_flag("--ml", dec_ml, "Use the exhaustive maximum-likelihood decoder");
    dec_flags.add_to(decode_cmd);

    // experiment memory
    auto *exp_cmd = app.add_subcommand("experiment", "Monte Carlo experiments");
    exp_cmd->require_subcommand(1);
    auto *mem_cmd = exp_cmd->add_subcommand("memory", "Logical memory experiment");
    std::string mem_family = "repetition";
    std::string mem_outer = "code_15_9_3";
    std::string mem_dz = "3";
    size_t mem_anc = 1;
    std::string mem_basis = "x";
    std::string mem_px = "0";
    std::string mem_pz = "0";
    size_t mem_shots = 1000;
    size_t mem_rounds = 0;
    size_t mem_outer_rounds = 1;
    std::string mem_csv;
    std::string mem_format = "json";
    DecoderFlags mem_flags;
    mem_cmd->add_option("--family", mem_family, "Code family")->check(CLI::IsMember({"repetition", "elevator"}));
    mem_cmd->add_option("--outer", mem_outer, "Outer code for the elevator family");
    mem_cmd->add_option("--dz", mem_dz, "Inner distance(s), comma separated");
    mem_cmd->add_option("--ancillae", mem_anc, "Ancilla blocks");
    mem_cmd->add_option("--basis", mem_basis, "Memory basis")->check(CLI::IsMember({"x", "z", "X", "Z"}));
    mem_cmd->add_option("--px", mem_px, "Bit-flip rate(s), comma separated");
    mem_cmd->add_option("--pz", mem_pz, "Phase-flip rate(s), comma separated");
    mem_cmd->add_option("--shots", mem_shots, "Shots per point");
    mem_cmd->add_option("--rounds", mem_rounds, "Repetition rounds (default 3 d_z)");
    mem_cmd->add_option("--outer-rounds", mem_outer_rounds, "Outer rounds for the elevator family");
    mem_cmd->add_option("--csv", mem_csv, "Append rows to this aggregate CSV");
    mem_cmd->add_option("--format", mem_format, "Stdout format")->check(CLI::IsMember({"json", "csv"}));
    mem_flags.add_to(mem_cmd);

    // fit
    auto *fit_cmd = app.add_subcommand("fit", "Fit a power-law model to memory CSV data");
    std::string fit_csv;
    std::string fit_family;
    std::optional<size_t> fit_nb;
    std::optional<size_t> fit_k;
    std::string fit_out;
    fit_cmd->add_option("--csv", fit_csv, "Aggregate CSV from experiment memory")->required();
    fit_cmd->add_option("--family", fit_family, "Model family")
        ->required()
        ->check(CLI::IsMember({"concat_x", "concat_z", "rep_z", "rep_x", "surface_z", "surface_x"}));
    fit_cmd->add_option("--nb", fit_nb, "n_b for concat_z");
    fit_cmd->add_option("--k", fit_k, "k for concat_z");
    fit_cmd->add_option("-o,--out", fit_out, "Also write the model JSON here");

    // overhead
    auto *ovh_cmd = app.add_subcommand("overhead", "Qubit overhead from fit models");
    double ovh_target = 1e-12;
    double ovh_pz = 1e-3;
    std::optional<double> ovh_eta;
    std::string ovh_sweep;
    std::string ovh_family = "all";
    std::string ovh_csv;
    ovh_cmd->add_option("--target", ovh_target, "Target p_L per round and logical");
    ovh_cmd->add_option("--pz", ovh_pz, "Phase-flip rate");
    ovh_cmd->add_option("--eta", ovh_eta, "Noise bias p_z/p_x ('inf' for p_x = 0)");
    ovh_cmd->add_option("--eta-sweep", ovh_sweep, "lo:hi[:points_per_decade]");
    ovh_cmd->add_option("--family", ovh_family, "Family")
        ->check(CLI::IsMember({"all", "repetition", "concat", "surface", "xzzx"}));
    ovh_cmd->add_option("--csv", ovh_csv, "Write the sweep CSV here (default: stdout)");

    // reproduce
    auto *rep_cmd = app.add_subcommand("reproduce", "Regenerate figure data as CSV");
    std::string rep_target;
    bool rep_desk = false;
    std::string rep_out;
    rep_cmd->add_option("target", rep_target, "fig1, fig3a or fig3b")
        ->required()
        ->check(CLI::IsMember({"fig1", "fig3a", "fig3b"}));
    rep_cmd->add_flag("--desk-scale", rep_desk, "Fit the repetition model from desk-scale simulations first");
    rep_cmd->add_option("-o,--out", rep_out, "Write CSV here instead of stdout");

    for (auto *sub : {code, circuit_cmd, exp_cmd}) {
        sub->fallthrough();
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n\n";
        const CLI::App *active = &app;
        for (auto *sub : app.get_subcommands()) {
            active = sub;
            for (auto *inner : sub->get_subcommands()) {
                active = inner;
            }
        }
        err << active->help();
        return kExitUsage;
    }

    try {
        if (*code_info) {
            ClassicalCode c;
            if (auto id = parse_outer_code_name(code_name)) {
                c = builtin_outer(*id);
            } else if (std::filesystem::exists(code_name)) {
                c = ClassicalCode::from_parity_check(BinaryMatrix::from_text(read_file(code_name)), code_name);
            } else {
                require_outer(code_name);
            }
            size_t d = min_distance_bruteforce(c);
            json j{{"name", c.name},
                   {"n", c.n},
                   {"k", c.k},
                   {"d", d},
                   {"checks", c.h.rows()},
                   {"matchable", is_matchable(c.h)}};
            if (code_dz > 0) {
                CssCode q = combine(c, code_dz);
                j["combined"] = json{{"n", q.n_phys},
                                     {"k", q.k},
                                     {"d_x", q.d_x},
                                     {"d_z", q.d_z},
                                     {"css_commutes", css_commutes(q)},
                                     {"logicals_valid", logicals_valid(q)}};
            }
            out << j.dump() << "\n";
            return kExitOk;
        }

        if (*build) {
            MemoryBasis basis = parse_basis(build_basis);
            DetectorSet dets = build_dets == "all" ? DetectorSet::All : DetectorSet::MemoryBasis;
            Circuit c;
            ResourceCount rc;
            if (build_outer == "repetition") {
                c = build_repetition_memory(build_dz, build_rounds, basis, dets);
                rc = count_resources(c);
            } else {
                ElevatorSpec spec;
                spec.outer = builtin_outer(require_outer(build_outer));
                spec.d_z = build_dz;
                spec.n_ancilla_blocks = build_anc;
                c = build_elevator_memory(spec, build_rounds, basis, dets);
                rc = count_resources(spec, build_rounds);
            }
            if (!build_noise.empty()) {
                c = apply_noise(c, parse_noise(build_noise));
            }
            if (build_out.empty()) {
                out << c.to_text();
                return kExitOk;
            }
            write_file(build_out, c.to_text());
            json j{{"qubits", c.num_qubits},
                   {"measurements", c.num_measurements},
                   {"detectors", c.detectors.size()},
                   {"observables", c.observables.size()},
                   {"instructions", c.instructions.size()},
                   {"inner_rounds", rc.inner_rounds},
                   {"cnot_count", rc.cnot_count},
                   {"noisy", c.has_noise()},
                   {"path", build_out}};
            out << j.dump() << "\n";
            return kExitOk;
        }

        if (*sample_cmd) {
            Circuit c = Circuit::from_text(read_file(sample_circuit));
            SampleResult r = sample(c, sample_shots, seed, threads);
            if (!sample_out.empty()) {
                write_file(sample_out, encode_bits(r.detectors, sample_format));
            }
            if (!sample_obs_out.empty()) {
                write_file(sample_obs_out, encode_bits(r.observables, sample_format));
            }
            size_t with_events = 0;
            std::vector<size_t> obs_flips(r.observables.bits, 0);
            for (size_t s = 0; s < sample_shots; s++) {
                auto row = r.detectors.row(s);
                with_events += std::any_of(row.begin(), row.end(), [](uint8_t b) { return b != 0; });
                for (size_t l = 0; l < r.observables.bits; l++) {
                    obs_flips[l] += r.observables.get(s, l);
                }
            }
            json j{{"shots", sample_shots},
                   {"seed", seed},
                   {"detectors", r.detectors.bits},
                   {"observables", r.observables.bits},
                   {"shots_with_detection_events", with_events},
                   {"observable_flips", obs_flips},
                   {"format", sample_format}};
            out << j.dump() << "\n";
            return kExitOk;
        }

        if (*dem_cmd) {
            Circuit c = Circuit::from_text(read_file(dem_circuit));
            DetectorErrorModel dem = extract_dem(c, {dem_allow});
            write_file(dem_out, dem.to_text());
            size_t hyper = 0;
            for (const auto &m : dem.mechanisms) {
                hyper += m.detectors.size() > 2;
            }
            json j{{"detectors", dem.num_detectors},
                   {"observables", dem.num_observables},
                   {"mechanisms", dem.mechanisms.size()},
                   {"max_detector_degree", dem.max_detector_degree()},
                   {"hyperedges", hyper},
                   {"undetectable_logical_p", prob(dem.undetectable_logical_p)},
                   {"path", dem_out}};
            out << j.dump() << "\n";
            return kExitOk;
        }

        if (*decode_cmd) {
            DetectorErrorModel dem = DetectorErrorModel::from_text(read_file(dec_dem));
            BitTable syn = decode_bits(read_file(dec_syn), dem.num_detectors, dec_format);
            std::optional<BitTable> truth;
            if (!dec_obs.empty()) {
                truth = decode_bits(read_file(dec_obs), dem.num_observables, dec_format);
                if (truth->rows != syn.rows) {
                    throw std::invalid_argument("observable file has a different number of shots");
                }
            }
            DecoderConfig cfg = dec_flags.config();
            BitTable pred(syn.rows, dem.num_observables);
            size_t converged = 0;
            size_t osd_used = 0;
            size_t flips = 0;
            size_t failures = 0;
            std::vector<uint8_t> s(dem.num_detectors);
            std::optional<MlDecoder> ml;
            std::optional<BpOsdDecoder> bp;
            if (dec_ml) {
                ml.emplace(dem);
            } else {
                bp.emplace(dem, cfg);
            }
            for (size_t r = 0; r < syn.rows; r++) {
                for (size_t d = 0; d < dem.num_detectors; d++) {
                    s[d] = syn.get(r, d);
                }
                uint64_t obs;
                if (ml) {
                    obs = ml->decode(s);
                } else {
                    DecodeOutcome o = bp->decode(s);
                    obs = o.predicted_observables;
                    converged += o.bp_converged;
                    osd_used += o.osd_used;
                }
                flips += obs != 0;
                uint64_t actual = 0;
                for (size_t l = 0; l < dem.num_observables; l++) {
                    if ((obs >> l) & 1) {
                        pred.set(r, l);
                    }
                    if (truth) {
                        actual |= uint64_t(truth->get(r, l)) << l;
                    }
                }
                failures += truth && actual != obs;
            }
            if (!dec_out.empty()) {
                write_file(dec_out, encode_bits(pred, dec_format));
            }
            json j{{"shots", syn.rows},
                   {"decoder", dec_ml ? json("ml_exhaustive") : decoder_json(cfg)},
                   {"bp_converged", converged},
                   {"osd_used", osd_used},
                   {"predicted_flip_shots", flips},
                   {"failures", truth ? json(failures) : json(nullptr)}};
            out << j.dump() << "\n";
            return kExitOk;
        }

        if (*mem_cmd) {
            DecoderConfig cfg = mem_flags.config();
            std::vector<size_t> dzs = parse_size_list(mem_dz);
            std::vector<double> pxs = parse_prob_list(mem_px);
            std::vector<double> pzs = parse_prob_list(mem_pz);
            bool csv_new = !mem_csv.empty() && !std::filesystem::exists(mem_csv);
            std::ofstream csv;
            if (!mem_csv.empty()) {
                csv.open(mem_csv, std::ios::app);
                if (!csv) {
                    throw std::invalid_argument("cannot write '" + mem_csv + "'");
                }
                if (csv_new) {
                    csv << memory_csv_header() << "\n";
                }
            }
            if (mem_format == "csv") {
                out << memory_csv_header() << "\n";
            }
            for (size_t dz : dzs) {
                for (double px : pxs) {
                    for (double pz : pzs) {
                        MemoryRequest q;
                        q.family = mem_family == "elevator" ? CodeFamily::Elevator : CodeFamily::Repetition;
                        q.d_z = dz;
                        q.rounds = mem_rounds;
                        q.outer = require_outer(mem_outer);
                        q.ancillae = mem_anc;
                        q.outer_rounds = mem_outer_rounds;
                        q.basis = parse_basis(mem_basis);
                        q.noise = {px, pz};
                        q.shots = mem_shots;
                        q.seed = seed;
                        q.threads = threads;
                        q.decoder = cfg;
                        MemoryResult r = run_memory(q);
                        if (csv.is_open()) {
                            csv << memory_csv_row(r) << "\n";
                        }
                        if (mem_format == "csv") {
                            out << memory_csv_row(r) << "\n";
                        } else {
                            out << memory_json(r).dump() << "\n";
                        }
                    }
                }
            }
            return kExitOk;
        }

        if (*fit_cmd) {
            FitFamily family = *parse_fit_family(fit_family);
            CsvTable t = parse_csv(read_file(fit_csv));
            bool z_type = family == FitFamily::RepZ || family == FitFamily::ConcatZ || family == FitFamily::SurfaceZ;
            size_t c_p = t.column(z_type ? "p_z" : "p_x");
            size_t c_d = t.column("d_z");
            size_t c_r = t.column("p_round");
            size_t c_f = t.column("failures");
            size_t c_s = t.column("p_shot");
            std::vector<FitPoint> pts;
            size_t skipped = 0;
            std::optional<size_t> nb = fit_nb;
            std::optional<size_t> k = fit_k;
            for (const auto &row : t.rows) {
                if (std::stoul(row[c_f]) == 0 || parse_double(row[c_s]) >= 0.5) {
                    skipped++;
                    continue;
                }
                pts.push_back({parse_double(row[c_p]), std::stoul(row[c_d]), parse_double(row[c_r])});
                if (family == FitFamily::ConcatZ && (!nb || !k)) {
                    auto id = parse_outer_code_name(row[t.column("outer")]);
                    if (id) {
                        ClassicalCode code = builtin_outer(*id);
                        nb = nb ? nb : code.n + std::stoul(row[t.column("ancillae")]);
                        k = k ? k : code.k;
                    }
                }
            }
            FitResult fr = fit_power_law(pts, family, nb, k);
            json j{{"family", fit_family_name(family)},
                   {"a", fr.model.a},
                   {"b", fr.model.b},
                   {"c", fr.model.c},
                   {"n_b", fr.model.n_b ? json(*fr.model.n_b) : json(nullptr)},
                   {"k", fr.model.k ? json(*fr.model.k) : json(nullptr)},
                   {"points", pts.size()},
                   {"skipped", skipped},
                   {"rms_log_residual", fr.rms_log_residual},
                   {"residuals", fr.residuals}};
            if (!fit_out.empty()) {
                write_file(fit_out, j.dump(2) + "\n");
            }
            out << j.dump() << "\n";
            return kExitOk;
        }

        if (*ovh_cmd) {
            std::vector<OverheadFamily> families;
            if (ovh_family == "all") {
                families = {OverheadFamily::Repetition, OverheadFamily::Concat, OverheadFamily::Surface,
                            OverheadFamily::Xzzx};
            } else {
                for (auto f : {OverheadFamily::Repetition, OverheadFamily::Concat, OverheadFamily::Surface,
                               OverheadFamily::Xzzx}) {
                    if (ovh_family == overhead_family_name(f)) {
                        families.push_back(f);
                    }
                }
            }
            if (!ovh_sweep.empty()) {
                auto parts = split(ovh_sweep, ':');
                if (parts.size() < 2 || parts.size() > 3) {
                    throw std::invalid_argument("--eta-sweep expects lo:hi[:points_per_decade]");
                }
                double lo = parse_double(parts[0]);
                double hi = parse_double(parts[1]);
                size_t per = parts.size() == 3 ? parse_size_list(parts[2]).at(0) : 10;
                auto rows = eta_sweep(ovh_pz, ovh_target, log_grid(lo, hi, per));
                std::ostringstream csv;
                csv << "eta," << kSweepHeader << "\n";
                for (const auto &r : rows) {
                    csv << format_prob(r.eta) << "," << sweep_cells(r.best) << "\n";
                }
                if (ovh_csv.empty()) {
                    out << csv.str();
                } else {
                    write_file(ovh_csv, csv.str());
                    auto x = concat_crossover(ovh_pz, ovh_target, lo, hi);
                    json j{{"p_z", prob(ovh_pz)},
                           {"target", prob(ovh_target)},
                           {"eta_lo", lo},
                           {"eta_hi", hi},
                           {"rows", rows.size()},
                           {"crossover_eta", x ? json(prob(*x)) : json(nullptr)},
                           {"path", ovh_csv}};
                    out << j.dump() << "\n";
                }
                return kExitOk;
            }
            if (!ovh_eta) {
                throw std::invalid_argument("overhead needs --eta or --eta-sweep");
            }
            json points = json::array();
            for (auto f : families) {
                FamilyQuery q;
                q.family = f;
                points.push_back(overhead_json(overhead_search(q, {ovh_pz, *ovh_eta}, ovh_target)));
            }
            out << json{{"points", points}}.dump() << "\n";
            return kExitOk;
        }

        if (*rep_cmd) {
            OverheadModels models;
            if (rep_desk) {
                FitResult fr = desk_scale_rep_z(seed, threads, err);
                models.rep_z = fr.model;
                err << "desk-scale rep_z fit: a=" << fr.model.a << " b=" << fr.model.b << " c=" << fr.model.c
                    << "\n";
            }
            std::ostringstream csv;
            if (rep_target == "fig1") {
                auto rows = eta_sweep(1e-3, 1e-12, log_grid(1e3, 1e7, 10), models);
                csv << "eta," << kSweepHeader << "\n";
                for (const auto &r : rows) {
                    csv << format_prob(r.eta) << "," << sweep_cells(r.best) << "\n";
                }
            } else {
                NoisePoint noise{rep_target == "fig3a" ? 1e-3 : 1e-2, 1e6};
                double lowest = rep_target == "fig3a" ? 1e-15 : 1e-12;
                std::vector<double> targets = log_grid(lowest, 1e-5, 2);
                std::reverse(targets.begin(), targets.end());
                auto rows = target_sweep(noise, targets, models);
                csv << "target," << kSweepHeader << "\n";
                for (const auto &r : rows) {
                    csv << format_prob(r.target) << "," << sweep_cells(r.best) << "\n";
                }
            }
            if (rep_out.empty()) {
                out << csv.str();
            } else {
                write_file(rep_out, csv.str());
            }
            return kExitOk;
        }
    } catch (const InfeasibleError &e) {
        err << "infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const InvariantViolation &e) {
        err << "internal invariant violated: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::out_of_range &e) {
        err << "error: value out of range: " << e.what() << "\n";
        return kExitUsage;
    }
    err << app.help();
    return kExitUsage;
}

}  // namespace elevator
