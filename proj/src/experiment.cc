// Copyright 2026 The z2lgt Authors
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

#include "z2lgt/experiment.h"

#include <unistd.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <memory>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "z2lgt/dual_model.h"
#include "z2lgt/eigensolver.h"
#include "z2lgt/parallel.h"

namespace z2lgt {

namespace fs = std::filesystem;

namespace {

const std::set<std::string> kObservableNames = {"energy", "wilson", "creutz", "entropy", "sectors"};

std::string fmt(double v) {
    if (v == 0.0) {
        v = 0.0;  // no "-0"
    }
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, r.ptr);
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    size_t pos = 0;
    while (true) {
        const size_t next = s.find(sep, pos);
        out.push_back(trim(s.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos)));
        if (next == std::string_view::npos) {
            break;
        }
        pos = next + 1;
    }
    return out;
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
    const std::string t = trim(text);
    T value{};
    const auto r = std::from_chars(t.data(), t.data() + t.size(), value);
    if (t.empty() || r.ec != std::errc() || r.ptr != t.data() + t.size()) {
        throw ConfigError("bad value '" + t + "' for " + std::string(key));
    }
    return value;
}

std::vector<double> parse_doubles(std::string_view key, std::string_view text) {
    std::vector<double> out;
    if (trim(text).empty()) {
        return out;
    }
    for (const auto &item : split(text, ',')) {
        out.push_back(parse_number<double>(key, item));
    }
    return out;
}

std::vector<int> parse_ints(std::string_view key, std::string_view text) {
    std::vector<int> out;
    if (trim(text).empty()) {
        return out;
    }
    for (const auto &item : split(text, ',')) {
        const auto dots = item.find("..");
        if (dots == std::string::npos) {
            out.push_back(parse_number<int>(key, item));
            continue;
        }
        const int lo = parse_number<int>(key, item.substr(0, dots));
        const int hi = parse_number<int>(key, item.substr(dots + 2));
        if (hi < lo) {
            throw ConfigError("empty range '" + item + "' for " + std::string(key));
        }
        for (int v = lo; v <= hi; ++v) {
            out.push_back(v);
        }
    }
    return out;
}

template <typename T>
std::string join(const std::vector<T> &items) {
    std::string out;
    for (size_t i = 0; i < items.size(); ++i) {
        if (i) {
            out += ',';
        }
        if constexpr (std::is_same_v<T, double>) {
            out += fmt(items[i]);
        } else if constexpr (std::is_same_v<T, std::string>) {
            out += items[i];
        } else {
            out += std::to_string(items[i]);
        }
    }
    return out;
}

template <typename F>
auto as_config_error(F &&f) -> decltype(f()) {
    try {
        return f();
    } catch (const std::invalid_argument &e) {
        throw ConfigError(e.what());
    }
}

std::string_view to_string(RotationStyle style) { return style == RotationStyle::kRx ? "rx" : "hadamard_rz"; }

RotationStyle parse_rotation_style(std::string_view text) {
    if (text == "rx") return RotationStyle::kRx;
    if (text == "hadamard_rz") return RotationStyle::kHadamardRz;
    throw ConfigError("unknown rotation style '" + std::string(text) + "'");
}

std::string_view to_string(StringOrder order) { return order == StringOrder::kAfterEvolution ? "after" : "before"; }

StringOrder parse_string_order(std::string_view text) {
    if (text == "after") return StringOrder::kAfterEvolution;
    if (text == "before") return StringOrder::kBeforeEvolution;
    throw ConfigError("unknown string order '" + std::string(text) + "'");
}

std::string read_file(const fs::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot read '" + path.string() + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Result files named by a transfer source, sorted.
std::vector<fs::path> source_files(const std::string &source) {
    if (source.empty()) {
        throw ConfigError("input.source is required");
    }
    const fs::path p(source);
    if (!fs::is_directory(p)) {
        if (!fs::exists(p)) {
            throw ConfigError("source '" + source + "' does not exist");
        }
        return {p};
    }
    std::vector<fs::path> out;
    for (const auto &entry : fs::directory_iterator(p)) {
        const std::string name = entry.path().filename().string();
        if (entry.is_regular_file() && name.starts_with("result_") && name.ends_with(".json")) {
            out.push_back(entry.path());
        }
    }
    std::sort(out.begin(), out.end());
    if (out.empty()) {
        throw ConfigError("no result_*.json files in '" + source + "'");
    }
    return out;
}

nlohmann::json parse_json_file(const fs::path &path) {
    try {
        return nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::exception &e) {
        throw ConfigError("'" + path.string() + "': " + e.what());
    }
}

OptimizationResult load_result(const fs::path &path) {
    const auto j = parse_json_file(path);
    try {
        return optimization_result_from_json(j);
    } catch (const std::invalid_argument &e) {
        throw ConfigError("'" + path.string() + "': " + e.what());
    } catch (const nlohmann::json::exception &e) {
        throw ConfigError("'" + path.string() + "': " + e.what());
    }
}

// Accepts a result file or a bare schedule.
Schedule load_schedule(const fs::path &path) {
    const auto j = parse_json_file(path);
    try {
        if (j.contains("schema")) {
            return optimization_result_from_json(j).best;
        }
        return schedule_from_json(j);
    } catch (const std::invalid_argument &e) {
        throw ConfigError("'" + path.string() + "': " + e.what());
    } catch (const nlohmann::json::exception &e) {
        throw ConfigError("'" + path.string() + "': " + e.what());
    }
}

struct Artifacts {
    Command command;
    const ExperimentConfig &config;
    fs::path directory;
    std::string hash;
    RunReport report;

    std::string csv_header() const {
        std::string out = "# command = " + std::string(to_string(command)) + "\n# config_hash = " + hash + "\n";
        std::istringstream lines(config.canonical());
        for (std::string line; std::getline(lines, line);) {
            out += "# " + line + "\n";
        }
        return out;
    }

    void write(const std::string &name, const std::string &content) {
        write_file_atomic(directory / name, content);
        report.files.push_back(directory / name);
    }

    void write_csv(const std::string &name, const std::string &rows) { write(name, csv_header() + rows); }

    void write_json(const std::string &name, nlohmann::json j) {
        j["command"] = to_string(command);
        j["config_hash"] = hash;
        j["config"] = config.to_json();
        write(name, j.dump(2) + "\n");
    }
};

std::string point_name(double h, int P) { return "h" + fmt(h) + "_P" + std::to_string(P); }

TwoStepOptions two_step_options(const ExperimentConfig &config) {
    TwoStepOptions options;
    options.n_restarts = config.restarts;
    options.epsilon = config.epsilon;
    options.seed = config.seed;
    options.dt_grid = config.dt_grid;
    options.threads = 1;
    return options;
}

std::string summary_header() {
    return "model,L,h,P,start,path,best_energy,ground_energy,residual_energy,fidelity,infidelity,dt_star,warnings\n";
}

std::string summary_row(const OptimizationResult &r) {
    auto opt = [](const std::optional<double> &v) { return v ? fmt(*v) : std::string(); };
    std::string row = std::string(to_string(r.spec.model)) + ',' + std::to_string(r.spec.L) + ',' + fmt(r.spec.h) +
                      ',' + std::to_string(r.spec.P) + ',' + std::string(to_string(r.spec.start)) + ',' +
                      std::string(to_string(r.spec.path)) + ',' + fmt(r.best_energy) + ',' + opt(r.ground_energy) +
                      ',' + opt(r.residual_energy) + ',' + opt(r.fidelity) + ',' +
                      (r.fidelity ? fmt(1.0 - *r.fidelity) : std::string()) + ',' +
                      (r.dt_scan ? fmt(r.dt_scan->dt_star) : std::string()) + ',' +
                      std::to_string(r.warnings.size()) + '\n';
    return row;
}

void write_results(Artifacts &out, const std::vector<OptimizationResult> &results,
                   const std::vector<std::string> &sources = {}) {
    std::string rows = summary_header();
    for (size_t i = 0; i < results.size(); ++i) {
        nlohmann::json j = to_json(results[i]);
        if (!sources.empty()) {
            j["source"] = sources[i];
        }
        out.write_json("result_" + point_name(results[i].spec.h, results[i].spec.P) + ".json", j);
        rows += summary_row(results[i]);
    }
    out.write_csv("summary.csv", rows);
}

void cmd_optimize(Artifacts &out) {
    const auto &c = out.config;
    std::vector<ObjectiveSpec> specs;
    for (double h : c.h) {
        for (int P : c.P) {
            specs.push_back({c.model, c.L, h, P, c.start, c.path});
        }
    }
    std::vector<OptimizationResult> results(specs.size());
    parallel_for(specs.size(), c.threads, [&](size_t i) {
        const Objective objective(specs[i]);
        results[i] = two_step_optimize(objective, two_step_options(c));
    });
    write_results(out, results);
}

void cmd_transfer(Artifacts &out) {
    const auto &c = out.config;
    struct Job {
        OptimizationResult source;
        std::string source_name;
        ObjectiveSpec target;
    };
    std::vector<Job> jobs;
    for (const auto &file : source_files(c.source)) {
        const OptimizationResult src = load_result(file);
        const std::vector<double> hs = c.h.empty() ? std::vector<double>{src.spec.h} : c.h;
        for (double h : hs) {
            const int P = c.P.empty() ? src.spec.P : c.P.front();
            if (P != src.spec.P) {
                throw ConfigError("source '" + file.filename().string() + "' has P=" + std::to_string(src.spec.P) +
                                  " but the target asks for P=" + std::to_string(P));
            }
            jobs.push_back({src, file.filename().string(), ObjectiveSpec{c.model, c.L, h, P, src.spec.start, c.path}});
        }
    }
    std::vector<OptimizationResult> results(jobs.size());
    parallel_for(jobs.size(), c.threads, [&](size_t i) {
        const Objective objective(jobs[i].target);
        results[i] = as_config_error([&] { return transfer_schedule(jobs[i].source, objective, two_step_options(c)); });
    });
    std::vector<std::string> names;
    for (const auto &job : jobs) {
        names.push_back(job.source_name);
    }
    write_results(out, results, names);
}

struct MeasuredState {
    std::string label;
    StateVector psi;
};

MeasuredState make_state(const ExperimentConfig &c, double h, const std::optional<Schedule> &schedule) {
    const bool direct = c.model == ModelKind::kDirect;
    const TorusLattice lat(c.L);
    switch (c.state) {
        case StateSource::kQaoa:
            if (direct) {
                return {"qaoa", DirectQaoa(lat, h).evolve(*schedule)};
            }
            return {"qaoa", DualQaoa(c.L, h).evolve(*schedule)};
        case StateSource::kGround:
            if (direct) {
                return {"ground", LGTHamiltonian(lat, h).lowest_eigenpairs(1, SectorSelection{true, 1, 1}).eigenvectors[0]};
            }
            return {"ground", dual_lowest_eigenpairs(DualTFIM(c.L, h), 1).eigenvectors[0]};
        case StateSource::kToric:
            return {"toric", direct ? prepare_toric_code_gs(lat).first : dual_plus_state(c.L * c.L)};
        case StateSource::kElectric:
            return {"electric", direct ? prepare_electric_gs(lat) : dual_ghz_state(c.L * c.L)};
    }
    throw std::logic_error("unreachable");
}

void cmd_observables(Artifacts &out) {
    const auto &c = out.config;
    const std::set<std::string> selected(c.observables.begin(), c.observables.end());
    std::optional<Schedule> schedule;
    if (c.state == StateSource::kQaoa) {
        const auto files = source_files(c.source);
        if (files.size() != 1) {
            throw ConfigError("observables needs a single schedule or result file as input.source");
        }
        schedule = load_schedule(files.front());
    }
    const TorusLattice lat(c.L);
    std::optional<Tripartition> part;
    if (selected.contains("entropy")) {
        part = as_config_error([&] {
            return c.tripartition.empty() ? Tripartition::standard(lat) : Tripartition::from_file(lat, c.tripartition);
        });
    }
    std::vector<std::pair<int, int>> extents;
    for (int lx = 1; lx < c.L; ++lx) {
        for (int ly = 1; ly < c.L; ++ly) {
            extents.emplace_back(lx, ly);
        }
    }

    struct Rows {
        std::string energy, wilson, creutz, entropy, sectors;
    };
    std::vector<Rows> rows(c.h.size());
    parallel_for(c.h.size(), c.threads, [&](size_t i) {
        const double h = c.h[i];
        const MeasuredState m = make_state(c, h, schedule);
        const std::string prefix = fmt(h) + ',' + m.label + ',';
        Rows &r = rows[i];
        if (selected.contains("energy")) {
            const double e = c.model == ModelKind::kDirect ? LGTHamiltonian(lat, h).energy(m.psi)
                                                          : DualTFIM(c.L, h).energy(m.psi);
            r.energy = prefix + fmt(e) + '\n';
        }
        WilsonTable table;
        if (selected.contains("wilson") || selected.contains("creutz")) {
            table = c.model == ModelKind::kDirect ? wilson_scan(lat, m.psi, extents)
                                                  : wilson_scan(DualTFIM(c.L, h), m.psi, extents);
        }
        if (selected.contains("wilson")) {
            for (const auto &[extent, w] : table) {
                r.wilson += prefix + std::to_string(extent.first) + ',' + std::to_string(extent.second) + ',' +
                            fmt(w) + '\n';
            }
        }
        if (selected.contains("creutz")) {
            for (int l = 2; l < c.L; ++l) {
                const auto chi = creutz_ratio(table, l);
                r.creutz += prefix + std::to_string(l) + ',' +
                            (chi.confined_indeterminate ? std::string() : fmt(chi.value)) + ',' +
                            (chi.confined_indeterminate ? "1" : "0") + '\n';
            }
        }
        if (part) {
            const auto e = topological_entropy(m.psi, *part);
            r.entropy = prefix;
            for (double s : {e.s_a, e.s_b, e.s_c, e.s_ab, e.s_bc, e.s_ac, e.s_abc, e.s_topo}) {
                r.entropy += fmt(s) + ',';
            }
            r.entropy += fmt(e.s_abc / std::numbers::ln2) + ',' + fmt(e.s_topo / std::numbers::ln2) + ',' +
                         std::to_string(e.cut_vertices) + '\n';
        }
        if (selected.contains("sectors")) {
            for (const auto &s : sector_energies(DirectQaoa(lat, h), *schedule, c.string_order)) {
                r.sectors += fmt(h) + ',' + std::string(to_string(c.string_order)) + ',' + s.label + ',' +
                             fmt(s.tau_h) + ',' + fmt(s.tau_v) + ',' + fmt(s.energy) + '\n';
            }
        }
    });

    auto emit = [&](const char *name, const char *header, std::string Rows::*field) {
        if (!selected.contains(name)) {
            return;
        }
        std::string text = header;
        for (const auto &r : rows) {
            text += r.*field;
        }
        out.write_csv(std::string(name) + ".csv", text);
    };
    emit("energy", "h,state,energy\n", &Rows::energy);
    emit("wilson", "h,state,lx,ly,wilson\n", &Rows::wilson);
    emit("creutz", "h,state,l,chi,indeterminate\n", &Rows::creutz);
    emit("entropy", "h,state,s_a,s_b,s_c,s_ab,s_bc,s_ac,s_abc,s_topo,s_abc_bits,s_topo_bits,cut_vertices\n",
         &Rows::entropy);
    emit("sectors", "h,string_order,label,tau_h,tau_v,energy\n", &Rows::sectors);
}

void cmd_spectrum(Artifacts &out) {
    const auto &c = out.config;
    std::vector<SpectrumResult> spectra(c.h.size());
    parallel_for(c.h.size(), c.threads, [&](size_t i) {
        if (c.model == ModelKind::kDirect) {
            spectra[i] = LGTHamiltonian(TorusLattice(c.L), c.h[i]).lowest_eigenpairs(c.k, SectorSelection{true, 0, 0});
        } else {
            spectra[i] = dual_lowest_eigenpairs(DualTFIM(c.L, c.h[i]), c.k);
        }
    });
    std::string text = "model,L,h,index,eigenvalue,tau_h,tau_v,residual\n";
    for (size_t i = 0; i < spectra.size(); ++i) {
        const auto &s = spectra[i];
        for (size_t n = 0; n < s.eigenvalues.size(); ++n) {
            // The dual model lives in the ++ sector.
            const double th = c.model == ModelKind::kDirect ? s.tau_h[n] : 1.0;
            const double tv = c.model == ModelKind::kDirect ? s.tau_v[n] : 1.0;
            text += std::string(to_string(c.model)) + ',' + std::to_string(c.L) + ',' + fmt(c.h[i]) + ',' +
                    std::to_string(n) + ',' + fmt(s.eigenvalues[n]) + ',' + fmt(th) + ',' + fmt(tv) + ',' +
                    fmt(s.residuals[n]) + '\n';
        }
    }
    out.write_csv("spectrum.csv", text);
}

void cmd_compile(Artifacts &out) {
    const auto &c = out.config;
    const TorusLattice lat(c.L);
    const Circuit circuit = compile_qaoa_step(lat, c.gamma, c.beta, c.start, c.style);
    size_t cnots = 0;
    for (const auto &g : circuit.gates()) {
        cnots += g.kind == GateKind::kCNOT;
    }
    std::string fidelity;
    if (lat.num_links() <= 18) {
        // Check against the exact layer on a generic gauge-invariant state.
        StateVector psi = qaoa_evolve_exact(prepare_toric_code_gs(lat).first,
                                            Schedule{{0.37}, {0.21}, StartKind::kMagnetic}, lat);
        StateVector compiled = psi;
        circuit.apply_to(compiled);
        const StateVector exact = qaoa_evolve_exact(psi, Schedule{{c.gamma}, {c.beta}, c.start}, lat);
        fidelity = fmt(z2lgt::fidelity(compiled, exact));
    }
    out.write_csv("circuit.txt", circuit.to_text());
    out.write_csv("compile.csv", "L,gamma,beta,order,style,num_qubits,depth,gates,cnots,fidelity_vs_exact\n" +
                                     std::to_string(c.L) + ',' + fmt(c.gamma) + ',' + fmt(c.beta) + ',' +
                                     std::string(to_string(c.start)) + ',' + std::string(to_string(c.style)) + ',' +
                                     std::to_string(circuit.num_qubits()) + ',' + std::to_string(circuit.depth()) +
                                     ',' + std::to_string(circuit.gate_count()) + ',' + std::to_string(cnots) + ',' +
                                     fidelity + '\n');
}

}  // namespace

std::string_view to_string(Command command) {
    switch (command) {
        case Command::kOptimize:
            return "optimize";
        case Command::kTransfer:
            return "transfer";
        case Command::kObservables:
            return "observables";
        case Command::kSpectrum:
            return "spectrum";
        case Command::kCompile:
            return "compile";
    }
    return "?";
}

Command parse_command(std::string_view text) {
    for (Command c : {Command::kOptimize, Command::kTransfer, Command::kObservables, Command::kSpectrum,
                      Command::kCompile}) {
        if (to_string(c) == text) {
            return c;
        }
    }
    throw ConfigError("unknown command '" + std::string(text) + "'");
}

std::string_view to_string(StateSource source) {
    switch (source) {
        case StateSource::kQaoa:
            return "qaoa";
        case StateSource::kGround:
            return "ground";
        case StateSource::kToric:
            return "toric";
        case StateSource::kElectric:
            return "electric";
    }
    return "?";
}

StateSource parse_state_source(std::string_view text) {
    for (StateSource s : {StateSource::kQaoa, StateSource::kGround, StateSource::kToric, StateSource::kElectric}) {
        if (to_string(s) == text) {
            return s;
        }
    }
    throw ConfigError("unknown state '" + std::string(text) + "'");
}

void ExperimentConfig::set(std::string_view section, std::string_view key, std::string_view raw) {
    const std::string value = trim(raw);
    const std::string full = std::string(section) + "." + std::string(key);
    auto enum_value = [&](auto parse) {
        try {
            return parse(value);
        } catch (const std::invalid_argument &e) {
            throw ConfigError(full + ": " + e.what());
        }
    };
    if (section == "experiment" && key == "name") {
        name = value;
    } else if (section == "experiment" && key == "output") {
        output = value;
    } else if (section == "model" && key == "kind") {
        model = enum_value(parse_model_kind);
    } else if (section == "model" && key == "L") {
        L = parse_number<int>(full, value);
    } else if (section == "model" && key == "h") {
        h = parse_doubles(full, value);
    } else if (section == "model" && key == "P") {
        P = parse_ints(full, value);
    } else if (section == "model" && key == "start") {
        start = enum_value(parse_start_kind);
    } else if (section == "model" && key == "path") {
        path = enum_value(parse_evaluation_path);
    } else if (section == "optimizer" && key == "restarts") {
        restarts = parse_number<int>(full, value);
    } else if (section == "optimizer" && key == "epsilon") {
        epsilon = parse_number<double>(full, value);
    } else if (section == "optimizer" && key == "seed") {
        seed = parse_number<uint64_t>(full, value);
    } else if (section == "optimizer" && key == "dt_grid") {
        dt_grid = parse_doubles(full, value);
    } else if (section == "optimizer" && key == "threads") {
        threads = parse_number<int>(full, value);
    } else if (section == "input" && key == "source") {
        source = value;
    } else if (section == "observables" && key == "select") {
        observables = split(value, ',');
    } else if (section == "observables" && key == "state") {
        state = parse_state_source(value);
    } else if (section == "observables" && key == "tripartition") {
        tripartition = value;
    } else if (section == "observables" && key == "string_order") {
        string_order = parse_string_order(value);
    } else if (section == "spectrum" && key == "k") {
        k = parse_number<int>(full, value);
    } else if (section == "compile" && key == "gamma") {
        gamma = parse_number<double>(full, value);
    } else if (section == "compile" && key == "beta") {
        beta = parse_number<double>(full, value);
    } else if (section == "compile" && key == "style") {
        style = parse_rotation_style(value);
    } else {
        throw ConfigError("unknown config key '" + full + "'");
    }
}

void ExperimentConfig::validate(Command command) const {
    auto require = [](bool ok, const std::string &message) {
        if (!ok) {
            throw ConfigError(message);
        }
    };
    require(L >= 2, "model.L must be >= 2");
    const int qubits = model == ModelKind::kDirect ? 2 * L * L : L * L;
    require(command == Command::kCompile || qubits <= 26, "model.L=" + std::to_string(L) + " needs " + std::to_string(qubits) +
                              " qubits, more than the simulator supports");
    for (double v : h) {
        require(std::isfinite(v) && v >= 0.0, "model.h values must be finite and >= 0");
    }
    for (int p : P) {
        require(p >= 1, "model.P values must be >= 1");
    }
    require(restarts >= 1, "optimizer.restarts must be >= 1");
    require(std::isfinite(epsilon) && epsilon >= 0.0, "optimizer.epsilon must be >= 0");
    for (double dt : dt_grid) {
        require(std::isfinite(dt) && dt > 0.0, "optimizer.dt_grid values must be > 0");
    }
    require(threads >= 0, "optimizer.threads must be >= 0");
    require(path == EvaluationPath::kExact || model == ModelKind::kDirect, "the compiled path needs the direct model");
    switch (command) {
        case Command::kOptimize:
            require(!h.empty() && !P.empty(), "optimize needs model.h and model.P");
            break;
        case Command::kTransfer:
            require(!source.empty(), "transfer needs input.source");
            require(P.size() <= 1, "transfer takes at most one model.P");
            break;
        case Command::kObservables:
            require(!h.empty(), "observables needs model.h");
            require(!observables.empty(), "observables.select is empty");
            for (const auto &o : observables) {
                require(kObservableNames.contains(o), "unknown observable '" + o + "'");
                if (o == "entropy" || o == "sectors") {
                    require(model == ModelKind::kDirect, "observable '" + o + "' needs the direct model");
                }
            }
            require(state == StateSource::kQaoa || std::find(observables.begin(), observables.end(), "sectors") ==
                                                       observables.end(),
                    "observable 'sectors' needs observables.state = qaoa");
            require(state != StateSource::kQaoa || !source.empty(), "a qaoa state needs input.source");
            break;
        case Command::kSpectrum:
            require(!h.empty(), "spectrum needs model.h");
            require(k >= 1 && k <= 10, "spectrum.k must be in [1, 10]");
            break;
        case Command::kCompile:
            require(std::isfinite(gamma) && std::isfinite(beta), "compile angles must be finite");
            require(model == ModelKind::kDirect, "compile needs the direct model");
            break;
    }
}

std::string ExperimentConfig::canonical() const {
    std::ostringstream out;
    out << "schema = " << kSchemaVersion << "\n";
    out << "[model]\nkind = " << to_string(model) << "\nL = " << L << "\nh = " << join(h) << "\nP = " << join(P)
        << "\nstart = " << to_string(start) << "\npath = " << to_string(path) << "\n";
    out << "[optimizer]\nrestarts = " << restarts << "\nepsilon = " << fmt(epsilon) << "\nseed = " << seed
        << "\ndt_grid = " << join(dt_grid) << "\n";
    out << "[input]\nsource = " << source << "\n";
    out << "[observables]\nselect = " << join(observables) << "\nstate = " << to_string(state)
        << "\ntripartition = " << tripartition << "\nstring_order = " << to_string(string_order) << "\n";
    out << "[spectrum]\nk = " << k << "\n";
    out << "[compile]\ngamma = " << fmt(gamma) << "\nbeta = " << fmt(beta) << "\nstyle = " << to_string(style)
        << "\n";
    return out.str();
}

nlohmann::json ExperimentConfig::to_json() const {
    nlohmann::json j;
    j["schema"] = kSchemaVersion;
    j["experiment"] = {{"name", name}};
    j["model"] = {{"kind", to_string(model)}, {"L", L},   {"h", h}, {"P", P}, {"start", to_string(start)},
                  {"path", to_string(path)}};
    j["optimizer"] = {{"restarts", restarts}, {"epsilon", epsilon}, {"seed", seed}, {"dt_grid", dt_grid}};
    j["input"] = {{"source", source}};
    j["observables"] = {{"select", observables},
                        {"state", to_string(state)},
                        {"tripartition", tripartition},
                        {"string_order", to_string(string_order)}};
    j["spectrum"] = {{"k", k}};
    j["compile"] = {{"gamma", gamma}, {"beta", beta}, {"style", to_string(style)}};
    return j;
}

ExperimentConfig parse_config(std::string_view text) {
    namespace pt = boost::property_tree;
    pt::ptree tree;
    try {
        std::istringstream in{std::string(text)};
        pt::ini_parser::read_ini(in, tree);
    } catch (const pt::ptree_error &e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    ExperimentConfig config;
    bool has_schema = false;
    for (const auto &[section, body] : tree) {
        if (body.empty()) {
            if (section != "schema") {
                throw ConfigError("unknown top-level key '" + section + "'");
            }
            const int version = parse_number<int>("schema", body.data());
            if (version != ExperimentConfig::kSchemaVersion) {
                throw ConfigError("unsupported config schema " + std::to_string(version));
            }
            has_schema = true;
            continue;
        }
        for (const auto &[key, value] : body) {
            config.set(section, key, value.data());
        }
    }
    if (!has_schema) {
        throw ConfigError("config is missing 'schema = " + std::to_string(ExperimentConfig::kSchemaVersion) + "'");
    }
    return config;
}

ExperimentConfig load_config(const fs::path &path) { return parse_config(read_file(path)); }

uint64_t fnv1a64(std::string_view data) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(uint64_t value) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(value));
    return buf;
}

void write_file_atomic(const fs::path &path, std::string_view content) {
    fs::create_directories(path.parent_path());
    const fs::path tmp = path.string() + ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.close();
        if (!out) {
            fs::remove(tmp);
            throw std::runtime_error("failed to write '" + tmp.string() + "'");
        }
    }
    fs::rename(tmp, path);
}

fs::path output_directory(Command command, const ExperimentConfig &config) {
    std::string material = config.canonical();
    if (command == Command::kTransfer || (command == Command::kObservables && config.state == StateSource::kQaoa)) {
        for (const auto &file : source_files(config.source)) {
            material += "\n# input " + file.filename().string() + "\n" + read_file(file);
        }
    }
    if (command == Command::kObservables && !config.tripartition.empty()) {
        material += "\n# tripartition\n" + read_file(config.tripartition);
    }
    const std::string name = config.name.empty() ? std::string(to_string(command)) : config.name;
    return fs::path(config.output) / name / hex64(fnv1a64(std::string(to_string(command)) + "\n" + material));
}

RunReport run_command(Command command, const ExperimentConfig &config) {
    config.validate(command);
    Artifacts out{command, config, output_directory(command, config), {}, {}};
    out.hash = out.directory.filename().string();
    out.report.directory = out.directory;
    switch (command) {
        case Command::kOptimize:
            cmd_optimize(out);
            break;
        case Command::kTransfer:
            cmd_transfer(out);
            break;
        case Command::kObservables:
            cmd_observables(out);
            break;
        case Command::kSpectrum:
            cmd_spectrum(out);
            break;
        case Command::kCompile:
            cmd_compile(out);
            break;
    }
    return out.report;
}

int exit_code_for(const std::exception &error) {
    if (dynamic_cast<const ConfigError *>(&error) || dynamic_cast<const std::invalid_argument *>(&error) ||
        dynamic_cast<const std::out_of_range *>(&error) || dynamic_cast<const std::length_error *>(&error) ||
        dynamic_cast<const nlohmann::json::exception *>(&error)) {
        return kExitConfigError;
    }
    return kExitNumericalError;
}

nlohmann::json error_json(Command command, const std::exception &error) {
    const int code = exit_code_for(error);
    return {{"schema", "z2lgt.error/1"},
            {"command", to_string(command)},
            {"exit_code", code},
            {"category", code == kExitConfigError ? "config" : "numerical"},
            {"message", error.what()}};
}

}  // namespace z2lgt
