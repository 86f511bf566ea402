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

// Experiment driver: z2lgt <optimize|transfer|observables|spectrum|compile>
// [--config file.ini] [overrides...]. Flags override config file values.

#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "z2lgt/experiment.h"

namespace {

struct Override {
    const char *flag;
    const char *section;
    const char *key;
    const char *help;
};

const Override kOverrides[] = {
    {"--name", "experiment", "name", "experiment name (output subdirectory)"},
    {"--out", "experiment", "output", "output root directory"},
    {"--model", "model", "kind", "direct or dual"},
    {"--L", "model", "L", "linear lattice size"},
    {"--h", "model", "h", "comma-separated couplings"},
    {"--P", "model", "P", "layer counts, e.g. 1..6 or 2,4"},
    {"--start", "model", "start", "electric or magnetic"},
    {"--path", "model", "path", "exact or compiled"},
    {"--restarts", "optimizer", "restarts", "local refinements per point"},
    {"--epsilon", "optimizer", "epsilon", "restart perturbation half-width"},
    {"--seed", "optimizer", "seed", "master seed"},
    {"--dt-grid", "optimizer", "dt_grid", "comma-separated time steps"},
    {"--threads", "optimizer", "threads", "worker threads (0 = all cores)"},
    {"--source", "input", "source", "result file, schedule file or result directory"},
    {"--observables", "observables", "select", "energy,wilson,creutz,entropy,sectors"},
    {"--state", "observables", "state", "qaoa, ground, toric or electric"},
    {"--tripartition", "observables", "tripartition", "tripartition file"},
    {"--string-order", "observables", "string_order", "after or before"},
    {"--k", "spectrum", "k", "number of eigenvalues"},
    {"--gamma", "compile", "gamma", "magnetic angle"},
    {"--beta", "compile", "beta", "electric angle"},
    {"--style", "compile", "style", "rx or hadamard_rz"},
};

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Z2 lattice gauge theory QAOA experiments"};
    app.require_subcommand(1);
    // --h is the coupling, so help is long-form only.
    app.set_help_flag("--help", "print help");
    std::map<CLI::App *, z2lgt::Command> commands;
    std::string config_path;
    std::vector<std::string> values(std::size(kOverrides));
    for (z2lgt::Command c : {z2lgt::Command::kOptimize, z2lgt::Command::kTransfer, z2lgt::Command::kObservables,
                             z2lgt::Command::kSpectrum, z2lgt::Command::kCompile}) {
        CLI::App *sub = app.add_subcommand(std::string(z2lgt::to_string(c)));
        sub->set_help_flag("--help", "print help");
        sub->add_option("--config", config_path, "INI config file");
        for (size_t i = 0; i < std::size(kOverrides); ++i) {
            sub->add_option(kOverrides[i].flag, values[i], kOverrides[i].help);
        }
        commands[sub] = c;
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? z2lgt::kExitOk : z2lgt::kExitConfigError;
    }

    z2lgt::Command command = z2lgt::Command::kOptimize;
    for (const auto &[sub, c] : commands) {
        if (sub->parsed()) {
            command = c;
        }
    }
    std::filesystem::path directory;
    try {
        z2lgt::ExperimentConfig config = config_path.empty() ? z2lgt::ExperimentConfig{}
                                                             : z2lgt::load_config(config_path);
        for (size_t i = 0; i < std::size(kOverrides); ++i) {
            const CLI::App *sub = app.get_subcommands().front();
            if (sub->count(kOverrides[i].flag) > 0) {
                config.set(kOverrides[i].section, kOverrides[i].key, values[i]);
            }
        }
        config.validate(command);
        directory = z2lgt::output_directory(command, config);
        const auto report = z2lgt::run_command(command, config);
        for (const auto &file : report.files) {
            std::cout << file.string() << "\n";
        }
        return z2lgt::kExitOk;
    } catch (const std::exception &e) {
        const auto j = z2lgt::error_json(command, e);
        std::cerr << j.dump() << "\n";
        if (!directory.empty()) {
            try {
                z2lgt::write_file_atomic(directory / "error.json", j.dump(2) + "\n");
            } catch (const std::exception &) {
                // The error already went to stderr.
            }
        }
        return z2lgt::exit_code_for(e);
    }
}
