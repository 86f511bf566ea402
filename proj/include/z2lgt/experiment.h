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

#ifndef Z2LGT_EXPERIMENT_H
#define Z2LGT_EXPERIMENT_H

#include <cstdint>
#include <exception>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "z2lgt/circuits.h"
#include "z2lgt/observables.h"
#include "z2lgt/optimizer.h"

namespace z2lgt {

/// Bad configuration or input; maps to exit code 2.
class ConfigError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitNumericalError = 3;

enum class Command : uint8_t { kOptimize, kTransfer, kObservables, kSpectrum, kCompile };

std::string_view to_string(Command command);
Command parse_command(std::string_view text);

/// Which state the observables command measures.
enum class StateSource : uint8_t { kQaoa, kGround, kToric, kElectric };

std::string_view to_string(StateSource source);
StateSource parse_state_source(std::string_view text);

/// Everything a run depends on. The INI grammar is
///
///   schema = 1
///   [experiment]   name, output
///   [model]        kind, L, h, P, start, path
///   [optimizer]    restarts, epsilon, seed, dt_grid, threads
///   [input]        source
///   [observables]  select, state, tripartition, string_order
///   [spectrum]     k
///   [compile]      gamma, beta, style
///
/// Lists are comma separated; integer lists also accept ranges "a..b".
struct ExperimentConfig {
    static constexpr int kSchemaVersion = 1;

    std::string name;
    std::string output = "out";

    ModelKind model = ModelKind::kDirect;
    int L = 3;
    std::vector<double> h;
    std::vector<int> P;
    StartKind start = StartKind::kElectric;
    EvaluationPath path = EvaluationPath::kExact;

    int restarts = 10;
    double epsilon = 0.025;
    uint64_t seed = 0;
    std::vector<double> dt_grid;
    /// 0 means default_thread_count(). Not part of the config hash.
    int threads = 0;

    std::string source;

    std::vector<std::string> observables = {"energy", "wilson", "creutz"};
    StateSource state = StateSource::kQaoa;
    std::string tripartition;
    StringOrder string_order = StringOrder::kAfterEvolution;

    int k = 5;

    double gamma = 0.0;
    double beta = 0.0;
    RotationStyle style = RotationStyle::kRx;

    /// Sets one key; throws ConfigError for unknown keys or bad values.
    void set(std::string_view section, std::string_view key, std::string_view value);
    /// Throws ConfigError when the command cannot run with these settings.
    void validate(Command command) const;
    /// INI text with every setting that affects results, in a fixed order.
    std::string canonical() const;
    nlohmann::json to_json() const;
};

/// Parses INI text. Unknown sections or keys, duplicates, a missing or
/// unsupported schema version all throw ConfigError.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path &path);

uint64_t fnv1a64(std::string_view data);
std::string hex64(uint64_t value);

/// Writes to a temporary sibling and renames it into place.
void write_file_atomic(const std::filesystem::path &path, std::string_view content);

struct RunReport {
    std::filesystem::path directory;
    std::vector<std::filesystem::path> files;
};

/// `<output>/<name>/<hash>` where the hash covers canonical() and the
/// contents of any input files.
std::filesystem::path output_directory(Command command, const ExperimentConfig &config);

/// Runs the command and writes its artifacts. Throws ConfigError for
/// configuration problems and NumericalError or ConvergenceError for
/// numerical failures.
RunReport run_command(Command command, const ExperimentConfig &config);

/// Exit code for an exception thrown by run_command or config parsing.
int exit_code_for(const std::exception &error);

/// Machine-readable description of a failure.
nlohmann::json error_json(Command command, const std::exception &error);

}  // namespace z2lgt

#endif
