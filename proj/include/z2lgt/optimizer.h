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

#ifndef Z2LGT_OPTIMIZER_H
#define Z2LGT_OPTIMIZER_H

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "z2lgt/circuits.h"
#include "z2lgt/dual_model.h"
#include "z2lgt/state_vector.h"

namespace z2lgt {

/// Raised when an objective returns a non-finite value.
class NumericalError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

enum class ModelKind : uint8_t { kDirect, kDual };
enum class EvaluationPath : uint8_t { kExact, kCompiled };

std::string_view to_string(ModelKind model);
ModelKind parse_model_kind(std::string_view text);
std::string_view to_string(EvaluationPath path);
EvaluationPath parse_evaluation_path(std::string_view text);

struct ObjectiveSpec {
    ModelKind model = ModelKind::kDirect;
    int L = 3;
    double h = 1.0;
    int P = 1;
    StartKind start = StartKind::kElectric;
    EvaluationPath path = EvaluationPath::kExact;

    /// Throws std::invalid_argument. The compiled path needs the direct model.
    void validate() const;
    bool operator==(const ObjectiveSpec &) const = default;
};

/// E_P(gamma, beta) for one model, depth and start. Safe to evaluate from
/// several threads at once.
class Objective {
   public:
    /// With `with_oracle` the ground state of the target sector is computed
    /// up front so fidelities and residual energies are available.
    explicit Objective(const ObjectiveSpec &spec, bool with_oracle = true);
    Objective(const Objective &) = delete;
    Objective &operator=(const Objective &) = delete;

    const ObjectiveSpec &spec() const { return spec_; }
    int num_parameters() const { return 2 * spec_.P; }
    const QaoaSystem &system() const { return *system_; }

    /// Final QAOA state for parameters [gamma..., beta...].
    StateVector state(std::span<const double> x) const;
    StateVector state(const Schedule &schedule) const;
    double energy(std::span<const double> x) const;
    double energy(const Schedule &schedule) const;
    /// Central-difference gradient of energy(). On the exact path the layers
    /// before each perturbed angle are evolved once and shared; the result is
    /// bitwise equal to finite_difference_gradient on energy().
    std::vector<double> gradient(std::span<const double> x, double step) const;
    uint64_t evaluations() const { return evaluations_.load(); }

    bool has_oracle() const { return ground_state_.has_value(); }
    /// Throw std::logic_error without an oracle.
    double ground_energy() const;
    const StateVector &ground_state() const;
    double fidelity(const StateVector &psi) const;
    double fidelity(std::span<const double> x) const { return fidelity(state(x)); }

   private:
    ObjectiveSpec spec_;
    std::unique_ptr<QaoaSystem> system_;
    std::optional<TorusLattice> lattice_;
    std::optional<StateVector> ground_state_;
    double ground_energy_ = 0.0;
    mutable std::atomic<uint64_t> evaluations_{0};
};

using ScalarFunction = std::function<double(std::span<const double>)>;
using GradientFunction = std::function<std::vector<double>(std::span<const double>)>;

/// Central-difference gradient. Throws NumericalError on non-finite values.
std::vector<double> finite_difference_gradient(const ScalarFunction &f, std::span<const double> x, double step);

struct LocalMinimizeOptions {
    double fd_step = 1e-6;
    /// Convergence when the max-norm of the gradient is at most gtol.
    double gtol = 1e-8;
    int max_iterations = 500;
    /// Stop once an iteration lowers the value by at most
    /// ftol * max(|f_k|, |f_k+1|, 1). Zero disables the test.
    double ftol = 2.2e-9;
    /// Curvature constant of the Wolfe line search.
    double line_search_curvature = 0.9;
    /// Called after every iteration with (iteration, value, gradient max-norm).
    std::function<void(int, double, double)> monitor;
};

enum class LocalStatus : uint8_t {
    kConverged,
    /// The last iteration improved the value by less than ftol.
    kSmallDecrease,
    kMaxIterations,
    /// The line search could not lower the value further.
    kNoProgress,
};

std::string_view to_string(LocalStatus status);

struct LocalResult {
    std::vector<double> x;
    double value = 0.0;
    int iterations = 0;
    double gradient_norm = 0.0;
    LocalStatus status = LocalStatus::kConverged;
};

/// BFGS with central-difference gradients, or with `gradient` when given.
/// Throws NumericalError when a value or gradient is non-finite.
LocalResult local_minimize(const ScalarFunction &f, std::vector<double> x0, const LocalMinimizeOptions &options = {},
                           const GradientFunction &gradient = {});

/// Linear digitized-annealing schedule. Electric start: gamma_m = m dt h / P,
/// beta_m = dt. Magnetic start: gamma_m = dt, beta_m = m dt / (h P).
/// Throws std::invalid_argument for dt <= 0, P < 1 or a magnetic start at h = 0.
Schedule linear_dqa_schedule(int P, double h, double dt, StartKind start);

/// 60 points spaced geometrically over [0.02, 1.5].
std::vector<double> default_dt_grid();
/// `n` points spaced geometrically over [lo, hi].
std::vector<double> geometric_grid(double lo, double hi, int n);

struct DtScan {
    std::vector<double> dts;
    std::vector<double> energies;
    /// First grid point attaining the minimum; values within 1e-12 relative
    /// of each other are ties.
    double dt_star = 0.0;
    double energy_star = 0.0;
    /// False when the minimum sits on a grid endpoint.
    bool interior = false;
};

/// Evaluates the linear schedule at every grid point. The grid must be
/// non-empty, positive and ascending.
DtScan grid_search_dt(const Objective &objective, std::span<const double> dt_grid, int threads = 0);

struct RestartRecord {
    int index = 0;
    uint64_t seed = 0;
    int iterations = 0;
    double energy = 0.0;
    LocalStatus status = LocalStatus::kConverged;
};

struct OptimizationResult {
    std::string method;
    ObjectiveSpec spec;
    Schedule best;
    double best_energy = 0.0;
    std::optional<double> ground_energy;
    std::optional<double> residual_energy;
    std::optional<double> fidelity;
    std::vector<RestartRecord> restarts;
    std::optional<DtScan> dt_scan;
    std::vector<std::string> warnings;
};

struct TwoStepOptions {
    int n_restarts = 10;
    /// Perturbations are uniform on [-epsilon, epsilon).
    double epsilon = 0.025;
    uint64_t seed = 0;
    /// Empty means default_dt_grid().
    std::vector<double> dt_grid;
    LocalMinimizeOptions local;
    int threads = 0;
};

/// Grid search over the linear schedule, then n_restarts local minimizations
/// from perturbed copies of the best linear schedule. Restart r draws from
/// stream_seed(seed, r); ties go to the lowest index. A minimum on a grid
/// endpoint extends the grid once by its own ratio and records a warning.
OptimizationResult two_step_optimize(const Objective &objective, const TwoStepOptions &options = {});

struct BasinHoppingOptions {
    int n_hops = 500;
    int n_runs = 100;
    double temperature = 0.5;
    /// Hops are uniform on [-step, step) per coordinate.
    double step = 0.3;
    uint64_t seed = 0;
    LocalMinimizeOptions local;
    int threads = 0;
};

struct BasinHoppingRun {
    LocalResult best;
    /// One record per run with its best value and total local iterations.
    std::vector<RestartRecord> runs;
};

/// Metropolis walk over local minima starting from the local minimum nearest
/// x0; the best point over all runs is returned. Run r draws from
/// stream_seed(seed, r); ties go to the lowest run.
BasinHoppingRun basin_hopping(const ScalarFunction &f, std::vector<double> x0, const BasinHoppingOptions &options = {},
                              const GradientFunction &gradient = {});
OptimizationResult basin_hopping(const Objective &objective, std::vector<double> x0,
                                 const BasinHoppingOptions &options = {});

/// Warm-started local minimizations on `target`: restart 0 starts at the
/// source schedule, the rest at perturbed copies. Throws
/// std::invalid_argument when depth or start differ.
OptimizationResult transfer_schedule(const Schedule &source, const Objective &target,
                                     const TwoStepOptions &options = {});
OptimizationResult transfer_schedule(const OptimizationResult &source, const Objective &target,
                                     const TwoStepOptions &options = {});

struct ScheduleDiagnostics {
    /// s_m = gamma_m / (gamma_m + beta_m); NaN at degenerate indices.
    std::vector<double> s;
    /// dt_m = gamma_m + beta_m.
    std::vector<double> dt;
    /// sum_m |s_{m+1} - 2 s_m + s_{m-1}| over triples without NaN.
    double smoothness = 0.0;
    /// Indices with gamma_m + beta_m == 0.
    std::vector<int> degenerate;
};

ScheduleDiagnostics schedule_diagnostics(const Schedule &schedule);

inline constexpr std::string_view kOptimizationSchema = "z2lgt.optimization/1";

nlohmann::json to_json(const ObjectiveSpec &spec);
nlohmann::json to_json(const Schedule &schedule);
nlohmann::json to_json(const OptimizationResult &result);
/// Reads a schedule written by to_json(Schedule).
Schedule schedule_from_json(const nlohmann::json &j);
/// Throws std::invalid_argument for unknown schema versions.
OptimizationResult optimization_result_from_json(const nlohmann::json &j);

}  // namespace z2lgt

#endif
