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

#include "z2lgt/optimizer.h"

#include <ceres/ceres.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "z2lgt/parallel.h"
#include "z2lgt/rng.h"

namespace z2lgt {

namespace {

std::string format_point(std::span<const double> x) {
    std::ostringstream out;
    out.precision(17);
    out << '[';
    for (size_t i = 0; i < x.size(); ++i) {
        out << (i ? ", " : "") << x[i];
    }
    out << ']';
    return out.str();
}

// Non-finite values are recorded here and raised once Ceres returns, since
// exceptions must not cross the solver.
struct NonFiniteFlag {
    bool set = false;
    std::vector<double> point;

    void check(std::span<const double> x, std::span<const double> values) {
        for (double v : values) {
            if (!std::isfinite(v) && !set) {
                set = true;
                point.assign(x.begin(), x.end());
            }
        }
    }
    void raise() const {
        if (set) {
            throw NumericalError("objective returned a non-finite value at x = " + format_point(point));
        }
    }
};

std::vector<double> central_difference(const ScalarFunction &f, std::span<const double> x, double step) {
    std::vector<double> xs(x.begin(), x.end());
    std::vector<double> g(xs.size());
    for (size_t i = 0; i < xs.size(); ++i) {
        const double xi = xs[i];
        xs[i] = xi + step;
        const double fp = f(xs);
        xs[i] = xi - step;
        const double fm = f(xs);
        xs[i] = xi;
        g[i] = (fp - fm) / (2 * step);
    }
    return g;
}

class CeresFunction : public ceres::FirstOrderFunction {
   public:
    CeresFunction(const ScalarFunction &f, const GradientFunction &gradient, double step, int n, NonFiniteFlag &flag)
        : f_(f), gradient_(gradient), step_(step), n_(n), flag_(flag) {}

    bool Evaluate(const double *parameters, double *cost, double *gradient) const override {
        const std::span<const double> x(parameters, n_);
        *cost = f_(x);
        flag_.check(x, {cost, 1});
        if (gradient && std::isfinite(*cost)) {
            const auto g = gradient_ ? gradient_(x) : central_difference(f_, x, step_);
            flag_.check(x, g);
            std::copy(g.begin(), g.end(), gradient);
        }
        return !flag_.set;
    }
    int NumParameters() const override { return n_; }

   private:
    const ScalarFunction &f_;
    const GradientFunction &gradient_;
    double step_;
    int n_;
    NonFiniteFlag &flag_;
};

// Stops on a small relative decrease, forwards progress to the monitor and
// aborts once a non-finite value was seen.
class StoppingCallback : public ceres::IterationCallback {
   public:
    StoppingCallback(const LocalMinimizeOptions &options, const NonFiniteFlag &flag)
        : options_(options), flag_(flag) {}

    ceres::CallbackReturnType operator()(const ceres::IterationSummary &summary) override {
        if (flag_.set) {
            return ceres::SOLVER_ABORT;
        }
        if (summary.iteration == 0) {
            previous_ = summary.cost;
            return ceres::SOLVER_CONTINUE;
        }
        if (options_.monitor) {
            options_.monitor(summary.iteration, summary.cost, summary.gradient_max_norm);
        }
        const double before = previous_;
        previous_ = summary.cost;
        if (summary.step_is_successful &&
            before - summary.cost <= options_.ftol * std::max({std::abs(before), std::abs(summary.cost), 1.0})) {
            small_decrease = true;
            return ceres::SOLVER_TERMINATE_SUCCESSFULLY;
        }
        return ceres::SOLVER_CONTINUE;
    }

    bool small_decrease = false;

   private:
    const LocalMinimizeOptions &options_;
    const NonFiniteFlag &flag_;
    double previous_ = 0.0;
};

std::vector<double> perturbed(std::span<const double> x, double epsilon, uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<double> out(x.begin(), x.end());
    for (double &v : out) {
        v += rng.uniform(-epsilon, epsilon);
    }
    return out;
}

ScalarFunction as_function(const Objective &objective) {
    return [&objective](std::span<const double> x) { return objective.energy(x); };
}

GradientFunction as_gradient(const Objective &objective, const LocalMinimizeOptions &options) {
    return [&objective, step = options.fd_step](std::span<const double> x) { return objective.gradient(x, step); };
}

size_t best_index(const std::vector<LocalResult> &runs) {
    size_t best = 0;
    for (size_t i = 1; i < runs.size(); ++i) {
        if (runs[i].value < runs[best].value) {
            best = i;
        }
    }
    return best;
}

void fill_oracle_fields(const Objective &objective, OptimizationResult &result) {
    if (!objective.has_oracle()) {
        return;
    }
    result.ground_energy = objective.ground_energy();
    result.residual_energy = result.best_energy - objective.ground_energy();
    result.fidelity = objective.fidelity(objective.state(result.best));
}

// Local minimizations from each start; restart r records `seeds[r]`.
OptimizationResult multistart(const Objective &objective, const std::vector<std::vector<double>> &starts,
                              const std::vector<uint64_t> &seeds, const LocalMinimizeOptions &local, int threads) {
    const ScalarFunction f = as_function(objective);
    const GradientFunction g = as_gradient(objective, local);
    std::vector<LocalResult> runs(starts.size());
    parallel_for(starts.size(), threads, [&](size_t r) { runs[r] = local_minimize(f, starts[r], local, g); });
    OptimizationResult result;
    result.spec = objective.spec();
    for (size_t r = 0; r < runs.size(); ++r) {
        result.restarts.push_back(
            {static_cast<int>(r), seeds[r], runs[r].iterations, runs[r].value, runs[r].status});
    }
    const size_t best = best_index(runs);
    result.best = Schedule::from_parameters(runs[best].x, objective.spec().start);
    result.best_energy = runs[best].value;
    fill_oracle_fields(objective, result);
    return result;
}

void check_grid(std::span<const double> grid) {
    if (grid.empty()) {
        throw std::invalid_argument("dt grid is empty");
    }
    for (size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] > 0.0) || (i > 0 && !(grid[i] > grid[i - 1]))) {
            throw std::invalid_argument("dt grid must be positive and strictly ascending");
        }
    }
}

void finish_scan(DtScan &scan) {
    // Values within roundoff of the incumbent count as ties.
    size_t best = 0;
    for (size_t i = 1; i < scan.energies.size(); ++i) {
        const double tie = 1e-12 * std::max(1.0, std::abs(scan.energies[best]));
        if (scan.energies[i] < scan.energies[best] - tie) {
            best = i;
        }
    }
    scan.dt_star = scan.dts[best];
    scan.energy_star = scan.energies[best];
    scan.interior = best > 0 && best + 1 < scan.dts.size();
}

}  // namespace

std::string_view to_string(ModelKind model) { return model == ModelKind::kDirect ? "direct" : "dual"; }

ModelKind parse_model_kind(std::string_view text) {
    if (text == "direct") return ModelKind::kDirect;
    if (text == "dual") return ModelKind::kDual;
    throw std::invalid_argument("unknown model '" + std::string(text) + "' (expected direct or dual)");
}

std::string_view to_string(EvaluationPath path) { return path == EvaluationPath::kExact ? "exact" : "compiled"; }

EvaluationPath parse_evaluation_path(std::string_view text) {
    if (text == "exact") return EvaluationPath::kExact;
    if (text == "compiled") return EvaluationPath::kCompiled;
    throw std::invalid_argument("unknown evaluation path '" + std::string(text) + "' (expected exact or compiled)");
}

std::string_view to_string(LocalStatus status) {
    switch (status) {
        case LocalStatus::kConverged:
            return "converged";
        case LocalStatus::kSmallDecrease:
            return "small_decrease";
        case LocalStatus::kMaxIterations:
            return "max_iterations";
        case LocalStatus::kNoProgress:
            return "no_progress";
    }
    return "unknown";
}

void ObjectiveSpec::validate() const {
    if (L < 2) {
        throw std::invalid_argument("L must be >= 2");
    }
    if (P < 1) {
        throw std::invalid_argument("P must be >= 1");
    }
    if (!(h >= 0.0) || !std::isfinite(h)) {
        throw std::invalid_argument("h must be finite and >= 0");
    }
    if (path == EvaluationPath::kCompiled && model != ModelKind::kDirect) {
        throw std::invalid_argument("the compiled path is only available for the direct model");
    }
}

Objective::Objective(const ObjectiveSpec &spec, bool with_oracle) : spec_(spec) {
    spec_.validate();
    if (spec_.model == ModelKind::kDirect) {
        lattice_.emplace(spec_.L);
        auto direct = std::make_unique<DirectQaoa>(*lattice_, spec_.h);
        if (with_oracle) {
            auto gs = direct->model().lowest_eigenpairs(1, SectorSelection{true, 1, 1});
            ground_energy_ = gs.eigenvalues[0];
            ground_state_.emplace(std::move(gs.eigenvectors[0]));
        }
        system_ = std::move(direct);
    } else {
        auto dual = std::make_unique<DualQaoa>(spec_.L, spec_.h);
        if (with_oracle) {
            auto gs = dual_lowest_eigenpairs(dual->model(), 1);
            ground_energy_ = gs.eigenvalues[0];
            ground_state_.emplace(std::move(gs.eigenvectors[0]));
        }
        system_ = std::move(dual);
    }
}

StateVector Objective::state(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != num_parameters()) {
        throw std::invalid_argument("expected " + std::to_string(num_parameters()) + " parameters, got " +
                                    std::to_string(x.size()));
    }
    return state(Schedule::from_parameters(x, spec_.start));
}

StateVector Objective::state(const Schedule &schedule) const {
    schedule.validate();
    if (spec_.path == EvaluationPath::kExact) {
        return system_->evolve(schedule);
    }
    StateVector psi = system_->initial_state(schedule.start);
    for (int m = 0; m < schedule.depth(); ++m) {
        compile_qaoa_step(*lattice_, schedule.gammas[m], schedule.betas[m], schedule.start).apply_to(psi);
    }
    return psi;
}

double Objective::energy(std::span<const double> x) const {
    ++evaluations_;
    return system_->energy(state(x));
}

double Objective::energy(const Schedule &schedule) const {
    ++evaluations_;
    return system_->energy(state(schedule));
}

std::vector<double> Objective::gradient(std::span<const double> x, double step) const {
    if (static_cast<int>(x.size()) != num_parameters()) {
        throw std::invalid_argument("expected " + std::to_string(num_parameters()) + " parameters, got " +
                                    std::to_string(x.size()));
    }
    if (spec_.path != EvaluationPath::kExact) {
        return finite_difference_gradient([this](std::span<const double> y) { return energy(y); }, x, step);
    }
    const int P = spec_.P;
    const bool electric = spec_.start == StartKind::kElectric;
    // Each layer is a "first" then a "second" half: magnetic then electric
    // for the electric start, the reverse otherwise.
    const auto first_index = [&](int m) { return electric ? m : P + m; };
    const auto second_index = [&](int m) { return electric ? P + m : m; };
    const auto apply_first = [&](StateVector &psi, double angle) {
        electric ? system_->evolve_magnetic(psi, angle) : system_->evolve_electric(psi, angle);
    };
    const auto apply_second = [&](StateVector &psi, double angle) {
        electric ? system_->evolve_electric(psi, angle) : system_->evolve_magnetic(psi, angle);
    };
    const auto finish = [&](StateVector &psi, int from) {
        for (int m = from; m < P; ++m) {
            apply_first(psi, x[first_index(m)]);
            apply_second(psi, x[second_index(m)]);
        }
        ++evaluations_;
        return system_->energy(psi);
    };

    std::vector<double> g(x.size());
    StateVector prefix = system_->initial_state(spec_.start);
    for (int m = 0; m < P; ++m) {
        const int i1 = first_index(m);
        const int i2 = second_index(m);
        double e[2];
        for (int k = 0; k < 2; ++k) {
            StateVector psi = prefix;
            apply_first(psi, k == 0 ? x[i1] + step : x[i1] - step);
            apply_second(psi, x[i2]);
            e[k] = finish(psi, m + 1);
        }
        g[i1] = (e[0] - e[1]) / (2 * step);
        apply_first(prefix, x[i1]);
        for (int k = 0; k < 2; ++k) {
            StateVector psi = prefix;
            apply_second(psi, k == 0 ? x[i2] + step : x[i2] - step);
            e[k] = finish(psi, m + 1);
        }
        g[i2] = (e[0] - e[1]) / (2 * step);
        apply_second(prefix, x[i2]);
    }
    return g;
}

double Objective::ground_energy() const {
    if (!ground_state_) {
        throw std::logic_error("objective was built without an oracle");
    }
    return ground_energy_;
}

const StateVector &Objective::ground_state() const {
    if (!ground_state_) {
        throw std::logic_error("objective was built without an oracle");
    }
    return *ground_state_;
}

double Objective::fidelity(const StateVector &psi) const { return z2lgt::fidelity(psi, ground_state()); }

std::vector<double> finite_difference_gradient(const ScalarFunction &f, std::span<const double> x, double step) {
    NonFiniteFlag flag;
    const ScalarFunction checked = [&](std::span<const double> y) {
        const double v = f(y);
        flag.check(y, {&v, 1});
        return v;
    };
    auto g = central_difference(checked, x, step);
    flag.raise();
    return g;
}

LocalResult local_minimize(const ScalarFunction &f, std::vector<double> x0, const LocalMinimizeOptions &options,
                           const GradientFunction &gradient) {
    if (x0.empty()) {
        throw std::invalid_argument("local_minimize needs at least one parameter");
    }
    NonFiniteFlag flag;
    ceres::GradientProblem problem(
        new CeresFunction(f, gradient, options.fd_step, static_cast<int>(x0.size()), flag));
    StoppingCallback callback(options, flag);

    ceres::GradientProblemSolver::Options solver;
    solver.line_search_direction_type = ceres::BFGS;
    solver.line_search_type = ceres::WOLFE;
    solver.line_search_sufficient_curvature_decrease = options.line_search_curvature;
    solver.max_num_iterations = options.max_iterations;
    solver.gradient_tolerance = options.gtol;
    // Termination on value changes is handled by the callback.
    solver.function_tolerance = 0.0;
    solver.parameter_tolerance = 0.0;
    solver.logging_type = ceres::SILENT;
    solver.callbacks.push_back(&callback);

    ceres::GradientProblemSolver::Summary summary;
    ceres::Solve(solver, problem, x0.data(), &summary);
    flag.raise();

    LocalResult result;
    result.x = std::move(x0);
    result.value = summary.final_cost;
    result.iterations = summary.iterations.empty() ? 0 : summary.iterations.back().iteration;
    result.gradient_norm = summary.iterations.empty() ? 0.0 : summary.iterations.back().gradient_max_norm;
    if (result.gradient_norm <= options.gtol) {
        result.status = LocalStatus::kConverged;
    } else if (callback.small_decrease) {
        result.status = LocalStatus::kSmallDecrease;
    } else if (summary.termination_type == ceres::NO_CONVERGENCE) {
        result.status = LocalStatus::kMaxIterations;
    } else {
        result.status = LocalStatus::kNoProgress;
    }
    return result;
}

Schedule linear_dqa_schedule(int P, double h, double dt, StartKind start) {
    if (P < 1) {
        throw std::invalid_argument("P must be >= 1");
    }
    if (!(dt > 0.0)) {
        throw std::invalid_argument("dt must be > 0");
    }
    if (start == StartKind::kMagnetic && !(h > 0.0)) {
        throw std::invalid_argument("the magnetic-start schedule needs h > 0");
    }
    Schedule s;
    s.start = start;
    for (int m = 1; m <= P; ++m) {
        if (start == StartKind::kElectric) {
            s.gammas.push_back(m * dt * h / P);
            s.betas.push_back(dt);
        } else {
            s.gammas.push_back(dt);
            s.betas.push_back(m * dt / (h * P));
        }
    }
    return s;
}

std::vector<double> geometric_grid(double lo, double hi, int n) {
    if (n < 1 || !(lo > 0.0) || !(hi >= lo)) {
        throw std::invalid_argument("geometric_grid needs n >= 1 and 0 < lo <= hi");
    }
    if (n == 1) {
        return {lo};
    }
    std::vector<double> out(n);
    const double ratio = std::log(hi / lo) / (n - 1);
    for (int i = 0; i < n; ++i) {
        out[i] = lo * std::exp(ratio * i);
    }
    out.back() = hi;
    return out;
}

std::vector<double> default_dt_grid() { return geometric_grid(0.02, 1.5, 60); }

DtScan grid_search_dt(const Objective &objective, std::span<const double> dt_grid, int threads) {
    check_grid(dt_grid);
    DtScan scan;
    scan.dts.assign(dt_grid.begin(), dt_grid.end());
    scan.energies.resize(scan.dts.size());
    const auto &spec = objective.spec();
    parallel_for(scan.dts.size(), threads, [&](size_t i) {
        scan.energies[i] = objective.energy(linear_dqa_schedule(spec.P, spec.h, scan.dts[i], spec.start));
    });
    finish_scan(scan);
    return scan;
}

OptimizationResult two_step_optimize(const Objective &objective, const TwoStepOptions &options) {
    if (options.n_restarts < 1) {
        throw std::invalid_argument("n_restarts must be >= 1");
    }
    if (!(options.epsilon >= 0.0)) {
        throw std::invalid_argument("epsilon must be >= 0");
    }
    const std::vector<double> grid = options.dt_grid.empty() ? default_dt_grid() : options.dt_grid;
    DtScan scan = grid_search_dt(objective, grid, options.threads);
    std::vector<std::string> warnings;
    if (!scan.interior && scan.dts.size() >= 2) {
        // Extend past the offending endpoint by half the grid with the same
        // spacing ratio.
        const bool at_top = scan.dt_star == scan.dts.back();
        const double ratio = scan.dts[1] / scan.dts[0];
        const size_t extra = std::max<size_t>(1, scan.dts.size() / 2);
        std::vector<double> more;
        for (size_t k = 1; k <= extra; ++k) {
            more.push_back(at_top ? scan.dts.back() * std::pow(ratio, k) : scan.dts.front() / std::pow(ratio, k));
        }
        if (!at_top) {
            std::reverse(more.begin(), more.end());
        }
        const DtScan added = grid_search_dt(objective, more, options.threads);
        if (at_top) {
            scan.dts.insert(scan.dts.end(), added.dts.begin(), added.dts.end());
            scan.energies.insert(scan.energies.end(), added.energies.begin(), added.energies.end());
        } else {
            scan.dts.insert(scan.dts.begin(), added.dts.begin(), added.dts.end());
            scan.energies.insert(scan.energies.begin(), added.energies.begin(), added.energies.end());
        }
        finish_scan(scan);
        warnings.push_back(std::string("dt minimum on the ") + (at_top ? "upper" : "lower") +
                           " grid endpoint; grid extended");
        if (!scan.interior) {
            warnings.push_back("dt minimum still on a grid endpoint after extension");
        }
    }

    const auto &spec = objective.spec();
    const auto x0 = linear_dqa_schedule(spec.P, spec.h, scan.dt_star, spec.start).to_parameters();
    std::vector<std::vector<double>> starts;
    std::vector<uint64_t> seeds;
    for (int r = 0; r < options.n_restarts; ++r) {
        seeds.push_back(stream_seed(options.seed, r));
        starts.push_back(perturbed(x0, options.epsilon, seeds.back()));
    }
    OptimizationResult result = multistart(objective, starts, seeds, options.local, options.threads);
    result.method = "two_step";
    result.dt_scan = std::move(scan);
    result.warnings = std::move(warnings);
    return result;
}

BasinHoppingRun basin_hopping(const ScalarFunction &f, std::vector<double> x0, const BasinHoppingOptions &options,
                              const GradientFunction &gradient) {
    if (!(options.temperature > 0.0)) {
        throw std::invalid_argument("basin hopping temperature must be > 0");
    }
    if (options.n_runs < 1 || options.n_hops < 0) {
        throw std::invalid_argument("basin hopping needs n_runs >= 1 and n_hops >= 0");
    }
    const LocalResult start = local_minimize(f, std::move(x0), options.local, gradient);

    std::vector<LocalResult> best(options.n_runs);
    std::vector<int> iterations(options.n_runs);
    std::vector<uint64_t> seeds(options.n_runs);
    parallel_for(options.n_runs, options.threads, [&](size_t r) {
        seeds[r] = stream_seed(options.seed, r);
        SplitMix64 rng(seeds[r]);
        LocalResult current = start;
        LocalResult run_best = start;
        int its = start.iterations;
        for (int hop = 0; hop < options.n_hops; ++hop) {
            std::vector<double> trial = current.x;
            for (double &v : trial) {
                v += rng.uniform(-options.step, options.step);
            }
            LocalResult next = local_minimize(f, std::move(trial), options.local, gradient);
            its += next.iterations;
            const double u = rng.uniform();
            if (next.value < run_best.value) {
                run_best = next;
            }
            if (next.value <= current.value || u < std::exp(-(next.value - current.value) / options.temperature)) {
                current = std::move(next);
            }
        }
        best[r] = std::move(run_best);
        iterations[r] = its;
    });

    BasinHoppingRun out;
    for (int r = 0; r < options.n_runs; ++r) {
        out.runs.push_back({r, seeds[r], iterations[r], best[r].value, best[r].status});
    }
    out.best = std::move(best[best_index(best)]);
    return out;
}

OptimizationResult basin_hopping(const Objective &objective, std::vector<double> x0,
                                 const BasinHoppingOptions &options) {
    if (static_cast<int>(x0.size()) != objective.num_parameters()) {
        throw std::invalid_argument("x0 has the wrong number of parameters");
    }
    BasinHoppingRun run =
        basin_hopping(as_function(objective), std::move(x0), options, as_gradient(objective, options.local));
    OptimizationResult result;
    result.method = "basin_hopping";
    result.spec = objective.spec();
    result.restarts = std::move(run.runs);
    result.best = Schedule::from_parameters(run.best.x, objective.spec().start);
    result.best_energy = run.best.value;
    fill_oracle_fields(objective, result);
    return result;
}

OptimizationResult transfer_schedule(const Schedule &source, const Objective &target, const TwoStepOptions &options) {
    source.validate();
    if (source.depth() != target.spec().P) {
        throw std::invalid_argument("source schedule has P = " + std::to_string(source.depth()) +
                                    " but the target objective has P = " + std::to_string(target.spec().P));
    }
    if (source.start != target.spec().start) {
        throw std::invalid_argument("source and target start states differ");
    }
    if (options.n_restarts < 1) {
        throw std::invalid_argument("n_restarts must be >= 1");
    }
    const auto x0 = source.to_parameters();
    std::vector<std::vector<double>> starts;
    std::vector<uint64_t> seeds;
    for (int r = 0; r < options.n_restarts; ++r) {
        seeds.push_back(stream_seed(options.seed, r));
        starts.push_back(r == 0 ? x0 : perturbed(x0, options.epsilon, seeds.back()));
    }
    OptimizationResult result = multistart(target, starts, seeds, options.local, options.threads);
    result.method = "transfer";
    return result;
}

OptimizationResult transfer_schedule(const OptimizationResult &source, const Objective &target,
                                     const TwoStepOptions &options) {
    return transfer_schedule(source.best, target, options);
}

ScheduleDiagnostics schedule_diagnostics(const Schedule &schedule) {
    schedule.validate();
    ScheduleDiagnostics d;
    for (int m = 0; m < schedule.depth(); ++m) {
        const double dt = schedule.gammas[m] + schedule.betas[m];
        d.dt.push_back(dt);
        if (dt == 0.0) {
            d.degenerate.push_back(m);
            d.s.push_back(std::nan(""));
        } else {
            d.s.push_back(schedule.gammas[m] / dt);
        }
    }
    for (size_t m = 1; m + 1 < d.s.size(); ++m) {
        const double term = d.s[m + 1] - 2 * d.s[m] + d.s[m - 1];
        if (!std::isnan(term)) {
            d.smoothness += std::abs(term);
        }
    }
    return d;
}

nlohmann::json to_json(const ObjectiveSpec &spec) {
    return {{"model", to_string(spec.model)}, {"L", spec.L},
            {"h", spec.h},                    {"P", spec.P},
            {"start", to_string(spec.start)}, {"path", to_string(spec.path)}};
}

nlohmann::json to_json(const Schedule &schedule) {
    return {{"start", to_string(schedule.start)}, {"gammas", schedule.gammas}, {"betas", schedule.betas}};
}

nlohmann::json to_json(const OptimizationResult &result) {
    auto optional = [](const std::optional<double> &v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
    nlohmann::json restarts = nlohmann::json::array();
    for (const auto &r : result.restarts) {
        restarts.push_back({{"index", r.index},
                            {"seed", r.seed},
                            {"iterations", r.iterations},
                            {"energy", r.energy},
                            {"status", to_string(r.status)}});
    }
    nlohmann::json scan = nullptr;
    if (result.dt_scan) {
        scan = {{"dts", result.dt_scan->dts},
                {"energies", result.dt_scan->energies},
                {"dt_star", result.dt_scan->dt_star},
                {"energy_star", result.dt_scan->energy_star},
                {"interior", result.dt_scan->interior}};
    }
    return {{"schema", kOptimizationSchema},
            {"method", result.method},
            {"spec", to_json(result.spec)},
            {"best_schedule", to_json(result.best)},
            {"best_energy", result.best_energy},
            {"ground_energy", optional(result.ground_energy)},
            {"residual_energy", optional(result.residual_energy)},
            {"fidelity", optional(result.fidelity)},
            {"restarts", restarts},
            {"dt_scan", scan},
            {"warnings", result.warnings}};
}

Schedule schedule_from_json(const nlohmann::json &j) {
    Schedule s;
    s.start = parse_start_kind(j.at("start").get<std::string>());
    s.gammas = j.at("gammas").get<std::vector<double>>();
    s.betas = j.at("betas").get<std::vector<double>>();
    s.validate();
    return s;
}

OptimizationResult optimization_result_from_json(const nlohmann::json &j) {
    if (j.at("schema").get<std::string>() != kOptimizationSchema) {
        throw std::invalid_argument("unsupported result schema '" + j.at("schema").get<std::string>() + "'");
    }
    auto optional = [&j](const char *key) -> std::optional<double> {
        return j.at(key).is_null() ? std::nullopt : std::optional<double>(j.at(key).get<double>());
    };
    OptimizationResult r;
    r.method = j.at("method").get<std::string>();
    const auto &spec = j.at("spec");
    r.spec.model = parse_model_kind(spec.at("model").get<std::string>());
    r.spec.L = spec.at("L").get<int>();
    r.spec.h = spec.at("h").get<double>();
    r.spec.P = spec.at("P").get<int>();
    r.spec.start = parse_start_kind(spec.at("start").get<std::string>());
    r.spec.path = parse_evaluation_path(spec.at("path").get<std::string>());
    r.best = schedule_from_json(j.at("best_schedule"));
    r.best_energy = j.at("best_energy").get<double>();
    r.ground_energy = optional("ground_energy");
    r.residual_energy = optional("residual_energy");
    r.fidelity = optional("fidelity");
    for (const auto &rec : j.at("restarts")) {
        RestartRecord record;
        record.index = rec.at("index").get<int>();
        record.seed = rec.at("seed").get<uint64_t>();
        record.iterations = rec.at("iterations").get<int>();
        record.energy = rec.at("energy").get<double>();
        const auto status = rec.at("status").get<std::string>();
        record.status = status == "converged"        ? LocalStatus::kConverged
                        : status == "small_decrease" ? LocalStatus::kSmallDecrease
                        : status == "max_iterations" ? LocalStatus::kMaxIterations
                                                     : LocalStatus::kNoProgress;
        r.restarts.push_back(record);
    }
    if (!j.at("dt_scan").is_null()) {
        const auto &s = j.at("dt_scan");
        DtScan scan;
        scan.dts = s.at("dts").get<std::vector<double>>();
        scan.energies = s.at("energies").get<std::vector<double>>();
        scan.dt_star = s.at("dt_star").get<double>();
        scan.energy_star = s.at("energy_star").get<double>();
        scan.interior = s.at("interior").get<bool>();
        r.dt_scan = std::move(scan);
    }
    r.warnings = j.at("warnings").get<std::vector<std::string>>();
    return r;
}

}  // namespace z2lgt
