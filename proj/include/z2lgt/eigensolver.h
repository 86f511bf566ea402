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

#ifndef Z2LGT_EIGENSOLVER_H
#define Z2LGT_EIGENSOLVER_H

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace z2lgt {

/// Real symmetric operator given by its action. `project`, when set, must be
/// an orthogonal projector commuting with the operator; the solver then works
/// inside its range.
struct RealOperator {
    size_t dimension = 0;
    std::function<void(std::span<const double> in, std::span<double> out)> apply;
    std::function<void(std::span<double> v)> project;
};

struct EigenSolverOptions {
    int num_eigenpairs = 1;
    /// Effective block size is max(block_size, num_eigenpairs).
    int block_size = 4;
    /// Basis size that triggers a thick restart.
    int max_basis = 160;
    double tolerance = 1e-8;
    /// Counted in block steps.
    int max_iterations = 2000;
    uint64_t seed = 0x5eed;
};

struct EigenResult {
    std::vector<double> values;
    std::vector<std::vector<double>> vectors;
    /// ||A v - lambda v|| recomputed from the returned vectors.
    std::vector<double> residuals;
    int iterations = 0;
    /// Set when the Krylov space became invariant before the requested count
    /// was reached (small or heavily projected spaces). The result then holds
    /// the whole accessible spectrum.
    bool exhausted = false;
};

class ConvergenceError : public std::runtime_error {
   public:
    ConvergenceError(const std::string &what, std::vector<double> best_residuals)
        : std::runtime_error(what), best_residuals_(std::move(best_residuals)) {}

    const std::vector<double> &best_residuals() const { return best_residuals_; }

   private:
    std::vector<double> best_residuals_;
};

/// Lowest eigenpairs by restarted block Lanczos with full reorthogonalization.
/// Values ascend. Throws ConvergenceError after max_iterations.
EigenResult block_lanczos(const RealOperator &op, const EigenSolverOptions &options);

/// Hermitian operator on the solver's real vectors, used to label states.
using RealLabelOperator = std::function<void(std::span<const double> in, std::span<double> out)>;

/// Within every run of eigenvalues closer than `cluster_tol`, rotates the
/// eigenvectors to diagonalize each label operator in turn, then orders the
/// run by descending label expectation (first operator first). Returns the
/// label expectations per pair. Values and residuals of rotated pairs are
/// recomputed with `op`.
std::vector<std::vector<double>> resolve_degeneracies(const RealOperator &op, EigenResult &result,
                                                      std::span<const RealLabelOperator> labels, double cluster_tol);

/// Dense fallback for tiny operators: materializes the matrix column by
/// column and diagonalizes it. Intended for oracles at dimension <= 4096.
EigenResult dense_eigenpairs(const RealOperator &op, int count);

}  // namespace z2lgt

#endif
