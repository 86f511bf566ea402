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

#include "z2lgt/eigensolver.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Dense>

#include "z2lgt/rng.h"

namespace z2lgt {

namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

double residual_norm(const RealOperator &op, std::span<const double> v, double lambda) {
    std::vector<double> av(v.size());
    op.apply(v, av);
    double acc = 0.0;
    for (size_t i = 0; i < v.size(); ++i) {
        const double r = av[i] - lambda * v[i];
        acc += r * r;
    }
    return std::sqrt(acc);
}

// Working state of the restarted block recursion. Columns [0, processed) of
// `basis` have had the operator applied; T(:, j) for those columns holds the
// expansion coefficients of A v_j. Columns [processed, size) form the next
// block.
class BlockLanczos {
   public:
    BlockLanczos(const RealOperator &op, const EigenSolverOptions &options)
        : op_(op),
          opts_(options),
          block_(std::max(options.block_size, options.num_eigenpairs)),
          capacity_(std::max(options.max_basis, 3 * block_) + block_),
          rng_(options.seed) {
        basis_.resize(static_cast<Index>(op.dimension), capacity_);
        t_ = MatrixXd::Zero(capacity_, capacity_);
        scratch_.resize(op.dimension);
    }

    EigenResult run() {
        const int k = opts_.num_eigenpairs;
        for (int j = 0; j < block_; ++j) {
            if (!append_random()) {
                break;
            }
        }
        if (size_ == 0) {
            throw std::invalid_argument("projector range is empty");
        }
        std::vector<double> best(k, std::numeric_limits<double>::infinity());
        for (int iter = 1; iter <= opts_.max_iterations; ++iter) {
            const Index stop = size_;
            while (processed_ < stop) {
                process_column(processed_++);
            }
            const bool exhausted = processed_ == size_;
            rayleigh_ritz();
            const int available = static_cast<int>(std::min<Index>(k, processed_));
            bool converged = true;
            for (int i = 0; i < available; ++i) {
                const double r = ritz_residual(i);
                best[i] = std::min(best[i], r);
                converged = converged && r <= opts_.tolerance;
            }
            if (exhausted || (converged && available == k)) {
                EigenResult result = extract(available);
                result.iterations = iter;
                result.exhausted = exhausted && available < k;
                bool ok = true;
                for (double r : result.residuals) {
                    ok = ok && r <= opts_.tolerance;
                }
                if (ok) {
                    return result;
                }
                if (exhausted) {
                    throw ConvergenceError("Krylov space exhausted without meeting the residual bound",
                                           result.residuals);
                }
                // Estimated and true residuals disagree: keep iterating.
            }
            if (size_ + block_ > capacity_) {
                restart();
            }
        }
        throw ConvergenceError("block Lanczos did not converge in " + std::to_string(opts_.max_iterations) +
                                   " iterations",
                               best);
    }

   private:
    void project(std::span<double> v) const {
        if (op_.project) {
            op_.project(v);
        }
    }

    // Orthogonalizes scratch_ against the basis twice; coefficients go to
    // `coeffs` when given. Returns the remaining norm.
    double orthogonalize(VectorXd *coeffs) {
        Eigen::Map<VectorXd> w(scratch_.data(), static_cast<Index>(scratch_.size()));
        const auto v = basis_.leftCols(size_);
        for (int pass = 0; pass < 2; ++pass) {
            const VectorXd c = v.transpose() * w;
            w.noalias() -= v * c;
            if (coeffs) {
                *coeffs += c;
            }
        }
        return w.norm();
    }

    void push_scratch(double norm) {
        Eigen::Map<VectorXd> w(scratch_.data(), static_cast<Index>(scratch_.size()));
        basis_.col(size_) = w / norm;
        ++size_;
    }

    bool append_random() {
        for (int attempt = 0; attempt < 4; ++attempt) {
            for (double &x : scratch_) {
                x = rng_.uniform(-1.0, 1.0);
            }
            project(scratch_);
            const double before = std::sqrt(std::inner_product(scratch_.begin(), scratch_.end(), scratch_.begin(), 0.0));
            if (before == 0.0) {
                return false;
            }
            const double after = orthogonalize(nullptr);
            if (after > 1e-8 * before) {
                push_scratch(after);
                return true;
            }
        }
        return false;
    }

    void process_column(Index j) {
        op_.apply(std::span<const double>(basis_.col(j).data(), scratch_.size()), scratch_);
        project(scratch_);
        const double scale = std::sqrt(std::inner_product(scratch_.begin(), scratch_.end(), scratch_.begin(), 0.0));
        VectorXd c = VectorXd::Zero(size_);
        const double r = orthogonalize(&c);
        t_.col(j).head(size_) = c;
        if (r > 1e-10 * std::max(scale, 1.0)) {
            t_(size_, j) = r;
            push_scratch(r);
        } else if (size_ < static_cast<Index>(op_.dimension)) {
            // Invariant direction found; keep the block width with a fresh
            // random vector that A v_j does not couple to.
            append_random();
        }
    }

    void rayleigh_ritz() {
        const MatrixXd tp = t_.topLeftCorner(processed_, processed_);
        const MatrixXd sym = 0.5 * (tp + tp.transpose());
        Eigen::SelfAdjointEigenSolver<MatrixXd> solver(sym);
        theta_ = solver.eigenvalues();
        y_ = solver.eigenvectors();
    }

    double ritz_residual(int i) const {
        if (size_ == processed_) {
            return 0.0;
        }
        return (t_.block(processed_, 0, size_ - processed_, processed_) * y_.col(i)).norm();
    }

    EigenResult extract(int count) const {
        EigenResult result;
        const MatrixXd x = basis_.leftCols(processed_) * y_.leftCols(count);
        for (int i = 0; i < count; ++i) {
            std::vector<double> v(x.col(i).data(), x.col(i).data() + x.rows());
            const double n = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
            for (double &e : v) {
                e /= n;
            }
            result.values.push_back(theta_(i));
            result.residuals.push_back(residual_norm(op_, v, theta_(i)));
            result.vectors.push_back(std::move(v));
        }
        return result;
    }

    void restart() {
        const Index keep = std::min<Index>(
            processed_, std::min<Index>(std::max<Index>(2 * opts_.num_eigenpairs, opts_.num_eigenpairs + block_),
                                        capacity_ - 2 * block_));
        const Index pending = size_ - processed_;
        const MatrixXd ritz = basis_.leftCols(processed_) * y_.leftCols(keep);
        const MatrixXd coupling = t_.block(processed_, 0, pending, processed_) * y_.leftCols(keep);
        const MatrixXd tail = basis_.middleCols(processed_, pending);
        basis_.leftCols(keep) = ritz;
        basis_.middleCols(keep, pending) = tail;
        t_.setZero();
        for (Index i = 0; i < keep; ++i) {
            t_(i, i) = theta_(i);
        }
        t_.block(keep, 0, pending, keep) = coupling;
        t_.block(0, keep, keep, pending) = coupling.transpose();
        processed_ = keep;
        size_ = keep + pending;
    }

    const RealOperator &op_;
    EigenSolverOptions opts_;
    int block_;
    Index capacity_;
    SplitMix64 rng_;
    MatrixXd basis_;
    MatrixXd t_;
    std::vector<double> scratch_;
    Index size_ = 0;
    Index processed_ = 0;
    VectorXd theta_;
    MatrixXd y_;
};

}  // namespace

EigenResult block_lanczos(const RealOperator &op, const EigenSolverOptions &options) {
    if (options.num_eigenpairs < 1) {
        throw std::invalid_argument("need at least one eigenpair");
    }
    if (op.dimension == 0 || !op.apply) {
        throw std::invalid_argument("operator has no action");
    }
    BlockLanczos solver(op, options);
    return solver.run();
}

EigenResult dense_eigenpairs(const RealOperator &op, int count) {
    const auto dim = static_cast<Index>(op.dimension);
    if (dim > 4096) {
        throw std::length_error("dense eigensolver limited to dimension 4096");
    }
    MatrixXd basis = MatrixXd::Identity(dim, dim);
    if (op.project) {
        MatrixXd p(dim, dim);
        for (Index j = 0; j < dim; ++j) {
            std::vector<double> e(dim, 0.0);
            e[j] = 1.0;
            op.project(e);
            p.col(j) = Eigen::Map<VectorXd>(e.data(), dim);
        }
        Eigen::SelfAdjointEigenSolver<MatrixXd> ps(0.5 * (p + p.transpose()));
        Index rank = 0;
        for (Index j = 0; j < dim; ++j) {
            rank += ps.eigenvalues()(j) > 0.5;
        }
        basis = ps.eigenvectors().rightCols(rank);
    }
    MatrixXd a(dim, basis.cols());
    std::vector<double> out(dim);
    for (Index j = 0; j < basis.cols(); ++j) {
        op.apply(std::span<const double>(basis.col(j).data(), out.size()), out);
        a.col(j) = Eigen::Map<VectorXd>(out.data(), dim);
    }
    const MatrixXd m = basis.transpose() * a;
    Eigen::SelfAdjointEigenSolver<MatrixXd> solver(0.5 * (m + m.transpose()));
    EigenResult result;
    const Index n = std::min<Index>(count, m.rows());
    result.exhausted = n < count;
    for (Index i = 0; i < n; ++i) {
        const VectorXd v = basis * solver.eigenvectors().col(i);
        std::vector<double> vec(v.data(), v.data() + dim);
        result.values.push_back(solver.eigenvalues()(i));
        result.residuals.push_back(residual_norm(op, vec, solver.eigenvalues()(i)));
        result.vectors.push_back(std::move(vec));
    }
    return result;
}

std::vector<std::vector<double>> resolve_degeneracies(const RealOperator &op, EigenResult &result,
                                                      std::span<const RealLabelOperator> labels, double cluster_tol) {
    const size_t n = result.values.size();
    const size_t dim = op.dimension;
    auto expectation = [&](const RealLabelOperator &l, const std::vector<double> &a, const std::vector<double> &b) {
        std::vector<double> lb(dim);
        l(b, lb);
        return std::inner_product(a.begin(), a.end(), lb.begin(), 0.0);
    };
    size_t start = 0;
    while (start < n) {
        size_t stop = start + 1;
        while (stop < n && result.values[stop] - result.values[stop - 1] < cluster_tol) {
            ++stop;
        }
        const size_t c = stop - start;
        if (c > 1) {
            // Groups of indices (within the cluster) still sharing all labels.
            std::vector<std::vector<size_t>> groups = {std::vector<size_t>(c)};
            std::iota(groups[0].begin(), groups[0].end(), start);
            for (const auto &label : labels) {
                std::vector<std::vector<size_t>> next;
                for (const auto &g : groups) {
                    const Index m = static_cast<Index>(g.size());
                    MatrixXd lm(m, m);
                    for (Index a = 0; a < m; ++a) {
                        for (Index b = 0; b < m; ++b) {
                            lm(a, b) = expectation(label, result.vectors[g[a]], result.vectors[g[b]]);
                        }
                    }
                    Eigen::SelfAdjointEigenSolver<MatrixXd> es(0.5 * (lm + lm.transpose()));
                    // Descending label order.
                    std::vector<std::vector<double>> rotated;
                    for (Index col = m - 1; col >= 0; --col) {
                        std::vector<double> v(dim, 0.0);
                        for (Index a = 0; a < m; ++a) {
                            const double w = es.eigenvectors()(a, col);
                            const auto &src = result.vectors[g[a]];
                            for (size_t i = 0; i < dim; ++i) {
                                v[i] += w * src[i];
                            }
                        }
                        rotated.push_back(std::move(v));
                    }
                    for (Index a = 0; a < m; ++a) {
                        result.vectors[g[a]] = std::move(rotated[a]);
                    }
                    std::vector<size_t> cur = {g[0]};
                    for (Index a = 1; a < m; ++a) {
                        if (std::abs(es.eigenvalues()(m - a) - es.eigenvalues()(m - 1 - a)) < 1e-6) {
                            cur.push_back(g[a]);
                        } else {
                            next.push_back(cur);
                            cur = {g[a]};
                        }
                    }
                    next.push_back(cur);
                }
                groups = std::move(next);
            }
            for (size_t i = start; i < stop; ++i) {
                std::vector<double> av(dim);
                op.apply(result.vectors[i], av);
                result.values[i] =
                    std::inner_product(result.vectors[i].begin(), result.vectors[i].end(), av.begin(), 0.0);
                result.residuals[i] = residual_norm(op, result.vectors[i], result.values[i]);
            }
        }
        start = stop;
    }
    std::vector<std::vector<double>> out(n);
    for (size_t i = 0; i < n; ++i) {
        for (const auto &label : labels) {
            out[i].push_back(expectation(label, result.vectors[i], result.vectors[i]));
        }
    }
    return out;
}

}  // namespace z2lgt
