/*
 * qcmorph
 *
 * Copyright 2026 The qcmorph authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include "qcmorph/core.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <vector>

namespace qcmorph {

/// Per-vertex constraint for the planar Beltrami solves.
///  - Free: both coordinates unknown.
///  - Pinned: position fixed at `target`.
///  - Line: position slides along `point + t * dir` (one unknown).
struct VertexBC {
    enum class Kind { Free, Pinned, Line };
    Kind kind = Kind::Free;
    Eigen::Vector2d target{0, 0};
    Eigen::Vector2d point{0, 0};
    Eigen::Vector2d dir{1, 0};

    static VertexBC free() { return {}; }
    static VertexBC pinned(const Eigen::Vector2d& t) {
        return {Kind::Pinned, t, {0, 0}, {1, 0}};
    }
    static VertexBC line(const Eigen::Vector2d& p, const Eigen::Vector2d& d) {
        return {Kind::Line, {0, 0}, p, d.normalized()};
    }
};

/// Least-squares solver for the discrete Beltrami equation
/// div(A(mu) grad f) = 0 on a planar triangulation, under pinned and
/// sliding-line vertex constraints. The quadratic form is the A(mu)
/// Dirichlet energy of both coordinates; constrained degrees of freedom
/// are eliminated by substitution, so pinned values are reproduced
/// exactly. Constraints are fixed at construction; `solve` may be called
/// repeatedly with different coefficients (the sparsity pattern is reused).
class LbsSolver {
public:
    LbsSolver(MatX2d sourceUv, MatX3i faces, std::vector<VertexBC> bc);

    /// Solves with the given per-face coefficient (|mu| < 1 required).
    /// Throws SolverError on a singular reduced system.
    MatX2d solve(const VecXcd& mu);

    const MatX2d& sourceUv() const { return uv_; }

private:
    MatX2d uv_;
    MatX3i F_;
    std::vector<VertexBC> bc_;
    Eigen::SparseMatrix<double> basis_;  // x = basis * y + offset
    VecXd offset_;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt_;
    bool analyzed_ = false;
};

/// One-call convenience wrapper around LbsSolver.
MatX2d linearBeltramiSolver(const MatX2d& sourceUv, const MatX3i& faces, const VecXcd& mu,
                            const std::vector<VertexBC>& bc);

/// Minimizes u^T K u over the free entries with the listed entries pinned;
/// the scalar Dirichlet problem behind the harmonic and conformal-module
/// solves. Throws SolverError if the reduced system is singular.
VecXd solveDirichlet(const Eigen::SparseMatrix<double>& K,
                     const std::vector<std::pair<int, double>>& pins);

}  // namespace qcmorph
