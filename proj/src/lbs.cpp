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
#include "qcmorph/lbs.hpp"

#include "qcmorph/laplacian.hpp"

namespace qcmorph {

LbsSolver::LbsSolver(MatX2d sourceUv, MatX3i faces, std::vector<VertexBC> bc)
    : uv_(std::move(sourceUv)), F_(std::move(faces)), bc_(std::move(bc)) {
    const Eigen::Index nv = uv_.rows();
    if (static_cast<Eigen::Index>(bc_.size()) != nv) {
        throw ValidationError("constraint list size does not match vertex count");
    }

    Eigen::Index numReduced = 0;
    bool anyPinned = false;
    for (const auto& c : bc_) {
        switch (c.kind) {
            case VertexBC::Kind::Free:
                numReduced += 2;
                break;
            case VertexBC::Kind::Line:
                numReduced += 1;
                break;
            case VertexBC::Kind::Pinned:
                anyPinned = true;
                break;
        }
    }
    if (!anyPinned) {
        throw ValidationError("at least one pinned vertex is required");
    }

    // Unknown layout x = [u; v]; x = basis * y + offset.
    offset_ = VecXd::Zero(2 * nv);
    std::vector<Eigen::Triplet<double>> triplets;
    Eigen::Index next = 0;
    for (Eigen::Index i = 0; i < nv; ++i) {
        const auto& c = bc_[static_cast<size_t>(i)];
        switch (c.kind) {
            case VertexBC::Kind::Free:
                triplets.emplace_back(i, next, 1.0);
                triplets.emplace_back(nv + i, next + 1, 1.0);
                next += 2;
                break;
            case VertexBC::Kind::Line:
                triplets.emplace_back(i, next, c.dir.x());
                triplets.emplace_back(nv + i, next, c.dir.y());
                offset_(i) = c.point.x();
                offset_(nv + i) = c.point.y();
                next += 1;
                break;
            case VertexBC::Kind::Pinned:
                offset_(i) = c.target.x();
                offset_(nv + i) = c.target.y();
                break;
        }
    }
    basis_.resize(2 * nv, numReduced);
    basis_.setFromTriplets(triplets.begin(), triplets.end());
}

MatX2d LbsSolver::solve(const VecXcd& mu) {
    const Eigen::Index nv = uv_.rows();
    const Eigen::SparseMatrix<double> K = beltramiStiffness<double>(uv_, F_, mu);

    // H = blkdiag(K, K) on [u; v].
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(static_cast<size_t>(K.nonZeros()) * 2);
    for (int col = 0; col < K.outerSize(); ++col) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(K, col); it; ++it) {
            triplets.emplace_back(it.row(), it.col(), it.value());
            triplets.emplace_back(nv + it.row(), nv + it.col(), it.value());
        }
    }
    Eigen::SparseMatrix<double> H(2 * nv, 2 * nv);
    H.setFromTriplets(triplets.begin(), triplets.end());

    const Eigen::SparseMatrix<double> HB = H * basis_;
    const Eigen::SparseMatrix<double> reduced = basis_.transpose() * HB;
    const VecXd rhs = -HB.transpose() * offset_;

    if (!analyzed_) {
        ldlt_.analyzePattern(reduced);
        analyzed_ = true;
    }
    ldlt_.factorize(reduced);
    if (ldlt_.info() != Eigen::Success) {
        throw SolverError("singular system in linear Beltrami solve");
    }
    const VecXd y = ldlt_.solve(rhs);
    if (ldlt_.info() != Eigen::Success) {
        throw SolverError("linear Beltrami solve failed");
    }
    const VecXd x = basis_ * y + offset_;
    MatX2d out(nv, 2);
    out.col(0) = x.head(nv);
    out.col(1) = x.tail(nv);
    return out;
}

MatX2d linearBeltramiSolver(const MatX2d& sourceUv, const MatX3i& faces, const VecXcd& mu,
                            const std::vector<VertexBC>& bc) {
    LbsSolver solver(sourceUv, faces, bc);
    return solver.solve(mu);
}

VecXd solveDirichlet(const Eigen::SparseMatrix<double>& K,
                     const std::vector<std::pair<int, double>>& pins) {
    const Eigen::Index n = K.rows();
    if (pins.empty()) throw ValidationError("Dirichlet solve needs at least one pin");
    std::vector<char> pinnedMask(static_cast<size_t>(n), 0);
    VecXd values = VecXd::Zero(n);
    for (const auto& [idx, val] : pins) {
        if (idx < 0 || idx >= n) throw ValidationError("pin index out of range");
        pinnedMask[static_cast<size_t>(idx)] = 1;
        values(idx) = val;
    }
    std::vector<Eigen::Index> freeIdx;
    VecXi toReduced = VecXi::Constant(n, -1);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!pinnedMask[static_cast<size_t>(i)]) {
            toReduced(i) = static_cast<int>(freeIdx.size());
            freeIdx.push_back(i);
        }
    }
    if (freeIdx.empty()) return values;

    std::vector<Eigen::Triplet<double>> triplets;
    VecXd rhs = VecXd::Zero(static_cast<Eigen::Index>(freeIdx.size()));
    for (int col = 0; col < K.outerSize(); ++col) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(K, col); it; ++it) {
            const Eigen::Index r = it.row(), c = it.col();
            if (pinnedMask[static_cast<size_t>(r)]) continue;
            if (pinnedMask[static_cast<size_t>(c)]) {
                rhs(toReduced(r)) -= it.value() * values(c);
            } else {
                triplets.emplace_back(toReduced(r), toReduced(c), it.value());
            }
        }
    }
    Eigen::SparseMatrix<double> Kff(static_cast<Eigen::Index>(freeIdx.size()),
                                    static_cast<Eigen::Index>(freeIdx.size()));
    Kff.setFromTriplets(triplets.begin(), triplets.end());
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(Kff);
    if (ldlt.info() != Eigen::Success) throw SolverError("singular Dirichlet system");
    const VecXd sol = ldlt.solve(rhs);
    if (ldlt.info() != Eigen::Success) throw SolverError("Dirichlet solve failed");
    for (size_t i = 0; i < freeIdx.size(); ++i) {
        values(freeIdx[i]) = sol(static_cast<Eigen::Index>(i));
    }
    return values;
}

}  // namespace qcmorph
