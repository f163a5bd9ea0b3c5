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

#include "qcmorph/beltrami.hpp"
#include "qcmorph/core.hpp"

#include <Eigen/Sparse>

namespace qcmorph {

namespace detail {

/// Stiffness contribution of one triangle given its hat gradients and a
/// constant 2x2 diffusion tensor A: K_local(i,j) = area * g_i^T A g_j.
template <typename Scalar>
Eigen::Matrix<Scalar, 3, 3> localStiffness(const Eigen::Matrix<Scalar, 3, 2>& g, Scalar area,
                                           const Eigen::Matrix<Scalar, 2, 2>& A) {
    return area * g * A * g.transpose();
}

template <typename Scalar, typename VertexFetch>
Eigen::SparseMatrix<Scalar> assembleStiffness(Eigen::Index numVertices, const MatX3i& F,
                                              VertexFetch&& flatten,
                                              const VecXc<Scalar>* mu) {
    std::vector<Eigen::Triplet<Scalar>> triplets;
    triplets.reserve(static_cast<size_t>(F.rows()) * 9);
    for (Eigen::Index f = 0; f < F.rows(); ++f) {
        Eigen::Matrix<Scalar, 2, 1> p0, p1, p2;
        flatten(f, p0, p1, p2);
        Scalar twoA;
        const auto g = hatGradients<Scalar>(p0, p1, p2, twoA);
        Eigen::Matrix<Scalar, 2, 2> A = Eigen::Matrix<Scalar, 2, 2>::Identity();
        if (mu) {
            const Scalar rho = (*mu)(f).real();
            const Scalar tau = (*mu)(f).imag();
            const Scalar m2 = rho * rho + tau * tau;
            if (m2 >= Scalar(1)) {
                throw SolverError("Beltrami coefficient magnitude >= 1 on face " +
                                  std::to_string(f));
            }
            const Scalar inv = Scalar(1) / (Scalar(1) - m2);
            A(0, 0) = ((rho - 1) * (rho - 1) + tau * tau) * inv;
            A(0, 1) = A(1, 0) = Scalar(-2) * tau * inv;
            A(1, 1) = ((rho + 1) * (rho + 1) + tau * tau) * inv;
        }
        const auto local = localStiffness<Scalar>(g, std::abs(twoA) / Scalar(2), A);
        for (int a = 0; a < 3; ++a) {
            for (int b = 0; b < 3; ++b) {
                triplets.emplace_back(F(f, a), F(f, b), local(a, b));
            }
        }
    }
    Eigen::SparseMatrix<Scalar> K(numVertices, numVertices);
    K.setFromTriplets(triplets.begin(), triplets.end());
    return K;
}

}  // namespace detail

/// Cotangent stiffness matrix of a surface mesh: positive semi-definite,
/// u^T K u equals the Dirichlet energy of the piecewise-linear u.
template <typename Scalar>
Eigen::SparseMatrix<Scalar> cotanStiffness(const MatX3<Scalar>& V, const MatX3i& F) {
    return detail::assembleStiffness<Scalar>(
        V.rows(), F,
        [&](Eigen::Index f, Eigen::Matrix<Scalar, 2, 1>& p0, Eigen::Matrix<Scalar, 2, 1>& p1,
            Eigen::Matrix<Scalar, 2, 1>& p2) {
            detail::flattenTriangle<Scalar>(V.row(F(f, 0)), V.row(F(f, 1)), V.row(F(f, 2)), p0,
                                            p1, p2);
        },
        nullptr);
}

/// Planar variant; the embedding supplies the metric directly.
template <typename Scalar>
Eigen::SparseMatrix<Scalar> cotanStiffnessPlanar(const MatX2<Scalar>& uv, const MatX3i& F) {
    return detail::assembleStiffness<Scalar>(
        uv.rows(), F,
        [&](Eigen::Index f, Eigen::Matrix<Scalar, 2, 1>& p0, Eigen::Matrix<Scalar, 2, 1>& p1,
            Eigen::Matrix<Scalar, 2, 1>& p2) {
            p0 = uv.row(F(f, 0));
            p1 = uv.row(F(f, 1));
            p2 = uv.row(F(f, 2));
        },
        nullptr);
}

/// Cotangent Laplacian with zero row sums: off-diagonal
/// w_ij = (cot a_ij + cot b_ij)/2 over the triangles sharing edge (i,j).
/// Equals minus the stiffness matrix. Obtuse triangles (negative weights)
/// are allowed.
template <typename Scalar>
Eigen::SparseMatrix<Scalar> cotanLaplacian(const MatX3<Scalar>& V, const MatX3i& F) {
    return Eigen::SparseMatrix<Scalar>(-cotanStiffness<Scalar>(V, F));
}

/// Generalized stiffness for the Beltrami equation, with the per-face
/// diffusion tensor
///   A = 1/(1-|mu|^2) * [ (rho-1)^2+tau^2   -2 tau
///                        -2 tau            (1+rho)^2+tau^2 ],  mu = rho + i tau.
/// For mu = 0 this reduces to the planar cotangent stiffness. Throws
/// SolverError when any |mu| >= 1.
template <typename Scalar>
Eigen::SparseMatrix<Scalar> beltramiStiffness(const MatX2<Scalar>& uv, const MatX3i& F,
                                              const VecXc<Scalar>& mu) {
    if (mu.size() != F.rows()) throw ValidationError("mu size does not match face count");
    return detail::assembleStiffness<Scalar>(
        uv.rows(), F,
        [&](Eigen::Index f, Eigen::Matrix<Scalar, 2, 1>& p0, Eigen::Matrix<Scalar, 2, 1>& p1,
            Eigen::Matrix<Scalar, 2, 1>& p2) {
            p0 = uv.row(F(f, 0));
            p1 = uv.row(F(f, 1));
            p2 = uv.row(F(f, 2));
        },
        &mu);
}

/// Interior angles per face corner, matching the face layout of F.
template <typename Scalar>
MatX3<Scalar> cornerAngles(const MatX3<Scalar>& V, const MatX3i& F) {
    MatX3<Scalar> angles(F.rows(), 3);
    for (Eigen::Index f = 0; f < F.rows(); ++f) {
        for (int c = 0; c < 3; ++c) {
            const Eigen::Matrix<Scalar, 3, 1> a = V.row(F(f, c));
            const Eigen::Matrix<Scalar, 3, 1> b = V.row(F(f, (c + 1) % 3));
            const Eigen::Matrix<Scalar, 3, 1> d = V.row(F(f, (c + 2) % 3));
            const Eigen::Matrix<Scalar, 3, 1> e1 = b - a;
            const Eigen::Matrix<Scalar, 3, 1> e2 = d - a;
            angles(f, c) = std::atan2(e1.cross(e2).norm(), e1.dot(e2));
        }
    }
    return angles;
}

/// Mixed Voronoi vertex areas with the standard obtuse-triangle fallback
/// (T/2 at the obtuse corner, T/4 at the others).
template <typename Scalar>
VecX<Scalar> mixedVoronoiAreas(const MatX3<Scalar>& V, const MatX3i& F) {
    VecX<Scalar> areas = VecX<Scalar>::Zero(V.rows());
    const MatX3<Scalar> angles = cornerAngles<Scalar>(V, F);
    const Scalar halfPi = pi<Scalar> / Scalar(2);
    for (Eigen::Index f = 0; f < F.rows(); ++f) {
        const Eigen::Matrix<Scalar, 3, 1> p[3] = {V.row(F(f, 0)), V.row(F(f, 1)), V.row(F(f, 2))};
        const Scalar area = (p[1] - p[0]).cross(p[2] - p[0]).norm() / Scalar(2);
        int obtuse = -1;
        for (int c = 0; c < 3; ++c) {
            if (angles(f, c) > halfPi) obtuse = c;
        }
        if (obtuse >= 0) {
            for (int c = 0; c < 3; ++c) {
                areas(F(f, c)) += (c == obtuse) ? area / Scalar(2) : area / Scalar(4);
            }
            continue;
        }
        for (int c = 0; c < 3; ++c) {
            // Voronoi share at corner c: 1/8 (|e_next|^2 cot(angle across
            // e_next) + |e_prev|^2 cot(angle across e_prev)).
            const int cn = (c + 1) % 3, cp = (c + 2) % 3;
            const Scalar lNext = (p[cn] - p[c]).squaredNorm();
            const Scalar lPrev = (p[cp] - p[c]).squaredNorm();
            areas(F(f, c)) += (lNext / std::tan(angles(f, cp)) + lPrev / std::tan(angles(f, cn))) /
                              Scalar(8);
        }
    }
    return areas;
}

}  // namespace qcmorph
