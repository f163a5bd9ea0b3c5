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

#include <Eigen/Geometry>

#include <cmath>
#include <sstream>
#include <vector>

namespace qcmorph {

/// Per-face Beltrami coefficient of a piecewise-linear map. |mu| < 1 on
/// every face of an orientation-preserving map; faces with |mu| >= 1 (or a
/// non-positive Jacobian) are listed in `folded` rather than silently kept.
template <typename Scalar>
struct BeltramiField {
    VecXc<Scalar> mu;
    std::vector<Eigen::Index> folded;
};

using BeltramiFieldd = BeltramiField<double>;

namespace detail {

/// Gradients of the three hat functions on a positively oriented planar
/// triangle, as rows of a 3x2 matrix. `doubleArea` receives the signed
/// double area of the source triangle.
template <typename Scalar>
Eigen::Matrix<Scalar, 3, 2> hatGradients(const Eigen::Matrix<Scalar, 2, 1>& p0,
                                         const Eigen::Matrix<Scalar, 2, 1>& p1,
                                         const Eigen::Matrix<Scalar, 2, 1>& p2,
                                         Scalar& doubleArea) {
    doubleArea = (p1.x() - p0.x()) * (p2.y() - p0.y()) - (p2.x() - p0.x()) * (p1.y() - p0.y());
    Eigen::Matrix<Scalar, 3, 2> g;
    // grad(phi_i) is the 90-degree rotation of the opposite edge over 2A.
    g.row(0) << (p1.y() - p2.y()) / doubleArea, (p2.x() - p1.x()) / doubleArea;
    g.row(1) << (p2.y() - p0.y()) / doubleArea, (p0.x() - p2.x()) / doubleArea;
    g.row(2) << (p0.y() - p1.y()) / doubleArea, (p1.x() - p0.x()) / doubleArea;
    return g;
}

/// Isometric flattening of a 3D triangle into its own plane, positively
/// oriented with respect to the face normal.
template <typename Scalar>
void flattenTriangle(const Eigen::Matrix<Scalar, 3, 1>& a, const Eigen::Matrix<Scalar, 3, 1>& b,
                     const Eigen::Matrix<Scalar, 3, 1>& c, Eigen::Matrix<Scalar, 2, 1>& pa,
                     Eigen::Matrix<Scalar, 2, 1>& pb, Eigen::Matrix<Scalar, 2, 1>& pc) {
    const Eigen::Matrix<Scalar, 3, 1> e1 = (b - a).normalized();
    Eigen::Matrix<Scalar, 3, 1> n = (b - a).cross(c - a);
    n.normalize();
    const Eigen::Matrix<Scalar, 3, 1> e2 = n.cross(e1);
    pa.setZero();
    pb << (b - a).norm(), Scalar(0);
    pc << (c - a).dot(e1), (c - a).dot(e2);
}

}  // namespace detail

/// Beltrami coefficient of a planar-to-planar piecewise-linear map,
/// mu = f_zbar / f_z per face. Throws SolverError when a face is collapsed
/// (f_z = f_zbar = 0).
template <typename Scalar>
BeltramiField<Scalar> beltramiPlanarToPlanar(const MatX2<Scalar>& sourceUv, const MatX3i& F,
                                             const MatX2<Scalar>& targetUv) {
    using C = std::complex<Scalar>;
    BeltramiField<Scalar> field;
    field.mu.resize(F.rows());
    for (Eigen::Index f = 0; f < F.rows(); ++f) {
        Scalar twoA;
        const auto g = detail::hatGradients<Scalar>(
            sourceUv.row(F(f, 0)), sourceUv.row(F(f, 1)), sourceUv.row(F(f, 2)), twoA);
        C fx(0), fy(0);
        for (int c = 0; c < 3; ++c) {
            const C w(targetUv(F(f, c), 0), targetUv(F(f, c), 1));
            fx += w * g(c, 0);
            fy += w * g(c, 1);
        }
        const C fz = (fx - C(0, 1) * fy) / Scalar(2);
        const C fzbar = (fx + C(0, 1) * fy) / Scalar(2);
        if (std::abs(fz) == Scalar(0)) {
            if (std::abs(fzbar) == Scalar(0)) {
                std::ostringstream os;
                os << "map collapses face " << f << " (f_z = 0)";
                throw SolverError(os.str());
            }
            field.mu(f) = C(std::numeric_limits<Scalar>::infinity(), 0);
            field.folded.push_back(f);
            continue;
        }
        field.mu(f) = fzbar / fz;
        if (std::abs(field.mu(f)) >= Scalar(1)) field.folded.push_back(f);
    }
    return field;
}

/// Beltrami coefficient of a map from 3D faces (flattened isometrically
/// per face) onto the plane. Magnitudes are frame-independent; arguments
/// are relative to each face's local frame.
template <typename Scalar>
BeltramiField<Scalar> beltramiSurfaceToPlanar(const MatX3<Scalar>& sourceV, const MatX3i& F,
                                              const MatX2<Scalar>& targetUv) {
    using C = std::complex<Scalar>;
    BeltramiField<Scalar> field;
    field.mu.resize(F.rows());
    for (Eigen::Index f = 0; f < F.rows(); ++f) {
        Eigen::Matrix<Scalar, 2, 1> pa, pb, pc;
        detail::flattenTriangle<Scalar>(sourceV.row(F(f, 0)), sourceV.row(F(f, 1)),
                                        sourceV.row(F(f, 2)), pa, pb, pc);
        Scalar twoA;
        const auto g = detail::hatGradients<Scalar>(pa, pb, pc, twoA);
        C fx(0), fy(0);
        for (int c = 0; c < 3; ++c) {
            const C w(targetUv(F(f, c), 0), targetUv(F(f, c), 1));
            fx += w * g(c, 0);
            fy += w * g(c, 1);
        }
        const C fz = (fx - C(0, 1) * fy) / Scalar(2);
        const C fzbar = (fx + C(0, 1) * fy) / Scalar(2);
        if (std::abs(fz) == Scalar(0)) {
            std::ostringstream os;
            os << "map collapses face " << f << " (f_z = 0)";
            throw SolverError(os.str());
        }
        field.mu(f) = fzbar / fz;
        if (std::abs(field.mu(f)) >= Scalar(1)) field.folded.push_back(f);
    }
    return field;
}

/// Beltrami coefficient of a map from planar faces onto a surface in R^3,
/// through the first fundamental form:
///   mu = (E - G + 2iF) / (E + G + 2 sqrt(EG - F^2)).
/// Orientation is invisible here, so |mu| <= 1 always; used for the inverse
/// of a parameterization, whose coefficient this is in the planar frame.
template <typename Scalar>
VecXc<Scalar> beltramiPlanarToSurface(const MatX2<Scalar>& sourceUv, const MatX3i& F,
                                      const MatX3<Scalar>& targetV) {
    using C = std::complex<Scalar>;
    VecXc<Scalar> mu(F.rows());
    for (Eigen::Index f = 0; f < F.rows(); ++f) {
        Scalar twoA;
        const auto g = detail::hatGradients<Scalar>(
            sourceUv.row(F(f, 0)), sourceUv.row(F(f, 1)), sourceUv.row(F(f, 2)), twoA);
        Eigen::Matrix<Scalar, 3, 1> fx = Eigen::Matrix<Scalar, 3, 1>::Zero();
        Eigen::Matrix<Scalar, 3, 1> fy = Eigen::Matrix<Scalar, 3, 1>::Zero();
        for (int c = 0; c < 3; ++c) {
            fx += targetV.row(F(f, c)).transpose() * g(c, 0);
            fy += targetV.row(F(f, c)).transpose() * g(c, 1);
        }
        const Scalar E = fx.squaredNorm();
        const Scalar Fff = fx.dot(fy);
        const Scalar G = fy.squaredNorm();
        const Scalar root = std::sqrt(std::max(Scalar(0), E * G - Fff * Fff));
        const Scalar denom = E + G + Scalar(2) * root;
        if (denom == Scalar(0)) {
            std::ostringstream os;
            os << "map collapses face " << f;
            throw SolverError(os.str());
        }
        mu(f) = C(E - G, Scalar(2) * Fff) / denom;
    }
    return mu;
}

/// Composition formula: Beltrami coefficient of g o f from mu_f, the
/// per-face derivative ratio of f, and mu_g carried back along f. Face
/// correspondence is 1-1 because f deforms the same triangulation.
template <typename Scalar>
VecXc<Scalar> composeBeltrami(const MatX2<Scalar>& sourceUv, const MatX3i& F,
                              const MatX2<Scalar>& fUv, const VecXc<Scalar>& muG) {
    using C = std::complex<Scalar>;
    if (muG.size() != F.rows()) throw ValidationError("mu_g size does not match face count");
    VecXc<Scalar> out(F.rows());
    for (Eigen::Index f = 0; f < F.rows(); ++f) {
        Scalar twoA;
        const auto g = detail::hatGradients<Scalar>(
            sourceUv.row(F(f, 0)), sourceUv.row(F(f, 1)), sourceUv.row(F(f, 2)), twoA);
        C fx(0), fy(0);
        for (int c = 0; c < 3; ++c) {
            const C w(fUv(F(f, c), 0), fUv(F(f, c), 1));
            fx += w * g(c, 0);
            fy += w * g(c, 1);
        }
        const C fz = (fx - C(0, 1) * fy) / Scalar(2);
        const C fzbar = (fx + C(0, 1) * fy) / Scalar(2);
        if (std::abs(fz) == Scalar(0)) {
            std::ostringstream os;
            os << "composition undefined on collapsed face " << f;
            throw SolverError(os.str());
        }
        const C muF = fzbar / fz;
        const C ratio = std::conj(fz) / fz;
        const C denom = C(1) + ratio * std::conj(muF) * muG(f);
        if (std::abs(denom) < Scalar(1e-14)) {
            std::ostringstream os;
            os << "composition denominator vanishes on face " << f;
            throw SolverError(os.str());
        }
        out(f) = (muF + ratio * muG(f)) / denom;
    }
    return out;
}

/// Plain and area-weighted statistics of |mu|.
template <typename Scalar>
Scalar meanAbs(const VecXc<Scalar>& mu) {
    return mu.size() == 0 ? Scalar(0) : mu.cwiseAbs().mean();
}

template <typename Scalar>
Scalar weightedMeanAbs(const VecXc<Scalar>& mu, const VecX<Scalar>& weights) {
    const Scalar total = weights.sum();
    if (total <= Scalar(0)) return meanAbs(mu);
    return mu.cwiseAbs().dot(weights) / total;
}

/// std(|mu|) / mean(|mu|); zero when the field is numerically conformal.
template <typename Scalar>
Scalar uniformityResidual(const VecXc<Scalar>& mu) {
    if (mu.size() == 0) return Scalar(0);
    const VecX<Scalar> a = mu.cwiseAbs();
    const Scalar mean = a.mean();
    if (mean < Scalar(1e-12)) return Scalar(0);
    const Scalar var = (a.array() - mean).square().sum() / Scalar(a.size());
    return std::sqrt(var) / mean;
}

}  // namespace qcmorph
