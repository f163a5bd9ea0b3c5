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
#include "qcmorph/curvature.hpp"

#include "qcmorph/laplacian.hpp"

#include <sstream>

namespace qcmorph {

double totalAngleDefect(const TriMesh& mesh) {
    const MatX3d angles = cornerAngles<double>(mesh.V, mesh.F);
    VecXd angleSum = VecXd::Zero(mesh.numVertices());
    for (Eigen::Index f = 0; f < mesh.numFaces(); ++f) {
        for (int c = 0; c < 3; ++c) angleSum(mesh.F(f, c)) += angles(f, c);
    }
    double total = 0;
    for (Eigen::Index v = 0; v < mesh.numVertices(); ++v) {
        const double full = mesh.isBoundaryVertex[static_cast<size_t>(v)] ? pi<double>
                                                                          : 2.0 * pi<double>;
        total += full - angleSum(v);
    }
    return total;
}

CurvatureField curvatures(const TriMesh& mesh) {
    const Eigen::Index nv = mesh.numVertices();
    CurvatureField field;
    field.vertexArea = mixedVoronoiAreas<double>(mesh.V, mesh.F);
    field.lowConfidence.assign(mesh.isBoundaryVertex.begin(), mesh.isBoundaryVertex.end());

    const MatX3d angles = cornerAngles<double>(mesh.V, mesh.F);
    VecXd angleSum = VecXd::Zero(nv);
    for (Eigen::Index f = 0; f < mesh.numFaces(); ++f) {
        for (int c = 0; c < 3; ++c) angleSum(mesh.F(f, c)) += angles(f, c);
    }
    field.K.resize(nv);
    for (Eigen::Index v = 0; v < nv; ++v) {
        const double full = mesh.isBoundaryVertex[static_cast<size_t>(v)] ? pi<double>
                                                                          : 2.0 * pi<double>;
        field.K(v) = (full - angleSum(v)) / field.vertexArea(v);
    }

    // Mean curvature vector: K(p_i) = (1/A_i) sum_j w_ij (p_i - p_j) with
    // w_ij the cotangent weights; its norm is 2|H|.
    const Eigen::SparseMatrix<double> stiff = cotanStiffness<double>(mesh.V, mesh.F);
    const MatX3d lp = stiff * mesh.V;  // equals sum_j w_ij (p_i - p_j) rowwise
    const MatX3d normals = mesh.vertexNormals();
    field.H.resize(nv);
    for (Eigen::Index v = 0; v < nv; ++v) {
        const Eigen::Vector3d hvec = lp.row(v).transpose() / field.vertexArea(v);
        const double magnitude = 0.5 * hvec.norm();
        const double sign = hvec.dot(normals.row(v).transpose()) >= 0 ? 1.0 : -1.0;
        field.H(v) = sign * magnitude;
    }
    return field;
}

VecXd interpolateScalar(const TriMesh& target, const VecXd& field,
                        const BarycentricPoints& points) {
    if (field.size() != target.numVertices()) {
        throw ValidationError("field size does not match target vertex count");
    }
    if (points.faces.size() != points.weights.rows()) {
        throw ValidationError("barycentric points are inconsistent");
    }
    VecXd out(points.faces.size());
    for (Eigen::Index i = 0; i < points.faces.size(); ++i) {
        const int f = points.faces(i);
        if (f < 0 || f >= target.numFaces()) {
            std::ostringstream os;
            os << "point " << i << " references invalid face " << f;
            throw ValidationError(os.str());
        }
        double value = 0;
        for (int c = 0; c < 3; ++c) {
            const double w = points.weights(i, c);
            if (w < -1e-9 || w > 1.0 + 1e-9) {
                std::ostringstream os;
                os << "barycentric coordinate out of range at point " << i;
                throw ValidationError(os.str());
            }
            value += w * field(target.F(f, c));
        }
        out(i) = value;
    }
    return out;
}

}  // namespace qcmorph
