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

#include "qcmorph/mesh.hpp"

namespace qcmorph {

/// Per-vertex curvature estimates. Gaussian curvature K comes from the
/// angle defect over the mixed Voronoi area; mean curvature H from the
/// cotangent mean-curvature vector, signed so a sphere with outward
/// normals has H > 0. Boundary estimates use the same one-ring formulas
/// but are biased; `lowConfidence` marks them.
struct CurvatureField {
    VecXd H;
    VecXd K;
    VecXd vertexArea;
    std::vector<char> lowConfidence;
};

CurvatureField curvatures(const TriMesh& mesh);

/// Total angle defect (2*pi - angle sum at interior vertices, plus
/// pi - angle sum at boundary vertices). Equals 2*pi for a disk.
double totalAngleDefect(const TriMesh& mesh);

/// Images of source vertices on a target mesh as (face, barycentric) rows.
struct BarycentricPoints {
    VecXi faces;
    MatX3d weights;
};

/// Linear interpolation of a per-vertex field at barycentric points.
/// Weights must lie in [-1e-9, 1+1e-9].
VecXd interpolateScalar(const TriMesh& target, const VecXd& field,
                        const BarycentricPoints& points);

}  // namespace qcmorph
