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

#include <string>
#include <vector>

namespace qcmorph {

/// Manifold triangle mesh with disk topology (exactly one boundary loop,
/// V - E + F = 1). Faces are counterclockwise with respect to the outward
/// normal. Immutable after construction; safe to share across threads.
struct TriMesh {
    MatX3d V;           // vertex positions
    MatX3i F;           // triangle corners, CCW
    VecXi boundary;     // boundary loop, interior to the left of traversal
    Eigen::Index numEdges = 0;
    std::vector<char> isBoundaryVertex;

    /// Validates topology and geometry, extracts the boundary loop.
    /// Throws ValidationError on non-manifold input, wrong topology,
    /// or degenerate faces.
    static TriMesh fromData(MatX3d vertices, MatX3i faces);

    Eigen::Index numVertices() const { return V.rows(); }
    Eigen::Index numFaces() const { return F.rows(); }
    Eigen::Index eulerCharacteristic() const { return V.rows() - numEdges + F.rows(); }

    double bboxDiagonal() const;
    VecXd faceAreas() const;
    MatX3d faceNormals() const;           // unit normals
    MatX3d vertexNormals() const;         // area-weighted, unit
    double boundaryLength() const;
    /// 4*sqrt(3)*area / (sum of squared edge lengths); 1 for equilateral.
    double minTriangleQuality() const;
};

struct LandmarkSet {
    VecXi indices;  // ordered: position k corresponds across subjects

    Eigen::Index size() const { return indices.size(); }
};

struct Subject {
    TriMesh mesh;
    LandmarkSet landmarks;
    std::string label;
};

struct Dataset {
    std::vector<Subject> subjects;
    /// Distinct labels in first-appearance order.
    std::vector<std::string> labels() const;
};

struct MeshStats {
    Eigen::Index numVertices = 0;
    Eigen::Index numFaces = 0;
    double minTriangleQuality = 0;
    double boundaryLength = 0;
};

struct PairDiagnostics {
    bool match = false;
    Eigen::Index landmarkCount = 0;
    MeshStats first;
    MeshStats second;
};

/// Checks that two subjects are comparable: equal landmark counts and both
/// meshes satisfying every TriMesh invariant. Throws ValidationError with
/// the offending detail otherwise.
PairDiagnostics validatePair(const TriMesh& meshI, const LandmarkSet& lmI,
                             const TriMesh& meshJ, const LandmarkSet& lmJ);

/// Validates a landmark set against a mesh (bounds, distinctness, n > 0).
void validateLandmarks(const LandmarkSet& lm, const TriMesh& mesh);

}  // namespace qcmorph
