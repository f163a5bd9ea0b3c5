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
#include "qcmorph/mesh.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace qcmorph {

namespace {

// Scale-invariant degeneracy threshold: area < 1e-12 * bboxDiag^2.
constexpr double kDegenerateAreaRel = 1e-12;

double triArea(const Eigen::Vector3d& a, const Eigen::Vector3d& b, const Eigen::Vector3d& c) {
    return 0.5 * (b - a).cross(c - a).norm();
}

}  // namespace

TriMesh TriMesh::fromData(MatX3d vertices, MatX3i faces) {
    TriMesh mesh;
    mesh.V = std::move(vertices);
    mesh.F = std::move(faces);
    const Eigen::Index nv = mesh.V.rows();
    const Eigen::Index nf = mesh.F.rows();
    if (nv < 3 || nf < 1) throw ValidationError("mesh needs at least 3 vertices and 1 face");

    for (Eigen::Index f = 0; f < nf; ++f) {
        const int i = mesh.F(f, 0), j = mesh.F(f, 1), k = mesh.F(f, 2);
        if (i < 0 || j < 0 || k < 0 || i >= nv || j >= nv || k >= nv) {
            std::ostringstream os;
            os << "face " << f << " references an invalid vertex index";
            throw ValidationError(os.str());
        }
        if (i == j || j == k || i == k) {
            std::ostringstream os;
            os << "face " << f << " has repeated vertex indices";
            throw ValidationError(os.str());
        }
    }

    const double diag = mesh.bboxDiagonal();
    const double areaFloor = kDegenerateAreaRel * diag * diag;
    for (Eigen::Index f = 0; f < nf; ++f) {
        const double a = triArea(mesh.V.row(mesh.F(f, 0)), mesh.V.row(mesh.F(f, 1)),
                                 mesh.V.row(mesh.F(f, 2)));
        if (a < areaFloor) {
            std::ostringstream os;
            os << "degenerate (zero-area) face " << f;
            throw ValidationError(os.str());
        }
    }

    // Directed halfedges. A repeated directed edge means either a
    // non-manifold fan or inconsistent orientation.
    std::map<std::pair<int, int>, int> halfedgeFace;
    for (Eigen::Index f = 0; f < nf; ++f) {
        for (int c = 0; c < 3; ++c) {
            const int a = mesh.F(f, c), b = mesh.F(f, (c + 1) % 3);
            if (!halfedgeFace.emplace(std::make_pair(a, b), static_cast<int>(f)).second) {
                std::ostringstream os;
                os << "non-manifold or inconsistently oriented edge (" << a << "," << b << ")";
                throw ValidationError(os.str());
            }
        }
    }

    std::set<std::pair<int, int>> undirected;
    for (const auto& [he, f] : halfedgeFace) {
        undirected.insert({std::min(he.first, he.second), std::max(he.first, he.second)});
    }
    mesh.numEdges = static_cast<Eigen::Index>(undirected.size());

    // Boundary halfedges: directed edges without a twin. Each keeps
    // interior on its left, so chaining them walks the boundary with the
    // surface to the left.
    std::map<int, int> boundaryNext;
    for (const auto& [he, f] : halfedgeFace) {
        if (!halfedgeFace.count({he.second, he.first})) {
            if (!boundaryNext.emplace(he.first, he.second).second) {
                std::ostringstream os;
                os << "non-manifold boundary at vertex " << he.first;
                throw ValidationError(os.str());
            }
        }
    }
    if (boundaryNext.empty()) {
        std::ostringstream os;
        os << "not disk topology, V-E+F=" << mesh.eulerCharacteristic() << " (closed surface)";
        throw ValidationError(os.str());
    }

    // Trace loops; there must be exactly one and it must cover every
    // boundary vertex once.
    std::set<int> visited;
    int loops = 0;
    std::vector<int> loop;
    for (const auto& [start, next] : boundaryNext) {
        if (visited.count(start)) continue;
        ++loops;
        std::vector<int> current;
        int v = start;
        do {
            if (visited.count(v)) throw ValidationError("boundary is not a simple cycle");
            visited.insert(v);
            current.push_back(v);
            auto it = boundaryNext.find(v);
            if (it == boundaryNext.end()) throw ValidationError("open boundary chain");
            v = it->second;
        } while (v != start);
        if (loops == 1) loop = std::move(current);
    }
    if (loops != 1) {
        std::ostringstream os;
        os << "multiple boundary loops (" << loops << ")";
        throw ValidationError(os.str());
    }
    if (mesh.eulerCharacteristic() != 1) {
        std::ostringstream os;
        os << "not disk topology, V-E+F=" << mesh.eulerCharacteristic();
        throw ValidationError(os.str());
    }

    // Deterministic start: smallest boundary vertex index.
    const auto minIt = std::min_element(loop.begin(), loop.end());
    std::rotate(loop.begin(), minIt, loop.end());
    mesh.boundary = Eigen::Map<VecXi>(loop.data(), static_cast<Eigen::Index>(loop.size()));

    mesh.isBoundaryVertex.assign(static_cast<size_t>(nv), 0);
    for (int v : loop) mesh.isBoundaryVertex[static_cast<size_t>(v)] = 1;

    // Disk topology plus one loop implies every vertex is referenced, but an
    // isolated vertex would already have broken the Euler check above.
    return mesh;
}

double TriMesh::bboxDiagonal() const {
    return (V.colwise().maxCoeff() - V.colwise().minCoeff()).norm();
}

VecXd TriMesh::faceAreas() const {
    VecXd areas(F.rows());
    for (Eigen::Index f = 0; f < F.rows(); ++f) {
        areas(f) = triArea(V.row(F(f, 0)), V.row(F(f, 1)), V.row(F(f, 2)));
    }
    return areas;
}

MatX3d TriMesh::faceNormals() const {
    MatX3d normals(F.rows(), 3);
    for (Eigen::Index f = 0; f < F.rows(); ++f) {
        const Eigen::Vector3d a = V.row(F(f, 0)), b = V.row(F(f, 1)), c = V.row(F(f, 2));
        normals.row(f) = (b - a).cross(c - a).normalized();
    }
    return normals;
}

MatX3d TriMesh::vertexNormals() const {
    MatX3d normals = MatX3d::Zero(V.rows(), 3);
    for (Eigen::Index f = 0; f < F.rows(); ++f) {
        const Eigen::Vector3d a = V.row(F(f, 0)), b = V.row(F(f, 1)), c = V.row(F(f, 2));
        const Eigen::Vector3d w = (b - a).cross(c - a);  // area-weighted
        for (int cidx = 0; cidx < 3; ++cidx) normals.row(F(f, cidx)) += w.transpose();
    }
    for (Eigen::Index v = 0; v < normals.rows(); ++v) {
        const double n = normals.row(v).norm();
        if (n > 0) normals.row(v) /= n;
    }
    return normals;
}

double TriMesh::boundaryLength() const {
    double len = 0;
    for (Eigen::Index i = 0; i < boundary.size(); ++i) {
        const Eigen::Index j = (i + 1) % boundary.size();
        len += (V.row(boundary(j)) - V.row(boundary(i))).norm();
    }
    return len;
}

double TriMesh::minTriangleQuality() const {
    double q = 1.0;
    for (Eigen::Index f = 0; f < F.rows(); ++f) {
        const Eigen::Vector3d a = V.row(F(f, 0)), b = V.row(F(f, 1)), c = V.row(F(f, 2));
        const double l2 = (b - a).squaredNorm() + (c - b).squaredNorm() + (a - c).squaredNorm();
        q = std::min(q, 4.0 * std::sqrt(3.0) * triArea(a, b, c) / l2);
    }
    return q;
}

std::vector<std::string> Dataset::labels() const {
    std::vector<std::string> out;
    for (const auto& s : subjects) {
        if (std::find(out.begin(), out.end(), s.label) == out.end()) out.push_back(s.label);
    }
    return out;
}

void validateLandmarks(const LandmarkSet& lm, const TriMesh& mesh) {
    if (lm.size() == 0) throw ValidationError("landmark set is empty");
    std::set<int> seen;
    for (Eigen::Index k = 0; k < lm.size(); ++k) {
        const int idx = lm.indices(k);
        if (idx < 0 || idx >= mesh.numVertices()) {
            std::ostringstream os;
            os << "landmark index " << idx << " out of range";
            throw ValidationError(os.str());
        }
        if (!seen.insert(idx).second) {
            std::ostringstream os;
            os << "duplicate landmark at vertex " << idx;
            throw ValidationError(os.str());
        }
    }
}

PairDiagnostics validatePair(const TriMesh& meshI, const LandmarkSet& lmI,
                             const TriMesh& meshJ, const LandmarkSet& lmJ) {
    // Meshes arriving through fromData are already validated; re-running the
    // topology checks here catches hand-assembled structs too.
    TriMesh::fromData(meshI.V, meshI.F);
    TriMesh::fromData(meshJ.V, meshJ.F);
    validateLandmarks(lmI, meshI);
    validateLandmarks(lmJ, meshJ);
    if (lmI.size() != lmJ.size()) {
        std::ostringstream os;
        os << "landmark count mismatch " << lmI.size() << "!=" << lmJ.size();
        throw ValidationError(os.str());
    }
    PairDiagnostics d;
    d.match = true;
    d.landmarkCount = lmI.size();
    d.first = {meshI.numVertices(), meshI.numFaces(), meshI.minTriangleQuality(),
               meshI.boundaryLength()};
    d.second = {meshJ.numVertices(), meshJ.numFaces(), meshJ.minTriangleQuality(),
                meshJ.boundaryLength()};
    return d;
}

}  // namespace qcmorph
