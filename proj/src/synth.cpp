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
#include "qcmorph/synth.hpp"

#include "qcmorph/mesh_io.hpp"
#include "qcmorph/rng.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <vector>

namespace qcmorph {

namespace {

struct RingMeshBuilder {
    std::vector<Eigen::Vector3d> vertices;
    std::vector<Eigen::Vector3i> faces;
    // Previous ring: vertex ids and angles, sorted ascending.
    std::vector<int> prevIds;
    std::vector<double> prevAngles;

    int addVertex(const Eigen::Vector3d& p) {
        vertices.push_back(p);
        return static_cast<int>(vertices.size()) - 1;
    }

    /// Bridges the previous ring to a new ring by merging the two angle
    /// sequences; emits CCW triangles (viewed from +z in the ring plane).
    void addRing(const std::vector<int>& ids, const std::vector<double>& angles) {
        if (prevIds.empty()) {
            prevIds = ids;
            prevAngles = angles;
            return;
        }
        const size_t n = prevIds.size(), m = ids.size();
        const double twoPi = 2.0 * pi<double>;
        if (n == 1) {  // fan around the center vertex
            for (size_t j = 0; j < m; ++j) {
                faces.emplace_back(prevIds[0], ids[j], ids[(j + 1) % m]);
            }
        } else {
            auto wrapped = [&twoPi](const std::vector<double>& a, size_t t) {
                return a[t % a.size()] + twoPi * static_cast<double>(t / a.size());
            };
            size_t i = 0, j = 0;
            while (i < n || j < m) {
                bool advanceOuter;
                if (i == n) {
                    advanceOuter = true;
                } else if (j == m) {
                    advanceOuter = false;
                } else {
                    advanceOuter = wrapped(angles, j + 1) <= wrapped(prevAngles, i + 1);
                }
                if (advanceOuter) {
                    faces.emplace_back(prevIds[i % n], ids[j % m], ids[(j + 1) % m]);
                    ++j;
                } else {
                    faces.emplace_back(prevIds[i % n], ids[j % m], prevIds[(i + 1) % n]);
                    ++i;
                }
            }
        }
        prevIds = ids;
        prevAngles = angles;
    }

    TriMesh finish() const {
        MatX3d V(static_cast<Eigen::Index>(vertices.size()), 3);
        for (size_t i = 0; i < vertices.size(); ++i) {
            V.row(static_cast<Eigen::Index>(i)) = vertices[i];
        }
        MatX3i F(static_cast<Eigen::Index>(faces.size()), 3);
        for (size_t i = 0; i < faces.size(); ++i) {
            F.row(static_cast<Eigen::Index>(i)) = faces[i];
        }
        return TriMesh::fromData(std::move(V), std::move(F));
    }
};

std::vector<double> ringAngles(int count, double offset) {
    std::vector<double> angles(static_cast<size_t>(count));
    for (int j = 0; j < count; ++j) {
        angles[static_cast<size_t>(j)] =
            2.0 * pi<double> * (static_cast<double>(j) + offset) / count;
    }
    return angles;
}

TriMesh buildCapMesh(double radius, double polarAngle, const std::vector<int>& ringCounts) {
    RingMeshBuilder b;
    const int rings = static_cast<int>(ringCounts.size());
    b.addRing({b.addVertex({0, 0, radius})}, {0.0});
    for (int k = 1; k <= rings; ++k) {
        const double theta = polarAngle * k / rings;
        const auto angles = ringAngles(ringCounts[static_cast<size_t>(k - 1)], 0.0);
        std::vector<int> ids;
        ids.reserve(angles.size());
        for (double phi : angles) {
            ids.push_back(b.addVertex({radius * std::sin(theta) * std::cos(phi),
                                       radius * std::sin(theta) * std::sin(phi),
                                       radius * std::cos(theta)}));
        }
        b.addRing(ids, angles);
    }
    return b.finish();
}

double gaussianBump(const BumpSpec& bump, const Eigen::Vector2d& scaledCenter,
                    const Eigen::Vector2d& p) {
    const double d2 = (p - scaledCenter).squaredNorm();
    return bump.height * std::exp(-d2 / (2.0 * bump.width * bump.width));
}

int nearestVertexXY(const MatX3d& V, const Eigen::Vector2d& p, const std::vector<char>* mask) {
    int best = -1;
    double bestD = std::numeric_limits<double>::infinity();
    for (Eigen::Index v = 0; v < V.rows(); ++v) {
        if (mask && !(*mask)[static_cast<size_t>(v)]) continue;
        const double d = (Eigen::Vector2d(V(v, 0), V(v, 1)) - p).squaredNorm();
        if (d < bestD) {  // strict: ties keep the smaller index
            bestD = d;
            best = static_cast<int>(v);
        }
    }
    return best;
}

}  // namespace

TriMesh makeRectangleMesh(int nx, int ny, double width, double height) {
    if (nx < 2 || ny < 2) throw ValidationError("rectangle grid needs nx, ny >= 2");
    MatX3d V(static_cast<Eigen::Index>(nx) * ny, 3);
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            V.row(j * nx + i) << width * i / (nx - 1), height * j / (ny - 1), 0.0;
        }
    }
    MatX3i F(2 * static_cast<Eigen::Index>(nx - 1) * (ny - 1), 3);
    Eigen::Index f = 0;
    for (int j = 0; j + 1 < ny; ++j) {
        for (int i = 0; i + 1 < nx; ++i) {
            const int v00 = j * nx + i, v10 = v00 + 1, v01 = v00 + nx, v11 = v01 + 1;
            F.row(f++) << v00, v10, v11;
            F.row(f++) << v00, v11, v01;
        }
    }
    return TriMesh::fromData(std::move(V), std::move(F));
}

TriMesh makeDiskMesh(int rings) {
    if (rings < 1) throw ValidationError("disk needs at least one ring");
    RingMeshBuilder b;
    b.addRing({b.addVertex({0, 0, 0})}, {0.0});
    for (int k = 1; k <= rings; ++k) {
        const double r = static_cast<double>(k) / rings;
        const auto angles = ringAngles(6 * k, 0.0);
        std::vector<int> ids;
        ids.reserve(angles.size());
        for (double phi : angles) {
            ids.push_back(b.addVertex({r * std::cos(phi), r * std::sin(phi), 0.0}));
        }
        b.addRing(ids, angles);
    }
    return b.finish();
}

TriMesh makeSphereCap(double radius, double polarAngle, double targetEdge) {
    const int rings = std::max(3, static_cast<int>(std::ceil(radius * polarAngle / targetEdge)));
    std::vector<int> counts;
    for (int k = 1; k <= rings; ++k) {
        const double theta = polarAngle * k / rings;
        const double circumference = 2.0 * pi<double> * radius * std::sin(theta);
        counts.push_back(std::max(6, static_cast<int>(std::round(circumference / targetEdge))));
    }
    return buildCapMesh(radius, polarAngle, counts);
}

TriMesh makeSphereCapWithVertexCount(double radius, double polarAngle, int vertexCount) {
    const int rings = std::max(3, static_cast<int>(std::round(std::sqrt(vertexCount / 3.0))));
    std::vector<int> counts;
    int total = 1;
    for (int k = 1; k <= rings; ++k) {
        const double theta = polarAngle * k / rings;
        const int c = std::max(
            6, static_cast<int>(std::round(2.0 * pi<double> * std::sin(theta) /
                                           (polarAngle / rings))));
        counts.push_back(c);
        total += c;
    }
    counts.back() += vertexCount - total;  // absorb the remainder
    if (counts.back() < 3) throw ValidationError("vertex count too low for cap resolution");
    return buildCapMesh(radius, polarAngle, counts);
}

TriMesh makeCylinderPatch(double radius, double halfAngle, double length, double targetEdge) {
    const int nu =
        std::max(4, static_cast<int>(std::ceil(2.0 * halfAngle * radius / targetEdge)) + 1);
    const int nv = std::max(4, static_cast<int>(std::ceil(length / targetEdge)) + 1);
    // Build in the (angle*radius, height) parameter grid, then wrap.
    TriMesh flat = makeRectangleMesh(nu, nv, 2.0 * halfAngle * radius, length);
    MatX3d V(flat.V.rows(), 3);
    for (Eigen::Index i = 0; i < flat.V.rows(); ++i) {
        const double theta = flat.V(i, 0) / radius - halfAngle;
        V.row(i) << radius * std::cos(theta), radius * std::sin(theta), flat.V(i, 1);
    }
    // Grid orientation in (theta, z) already matches outward normals.
    return TriMesh::fromData(std::move(V), flat.F);
}

SynthSpec presetSpec(const std::string& name, std::uint64_t seed) {
    SynthSpec spec;
    spec.seed = seed;

    ClassParams base;
    base.cusps[0] = {{0.0, 1.0}, 0.35, 0.35};
    base.cusps[1] = {{0.0, -1.0}, 0.35, 0.35};
    base.pits[0] = {{-0.40, 0.0}, -0.18, 0.28};
    base.pits[1] = {{0.40, 0.0}, -0.18, 0.28};
    base.ellipseAxes = {1.0, 0.85};

    if (name == "null") {
        spec.classes = {base, base};
        spec.noiseSigma = 0.004;
    } else if (name == "curvature-diff") {
        ClassParams sharp = base, broad = base;
        for (auto& c : sharp.cusps) c.width = 0.22;
        for (auto& c : broad.cusps) c.width = 0.44;
        sharp.paramJitter = broad.paramJitter = 8.0;
        spec.classes = {sharp, broad};
        spec.labels = {"sharp", "broad"};
    } else if (name == "distortion-diff") {
        ClassParams near = base, far = base;
        for (auto& c : near.cusps) {
            c.height = 0.22;
            c.width = 0.55;
        }
        far.cusps = near.cusps;
        near.pits[0] = {{-0.28, 0.0}, 0.0, 0.28};
        near.pits[1] = {{0.28, 0.0}, 0.0, 0.28};
        far.pits[0] = {{-0.46, 0.0}, 0.0, 0.28};
        far.pits[1] = {{0.46, 0.0}, 0.0, 0.28};
        near.paramJitter = far.paramJitter = 10.0;
        spec.classes = {near, far};
        spec.labels = {"near", "far"};
        spec.noiseSigma = 0.002;
    } else if (name == "mixed") {
        ClassParams a = base, b = base;
        for (auto& c : a.cusps) c.width = 0.42;
        for (auto& c : b.cusps) c.width = 0.28;
        a.pits[0].center = {-0.32, 0.0};
        a.pits[1].center = {0.32, 0.0};
        b.pits[0].center = {-0.44, 0.0};
        b.pits[1].center = {0.44, 0.0};
        for (auto& p : a.pits) p.height = -0.15;
        for (auto& p : b.pits) p.height = -0.22;
        a.paramJitter = b.paramJitter = 8.0;
        spec.classes = {a, b};
        spec.labels = {"A", "B"};
    } else {
        throw ValidationError("unknown preset: " + name);
    }
    return spec;
}

std::pair<TriMesh, LandmarkSet> genSurface(const SynthSpec& spec, int classId, int subjectId) {
    if (spec.resolution < 200) {
        throw ValidationError("resolution too low to separate landmarks (< 200 vertices)");
    }
    if (classId < 0 || classId > 1) throw ValidationError("classId must be 0 or 1");
    const int rings =
        std::max(8, static_cast<int>(std::round(std::sqrt((spec.resolution - 1) / 3.0))));
    TriMesh disk = makeDiskMesh(rings);

    const ClassParams& params = spec.classes[static_cast<size_t>(classId)];
    Rng rng = Rng::forStream(spec.seed, (static_cast<std::uint64_t>(classId) << 32) |
                                            static_cast<std::uint64_t>(subjectId));

    // Per-subject bump variation, proportional to the noise scale.
    const double rel = params.paramJitter * spec.noiseSigma;
    std::array<BumpSpec, 4> bumps = {params.cusps[0], params.cusps[1], params.pits[0],
                                     params.pits[1]};
    for (auto& bump : bumps) {
        bump.height *= 1.0 + rel * rng.normal();
        bump.width *= std::max(0.3, 1.0 + rel * rng.normal());
    }

    const double a = params.ellipseAxes.x(), b = params.ellipseAxes.y();
    MatX3d V(disk.V.rows(), 3);
    for (Eigen::Index v = 0; v < disk.V.rows(); ++v) {
        const Eigen::Vector2d p(a * disk.V(v, 0), b * disk.V(v, 1));
        double z = 0;
        for (const auto& bump : bumps) {
            const Eigen::Vector2d c(a * bump.center.x(), b * bump.center.y());
            z += gaussianBump(bump, c, p);
        }
        z += spec.noiseSigma * rng.normal();
        V.row(v) << p.x(), p.y(), z;
    }
    TriMesh mesh = TriMesh::fromData(std::move(V), disk.F);

    // Landmarks: cusp apices snapped to the boundary, pit bottoms interior.
    VecXi lm(4);
    for (int k = 0; k < 2; ++k) {
        const Eigen::Vector2d c(a * params.cusps[static_cast<size_t>(k)].center.x(),
                                b * params.cusps[static_cast<size_t>(k)].center.y());
        lm(k) = nearestVertexXY(mesh.V, c, &mesh.isBoundaryVertex);
    }
    for (int k = 0; k < 2; ++k) {
        const Eigen::Vector2d c(a * params.pits[static_cast<size_t>(k)].center.x(),
                                b * params.pits[static_cast<size_t>(k)].center.y());
        lm(k + 2) = nearestVertexXY(mesh.V, c, nullptr);
    }
    LandmarkSet landmarks{lm};
    validateLandmarks(landmarks, mesh);
    return {std::move(mesh), landmarks};
}

Dataset genDataset(const SynthSpec& spec, int nPerClass) {
    if (nPerClass < 2) throw ValidationError("need at least 2 subjects per class");
    Dataset ds;
    for (int c = 0; c < 2; ++c) {
        for (int s = 0; s < nPerClass; ++s) {
            auto [mesh, lm] = genSurface(spec, c, s);
            ds.subjects.push_back(
                {std::move(mesh), lm, spec.labels[static_cast<size_t>(c)]});
        }
    }
    return ds;
}

std::filesystem::path genDatasetFiles(const SynthSpec& spec, int nPerClass,
                                      const std::filesystem::path& outDir) {
    if (nPerClass < 2) throw ValidationError("need at least 2 subjects per class");
    std::filesystem::create_directories(outDir);
    const std::filesystem::path manifestPath = outDir / "manifest.csv";
    std::ofstream manifest(manifestPath);
    if (!manifest) throw ValidationError("cannot write manifest: " + manifestPath.string());
    manifest << "mesh_path,landmark_path,label\n";
    for (int c = 0; c < 2; ++c) {
        for (int s = 0; s < nPerClass; ++s) {
            auto [mesh, lm] = genSurface(spec, c, s);
            const std::string stem =
                spec.labels[static_cast<size_t>(c)] + "_" + std::to_string(s);
            saveObj(outDir / (stem + ".obj"), mesh.V, mesh.F);
            saveLandmarks(outDir / (stem + ".lmk"), lm);
            manifest << stem << ".obj," << stem << ".lmk,"
                     << spec.labels[static_cast<size_t>(c)] << '\n';
        }
    }
    return manifestPath;
}

}  // namespace qcmorph
