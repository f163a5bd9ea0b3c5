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

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>

namespace qcmorph {

// --- Deterministic analytic surfaces (no randomness) ---

/// Structured grid over [0,w]x[0,h] with nx*ny vertices, z = 0.
TriMesh makeRectangleMesh(int nx, int ny, double width = 1.0, double height = 1.0);

/// Unit disk from concentric hexagonal rings; 1 + 3r(r+1) vertices.
TriMesh makeDiskMesh(int rings);

/// Spherical cap of the given radius up to the polar angle, meshed in
/// rings with roughly uniform edge length.
TriMesh makeSphereCap(double radius, double polarAngle, double targetEdge);

/// Same cap with an exact total vertex count (outer ring absorbs the
/// remainder).
TriMesh makeSphereCapWithVertexCount(double radius, double polarAngle, int vertexCount);

/// Cylinder wall patch of the given radius: angle in [-halfAngle, halfAngle],
/// height in [0, length], outward normals.
TriMesh makeCylinderPatch(double radius, double halfAngle, double length, double targetEdge);

// --- Two-class dataset generator ---

/// One Gaussian height feature: z += height * exp(-|p - center|^2 / (2 w^2)).
/// Centers are in unit-disk coordinates and scale with the ellipse axes.
struct BumpSpec {
    Eigen::Vector2d center;
    double height = 0;
    double width = 0.3;
};

struct ClassParams {
    std::array<BumpSpec, 2> cusps;  // crest features, centers on the rim
    std::array<BumpSpec, 2> pits;   // depressions (negative height), interior
    Eigen::Vector2d ellipseAxes{1.0, 0.85};
    /// Relative per-subject spread of bump heights/widths, in units of
    /// noiseSigma: sd = paramJitter * noiseSigma. Zero noise therefore
    /// means congruent subjects within a class.
    double paramJitter = 0;
};

struct SynthSpec {
    std::array<ClassParams, 2> classes;
    std::array<std::string, 2> labels{"A", "B"};
    double noiseSigma = 0.004;  // absolute z jitter
    int resolution = 1200;      // target vertex count
    std::uint64_t seed = 0;
};

/// Presets: "null" (identical classes), "curvature-diff" (cusp sharpness),
/// "distortion-diff" (pit landmark placement only, flat pits),
/// "mixed" (both effects).
SynthSpec presetSpec(const std::string& name, std::uint64_t seed);

/// Deterministic in (spec, classId, subjectId). Landmarks are ordered
/// (cusp1, cusp2, pit1, pit2); cusp landmarks are boundary vertices.
std::pair<TriMesh, LandmarkSet> genSurface(const SynthSpec& spec, int classId, int subjectId);

Dataset genDataset(const SynthSpec& spec, int nPerClass);

/// Writes meshes, landmark files and manifest.csv under outDir; returns
/// the manifest path. Output is bit-reproducible.
std::filesystem::path genDatasetFiles(const SynthSpec& spec, int nPerClass,
                                      const std::filesystem::path& outDir);

}  // namespace qcmorph
