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

#include <filesystem>
#include <string>
#include <vector>

namespace qcmorph {

/// Loads a Wavefront OBJ (v/f records) or ascii PLY mesh and validates it.
TriMesh loadMesh(const std::filesystem::path& path);

/// Writes an OBJ with full double round-trip precision (%.17g).
void saveObj(const std::filesystem::path& path, const MatX3d& V, const MatX3i& F);

struct LandmarkLoadResult {
    LandmarkSet landmarks;
    VecXd snapDistances;  // zero for index-mode entries
};

/// Landmark file: one entry per line, either `i <vertex-index>` (0-based)
/// or `p <x> <y> <z>`. Points snap to the nearest mesh vertex.
LandmarkLoadResult loadLandmarks(const std::filesystem::path& path, const TriMesh& mesh);

void saveLandmarks(const std::filesystem::path& path, const LandmarkSet& lm);

struct ManifestEntry {
    std::filesystem::path meshPath;
    std::filesystem::path landmarkPath;
    std::string label;
};

/// Manifest CSV `mesh_path,landmark_path,label`; relative paths resolve
/// against the manifest's directory. An optional header row is skipped.
std::vector<ManifestEntry> loadManifest(const std::filesystem::path& path);

Dataset loadDataset(const std::filesystem::path& manifestPath);

/// Shortest-exact decimal formatting used by every text artifact.
std::string formatDouble(double x);

}  // namespace qcmorph
