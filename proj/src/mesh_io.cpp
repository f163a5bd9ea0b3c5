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
#include "qcmorph/mesh_io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace qcmorph {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::ifstream openOrThrow(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open file: " + path.string());
    return in;
}

TriMesh loadObj(const std::filesystem::path& path) {
    std::ifstream in = openOrThrow(path);
    std::vector<Eigen::Vector3d> verts;
    std::vector<Eigen::Vector3i> faces;
    std::string line;
    Eigen::Index lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;
        if (tag == "v") {
            double x, y, z;
            if (!(ls >> x >> y >> z)) {
                throw ValidationError("OBJ parse failure at line " + std::to_string(lineNo));
            }
            verts.emplace_back(x, y, z);
        } else if (tag == "f") {
            std::vector<long> idx;
            std::string tok;
            while (ls >> tok) {
                // f records may carry v/vt/vn; only the vertex index matters.
                const size_t slash = tok.find('/');
                if (slash != std::string::npos) tok = tok.substr(0, slash);
                try {
                    idx.push_back(std::stol(tok));
                } catch (const std::exception&) {
                    throw ValidationError("OBJ parse failure at line " + std::to_string(lineNo));
                }
            }
            if (idx.size() != 3) {
                throw ValidationError("OBJ face is not a triangle at line " +
                                      std::to_string(lineNo));
            }
            Eigen::Vector3i f;
            for (int c = 0; c < 3; ++c) {
                long v = idx[static_cast<size_t>(c)];
                if (v < 0) v = static_cast<long>(verts.size()) + v + 1;  // relative index
                f(c) = static_cast<int>(v - 1);                          // OBJ is 1-based
            }
            faces.push_back(f);
        }
    }
    if (verts.empty() || faces.empty()) {
        throw ValidationError("OBJ has no geometry: " + path.string());
    }
    MatX3d V(static_cast<Eigen::Index>(verts.size()), 3);
    for (size_t i = 0; i < verts.size(); ++i) V.row(static_cast<Eigen::Index>(i)) = verts[i];
    MatX3i F(static_cast<Eigen::Index>(faces.size()), 3);
    for (size_t i = 0; i < faces.size(); ++i) F.row(static_cast<Eigen::Index>(i)) = faces[i];
    return TriMesh::fromData(std::move(V), std::move(F));
}

TriMesh loadPly(const std::filesystem::path& path) {
    std::ifstream in = openOrThrow(path);
    std::string line;
    if (!std::getline(in, line) || line.rfind("ply", 0) != 0) {
        throw ValidationError("not a PLY file: " + path.string());
    }
    Eigen::Index nv = -1, nf = -1;
    bool ascii = false;
    std::string element;
    int vertexProps = 0;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "format") {
            std::string fmt;
            ls >> fmt;
            ascii = (fmt == "ascii");
        } else if (tag == "element") {
            std::string name;
            long n;
            ls >> name >> n;
            element = name;
            if (name == "vertex") nv = n;
            if (name == "face") nf = n;
        } else if (tag == "property" && element == "vertex") {
            ++vertexProps;
        } else if (tag == "end_header") {
            break;
        }
    }
    if (!ascii) throw ValidationError("only ascii PLY is supported: " + path.string());
    if (nv <= 0 || nf <= 0) throw ValidationError("PLY missing vertex/face counts");
    MatX3d V(nv, 3);
    for (Eigen::Index i = 0; i < nv; ++i) {
        if (!std::getline(in, line)) throw ValidationError("PLY truncated vertex list");
        std::istringstream ls(line);
        double x, y, z;
        if (!(ls >> x >> y >> z)) throw ValidationError("PLY vertex parse failure");
        V.row(i) << x, y, z;  // extra properties beyond x y z are ignored
    }
    MatX3i F(nf, 3);
    for (Eigen::Index i = 0; i < nf; ++i) {
        if (!std::getline(in, line)) throw ValidationError("PLY truncated face list");
        std::istringstream ls(line);
        int cnt;
        if (!(ls >> cnt) || cnt != 3) throw ValidationError("PLY face is not a triangle");
        if (!(ls >> F(i, 0) >> F(i, 1) >> F(i, 2))) {
            throw ValidationError("PLY face parse failure");
        }
    }
    return TriMesh::fromData(std::move(V), std::move(F));
}

}  // namespace

std::string formatDouble(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

TriMesh loadMesh(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path)) {
        throw ValidationError("file does not exist: " + path.string());
    }
    const std::string ext = lower(path.extension().string());
    if (ext == ".obj") return loadObj(path);
    if (ext == ".ply") return loadPly(path);
    throw ValidationError("unsupported mesh format: " + path.string());
}

void saveObj(const std::filesystem::path& path, const MatX3d& V, const MatX3i& F) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write file: " + path.string());
    for (Eigen::Index i = 0; i < V.rows(); ++i) {
        out << "v " << formatDouble(V(i, 0)) << ' ' << formatDouble(V(i, 1)) << ' '
            << formatDouble(V(i, 2)) << '\n';
    }
    for (Eigen::Index f = 0; f < F.rows(); ++f) {
        out << "f " << F(f, 0) + 1 << ' ' << F(f, 1) + 1 << ' ' << F(f, 2) + 1 << '\n';
    }
}

LandmarkLoadResult loadLandmarks(const std::filesystem::path& path, const TriMesh& mesh) {
    std::ifstream in = openOrThrow(path);
    std::vector<int> indices;
    std::vector<double> snaps;
    std::string line;
    Eigen::Index lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag[0] == '#') continue;
        if (tag == "i") {
            long idx;
            if (!(ls >> idx)) {
                throw ValidationError("landmark parse failure at line " + std::to_string(lineNo));
            }
            if (idx < 0 || idx >= mesh.numVertices()) {
                std::ostringstream os;
                os << "landmark index " << idx << " out of range";
                throw ValidationError(os.str());
            }
            indices.push_back(static_cast<int>(idx));
            snaps.push_back(0.0);
        } else if (tag == "p") {
            double x, y, z;
            if (!(ls >> x >> y >> z)) {
                throw ValidationError("landmark parse failure at line " + std::to_string(lineNo));
            }
            const Eigen::Vector3d p(x, y, z);
            int best = 0;
            double bestD = std::numeric_limits<double>::infinity();
            for (Eigen::Index v = 0; v < mesh.numVertices(); ++v) {
                const double d = (mesh.V.row(v).transpose() - p).norm();
                if (d < bestD) {
                    bestD = d;
                    best = static_cast<int>(v);
                }
            }
            indices.push_back(best);
            snaps.push_back(bestD);
        } else {
            throw ValidationError("unknown landmark record '" + tag + "' at line " +
                                  std::to_string(lineNo));
        }
    }
    if (indices.empty()) throw ValidationError("landmark file is empty: " + path.string());
    for (size_t a = 0; a < indices.size(); ++a) {
        for (size_t b = a + 1; b < indices.size(); ++b) {
            if (indices[a] == indices[b]) {
                std::ostringstream os;
                os << "duplicate landmark at vertex " << indices[a];
                throw ValidationError(os.str());
            }
        }
    }
    LandmarkLoadResult result;
    result.landmarks.indices =
        Eigen::Map<VecXi>(indices.data(), static_cast<Eigen::Index>(indices.size()));
    result.snapDistances =
        Eigen::Map<VecXd>(snaps.data(), static_cast<Eigen::Index>(snaps.size()));
    validateLandmarks(result.landmarks, mesh);
    return result;
}

void saveLandmarks(const std::filesystem::path& path, const LandmarkSet& lm) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write file: " + path.string());
    for (Eigen::Index k = 0; k < lm.size(); ++k) out << "i " << lm.indices(k) << '\n';
}

std::vector<ManifestEntry> loadManifest(const std::filesystem::path& path) {
    std::ifstream in = openOrThrow(path);
    const std::filesystem::path dir = path.parent_path();
    std::vector<ManifestEntry> entries;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string meshPart, lmPart, label;
        if (!std::getline(ls, meshPart, ',') || !std::getline(ls, lmPart, ',') ||
            !std::getline(ls, label)) {
            throw ValidationError("manifest row needs mesh_path,landmark_path,label: " + line);
        }
        if (first && meshPart == "mesh_path") {
            first = false;
            continue;  // header row
        }
        first = false;
        auto resolve = [&dir](const std::string& p) {
            std::filesystem::path fp(p);
            return fp.is_absolute() ? fp : dir / fp;
        };
        entries.push_back({resolve(meshPart), resolve(lmPart), label});
    }
    if (entries.empty()) throw ValidationError("manifest is empty: " + path.string());
    return entries;
}

Dataset loadDataset(const std::filesystem::path& manifestPath) {
    Dataset ds;
    for (const auto& entry : loadManifest(manifestPath)) {
        Subject s;
        s.mesh = loadMesh(entry.meshPath);
        s.landmarks = loadLandmarks(entry.landmarkPath, s.mesh).landmarks;
        s.label = entry.label;
        ds.subjects.push_back(std::move(s));
    }
    const Eigen::Index n = ds.subjects.front().landmarks.size();
    for (const auto& s : ds.subjects) {
        if (s.landmarks.size() != n) {
            std::ostringstream os;
            os << "landmark count mismatch " << n << "!=" << s.landmarks.size();
            throw ValidationError(os.str());
        }
    }
    return ds;
}

}  // namespace qcmorph
