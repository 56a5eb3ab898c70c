#include "embedmap/scene_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

#include "json_camera.hpp"

namespace embedmap {

namespace {

struct Corner {
    int vertex = 0;   // 1-based OBJ index
    int normal = 0;   // 0 = none
};

Corner parse_corner(const std::string& token) {
    Corner c;
    const size_t slash = token.find('/');
    if (slash == std::string::npos) {
        c.vertex = std::stoi(token);
        return c;
    }
    if (slash + 1 >= token.size() || token[slash + 1] != '/')
        throw ValidationError("OBJ corner '" + token + "': only v and v//vn are supported");
    c.vertex = std::stoi(token.substr(0, slash));
    c.normal = std::stoi(token.substr(slash + 2));
    return c;
}

}  // namespace

TriangleMesh load_obj(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open OBJ file: " + path.string());

    std::vector<Vec3> positions;
    std::vector<Vec3> obj_normals;
    std::vector<std::array<Corner, 3>> faces;
    bool all_have_normals = true;

    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag[0] == '#') continue;
        if (tag == "v") {
            Vec3 p;
            if (!(ls >> p.x >> p.y >> p.z)) throw ValidationError("bad vertex line: " + line);
            positions.push_back(p);
        } else if (tag == "vn") {
            Vec3 n;
            if (!(ls >> n.x >> n.y >> n.z)) throw ValidationError("bad normal line: " + line);
            obj_normals.push_back(n);
        } else if (tag == "f") {
            std::vector<Corner> corners;
            std::string token;
            while (ls >> token) corners.push_back(parse_corner(token));
            if (corners.size() < 3) throw ValidationError("face with fewer than 3 corners");
            for (const Corner& c : corners) {
                if (c.vertex < 1 || c.vertex > static_cast<int>(positions.size()))
                    throw ValidationError("OBJ vertex index out of range");
                if (c.normal < 0 || c.normal > static_cast<int>(obj_normals.size()))
                    throw ValidationError("OBJ normal index out of range");
                if (c.normal == 0) all_have_normals = false;
            }
            for (size_t i = 2; i < corners.size(); ++i)
                faces.push_back({corners[0], corners[i - 1], corners[i]});
        }
        // vt, usemtl, o, g, s, mtllib are ignored
    }
    if (faces.empty()) throw ValidationError("OBJ file has no faces: " + path.string());

    TriangleMesh mesh;
    if (all_have_normals) {
        // Weld corners on the (vertex, normal) pair.
        std::map<std::pair<int, int>, int> welded;
        for (const auto& face : faces) {
            std::array<int, 3> tri{};
            for (int k = 0; k < 3; ++k) {
                const auto key = std::make_pair(face[k].vertex, face[k].normal);
                auto it = welded.find(key);
                if (it == welded.end()) {
                    it = welded.emplace(key, static_cast<int>(mesh.vertices.size())).first;
                    mesh.vertices.push_back(positions[face[k].vertex - 1]);
                    mesh.normals.push_back(normalize(obj_normals[face[k].normal - 1]));
                }
                tri[k] = it->second;
            }
            mesh.triangles.push_back(tri);
        }
    } else {
        mesh.vertices = positions;
        std::vector<Vec3> accum(positions.size(), Vec3{});
        for (const auto& face : faces) {
            const std::array<int, 3> tri{face[0].vertex - 1, face[1].vertex - 1,
                                         face[2].vertex - 1};
            mesh.triangles.push_back(tri);
            // Cross product length carries the area weighting.
            const Vec3 fn = cross(positions[tri[1]] - positions[tri[0]],
                                  positions[tri[2]] - positions[tri[0]]);
            for (int idx : tri) accum[idx] += fn;
        }
        mesh.normals.reserve(accum.size());
        for (const Vec3& n : accum)
            mesh.normals.push_back(length(n) > 0.0 ? normalize(n) : Vec3{0, 1, 0});
    }
    return mesh;
}

Scene load_scene(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open scene file: " + path.string());
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("scene JSON parse error: " + std::string(e.what()));
    }
    Scene scene;
    try {
        auto [intr, pose] = detail::camera_from_json(doc.at("camera"));
        scene.camera_intrinsics = intr;
        scene.camera_pose = pose;
        for (const auto& s : doc.value("spheres", nlohmann::json::array()))
            scene.spheres.push_back(
                {detail::vec3_from_json(s.at("center")), s.at("radius").get<double>()});
        for (const auto& m : doc.value("meshes", nlohmann::json::array())) {
            const std::filesystem::path mesh_path = m.get<std::string>();
            scene.meshes.push_back(load_obj(
                mesh_path.is_absolute() ? mesh_path : path.parent_path() / mesh_path));
        }
        scene.f0 = doc.value("f0", 0.04);
        if (doc.contains("base_color")) scene.base_color = detail::vec3_from_json(doc["base_color"]);
        if (doc.contains("background")) scene.background_color = detail::vec3_from_json(doc["background"]);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("scene JSON error: " + std::string(e.what()));
    }
    validate_scene(scene);
    return scene;
}

}  // namespace embedmap
