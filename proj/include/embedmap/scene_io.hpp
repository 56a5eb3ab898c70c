#pragma once

#include <filesystem>

#include "embedmap/scene.hpp"

namespace embedmap {

// OBJ subset: v, vn, and f with "i" or "i//k" corners (1-based, polygons
// fan-triangulated). Faces without normals get area-weighted vertex normals
// computed at load.
TriangleMesh load_obj(const std::filesystem::path& path);

// Scene JSON: {"spheres":[{"center":[3],"radius":r}], "meshes":["path.obj"],
// "camera":{...as rig...}, "f0":0.04, "base_color":[3], "background":[3]}.
// Mesh paths resolve against the scene file's directory.
Scene load_scene(const std::filesystem::path& path);

}  // namespace embedmap
