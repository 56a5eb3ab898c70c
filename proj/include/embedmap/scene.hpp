#pragma once

#include <array>
#include <optional>
#include <vector>

#include "embedmap/camera.hpp"
#include "embedmap/vec.hpp"

namespace embedmap {

struct SphereObject {
    Vec3 center;
    double radius = 1.0;
};

// Indexed triangle mesh with per-vertex unit normals.
struct TriangleMesh {
    std::vector<Vec3> vertices;
    std::vector<Vec3> normals;                     // one per vertex, unit length
    std::vector<std::array<int, 3>> triangles;     // indices into vertices/normals
};

// Reflective objects plus the render camera and shading constants.
struct Scene {
    std::vector<SphereObject> spheres;
    std::vector<TriangleMesh> meshes;
    CameraIntrinsics camera_intrinsics;
    CameraPose camera_pose;
    Vec3 background_color{0, 0, 0};
    Vec3 base_color{0, 0, 0};
    double f0 = 0.04;  // normal-incidence reflectance
};

// Validates radii, index ranges, normal lengths (unit within 1e-4), f0 range.
void validate_scene(const Scene& scene);

struct Hit {
    Vec3 point;
    UnitDirection normal;  // faces the ray origin
    int object_id = 0;     // spheres first, then meshes
    double distance = 0.0;
};

// Mirror bounce r = i - 2 (i.n) n.
UnitDirection reflect_vector(const UnitDirection& incident, const UnitDirection& normal);

// Schlick's approximation F = f0 + (1 - f0)(1 - cos_theta)^5.
// Exact at the endpoints: F(1) = f0, F(0) = 1.
double fresnel_schlick(double cos_theta, double f0);

// Nearest positive-distance intersection along the ray, or nullopt. Sphere
// hits come from the quadratic, triangles from the Moller-Trumbore test with
// barycentric-interpolated normals.
std::optional<Hit> intersect(const Scene& scene, const Vec3& origin, const UnitDirection& dir);

}  // namespace embedmap
