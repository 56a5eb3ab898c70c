#include "embedmap/scene.hpp"

#include <cmath>
#include <limits>

namespace embedmap {

namespace {
constexpr double kMinHitDistance = 1e-9;
}

void validate_scene(const Scene& scene) {
    for (const auto& s : scene.spheres) {
        if (!(s.radius > 0.0) || !std::isfinite(s.radius))
            throw ValidationError("sphere radius must be positive");
        if (!finite(s.center)) throw ValidationError("sphere center is not finite");
    }
    for (const auto& mesh : scene.meshes) {
        if (mesh.normals.size() != mesh.vertices.size())
            throw ValidationError("mesh needs one normal per vertex");
        const int n = static_cast<int>(mesh.vertices.size());
        for (const auto& tri : mesh.triangles)
            for (int idx : tri)
                if (idx < 0 || idx >= n) throw ValidationError("triangle index out of range");
        for (const auto& nrm : mesh.normals)
            if (std::abs(length(nrm) - 1.0) > 1e-4)
                throw ValidationError("vertex normal is not unit length");
    }
    if (!(scene.f0 >= 0.0 && scene.f0 <= 1.0)) throw ValidationError("f0 must lie in [0,1]");
}

UnitDirection reflect_vector(const UnitDirection& incident, const UnitDirection& normal) {
    const Vec3 i = incident.vec();
    const Vec3 n = normal.vec();
    return UnitDirection(i - 2.0 * dot(i, n) * n);
}

double fresnel_schlick(double cos_theta, double f0) {
    if (!(cos_theta >= 0.0 && cos_theta <= 1.0))
        throw ValidationError("cos_theta must lie in [0,1]");
    if (!(f0 >= 0.0 && f0 <= 1.0)) throw ValidationError("f0 must lie in [0,1]");
    const double m = 1.0 - cos_theta;
    const double m2 = m * m;
    return std::lerp(f0, 1.0, m2 * m2 * m);
}

namespace {

struct RawHit {
    double t = std::numeric_limits<double>::infinity();
    Vec3 normal;  // unnormalized is fine; oriented later
    int object_id = -1;
};

void intersect_sphere(const SphereObject& s, const Vec3& o, const Vec3& d, int id, RawHit& best) {
    const Vec3 oc = o - s.center;
    const double b = dot(oc, d);
    const double c = dot(oc, oc) - s.radius * s.radius;
    const double disc = b * b - c;
    if (disc < 0.0) return;
    const double sq = std::sqrt(disc);
    double t = -b - sq;
    if (t <= kMinHitDistance) t = -b + sq;
    if (t <= kMinHitDistance || t >= best.t) return;
    best.t = t;
    best.normal = (o + t * d - s.center) / s.radius;
    best.object_id = id;
}

void intersect_mesh(const TriangleMesh& mesh, const Vec3& o, const Vec3& d, int id,
                    RawHit& best) {
    for (const auto& tri : mesh.triangles) {
        const Vec3& v0 = mesh.vertices[tri[0]];
        const Vec3 e1 = mesh.vertices[tri[1]] - v0;
        const Vec3 e2 = mesh.vertices[tri[2]] - v0;
        const Vec3 p = cross(d, e2);
        const double det = dot(e1, p);
        if (std::abs(det) < 1e-12) continue;
        const double inv = 1.0 / det;
        const Vec3 s = o - v0;
        const double u = dot(s, p) * inv;
        if (u < 0.0 || u > 1.0) continue;
        const Vec3 q = cross(s, e1);
        const double v = dot(d, q) * inv;
        if (v < 0.0 || u + v > 1.0) continue;
        const double t = dot(e2, q) * inv;
        if (t <= kMinHitDistance || t >= best.t) continue;
        best.t = t;
        best.normal = (1.0 - u - v) * mesh.normals[tri[0]] + u * mesh.normals[tri[1]] +
                      v * mesh.normals[tri[2]];
        best.object_id = id;
    }
}

}  // namespace

std::optional<Hit> intersect(const Scene& scene, const Vec3& origin, const UnitDirection& dir) {
    const Vec3 d = dir.vec();
    RawHit best;
    int id = 0;
    for (const auto& s : scene.spheres) intersect_sphere(s, origin, d, id++, best);
    for (const auto& mesh : scene.meshes) intersect_mesh(mesh, origin, d, id++, best);
    if (best.object_id < 0) return std::nullopt;
    Vec3 n = best.normal;
    if (dot(n, d) > 0.0) n = -n;  // face the ray origin
    return Hit{origin + best.t * d, UnitDirection(n), best.object_id, best.t};
}

}  // namespace embedmap
