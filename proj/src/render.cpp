#include "embedmap/render.hpp"

#include <algorithm>
#include <cmath>

#include "embedmap/parallel.hpp"

namespace embedmap {

namespace {

Rgba env_lookup(const EnvironmentMap& env, const UnitDirection& d) {
    if (env.param() == Parameterization::SphereMap && d.z() <= -1.0 + 1e-12) {
        // Singular direction: nudge 1e-4 rad toward +z (azimuth tie-break:
        // the x-z plane).
        return sample_bilinear(env, UnitDirection(std::sin(1e-4), 0.0, -std::cos(1e-4)));
    }
    return sample_bilinear(env, d);
}

Rgba shade_pixel(const Scene& scene, const EnvironmentMap& env, const Vec3& eye, int x, int y,
                 uint8_t& hit_flag) {
    const UnitDirection ray = pixel_to_ray(scene.camera_intrinsics, scene.camera_pose,
                                           x + 0.5, y + 0.5);
    const auto hit = intersect(scene, eye, ray);
    if (!hit) {
        hit_flag = 0;
        return {static_cast<float>(scene.background_color.x),
                static_cast<float>(scene.background_color.y),
                static_cast<float>(scene.background_color.z), 1.0f};
    }
    hit_flag = 1;
    const Vec3 view = -ray.vec();
    const double cos_theta = std::max(0.0, dot(view, hit->normal.vec()));
    const double fresnel = fresnel_schlick(cos_theta, scene.f0);
    const Rgba mirror = env_lookup(env, reflect_vector(ray, hit->normal));
    const double local = (1.0 - fresnel) * cos_theta;
    return {static_cast<float>(local * scene.base_color.x + fresnel * mirror.r),
            static_cast<float>(local * scene.base_color.y + fresnel * mirror.g),
            static_cast<float>(local * scene.base_color.z + fresnel * mirror.b), 1.0f};
}

}  // namespace

RenderOutput render_reflection(const Scene& scene, const EnvironmentMap& env) {
    validate_scene(scene);
    const int w = scene.camera_intrinsics.width;
    const int h = scene.camera_intrinsics.height;
    const Vec3 eye = scene.camera_pose.center();
    RenderOutput out{Image(w, h), std::vector<uint8_t>(static_cast<size_t>(w) * h, 0)};
    parallel_rows(h, [&](int y) {
        for (int x = 0; x < w; ++x)
            out.image.at(x, y) =
                shade_pixel(scene, env, eye, x, y, out.hit_mask[static_cast<size_t>(y) * w + x]);
    });
    return out;
}

namespace serial {

RenderOutput render_reflection(const Scene& scene, const EnvironmentMap& env) {
    validate_scene(scene);
    const int w = scene.camera_intrinsics.width;
    const int h = scene.camera_intrinsics.height;
    const Vec3 eye = scene.camera_pose.center();
    RenderOutput out{Image(w, h), std::vector<uint8_t>(static_cast<size_t>(w) * h, 0)};
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            out.image.at(x, y) =
                shade_pixel(scene, env, eye, x, y, out.hit_mask[static_cast<size_t>(y) * w + x]);
    return out;
}

}  // namespace serial

}  // namespace embedmap
