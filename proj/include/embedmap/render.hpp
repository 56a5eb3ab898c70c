#pragma once

#include <vector>

#include "embedmap/envmap.hpp"
#include "embedmap/scene.hpp"

namespace embedmap {

// Rendered frame at the render-camera resolution. Non-hit pixels equal the
// scene background color; the image alpha channel is 1 everywhere.
struct RenderOutput {
    Image image;
    std::vector<uint8_t> hit_mask;  // row-major, 1 where a primary ray hit
};

// Ray-cast the scene and shade hits as Fresnel-weighted mirror reflection of
// the environment map plus a local term:
//   color = (1 - F) * base_color * max(0, n.v) + F * env(reflect(ray, n))
// with F = fresnel_schlick(max(0, n.v), f0). Rays go through pixel centers;
// no secondary bounces. SphereMap lookups at the singular direction use the
// direction nudged 1e-4 rad toward +z.
RenderOutput render_reflection(const Scene& scene, const EnvironmentMap& env);

namespace serial {
RenderOutput render_reflection(const Scene& scene, const EnvironmentMap& env);
}

}  // namespace embedmap
