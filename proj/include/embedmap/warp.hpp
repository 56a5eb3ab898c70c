#pragma once

#include <span>
#include <vector>

#include "embedmap/camera.hpp"
#include "embedmap/envmap.hpp"

namespace embedmap {

// Target grid for warping.
struct MapSpec {
    int width = 1;
    int height = 1;
    Parameterization param = Parameterization::LatLong;
};

// One camera warped onto the sphere: premultiplied colors with alpha as
// coverage, plus a per-texel accumulation weight. weight = 0 exactly where
// alpha = 0.
struct WarpedLayer {
    EnvironmentMap map;
    std::vector<float> weights;
};

WarpedLayer make_warped_layer(EnvironmentMap map, std::vector<float> weights);

// Nonempty set of views sharing one world frame and one capture instant.
struct RigCapture {
    std::vector<CameraView> views;
    int frame_index = 0;
};

// Gather-style warp: every target texel takes its center direction, samples
// the view along it, and stores the (premultiplied) sample with weight =
// layer_weight x sample alpha. Texels outside the frustum (or outside the
// SphereMap disc) are transparent black with weight 0. Directions are taken
// from the shared capture point; the camera translation plays no part.
WarpedLayer warp_view_to_envmap(const CameraView& view, const MapSpec& spec,
                                double layer_weight = 1.0);

// Per texel, output = sum(color*weight)/sum(weight), alpha = min(1,
// sum(alpha*weight)/sum(weight)); transparent black where no layer
// contributes. Colors stay premultiplied. Per-texel accumulation follows
// list order.
EnvironmentMap merge_views(std::span<const WarpedLayer> layers);

// Standard premultiplied over: out = user + (1 - user.a) * background.
EnvironmentMap composite_over(const EnvironmentMap& user, const EnvironmentMap& background);

namespace serial {
WarpedLayer warp_view_to_envmap(const CameraView& view, const MapSpec& spec,
                                double layer_weight = 1.0);
EnvironmentMap merge_views(std::span<const WarpedLayer> layers);
EnvironmentMap composite_over(const EnvironmentMap& user, const EnvironmentMap& background);
}  // namespace serial

}  // namespace embedmap
