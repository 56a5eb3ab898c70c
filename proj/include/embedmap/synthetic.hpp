#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "embedmap/envmap.hpp"
#include "embedmap/rig_io.hpp"

namespace embedmap {

// Closed-form environments evaluated per direction; the ground truth the
// synthetic rig is checked against.
enum class AnalyticEnv { Gradient, ColorWheel, DiscLight };

std::string to_string(AnalyticEnv env);
AnalyticEnv analytic_env_from_string(const std::string& s);

Vec3 eval_analytic_env(AnalyticEnv env, const Vec3& unit_dir);

// A "user" stand-in: an angular disc whose direction sweeps from start to
// end over the frame range.
struct BillboardSpec {
    UnitDirection start{0.0, 0.0, -1.0};
    UnitDirection end{0.0, 0.0, -1.0};
    double angular_radius_deg = 10.0;
    Vec3 color{1.0, 0.0, 0.0};
};

UnitDirection billboard_direction(const BillboardSpec& billboard, int frame_index,
                                  int frame_count);

struct SyntheticRigSpec {
    int camera_count = 6;
    double fov_deg = 90.0;
    int image_width = 256;
    int image_height = 256;
    AnalyticEnv env = AnalyticEnv::Gradient;
    int frame_count = 1;
    std::optional<BillboardSpec> billboard;
    int ground_truth_width = 256;
    int ground_truth_height = 128;
};

void validate_spec(const SyntheticRigSpec& spec);

// Outward-looking camera directions from the shared capture point: up to six
// cube-face axes, or an azimuth ring for larger counts.
std::vector<UnitDirection> rig_camera_directions(int count);

// The analytic environment sampled at LatLong texel centers, alpha 1.
EnvironmentMap analytic_env_map(AnalyticEnv env, int width, int height);

// One camera's frame: the analytic environment along each pixel ray, with
// the billboard (when given) painted over it and recorded in alpha.
Image render_synthetic_frame(const CameraIntrinsics& intr, const CameraPose& pose,
                             AnalyticEnv env,
                             const std::optional<BillboardSpec>& billboard, int frame_index,
                             int frame_count);

struct GeneratedRig {
    Rig rig;
    std::filesystem::path rig_path;
    std::filesystem::path ground_truth_path;
};

// Emits rig.json, per-camera frame PNGs (RGBA when a billboard is present),
// per-camera clean plates, and the LatLong ground-truth map as PFM.
// Deterministic for a given spec.
GeneratedRig generate_synthetic_rig(const SyntheticRigSpec& spec,
                                    const std::filesystem::path& out_dir);

}  // namespace embedmap
