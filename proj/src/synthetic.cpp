#include "embedmap/synthetic.hpp"

#include <cmath>

#include "embedmap/image_io.hpp"
#include "embedmap/parallel.hpp"

namespace embedmap {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kDegToRad = kPi / 180.0;
}

std::string to_string(AnalyticEnv env) {
    switch (env) {
        case AnalyticEnv::Gradient: return "gradient";
        case AnalyticEnv::ColorWheel: return "color-wheel";
        case AnalyticEnv::DiscLight: return "disc-light";
    }
    throw ValidationError("unknown analytic environment");
}

AnalyticEnv analytic_env_from_string(const std::string& s) {
    if (s == "gradient") return AnalyticEnv::Gradient;
    if (s == "color-wheel") return AnalyticEnv::ColorWheel;
    if (s == "disc-light") return AnalyticEnv::DiscLight;
    throw ValidationError("unknown analytic environment: " + s);
}

Vec3 eval_analytic_env(AnalyticEnv env, const Vec3& d) {
    switch (env) {
        case AnalyticEnv::Gradient:
            return {0.5 + 0.5 * d.x, 0.5 + 0.5 * d.y, 0.5 + 0.5 * d.z};
        case AnalyticEnv::ColorWheel: {
            double hue = std::atan2(d.x, -d.z) / (2.0 * kPi) + 0.5;
            hue -= std::floor(hue);
            const double value = 0.25 + 0.75 * (0.5 + 0.5 * d.y);
            const auto channel = [&](double shift) {
                double t = hue + shift;
                t -= std::floor(t);
                return value * std::clamp(std::abs(t * 6.0 - 3.0) - 1.0, 0.0, 1.0);
            };
            return {channel(0.0), channel(2.0 / 3.0), channel(1.0 / 3.0)};
        }
        case AnalyticEnv::DiscLight: {
            static const Vec3 axis = normalize({1.0, 1.0, -1.0});
            const double cos_r = std::cos(15.0 * kDegToRad);
            return dot(d, axis) >= cos_r ? Vec3{4.0, 4.0, 4.0} : Vec3{0.05, 0.05, 0.05};
        }
    }
    throw ValidationError("unknown analytic environment");
}

UnitDirection billboard_direction(const BillboardSpec& billboard, int frame_index,
                                  int frame_count) {
    const double t = frame_count > 1
                         ? static_cast<double>(frame_index) / (frame_count - 1)
                         : 0.0;
    const Vec3 a = billboard.start.vec();
    const Vec3 b = billboard.end.vec();
    const double omega = std::acos(std::clamp(dot(a, b), -1.0, 1.0));
    if (omega < 1e-9) return billboard.start;
    const double s = std::sin(omega);
    return UnitDirection(a * (std::sin((1.0 - t) * omega) / s) + b * (std::sin(t * omega) / s));
}

void validate_spec(const SyntheticRigSpec& spec) {
    if (spec.camera_count < 1) throw ValidationError("camera count must be >= 1");
    if (!(spec.fov_deg > 0.0 && spec.fov_deg < 180.0))
        throw ValidationError("FOV must lie in (0, 180) degrees");
    if (spec.image_width < 1 || spec.image_height < 1 || spec.ground_truth_width < 1 ||
        spec.ground_truth_height < 1)
        throw ValidationError("image dimensions must be >= 1");
    if (spec.ground_truth_width != 2 * spec.ground_truth_height)
        throw ValidationError("ground-truth map must be 2:1 LatLong");
    if (spec.frame_count < 1) throw ValidationError("frame count must be >= 1");
    if (spec.billboard && !(spec.billboard->angular_radius_deg > 0.0))
        throw ValidationError("billboard radius must be > 0");
}

std::vector<UnitDirection> rig_camera_directions(int count) {
    if (count < 1) throw ValidationError("camera count must be >= 1");
    static const Vec3 cube[6] = {{0, 0, -1}, {1, 0, 0}, {0, 0, 1},
                                 {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}};
    std::vector<UnitDirection> dirs;
    dirs.reserve(count);
    if (count <= 6) {
        for (int i = 0; i < count; ++i) dirs.emplace_back(cube[i]);
    } else {
        for (int i = 0; i < count; ++i) {
            const double az = 2.0 * kPi * i / count;
            dirs.emplace_back(std::sin(az), 0.0, -std::cos(az));
        }
    }
    return dirs;
}

EnvironmentMap analytic_env_map(AnalyticEnv env, int width, int height) {
    Image out(width, height);
    parallel_rows(height, [&](int y) {
        for (int x = 0; x < width; ++x) {
            const auto dir =
                texel_to_dir(texel_center(width, height, x, y), Parameterization::LatLong);
            const Vec3 c = eval_analytic_env(env, dir.vec());
            out.at(x, y) = {static_cast<float>(c.x), static_cast<float>(c.y),
                            static_cast<float>(c.z), 1.0f};
        }
    });
    return EnvironmentMap(std::move(out), Parameterization::LatLong);
}

Image render_synthetic_frame(const CameraIntrinsics& intr, const CameraPose& pose,
                             AnalyticEnv env,
                             const std::optional<BillboardSpec>& billboard, int frame_index,
                             int frame_count) {
    std::optional<Vec3> bb_dir;
    double bb_cos = 1.0;
    if (billboard) {
        bb_dir = billboard_direction(*billboard, frame_index, frame_count).vec();
        bb_cos = std::cos(billboard->angular_radius_deg * kDegToRad);
    }
    Image out(intr.width, intr.height);
    parallel_rows(intr.height, [&](int y) {
        for (int x = 0; x < intr.width; ++x) {
            const UnitDirection ray = pixel_to_ray(intr, pose, x + 0.5, y + 0.5);
            if (bb_dir && dot(ray.vec(), *bb_dir) >= bb_cos) {
                const Vec3& c = billboard->color;
                out.at(x, y) = {static_cast<float>(c.x), static_cast<float>(c.y),
                                static_cast<float>(c.z), 1.0f};
            } else {
                const Vec3 c = eval_analytic_env(env, ray.vec());
                out.at(x, y) = {static_cast<float>(c.x), static_cast<float>(c.y),
                                static_cast<float>(c.z), billboard ? 0.0f : 1.0f};
            }
        }
    });
    return out;
}

GeneratedRig generate_synthetic_rig(const SyntheticRigSpec& spec,
                                    const std::filesystem::path& out_dir) {
    validate_spec(spec);
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec || !std::filesystem::is_directory(out_dir))
        throw IoError("cannot create output directory: " + out_dir.string());

    const double half_fov = 0.5 * spec.fov_deg * kDegToRad;
    const double fx = 0.5 * spec.image_width / std::tan(half_fov);
    const double fy = fx;  // square pixels; vertical FOV follows the aspect
    const CameraIntrinsics intr =
        make_intrinsics(fx, fy, 0.5 * spec.image_width, 0.5 * spec.image_height,
                        spec.image_width, spec.image_height);

    GeneratedRig result;
    result.rig.base_dir = out_dir;
    const auto dirs = rig_camera_directions(spec.camera_count);
    char name[64];

    for (size_t i = 0; i < dirs.size(); ++i) {
        // Cameras sit at the capture point itself (translation 0).
        const CameraPose pose(look_rotation(dirs[i], {0, 1, 0}), Vec3{0, 0, 0});
        std::snprintf(name, sizeof(name), "cam%02zu_%%05d.png", i);
        RigCamera cam{intr, pose, name, std::nullopt};
        std::snprintf(name, sizeof(name), "plate_cam%02zu.png", i);
        cam.clean_plate = name;
        result.rig.cameras.push_back(std::move(cam));

        const Image plate =
            render_synthetic_frame(intr, pose, spec.env, std::nullopt, 0, 1);
        write_png(out_dir / *result.rig.cameras.back().clean_plate, plate, false);

        for (int f = 0; f < spec.frame_count; ++f) {
            const Image frame = render_synthetic_frame(intr, pose, spec.env, spec.billboard, f,
                                                       spec.frame_count);
            write_png(out_dir / format_indexed(result.rig.cameras.back().frame_pattern, f),
                      frame, spec.billboard.has_value());
        }
    }

    result.rig_path = out_dir / "rig.json";
    save_rig(result.rig, result.rig_path);

    result.ground_truth_path = out_dir / "ground_truth.pfm";
    save_environment_map(
        analytic_env_map(spec.env, spec.ground_truth_width, spec.ground_truth_height),
        result.ground_truth_path);
    return result;
}

}  // namespace embedmap
