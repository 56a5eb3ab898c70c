#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "embedmap/camera.hpp"

namespace embedmap {

struct RigCamera {
    CameraIntrinsics intrinsics;
    CameraPose pose;
    std::string frame_pattern;               // printf-style, %05d takes the frame index
    std::optional<std::string> clean_plate;  // per-camera plate, may itself be a pattern
};

// Capture rig as loaded from JSON. Relative frame paths resolve against the
// rig file's directory.
struct Rig {
    std::vector<RigCamera> cameras;
    std::filesystem::path base_dir;
};

Rig load_rig(const std::filesystem::path& path);
void save_rig(const Rig& rig, const std::filesystem::path& path);

// Expand a printf-style "%d"/"%05d" pattern; a pattern without '%' is
// returned unchanged. Only a single integer conversion is accepted.
std::string format_indexed(const std::string& pattern, int index);

std::filesystem::path camera_frame_path(const Rig& rig, int camera_index, int frame_index);

// Load one camera's frame for one instant into a ready-to-warp view.
CameraView load_camera_frame(const Rig& rig, int camera_index, int frame_index);

}  // namespace embedmap
