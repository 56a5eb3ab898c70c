#include "embedmap/rig_io.hpp"

#include <cstdio>
#include <fstream>

#include "json.hpp"

#include "embedmap/image_io.hpp"
#include "json_camera.hpp"

namespace embedmap {

namespace {
using detail::camera_from_json;
using detail::camera_to_json;
using nlohmann::json;
}  // namespace

Rig load_rig(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open rig file: " + path.string());
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw ValidationError("rig JSON parse error: " + std::string(e.what()));
    }
    Rig rig;
    rig.base_dir = path.parent_path();
    try {
        const auto& cameras = doc.at("cameras");
        if (!cameras.is_array() || cameras.empty())
            throw ValidationError("rig needs a nonempty cameras array");
        for (const auto& cam : cameras) {
            auto [intr, pose] = camera_from_json(cam);
            RigCamera rc{intr, pose, cam.at("frames").get<std::string>(), std::nullopt};
            if (cam.contains("clean_plate"))
                rc.clean_plate = cam.at("clean_plate").get<std::string>();
            rig.cameras.push_back(std::move(rc));
        }
    } catch (const json::exception& e) {
        throw ValidationError("rig JSON error: " + std::string(e.what()));
    }
    return rig;
}

void save_rig(const Rig& rig, const std::filesystem::path& path) {
    json doc;
    doc["cameras"] = json::array();
    for (const auto& cam : rig.cameras) {
        json c = camera_to_json(cam.intrinsics, cam.pose);
        c["frames"] = cam.frame_pattern;
        if (cam.clean_plate) c["clean_plate"] = *cam.clean_plate;
        doc["cameras"].push_back(std::move(c));
    }
    std::ofstream out(path);
    if (!out) throw IoError("cannot write rig file: " + path.string());
    out << doc.dump(2) << "\n";
}

std::string format_indexed(const std::string& pattern, int index) {
    const size_t pos = pattern.find('%');
    if (pos == std::string::npos) return pattern;
    // Validate a single %[0-9]*d conversion.
    size_t i = pos + 1;
    while (i < pattern.size() && std::isdigit(static_cast<unsigned char>(pattern[i]))) ++i;
    if (i >= pattern.size() || pattern[i] != 'd' ||
        pattern.find('%', pos + 1) != std::string::npos)
        throw ValidationError("pattern must contain exactly one %d conversion: " + pattern);
    char buf[4096];
    const int n = std::snprintf(buf, sizeof(buf), pattern.c_str(), index);
    if (n < 0 || n >= static_cast<int>(sizeof(buf)))
        throw ValidationError("pattern expansion failed: " + pattern);
    return std::string(buf, static_cast<size_t>(n));
}

std::filesystem::path camera_frame_path(const Rig& rig, int camera_index, int frame_index) {
    if (camera_index < 0 || camera_index >= static_cast<int>(rig.cameras.size()))
        throw ValidationError("camera index out of range");
    const std::filesystem::path rel = format_indexed(rig.cameras[camera_index].frame_pattern,
                                                     frame_index);
    return rel.is_absolute() ? rel : rig.base_dir / rel;
}

CameraView load_camera_frame(const Rig& rig, int camera_index, int frame_index) {
    const auto path = camera_frame_path(rig, camera_index, frame_index);
    if (!std::filesystem::exists(path)) throw IoError("missing frame file: " + path.string());
    const RigCamera& cam = rig.cameras[camera_index];
    return make_camera_view(cam.intrinsics, cam.pose, load_image(path));
}

}  // namespace embedmap
