#pragma once

#include "json.hpp"

#include "embedmap/camera.hpp"

namespace embedmap::detail {

inline Vec3 vec3_from_json(const nlohmann::json& arr) {
    if (!arr.is_array() || arr.size() != 3) throw ValidationError("expected a 3-element array");
    return {arr[0].get<double>(), arr[1].get<double>(), arr[2].get<double>()};
}

inline std::pair<CameraIntrinsics, CameraPose> camera_from_json(const nlohmann::json& cam) {
    const CameraIntrinsics intr =
        make_intrinsics(cam.at("fx").get<double>(), cam.at("fy").get<double>(),
                        cam.at("cx").get<double>(), cam.at("cy").get<double>(),
                        cam.at("width").get<int>(), cam.at("height").get<int>());
    const auto& rot = cam.at("rotation");
    if (!rot.is_array() || rot.size() != 9)
        throw ValidationError("rotation must hold 9 row-major numbers");
    Mat3 rotation;
    for (int i = 0; i < 9; ++i) rotation.m[i] = rot[i].get<double>();
    const CameraPose pose(rotation, vec3_from_json(cam.at("translation")));
    return {intr, pose};
}

inline nlohmann::json camera_to_json(const CameraIntrinsics& intr, const CameraPose& pose) {
    nlohmann::json cam;
    cam["fx"] = intr.fx;
    cam["fy"] = intr.fy;
    cam["cx"] = intr.cx;
    cam["cy"] = intr.cy;
    cam["width"] = intr.width;
    cam["height"] = intr.height;
    cam["rotation"] = pose.rotation().m;
    cam["translation"] = {pose.translation().x, pose.translation().y, pose.translation().z};
    return cam;
}

}  // namespace embedmap::detail
