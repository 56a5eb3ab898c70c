#include "embedmap/camera.hpp"

#include <cmath>

namespace embedmap {

CameraIntrinsics make_intrinsics(double fx, double fy, double cx, double cy, int width,
                                 int height) {
    if (!(fx > 0.0) || !(fy > 0.0) || !std::isfinite(fx) || !std::isfinite(fy))
        throw ValidationError("focal lengths must be finite and positive");
    if (width < 1 || height < 1) throw ValidationError("camera dimensions must be >= 1");
    if (cx < 0.0 || cx > width || cy < 0.0 || cy > height)
        throw ValidationError("principal point outside the frame");
    return CameraIntrinsics{fx, fy, cx, cy, width, height};
}

CameraPose::CameraPose(const Mat3& rotation, const Vec3& translation)
    : rotation_(rotation), translation_(translation) {
    const Mat3 rtr = rotation.transposed() * rotation;
    const Mat3 id = Mat3::identity();
    for (int i = 0; i < 9; ++i)
        if (std::abs(rtr.m[i] - id.m[i]) > 1e-6)
            throw ValidationError("rotation is not orthonormal");
    if (std::abs(rotation.det() - 1.0) > 1e-6)
        throw ValidationError("rotation determinant is not +1");
    if (!finite(translation)) throw ValidationError("translation is not finite");
}

Mat3 look_rotation(const UnitDirection& forward, const Vec3& up_hint) {
    const Vec3 f = forward.vec();
    Vec3 up = up_hint;
    if (length(cross(f, up)) < 1e-9) up = std::abs(f.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 0, 1};
    const Vec3 right = normalize(cross(f, up));
    const Vec3 true_up = cross(right, f);
    // Camera axes in world space are the rows: x = right, y = up, z = -forward.
    return Mat3::from_rows(right, true_up, -f);
}

CameraView make_camera_view(const CameraIntrinsics& intrinsics, const CameraPose& pose,
                            Image frame) {
    if (frame.width() != intrinsics.width || frame.height() != intrinsics.height)
        throw ValidationError("frame dimensions do not match intrinsics");
    return CameraView{intrinsics, pose, std::move(frame)};
}

ProjectedPoint project(const CameraIntrinsics& intr, const CameraPose& pose, const Vec3& point) {
    const Vec3 q = pose.to_camera(point);
    if (q.z >= 0.0) throw BehindCameraError("point at or behind the camera plane");
    const double inv = 1.0 / -q.z;
    return {intr.cx + intr.fx * q.x * inv, intr.cy - intr.fy * q.y * inv, -q.z};
}

ProjectedPoint project(const CameraView& cam, const Vec3& point) {
    return project(cam.intrinsics, cam.pose, point);
}

UnitDirection pixel_to_ray(const CameraIntrinsics& intr, const CameraPose& pose, double x,
                           double y) {
    const Vec3 cam_dir{(x - intr.cx) / intr.fx, -(y - intr.cy) / intr.fy, -1.0};
    return UnitDirection(pose.direction_to_world(cam_dir));
}

UnitDirection pixel_to_ray(const CameraView& cam, double x, double y) {
    return pixel_to_ray(cam.intrinsics, cam.pose, x, y);
}

Rgba sample_frame(const Image& frame, double x, double y) {
    const auto axis = [](double p, int n, int& i0, int& i1, double& f) {
        const double c = p - 0.5;  // pixel (i) is centered at i + 0.5
        if (c <= 0.0) {
            i0 = i1 = 0;
            f = 0.0;
        } else if (c >= n - 1.0) {
            i0 = i1 = n - 1;
            f = 0.0;
        } else {
            i0 = static_cast<int>(c);
            i1 = i0 + 1;
            f = c - i0;
        }
    };
    int x0, x1, y0, y1;
    double fx, fy;
    axis(x, frame.width(), x0, x1, fx);
    axis(y, frame.height(), y0, y1, fy);
    const auto lerp_f = [](float a, float b, double t) {
        return static_cast<float>(a + t * (static_cast<double>(b) - a));
    };
    const auto lerp_px = [&](const Rgba& a, const Rgba& b, double t) {
        return Rgba{lerp_f(a.r, b.r, t), lerp_f(a.g, b.g, t), lerp_f(a.b, b.b, t),
                    lerp_f(a.a, b.a, t)};
    };
    const Rgba top = lerp_px(frame.at(x0, y0), frame.at(x1, y0), fx);
    const Rgba bot = lerp_px(frame.at(x0, y1), frame.at(x1, y1), fx);
    return lerp_px(top, bot, fy);
}

std::optional<Rgba> sample_view(const CameraView& cam, const UnitDirection& d) {
    const Vec3 q = cam.pose.direction_to_camera(d.vec());
    if (q.z >= 0.0) return std::nullopt;
    const double inv = 1.0 / -q.z;
    const double x = cam.intrinsics.cx + cam.intrinsics.fx * q.x * inv;
    const double y = cam.intrinsics.cy - cam.intrinsics.fy * q.y * inv;
    if (x < 0.0 || x > cam.intrinsics.width || y < 0.0 || y > cam.intrinsics.height)
        return std::nullopt;
    return sample_frame(cam.frame, x, y);
}

}  // namespace embedmap
