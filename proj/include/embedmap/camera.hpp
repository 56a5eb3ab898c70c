#pragma once

#include <optional>

#include "embedmap/image.hpp"
#include "embedmap/vec.hpp"

namespace embedmap {

// Pinhole intrinsics. The camera looks down -z, y up, right-handed,
// matching the LatLong convention (forward = map center).
struct CameraIntrinsics {
    double fx = 1.0;
    double fy = 1.0;
    double cx = 0.0;
    double cy = 0.0;
    int width = 1;
    int height = 1;
};

CameraIntrinsics make_intrinsics(double fx, double fy, double cx, double cy, int width,
                                 int height);

// Rigid world-to-camera transform. Construction validates orthonormality
// (R^T R = I within 1e-6) and det(R) = +1.
class CameraPose {
public:
    CameraPose() = default;
    CameraPose(const Mat3& rotation, const Vec3& translation);

    const Mat3& rotation() const { return rotation_; }
    const Vec3& translation() const { return translation_; }

    Vec3 to_camera(const Vec3& world_point) const { return rotation_ * world_point + translation_; }
    Vec3 direction_to_camera(const Vec3& world_dir) const { return rotation_ * world_dir; }
    Vec3 direction_to_world(const Vec3& camera_dir) const {
        return rotation_.transposed() * camera_dir;
    }
    Vec3 center() const { return rotation_.transposed() * (-translation_); }

private:
    Mat3 rotation_;
    Vec3 translation_;
};

// World-to-camera rotation that aims the optical axis (-z in camera space)
// along `forward`, keeping `up_hint` upward.
Mat3 look_rotation(const UnitDirection& forward, const Vec3& up_hint);

// One camera of the capture rig: intrinsics, pose, and one frame of pixels.
struct CameraView {
    CameraIntrinsics intrinsics;
    CameraPose pose;
    Image frame;
};

CameraView make_camera_view(const CameraIntrinsics& intrinsics, const CameraPose& pose,
                            Image frame);

struct ProjectedPoint {
    double x = 0.0;
    double y = 0.0;
    double depth = 0.0;
};

// Project a world-space point: q = R p + t must have q.z < 0, then
// x = cx + fx*(q.x / -q.z), y = cy - fy*(q.y / -q.z), depth = -q.z.
// Throws BehindCameraError when q.z >= 0.
ProjectedPoint project(const CameraIntrinsics& intr, const CameraPose& pose, const Vec3& point);
ProjectedPoint project(const CameraView& cam, const Vec3& point);

// World-space ray direction through continuous pixel coordinates. Pixels
// outside the frame are allowed; they define rays too.
UnitDirection pixel_to_ray(const CameraIntrinsics& intr, const CameraPose& pose, double x,
                           double y);
UnitDirection pixel_to_ray(const CameraView& cam, double x, double y);

// Treat d as a ray from the camera center; when it lands inside the frame
// with positive depth, return the bilinear frame sample (border clamped),
// otherwise nullopt. Frame pixel (i,j) is centered at (i+0.5, j+0.5).
std::optional<Rgba> sample_view(const CameraView& cam, const UnitDirection& d);

// Bilinear sample of an image at continuous pixel coordinates, clamped at
// the borders.
Rgba sample_frame(const Image& frame, double x, double y);

}  // namespace embedmap
