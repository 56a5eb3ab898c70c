#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "embedmap/image_io.hpp"
#include "embedmap/synthetic.hpp"
#include "test_util.hpp"

using namespace embedmap;

namespace {
constexpr double kDegToRad = 3.14159265358979323846 / 180.0;
}

TEST_CASE("six cube cameras cover every ground-truth direction") {
    const auto dirs = rig_camera_directions(6);
    const double tan_half = std::tan(45.0 * kDegToRad);
    int uncovered = 0;
    for (int y = 0; y < 128; ++y)
        for (int x = 0; x < 256; ++x) {
            const auto d =
                texel_to_dir(texel_center(256, 128, x, y), Parameterization::LatLong);
            bool covered = false;
            for (const auto& fwd : dirs) {
                const Mat3 rot = look_rotation(fwd, {0, 1, 0});
                const Vec3 q = rot * d.vec();
                if (q.z < 0.0 && std::abs(q.x) <= -q.z * tan_half &&
                    std::abs(q.y) <= -q.z * tan_half) {
                    covered = true;
                    break;
                }
            }
            uncovered += !covered;
        }
    CHECK(uncovered == 0);
}

TEST_CASE("a camera pointed away from the disc light sees a constant frame") {
    // The disc sits around normalize(1,1,-1); the +z camera's frustum stays
    // more than 70 degrees away from it.
    const auto intr = make_intrinsics(64, 64, 64, 64, 128, 128);
    const CameraPose pose(look_rotation(UnitDirection(0, 0, 1), {0, 1, 0}), Vec3{});
    const Image frame = render_synthetic_frame(intr, pose, AnalyticEnv::DiscLight, std::nullopt,
                                               0, 1);
    for (const auto& px : frame.pixels()) {
        CHECK(px.r == doctest::Approx(0.05));
        CHECK(px.g == doctest::Approx(0.05));
        CHECK(px.b == doctest::Approx(0.05));
        CHECK(px.a == 1.0f);
    }
}

TEST_CASE("a narrow billboard is seen by exactly one cube camera") {
    // Billboard along the +x axis with a 5 degree radius: only the +x camera
    // can see it at 90 degree FOV.
    BillboardSpec bb;
    bb.start = UnitDirection(1, 0, 0);
    bb.end = UnitDirection(1, 0, 0);
    bb.angular_radius_deg = 5.0;
    const auto intr = make_intrinsics(64, 64, 64, 64, 128, 128);
    const auto dirs = rig_camera_directions(6);
    int cameras_seeing = 0;
    for (const auto& fwd : dirs) {
        const CameraPose pose(look_rotation(fwd, {0, 1, 0}), Vec3{});
        const Image frame =
            render_synthetic_frame(intr, pose, AnalyticEnv::Gradient, bb, 0, 1);
        bool sees = false;
        for (const auto& px : frame.pixels()) sees = sees || px.a > 0.0f;
        cameras_seeing += sees;
    }
    CHECK(cameras_seeing == 1);
}

TEST_CASE("billboard direction slerps across frames") {
    BillboardSpec bb;
    bb.start = UnitDirection(0, 0, -1);
    bb.end = UnitDirection(1, 0, 0);
    const auto mid = billboard_direction(bb, 5, 11);
    const UnitDirection expected(std::sin(45.0 * kDegToRad), 0, -std::cos(45.0 * kDegToRad));
    CHECK(angle_between(mid, expected) < 1e-9);
    CHECK(angle_between(billboard_direction(bb, 0, 11), bb.start) < 1e-12);
    CHECK(angle_between(billboard_direction(bb, 10, 11), bb.end) < 1e-12);
}

TEST_CASE("generate_synthetic_rig emits a loadable, deterministic rig") {
    test_util::TempDir tmp;
    SyntheticRigSpec spec;
    spec.camera_count = 2;
    spec.image_width = 64;
    spec.image_height = 64;
    spec.frame_count = 2;
    spec.ground_truth_width = 64;
    spec.ground_truth_height = 32;
    BillboardSpec bb;
    bb.start = UnitDirection(0, 0, -1);
    bb.end = UnitDirection(0.5, 0, -1);
    bb.angular_radius_deg = 12.0;
    spec.billboard = bb;

    const auto a_dir = tmp.path() / "a";
    const auto b_dir = tmp.path() / "b";
    const auto gen_a = generate_synthetic_rig(spec, a_dir);
    const auto gen_b = generate_synthetic_rig(spec, b_dir);

    const Rig rig = load_rig(gen_a.rig_path);
    REQUIRE(rig.cameras.size() == 2);
    CHECK(rig.cameras[0].clean_plate.has_value());
    const CameraView view = load_camera_frame(rig, 0, 1);
    CHECK(view.frame.width() == 64);

    const EnvironmentMap gt = load_environment_map(gen_a.ground_truth_path);
    CHECK(gt.param() == Parameterization::LatLong);
    CHECK(gt.width() == 64);

    // Same spec, same bytes.
    for (const char* name : {"rig.json", "cam00_00000.png", "cam01_00001.png",
                             "plate_cam00.png", "ground_truth.pfm"}) {
        CHECK(test_util::hash_file(a_dir / name) == test_util::hash_file(b_dir / name));
    }
}

TEST_CASE("ground truth map equals the analytic function at texel centers") {
    const auto map = analytic_env_map(AnalyticEnv::Gradient, 64, 32);
    for (int y = 0; y < 32; ++y)
        for (int x = 0; x < 64; ++x) {
            const auto d = texel_to_dir(texel_center(64, 32, x, y), Parameterization::LatLong);
            const Vec3 expected = eval_analytic_env(AnalyticEnv::Gradient, d.vec());
            CHECK(map.texel(x, y).r == doctest::Approx(expected.x).epsilon(1e-6));
            CHECK(map.texel(x, y).g == doctest::Approx(expected.y).epsilon(1e-6));
        }
}

TEST_CASE("spec validation") {
    SyntheticRigSpec spec;
    spec.camera_count = 0;
    CHECK_THROWS_AS(validate_spec(spec), ValidationError);
    spec = SyntheticRigSpec{};
    spec.fov_deg = 180.0;
    CHECK_THROWS_AS(validate_spec(spec), ValidationError);
    spec = SyntheticRigSpec{};
    spec.ground_truth_width = 100;
    spec.ground_truth_height = 99;
    CHECK_THROWS_AS(validate_spec(spec), ValidationError);
}
