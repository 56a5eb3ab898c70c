#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "embedmap/warp.hpp"
#include "test_util.hpp"

using namespace embedmap;

namespace {

CameraView fov90_camera(const Mat3& rotation, Rgba fill, int size = 256) {
    // fx = (size/2) / tan(45 deg): the frame spans exactly 90 degrees.
    const double f = size / 2.0;
    const auto intr = make_intrinsics(f, f, size / 2.0, size / 2.0, size, size);
    return make_camera_view(intr, CameraPose(rotation, Vec3{}), Image(size, size, fill));
}

// Angle-in-frustum test, written directly against the camera axes.
bool in_frustum(const Mat3& world_to_cam, const Vec3& dir, double tan_half_x,
                double tan_half_y) {
    const Vec3 q = world_to_cam * dir;
    if (q.z >= 0.0) return false;
    return std::abs(q.x) <= -q.z * tan_half_x && std::abs(q.y) <= -q.z * tan_half_y;
}

EnvironmentMap constant_latlong(int w, int h, Rgba c) {
    return EnvironmentMap(Image(w, h, c), Parameterization::LatLong);
}

EnvironmentMap random_premultiplied(std::mt19937& rng, int w, int h) {
    std::uniform_real_distribution<float> uni(0.0f, 1.0f);
    Image img(w, h);
    for (auto& px : img.pixels()) {
        const float a = uni(rng);
        px = {uni(rng) * a, uni(rng) * a, uni(rng) * a, a};
    }
    return EnvironmentMap(std::move(img), Parameterization::LatLong);
}

}  // namespace

TEST_CASE("warp covers exactly the frustum texels") {
    const Rgba color{0.9f, 0.3f, 0.1f, 1.0f};
    const Mat3 rotation = look_rotation(UnitDirection(1.0, 0.2, -0.4), {0, 1, 0});
    const auto view = fov90_camera(rotation, color);
    const MapSpec spec{256, 128, Parameterization::LatLong};
    const WarpedLayer layer = warp_view_to_envmap(view, spec);

    int covered = 0, oracle_count = 0, mismatches = 0;
    for (int y = 0; y < spec.height; ++y)
        for (int x = 0; x < spec.width; ++x) {
            const auto dir = texel_center_dir(spec.width, spec.height, x, y, spec.param);
            const bool expected = in_frustum(rotation, dir->vec(), 1.0, 1.0);
            const bool got = layer.weights[static_cast<size_t>(y) * spec.width + x] > 0.0f;
            oracle_count += expected;
            covered += got;
            mismatches += expected != got;
            if (got) {
                CHECK(layer.map.texel(x, y) == color);
            } else {
                CHECK(layer.map.texel(x, y) == Rgba{});
            }
        }
    CHECK(mismatches == 0);
    CHECK(covered == oracle_count);
    CHECK(covered > 0);
}

TEST_CASE("warp of a fully transparent view has zero weight everywhere") {
    const auto view = fov90_camera(Mat3::identity(), Rgba{0.5f, 0.5f, 0.5f, 0.0f}, 64);
    // Premultiply as the matting stage would.
    CameraView matted = view;
    for (auto& px : matted.frame.pixels()) px = Rgba{0, 0, 0, 0};
    const WarpedLayer layer = warp_view_to_envmap(matted, {64, 32, Parameterization::LatLong});
    for (float w : layer.weights) CHECK(w == 0.0f);
    for (const auto& px : layer.map.image().pixels()) CHECK(px == Rgba{});
}

TEST_CASE("warp is deterministic") {
    const auto view = fov90_camera(look_rotation(UnitDirection(0.3, -0.5, -1.0), {0, 1, 0}),
                                   Rgba{0.2f, 0.6f, 0.8f, 1.0f}, 128);
    const MapSpec spec{128, 64, Parameterization::LatLong};
    const WarpedLayer a = warp_view_to_envmap(view, spec);
    const WarpedLayer b = warp_view_to_envmap(view, spec);
    CHECK(a.map.image() == b.map.image());
    CHECK(a.weights == b.weights);
}

TEST_CASE("serial and parallel warp agree bit-exactly") {
    const auto view = fov90_camera(look_rotation(UnitDirection(-0.7, 0.1, -0.2), {0, 1, 0}),
                                   Rgba{0.1f, 0.9f, 0.4f, 1.0f}, 128);
    const MapSpec spec{128, 64, Parameterization::LatLong};
    const WarpedLayer par = warp_view_to_envmap(view, spec);
    const WarpedLayer ser = serial::warp_view_to_envmap(view, spec);
    CHECK(par.map.image() == ser.map.image());
    CHECK(par.weights == ser.weights);
}

TEST_CASE("merge of a single layer is the identity") {
    const auto view = fov90_camera(Mat3::identity(), Rgba{0.4f, 0.2f, 0.7f, 1.0f}, 64);
    const WarpedLayer layer = warp_view_to_envmap(view, {64, 32, Parameterization::LatLong});
    const EnvironmentMap merged = merge_views(std::span(&layer, 1));
    CHECK(merged.image() == layer.map.image());
}

TEST_CASE("merge averages overlapping constant layers") {
    const Rgba a{0.8f, 0.0f, 0.2f, 1.0f};
    const Rgba b{0.2f, 0.6f, 0.4f, 1.0f};
    const MapSpec spec{64, 32, Parameterization::LatLong};
    const WarpedLayer la = warp_view_to_envmap(fov90_camera(Mat3::identity(), a, 64), spec);
    const WarpedLayer lb = warp_view_to_envmap(fov90_camera(Mat3::identity(), b, 64), spec);

    std::vector<WarpedLayer> layers;
    layers.push_back(la);
    layers.push_back(lb);
    const EnvironmentMap merged = merge_views(layers);
    for (int y = 0; y < 32; ++y)
        for (int x = 0; x < 64; ++x) {
            if (la.weights[static_cast<size_t>(y) * 64 + x] == 0.0f) continue;
            const Rgba& got = merged.texel(x, y);
            CHECK(got.r == doctest::Approx(0.5 * (a.r + b.r)).epsilon(1e-6));
            CHECK(got.g == doctest::Approx(0.5 * (a.g + b.g)).epsilon(1e-6));
            CHECK(got.b == doctest::Approx(0.5 * (a.b + b.b)).epsilon(1e-6));
            CHECK(got.a == 1.0f);
        }

    // Identical layers merge to themselves.
    layers.clear();
    layers.push_back(la);
    layers.push_back(la);
    const EnvironmentMap same = merge_views(layers);
    CHECK(same.image() == la.map.image());
}

TEST_CASE("merge validation") {
    CHECK_THROWS_AS(merge_views({}), ValidationError);
    const WarpedLayer a =
        warp_view_to_envmap(fov90_camera(Mat3::identity(), Rgba{1, 1, 1, 1}, 32),
                            {64, 32, Parameterization::LatLong});
    const WarpedLayer b =
        warp_view_to_envmap(fov90_camera(Mat3::identity(), Rgba{1, 1, 1, 1}, 32),
                            {32, 16, Parameterization::LatLong});
    std::vector<WarpedLayer> layers;
    layers.push_back(a);
    layers.push_back(b);
    CHECK_THROWS_AS(merge_views(layers), ValidationError);
}

TEST_CASE("warped layer invariant is validated") {
    Image img(4, 2, Rgba{0.5f, 0.5f, 0.5f, 1.0f});
    std::vector<float> weights(8, 1.0f);
    CHECK_NOTHROW(
        make_warped_layer(EnvironmentMap(img, Parameterization::LatLong), weights));
    weights[3] = 0.0f;  // alpha stays 1 there: invariant broken
    CHECK_THROWS_AS(make_warped_layer(EnvironmentMap(img, Parameterization::LatLong), weights),
                    ValidationError);
}

TEST_CASE("composite_over frozen values") {
    const auto user = constant_latlong(4, 2, Rgba{0.5f, 0.0f, 0.0f, 0.5f});
    const auto bg = constant_latlong(4, 2, Rgba{0.0f, 0.4f, 0.0f, 1.0f});
    const auto out = composite_over(user, bg);
    CHECK(out.texel(0, 0).r == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(out.texel(0, 0).g == doctest::Approx(0.2).epsilon(1e-6));
    CHECK(out.texel(0, 0).b == doctest::Approx(0.0).epsilon(1e-6));
    CHECK(out.texel(0, 0).a == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("composite_over identity and absorption") {
    std::mt19937 rng(20240813);
    const auto bg = random_premultiplied(rng, 64, 32);
    const auto opaque_user = random_premultiplied(rng, 64, 32);

    // alpha-0 user passes the background through.
    const auto clear = constant_latlong(64, 32, Rgba{0, 0, 0, 0});
    CHECK(composite_over(clear, bg).image() == bg.image());

    // alpha-1 user replaces the background.
    Image opaque(64, 32);
    std::uniform_real_distribution<float> uni(0.0f, 1.0f);
    for (auto& px : opaque.pixels()) px = {uni(rng), uni(rng), uni(rng), 1.0f};
    const EnvironmentMap user1(opaque, Parameterization::LatLong);
    CHECK(composite_over(user1, bg).image() == user1.image());
}

TEST_CASE("composite_over is associative within 1e-6") {
    std::mt19937 rng(555);
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = random_premultiplied(rng, 64, 32);
        const auto b = random_premultiplied(rng, 64, 32);
        const auto c = random_premultiplied(rng, 64, 32);
        const auto left = composite_over(composite_over(a, b), c);
        const auto right = composite_over(a, composite_over(b, c));
        for (size_t i = 0; i < left.image().pixels().size(); ++i) {
            const Rgba& l = left.image().pixels()[i];
            const Rgba& r = right.image().pixels()[i];
            CHECK(std::abs(l.r - r.r) < 1e-6f);
            CHECK(std::abs(l.g - r.g) < 1e-6f);
            CHECK(std::abs(l.b - r.b) < 1e-6f);
            CHECK(std::abs(l.a - r.a) < 1e-6f);
        }
    }
}

TEST_CASE("composite_over validation") {
    const auto a = constant_latlong(64, 32, Rgba{0, 0, 0, 1});
    const auto b = constant_latlong(32, 16, Rgba{0, 0, 0, 1});
    CHECK_THROWS_AS(composite_over(a, b), ValidationError);
}

TEST_CASE("serial and parallel merge/composite agree bit-exactly") {
    std::mt19937 rng(31337);
    const auto user = random_premultiplied(rng, 128, 64);
    const auto bg = random_premultiplied(rng, 128, 64);
    CHECK(composite_over(user, bg).image() == serial::composite_over(user, bg).image());

    const MapSpec spec{128, 64, Parameterization::LatLong};
    std::vector<WarpedLayer> layers;
    layers.push_back(warp_view_to_envmap(
        fov90_camera(look_rotation(UnitDirection(1, 0, 0), {0, 1, 0}), Rgba{1, 0, 0, 1}, 64),
        spec));
    layers.push_back(warp_view_to_envmap(
        fov90_camera(look_rotation(UnitDirection(0, 0, -1), {0, 1, 0}), Rgba{0, 1, 0, 1}, 64),
        spec));
    CHECK(merge_views(layers).image() == serial::merge_views(layers).image());
}
