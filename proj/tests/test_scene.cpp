#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "embedmap/scene.hpp"
#include "test_util.hpp"

using namespace embedmap;

TEST_CASE("reflect_vector frozen values") {
    const auto head_on = reflect_vector(UnitDirection(0, 0, -1), UnitDirection(0, 0, 1));
    CHECK(head_on.z() == doctest::Approx(1.0).epsilon(1e-12));

    const auto grazing = reflect_vector(UnitDirection(1, 0, 0), UnitDirection(0, 1, 0));
    CHECK(grazing.x() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(grazing.y() == doctest::Approx(0.0));

    const auto bounce = reflect_vector(UnitDirection(1, -1, 0), UnitDirection(0, 1, 0));
    const UnitDirection expected(1, 1, 0);
    CHECK(angle_between(bounce, expected) < 1e-12);
}

TEST_CASE("reflect_vector preserves length and angle") {
    std::mt19937 rng(20240814);
    for (int i = 0; i < 10000; ++i) {
        const UnitDirection incident(test_util::random_unit_vec(rng));
        const UnitDirection normal(test_util::random_unit_vec(rng));
        const UnitDirection reflected = reflect_vector(incident, normal);
        CHECK(std::abs(length(reflected.vec()) - 1.0) < 1e-6);
        // The reflection makes the same (unsigned) angle with the normal.
        const double ci = dot(incident.vec(), normal.vec());
        const double cr = dot(reflected.vec(), normal.vec());
        CHECK(std::abs(ci + cr) < 1e-9);
    }
}

TEST_CASE("fresnel_schlick endpoints are exact") {
    for (double f0 : {0.0, 0.04, 0.5, 1.0}) {
        CHECK(fresnel_schlick(1.0, f0) == f0);
        CHECK(fresnel_schlick(0.0, f0) == 1.0);
    }
}

TEST_CASE("fresnel_schlick spot value") {
    // 0.04 + 0.96 * 0.5^5 = 0.07
    CHECK(std::abs(fresnel_schlick(0.5, 0.04) - 0.07) < 1e-9);
}

TEST_CASE("fresnel_schlick is monotone nonincreasing and bounded") {
    for (double f0 : {0.0, 0.04, 0.5, 1.0}) {
        double prev = fresnel_schlick(0.0, f0);
        for (int i = 1; i <= 1000; ++i) {
            const double c = i / 1000.0;
            const double f = fresnel_schlick(c, f0);
            CHECK(f <= prev + 1e-15);
            CHECK(f >= f0 - 1e-15);
            CHECK(f <= 1.0 + 1e-15);
            prev = f;
        }
    }
}

TEST_CASE("fresnel_schlick validation") {
    CHECK_THROWS_AS(fresnel_schlick(-0.1, 0.04), ValidationError);
    CHECK_THROWS_AS(fresnel_schlick(1.1, 0.04), ValidationError);
    CHECK_THROWS_AS(fresnel_schlick(0.5, -0.2), ValidationError);
    CHECK_THROWS_AS(fresnel_schlick(0.5, 1.2), ValidationError);
}

TEST_CASE("sphere intersection frozen values") {
    Scene scene;
    scene.spheres.push_back({Vec3{0, 0, 0}, 1.0});
    scene.camera_intrinsics = make_intrinsics(1, 1, 0, 0, 1, 1);

    const auto hit = intersect(scene, Vec3{0, 0, 5}, UnitDirection(0, 0, -1));
    REQUIRE(hit.has_value());
    CHECK(hit->distance == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(hit->point.z == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(hit->normal.z() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(hit->object_id == 0);

    Scene far_scene;
    far_scene.spheres.push_back({Vec3{10, 0, 0}, 1.0});
    CHECK_FALSE(intersect(far_scene, Vec3{0, 0, 5}, UnitDirection(0, 0, -1)).has_value());
}

TEST_CASE("ray from inside a sphere hits the far wall with a flipped normal") {
    Scene scene;
    scene.spheres.push_back({Vec3{0, 0, 0}, 2.0});
    const auto hit = intersect(scene, Vec3{0, 0, 0}, UnitDirection(1, 0, 0));
    REQUIRE(hit.has_value());
    CHECK(hit->distance == doctest::Approx(2.0));
    CHECK(hit->normal.x() == doctest::Approx(-1.0));  // faces the origin
}

TEST_CASE("triangle intersection interpolates normals barycentrically") {
    TriangleMesh mesh;
    mesh.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
    mesh.normals = {normalize({0, 0, 1}), normalize({0.2, 0, 1}), normalize({0, 0.2, 1})};
    mesh.triangles = {{0, 1, 2}};
    Scene scene;
    scene.meshes.push_back(mesh);

    // Aim at barycentric (1-u-v, u, v) = (0.2, 0.3, 0.5): point (0.3, 0.5, 0).
    const double u = 0.3, v = 0.5;
    const Vec3 target{u, v, 0.0};
    const Vec3 origin{0.0, 0.0, 3.0};
    const auto hit = intersect(scene, origin, UnitDirection(target - origin));
    REQUIRE(hit.has_value());
    CHECK(hit->point.x == doctest::Approx(u).epsilon(1e-9));
    CHECK(hit->point.y == doctest::Approx(v).epsilon(1e-9));

    const Vec3 expected = normalize((1.0 - u - v) * mesh.normals[0] + u * mesh.normals[1] +
                                    v * mesh.normals[2]);
    CHECK(angle_between(hit->normal, UnitDirection(expected)) < 1e-9);
}

TEST_CASE("nearest object wins") {
    Scene scene;
    scene.spheres.push_back({Vec3{0, 0, -10}, 1.0});
    scene.spheres.push_back({Vec3{0, 0, -4}, 1.0});
    const auto hit = intersect(scene, Vec3{0, 0, 0}, UnitDirection(0, 0, -1));
    REQUIRE(hit.has_value());
    CHECK(hit->object_id == 1);
    CHECK(hit->distance == doctest::Approx(3.0));
}

TEST_CASE("scene validation") {
    Scene scene;
    scene.spheres.push_back({Vec3{0, 0, 0}, -1.0});
    CHECK_THROWS_AS(validate_scene(scene), ValidationError);

    Scene bad_mesh;
    bad_mesh.meshes.push_back(TriangleMesh{{{0, 0, 0}}, {{0, 0, 1}}, {{0, 1, 2}}});
    CHECK_THROWS_AS(validate_scene(bad_mesh), ValidationError);

    Scene bad_normal;
    bad_normal.meshes.push_back(
        TriangleMesh{{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}, {{0, 0, 2}, {0, 0, 1}, {0, 0, 1}},
                     {{0, 1, 2}}});
    CHECK_THROWS_AS(validate_scene(bad_normal), ValidationError);

    Scene bad_f0;
    bad_f0.f0 = 1.5;
    CHECK_THROWS_AS(validate_scene(bad_f0), ValidationError);
}
