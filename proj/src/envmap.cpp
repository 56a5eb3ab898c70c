#include "embedmap/envmap.hpp"

#include <cmath>

#include "embedmap/parallel.hpp"

namespace embedmap {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

double wrap_unit(double u) {
    u -= std::floor(u);
    if (u >= 1.0) u = 0.0;  // floor rounding can land exactly on 1
    return u;
}

float lerp_f(float a, float b, double t) {
    return static_cast<float>(a + t * (static_cast<double>(b) - a));
}

Rgba lerp_rgba(const Rgba& a, const Rgba& b, double t) {
    return {lerp_f(a.r, b.r, t), lerp_f(a.g, b.g, t), lerp_f(a.b, b.b, t),
            lerp_f(a.a, b.a, t)};
}

bool spheremap_texel_inside(int width, int height, int x, int y) {
    const double du = (x + 0.5) / width - 0.5;
    const double dv = (y + 0.5) / height - 0.5;
    return du * du + dv * dv <= 0.25;
}

}  // namespace

std::string to_string(Parameterization p) {
    return p == Parameterization::LatLong ? "latlong" : "spheremap";
}

Parameterization parameterization_from_string(const std::string& s) {
    if (s == "latlong") return Parameterization::LatLong;
    if (s == "spheremap") return Parameterization::SphereMap;
    throw ValidationError("unknown parameterization: " + s);
}

EnvironmentMap::EnvironmentMap(Image image, Parameterization param)
    : image_(std::move(image)), param_(param) {
    if (param_ == Parameterization::LatLong && image_.width() != 2 * image_.height())
        throw ValidationError("LatLong maps require width = 2 x height");
    for (const Rgba& c : image_.pixels()) {
        if (!finite(c)) throw ValidationError("environment map channel is not finite");
        if (c.a < 0.0f || c.a > 1.0f)
            throw ValidationError("environment map alpha outside [0,1]");
    }
}

TexelCoord dir_to_texel(const UnitDirection& d, Parameterization p) {
    if (p == Parameterization::LatLong) {
        const double v = std::acos(std::clamp(d.y(), -1.0, 1.0)) / kPi;
        if (v <= 0.0 || v >= 1.0) return {0.5, v};  // pole tie-break
        double u = 0.5 + std::atan2(d.x(), -d.z()) / kTwoPi;
        return {wrap_unit(u), v};
    }
    const double zp = d.z() + 1.0;
    const double m = 2.0 * std::sqrt(d.x() * d.x() + d.y() * d.y() + zp * zp);
    if (m == 0.0) throw SingularityError("sphere map is singular at (0,0,-1)");
    return {d.x() / m + 0.5, d.y() / m + 0.5};
}

UnitDirection texel_to_dir(const TexelCoord& t, Parameterization p) {
    if (p == Parameterization::LatLong) {
        const double u = wrap_unit(t.u);
        const double v = std::clamp(t.v, 0.0, 1.0);
        const double azimuth = kTwoPi * (u - 0.5);
        const double polar = kPi * v;
        const double s = std::sin(polar);
        return UnitDirection(s * std::sin(azimuth), std::cos(polar), -s * std::cos(azimuth));
    }
    const double su = t.u - 0.5;
    const double sv = t.v - 0.5;
    const double r2 = su * su + sv * sv;
    if (r2 > 0.25) throw DomainError("sphere map coordinate outside the unit disc");
    // Texel = image of the mirrored-sphere normal n = (2su, 2sv, nz);
    // the stored direction is +z reflected about n.
    const double nx = 2.0 * su;
    const double ny = 2.0 * sv;
    const double nz = std::sqrt(std::max(0.0, 1.0 - 4.0 * r2));
    return UnitDirection(2.0 * nz * nx, 2.0 * nz * ny, 2.0 * nz * nz - 1.0);
}

TexelCoord texel_center(int width, int height, int x, int y) {
    return {(x + 0.5) / width, (y + 0.5) / height};
}

std::optional<UnitDirection> texel_center_dir(int width, int height, int x, int y,
                                              Parameterization p) {
    if (p == Parameterization::SphereMap && !spheremap_texel_inside(width, height, x, y))
        return std::nullopt;
    return texel_to_dir(texel_center(width, height, x, y), p);
}

Rgba sample_bilinear(const EnvironmentMap& m, const UnitDirection& d) {
    const TexelCoord t = dir_to_texel(d, m.param());
    const int w = m.width();
    const int h = m.height();

    // v always clamps.
    double py = std::clamp(t.v, 0.0, 1.0) * h - 0.5;
    int y0, y1;
    double fy;
    if (py <= 0.0) {
        y0 = y1 = 0;
        fy = 0.0;
    } else if (py >= h - 1.0) {
        y0 = y1 = h - 1;
        fy = 0.0;
    } else {
        y0 = static_cast<int>(py);
        y1 = y0 + 1;
        fy = py - y0;
    }

    int x0, x1;
    double fx;
    const double px = t.u * w - 0.5;
    if (m.param() == Parameterization::LatLong) {
        const double fl = std::floor(px);
        fx = px - fl;
        x0 = static_cast<int>(fl);
        x0 = ((x0 % w) + w) % w;
        x1 = (x0 + 1) % w;
    } else {
        if (px <= 0.0) {
            x0 = x1 = 0;
            fx = 0.0;
        } else if (px >= w - 1.0) {
            x0 = x1 = w - 1;
            fx = 0.0;
        } else {
            x0 = static_cast<int>(px);
            x1 = x0 + 1;
            fx = px - x0;
        }
    }

    if (m.param() == Parameterization::SphereMap) {
        // Drop neighbors outside the disc and renormalize: those texels carry
        // no radiance and must not dilute rim samples.
        const int xs[4] = {x0, x1, x0, x1};
        const int ys[4] = {y0, y0, y1, y1};
        const double ws[4] = {(1 - fx) * (1 - fy), fx * (1 - fy), (1 - fx) * fy, fx * fy};
        double total = 0.0, r = 0.0, g = 0.0, b = 0.0, a = 0.0;
        for (int k = 0; k < 4; ++k) {
            if (ws[k] == 0.0 || !spheremap_texel_inside(w, h, xs[k], ys[k])) continue;
            const Rgba& c = m.texel(xs[k], ys[k]);
            total += ws[k];
            r += ws[k] * c.r;
            g += ws[k] * c.g;
            b += ws[k] * c.b;
            a += ws[k] * c.a;
        }
        if (total == 0.0) return Rgba{};
        return {static_cast<float>(r / total), static_cast<float>(g / total),
                static_cast<float>(b / total), static_cast<float>(a / total)};
    }

    const Rgba top = lerp_rgba(m.texel(x0, y0), m.texel(x1, y0), fx);
    const Rgba bot = lerp_rgba(m.texel(x0, y1), m.texel(x1, y1), fx);
    return lerp_rgba(top, bot, fy);
}

namespace {

void validate_convert_target(Parameterization target, int width, int height) {
    if (width < 1 || height < 1) throw ValidationError("target dimensions must be >= 1");
    if (target == Parameterization::LatLong && width != 2 * height)
        throw ValidationError("LatLong target requires width = 2 x height");
}

Rgba convert_texel(const EnvironmentMap& m, Parameterization target, int width, int height,
                   int x, int y) {
    const auto dir = texel_center_dir(width, height, x, y, target);
    if (!dir) return Rgba{};
    return sample_bilinear(m, *dir);
}

}  // namespace

EnvironmentMap convert(const EnvironmentMap& m, Parameterization target, int width, int height) {
    validate_convert_target(target, width, height);
    Image out(width, height);
    parallel_rows(height, [&](int y) {
        for (int x = 0; x < width; ++x) out.at(x, y) = convert_texel(m, target, width, height, x, y);
    });
    return EnvironmentMap(std::move(out), target);
}

namespace serial {

EnvironmentMap convert(const EnvironmentMap& m, Parameterization target, int width, int height) {
    validate_convert_target(target, width, height);
    Image out(width, height);
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x) out.at(x, y) = convert_texel(m, target, width, height, x, y);
    return EnvironmentMap(std::move(out), target);
}

}  // namespace serial

}  // namespace embedmap
