#include "embedmap/matte.hpp"

#include <algorithm>
#include <cmath>

#include "embedmap/parallel.hpp"

namespace embedmap {

MatteFrame make_matte_frame(Image pixels, bool premultiplied) {
    for (const Rgba& c : pixels.pixels()) {
        if (!finite(c)) throw ValidationError("matte channel is not finite");
        if (c.a < 0.0f || c.a > 1.0f) throw ValidationError("matte alpha outside [0,1]");
        if (premultiplied) {
            const float bound = c.a + 1e-6f;
            if (c.r > bound || c.g > bound || c.b > bound)
                throw ValidationError("premultiplied color channel exceeds alpha");
        }
    }
    return MatteFrame{std::move(pixels), premultiplied};
}

namespace {

void validate_key_inputs(const Image& frame, const Image& clean_plate, double t0, double t1) {
    if (frame.width() != clean_plate.width() || frame.height() != clean_plate.height())
        throw ValidationError("frame and clean plate dimensions differ");
    if (!(t0 >= 0.0) || !(t0 < t1)) throw ValidationError("require 0 <= t0 < t1");
}

Rgba key_pixel(const Rgba& px, const Rgba& plate, double t0, double t1) {
    const double dist = std::max({std::abs(px.r - plate.r), std::abs(px.g - plate.g),
                                  std::abs(px.b - plate.b)});
    double alpha;
    if (dist <= t0)
        alpha = 0.0;
    else if (dist >= t1)
        alpha = 1.0;
    else
        alpha = (dist - t0) / (t1 - t0);
    const auto af = static_cast<float>(alpha);
    return {px.r * af, px.g * af, px.b * af, af};
}

}  // namespace

MatteFrame extract_matte(const Image& frame, const Image& clean_plate, double t0, double t1) {
    validate_key_inputs(frame, clean_plate, t0, t1);
    Image out(frame.width(), frame.height());
    parallel_rows(frame.height(), [&](int y) {
        for (int x = 0; x < frame.width(); ++x)
            out.at(x, y) = key_pixel(frame.at(x, y), clean_plate.at(x, y), t0, t1);
    });
    return MatteFrame{std::move(out), true};
}

MatteFrame matte_from_alpha(const Image& frame) {
    Image out(frame.width(), frame.height());
    parallel_rows(frame.height(), [&](int y) {
        for (int x = 0; x < frame.width(); ++x) {
            const Rgba& px = frame.at(x, y);
            const float a = std::clamp(px.a, 0.0f, 1.0f);
            out.at(x, y) = Rgba{px.r * a, px.g * a, px.b * a, a};
        }
    });
    return MatteFrame{std::move(out), true};
}

namespace serial {

MatteFrame extract_matte(const Image& frame, const Image& clean_plate, double t0, double t1) {
    validate_key_inputs(frame, clean_plate, t0, t1);
    Image out(frame.width(), frame.height());
    for (int y = 0; y < frame.height(); ++y)
        for (int x = 0; x < frame.width(); ++x)
            out.at(x, y) = key_pixel(frame.at(x, y), clean_plate.at(x, y), t0, t1);
    return MatteFrame{std::move(out), true};
}

}  // namespace serial

}  // namespace embedmap
