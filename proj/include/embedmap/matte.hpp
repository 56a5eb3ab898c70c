#pragma once

#include "embedmap/image.hpp"

namespace embedmap {

// RGBA frame with alpha as coverage. When premultiplied, each color channel
// of a [0,1]-normalized input stays <= alpha + 1e-6.
struct MatteFrame {
    Image pixels;
    bool premultiplied = false;
};

MatteFrame make_matte_frame(Image pixels, bool premultiplied);

// Clean-plate difference keying: per pixel, dist is the max-channel absolute
// difference from the clean plate; alpha ramps linearly from 0 at dist <= t0
// to 1 at dist >= t1. Output is premultiplied.
MatteFrame extract_matte(const Image& frame, const Image& clean_plate, double t0, double t1);

// Bypass mode: take alpha directly from the frame's own alpha channel and
// premultiply.
MatteFrame matte_from_alpha(const Image& frame);

namespace serial {
MatteFrame extract_matte(const Image& frame, const Image& clean_plate, double t0, double t1);
}

}  // namespace embedmap
