#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "embedmap/error.hpp"

namespace embedmap {

// Linear-radiance color with coverage. Channels are stored as float32;
// geometry math elsewhere runs in double.
struct Rgba {
    float r = 0.0f;
    float g = 0.0f;
    float b = 0.0f;
    float a = 0.0f;

    bool operator==(const Rgba&) const = default;
};

inline bool finite(const Rgba& c) {
    return std::isfinite(c.r) && std::isfinite(c.g) && std::isfinite(c.b) && std::isfinite(c.a);
}

// Row-major RGBA grid, row 0 at the top.
class Image {
public:
    Image() = default;
    Image(int width, int height, Rgba fill = Rgba{})
        : width_(width), height_(height) {
        if (width < 1 || height < 1) throw ValidationError("image dimensions must be >= 1");
        pixels_.assign(static_cast<size_t>(width) * height, fill);
    }
    Image(int width, int height, std::vector<Rgba> pixels)
        : width_(width), height_(height), pixels_(std::move(pixels)) {
        if (width < 1 || height < 1) throw ValidationError("image dimensions must be >= 1");
        if (pixels_.size() != static_cast<size_t>(width) * height)
            throw ValidationError("pixel count does not match image dimensions");
    }

    int width() const { return width_; }
    int height() const { return height_; }

    const Rgba& at(int x, int y) const { return pixels_[static_cast<size_t>(y) * width_ + x]; }
    Rgba& at(int x, int y) { return pixels_[static_cast<size_t>(y) * width_ + x]; }

    const std::vector<Rgba>& pixels() const { return pixels_; }
    std::vector<Rgba>& pixels() { return pixels_; }

    bool operator==(const Image&) const = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<Rgba> pixels_;
};

}  // namespace embedmap
