#pragma once

#include <optional>
#include <string>

#include "embedmap/image.hpp"
#include "embedmap/vec.hpp"

namespace embedmap {

// Mapping between unit directions and 2D texture coordinates.
//   LatLong   — equirectangular latitude/longitude grid, width = 2 x height.
//   SphereMap — orthographic image of a mirrored sphere viewed from +z;
//               directions live inside the disc inscribed in [0,1]^2 and
//               (0,0,-1) is the singular direction on the disc rim.
enum class Parameterization { LatLong, SphereMap };

std::string to_string(Parameterization p);
Parameterization parameterization_from_string(const std::string& s);

// Continuous texture coordinates. u wraps modulo 1 for LatLong; v clamps
// to [0,1].
struct TexelCoord {
    double u = 0.0;
    double v = 0.0;
};

// 2D grid of RGBA radiance texels plus a parameterization tag. Immutable
// after construction; construction validates that all channels are finite,
// alpha is in [0,1], and LatLong maps are 2:1.
class EnvironmentMap {
public:
    EnvironmentMap(Image image, Parameterization param);

    int width() const { return image_.width(); }
    int height() const { return image_.height(); }
    Parameterization param() const { return param_; }
    const Image& image() const { return image_; }
    const Rgba& texel(int x, int y) const { return image_.at(x, y); }

private:
    Image image_;
    Parameterization param_;
};

// Conventions, frozen across all modules:
//   LatLong:   u = 0.5 + atan2(x, -z) / 2pi   (wrapped into [0,1))
//              v = acos(clamp(y, -1, 1)) / pi
//              at the poles (v = 0 or 1) u is reported as 0.5
//   SphereMap: m = 2 * sqrt(x^2 + y^2 + (z+1)^2)
//              u = x/m + 0.5,  v = y/m + 0.5
// Throws SingularityError for the SphereMap direction (0,0,-1).
TexelCoord dir_to_texel(const UnitDirection& d, Parameterization p);

// Exact inverse of dir_to_texel on its valid domain. SphereMap coordinates
// outside the inscribed disc throw DomainError.
UnitDirection texel_to_dir(const TexelCoord& t, Parameterization p);

// Center of texel (x, y) in a width x height grid: ((x+0.5)/w, (y+0.5)/h).
TexelCoord texel_center(int width, int height, int x, int y);

// Direction of a texel center; nullopt for SphereMap texels outside the
// inscribed disc (they correspond to no direction).
std::optional<UnitDirection> texel_center_dir(int width, int height, int x, int y,
                                              Parameterization p);

// Bilinear blend of the 4 nearest texel centers. u wraps across the seam for
// LatLong, v clamps. SphereMap neighbors outside the inscribed disc carry no
// radiance and are dropped from the blend (remaining weights renormalized).
Rgba sample_bilinear(const EnvironmentMap& m, const UnitDirection& d);

// Resample into another parameterization or size: every output texel becomes
// sample_bilinear(m, texel_to_dir(output texel center)). SphereMap output
// texels outside the disc are transparent black.
EnvironmentMap convert(const EnvironmentMap& m, Parameterization target, int width, int height);

namespace serial {
// Reference implementation with plain loops; bit-identical to convert().
EnvironmentMap convert(const EnvironmentMap& m, Parameterization target, int width, int height);
}  // namespace serial

}  // namespace embedmap
