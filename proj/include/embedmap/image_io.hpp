#pragma once

#include <filesystem>
#include <string>

#include "embedmap/envmap.hpp"
#include "embedmap/image.hpp"

namespace embedmap {

// PFM, little-endian (scale -1.0), rows bottom to top. "PF" carries RGB;
// the single-channel "Pf" variant carries alpha.
void write_pfm_rgb(const std::filesystem::path& path, const Image& image);
void write_pfm_gray(const std::filesystem::path& path, const Image& image);  // alpha channel
Image read_pfm(const std::filesystem::path& path);  // gray loads into all color channels

// 8-bit PNG; color channels are sRGB-encoded with gamma 2.2, alpha stays
// linear. Reading linearizes back to float.
void write_png(const std::filesystem::path& path, const Image& image, bool with_alpha);
Image read_png(const std::filesystem::path& path);

// Binary PPM (P6), gamma 2.2, alpha dropped on write / set to 1 on read.
void write_ppm(const std::filesystem::path& path, const Image& image);
Image read_ppm(const std::filesystem::path& path);

// Load any supported frame format into linear RGBA. For PFM, a sibling
// alpha file (see alpha_sibling_path) is picked up when present.
Image load_image(const std::filesystem::path& path);

// foo.pfm -> foo.alpha.pfm ; foo.pfm's JSON sidecar is foo.pfm.json.
std::filesystem::path alpha_sibling_path(const std::filesystem::path& path);
std::filesystem::path sidecar_path(const std::filesystem::path& path);

// Environment maps serialize to PFM (RGB + alpha sibling), PNG, or PPM by
// extension, always with a JSON sidecar {"param": "latlong"|"spheremap"}.
void save_environment_map(const EnvironmentMap& map, const std::filesystem::path& path);

// Loads by extension. The parameterization comes from the sidecar; without
// one, a 2:1 map falls back to latlong and a square map to spheremap.
EnvironmentMap load_environment_map(const std::filesystem::path& path);

float srgb_encode(float linear);
float srgb_decode(float encoded);

}  // namespace embedmap
