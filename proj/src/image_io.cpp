#include "embedmap/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

#include "json.hpp"

namespace embedmap {

namespace {

std::string lower_ext(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext;
}

void write_pfm(const std::filesystem::path& path, const Image& image, bool gray) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << (gray ? "Pf" : "PF") << "\n"
        << image.width() << " " << image.height() << "\n"
        << "-1.0\n";
    std::vector<float> row(static_cast<size_t>(image.width()) * (gray ? 1 : 3));
    for (int y = image.height() - 1; y >= 0; --y) {  // PFM rows run bottom to top
        size_t k = 0;
        for (int x = 0; x < image.width(); ++x) {
            const Rgba& c = image.at(x, y);
            if (gray) {
                row[k++] = c.a;
            } else {
                row[k++] = c.r;
                row[k++] = c.g;
                row[k++] = c.b;
            }
        }
        out.write(reinterpret_cast<const char*>(row.data()),
                  static_cast<std::streamsize>(row.size() * sizeof(float)));
    }
    if (!out) throw IoError("failed writing " + path.string());
}

float byteswap_float(float v) {
    uint32_t bits;
    std::memcpy(&bits, &v, 4);
    bits = ((bits & 0xff000000u) >> 24) | ((bits & 0x00ff0000u) >> 8) |
           ((bits & 0x0000ff00u) << 8) | ((bits & 0x000000ffu) << 24);
    std::memcpy(&v, &bits, 4);
    return v;
}

}  // namespace

void write_pfm_rgb(const std::filesystem::path& path, const Image& image) {
    write_pfm(path, image, false);
}

void write_pfm_gray(const std::filesystem::path& path, const Image& image) {
    write_pfm(path, image, true);
}

Image read_pfm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open: " + path.string());
    std::string magic;
    int width = 0, height = 0;
    double scale = 0.0;
    in >> magic >> width >> height >> scale;
    if ((magic != "PF" && magic != "Pf") || width < 1 || height < 1 || scale == 0.0 || !in)
        throw IoError("not a valid PFM file: " + path.string());
    in.get();  // single whitespace after the header
    const bool gray = magic == "Pf";
    const bool swap = scale > 0.0;  // positive scale means big-endian
    const size_t stride = static_cast<size_t>(width) * (gray ? 1 : 3);
    std::vector<float> row(stride);
    Image image(width, height);
    for (int y = height - 1; y >= 0; --y) {
        in.read(reinterpret_cast<char*>(row.data()),
                static_cast<std::streamsize>(stride * sizeof(float)));
        if (!in) throw IoError("truncated PFM file: " + path.string());
        size_t k = 0;
        for (int x = 0; x < width; ++x) {
            auto next = [&] {
                float v = row[k++];
                return swap ? byteswap_float(v) : v;
            };
            if (gray) {
                const float v = next();
                image.at(x, y) = {v, v, v, 1.0f};
            } else {
                const float r = next(), g = next(), b = next();
                image.at(x, y) = {r, g, b, 1.0f};
            }
        }
    }
    return image;
}

float srgb_encode(float linear) {
    const float c = std::clamp(linear, 0.0f, 1.0f);
    return std::pow(c, 1.0f / 2.2f);
}

float srgb_decode(float encoded) { return std::pow(std::clamp(encoded, 0.0f, 1.0f), 2.2f); }

namespace {

uint8_t to_byte(float v) {
    return static_cast<uint8_t>(std::lround(std::clamp(v, 0.0f, 1.0f) * 255.0f));
}

}  // namespace

void write_png(const std::filesystem::path& path, const Image& image, bool with_alpha) {
    const int channels = with_alpha ? 4 : 3;
    std::vector<uint8_t> bytes(static_cast<size_t>(image.width()) * image.height() * channels);
    size_t k = 0;
    for (int y = 0; y < image.height(); ++y)
        for (int x = 0; x < image.width(); ++x) {
            const Rgba& c = image.at(x, y);
            bytes[k++] = to_byte(srgb_encode(c.r));
            bytes[k++] = to_byte(srgb_encode(c.g));
            bytes[k++] = to_byte(srgb_encode(c.b));
            if (with_alpha) bytes[k++] = to_byte(c.a);
        }
    png_image img{};
    img.version = PNG_IMAGE_VERSION;
    img.width = static_cast<png_uint_32>(image.width());
    img.height = static_cast<png_uint_32>(image.height());
    img.format = with_alpha ? PNG_FORMAT_RGBA : PNG_FORMAT_RGB;
    if (!png_image_write_to_file(&img, path.string().c_str(), 0, bytes.data(), 0, nullptr))
        throw IoError("PNG write failed: " + path.string() + ": " + img.message);
}

Image read_png(const std::filesystem::path& path) {
    png_image img{};
    img.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_file(&img, path.string().c_str()))
        throw IoError("PNG read failed: " + path.string() + ": " + img.message);
    img.format = PNG_FORMAT_RGBA;
    std::vector<uint8_t> bytes(PNG_IMAGE_SIZE(img));
    if (!png_image_finish_read(&img, nullptr, bytes.data(), 0, nullptr))
        throw IoError("PNG read failed: " + path.string() + ": " + img.message);
    Image image(static_cast<int>(img.width), static_cast<int>(img.height));
    size_t k = 0;
    for (int y = 0; y < image.height(); ++y)
        for (int x = 0; x < image.width(); ++x) {
            const float r = srgb_decode(bytes[k++] / 255.0f);
            const float g = srgb_decode(bytes[k++] / 255.0f);
            const float b = srgb_decode(bytes[k++] / 255.0f);
            const float a = bytes[k++] / 255.0f;
            image.at(x, y) = {r, g, b, a};
        }
    return image;
}

void write_ppm(const std::filesystem::path& path, const Image& image) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << "P6\n" << image.width() << " " << image.height() << "\n255\n";
    for (int y = 0; y < image.height(); ++y)
        for (int x = 0; x < image.width(); ++x) {
            const Rgba& c = image.at(x, y);
            const uint8_t px[3] = {to_byte(srgb_encode(c.r)), to_byte(srgb_encode(c.g)),
                                   to_byte(srgb_encode(c.b))};
            out.write(reinterpret_cast<const char*>(px), 3);
        }
    if (!out) throw IoError("failed writing " + path.string());
}

Image read_ppm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open: " + path.string());
    std::string magic;
    int width = 0, height = 0, maxval = 0;
    in >> magic >> width >> height >> maxval;
    if (magic != "P6" || width < 1 || height < 1 || maxval != 255 || !in)
        throw IoError("not a supported PPM file: " + path.string());
    in.get();
    Image image(width, height);
    std::vector<uint8_t> row(static_cast<size_t>(width) * 3);
    for (int y = 0; y < height; ++y) {
        in.read(reinterpret_cast<char*>(row.data()), static_cast<std::streamsize>(row.size()));
        if (!in) throw IoError("truncated PPM file: " + path.string());
        for (int x = 0; x < width; ++x) {
            image.at(x, y) = {srgb_decode(row[x * 3 + 0] / 255.0f),
                              srgb_decode(row[x * 3 + 1] / 255.0f),
                              srgb_decode(row[x * 3 + 2] / 255.0f), 1.0f};
        }
    }
    return image;
}

std::filesystem::path alpha_sibling_path(const std::filesystem::path& path) {
    std::filesystem::path p = path;
    const std::string ext = p.extension().string();
    p.replace_extension();
    p += ".alpha";
    p += ext;
    return p;
}

std::filesystem::path sidecar_path(const std::filesystem::path& path) {
    std::filesystem::path p = path;
    p += ".json";
    return p;
}

Image load_image(const std::filesystem::path& path) {
    const std::string ext = lower_ext(path);
    if (ext == ".png") return read_png(path);
    if (ext == ".ppm") return read_ppm(path);
    if (ext == ".pfm") {
        Image image = read_pfm(path);
        const auto alpha_path = alpha_sibling_path(path);
        if (std::filesystem::exists(alpha_path)) {
            const Image alpha = read_pfm(alpha_path);
            if (alpha.width() != image.width() || alpha.height() != image.height())
                throw IoError("alpha sibling dimensions differ: " + alpha_path.string());
            for (int y = 0; y < image.height(); ++y)
                for (int x = 0; x < image.width(); ++x) image.at(x, y).a = alpha.at(x, y).r;
        }
        return image;
    }
    throw IoError("unsupported image format: " + path.string());
}

void save_environment_map(const EnvironmentMap& map, const std::filesystem::path& path) {
    const std::string ext = lower_ext(path);
    if (ext == ".pfm") {
        write_pfm_rgb(path, map.image());
        write_pfm_gray(alpha_sibling_path(path), map.image());
    } else if (ext == ".png") {
        write_png(path, map.image(), true);
    } else if (ext == ".ppm") {
        write_ppm(path, map.image());
    } else {
        throw IoError("unsupported environment map format: " + path.string());
    }
    std::ofstream side(sidecar_path(path));
    if (!side) throw IoError("cannot write sidecar for " + path.string());
    side << "{\"param\": \"" << to_string(map.param()) << "\"}\n";
}

EnvironmentMap load_environment_map(const std::filesystem::path& path) {
    Image image = load_image(path);
    const auto side = sidecar_path(path);
    Parameterization param;
    if (std::filesystem::exists(side)) {
        std::ifstream in(side);
        nlohmann::json doc;
        in >> doc;
        param = parameterization_from_string(doc.at("param").get<std::string>());
    } else if (image.width() == 2 * image.height()) {
        param = Parameterization::LatLong;
    } else if (image.width() == image.height()) {
        param = Parameterization::SphereMap;
    } else {
        throw IoError("no sidecar and ambiguous dimensions: " + path.string());
    }
    return EnvironmentMap(std::move(image), param);
}

}  // namespace embedmap
