#include "embedmap/warp.hpp"

#include <algorithm>
#include <cmath>

#include "embedmap/parallel.hpp"

namespace embedmap {

WarpedLayer make_warped_layer(EnvironmentMap map, std::vector<float> weights) {
    if (weights.size() != static_cast<size_t>(map.width()) * map.height())
        throw ValidationError("weight buffer does not match map dimensions");
    for (size_t i = 0; i < weights.size(); ++i) {
        const float w = weights[i];
        if (!(w >= 0.0f) || !std::isfinite(w)) throw ValidationError("weights must be >= 0");
        const float a = map.image().pixels()[i].a;
        if ((w == 0.0f) != (a == 0.0f))
            throw ValidationError("weight must be zero exactly where alpha is zero");
    }
    return WarpedLayer{std::move(map), std::move(weights)};
}

namespace {

void validate_spec(const MapSpec& spec) {
    if (spec.width < 1 || spec.height < 1) throw ValidationError("map dimensions must be >= 1");
    if (spec.param == Parameterization::LatLong && spec.width != 2 * spec.height)
        throw ValidationError("LatLong maps require width = 2 x height");
}

void warp_row(const CameraView& view, const MapSpec& spec, double layer_weight, int y,
              Image& out, std::vector<float>& weights) {
    for (int x = 0; x < spec.width; ++x) {
        const auto dir = texel_center_dir(spec.width, spec.height, x, y, spec.param);
        if (!dir) continue;
        const auto sample = sample_view(view, *dir);
        if (!sample) continue;
        Rgba c = *sample;
        const float w = static_cast<float>(layer_weight) * c.a;
        if (w == 0.0f) c = Rgba{};  // keep weight = 0 <=> alpha = 0
        out.at(x, y) = c;
        weights[static_cast<size_t>(y) * spec.width + x] = w;
    }
}

void validate_layers(std::span<const WarpedLayer> layers) {
    if (layers.empty()) throw ValidationError("merge requires at least one layer");
    const auto& first = layers.front().map;
    for (const auto& layer : layers) {
        if (layer.map.width() != first.width() || layer.map.height() != first.height() ||
            layer.map.param() != first.param())
            throw ValidationError("layers must share dimensions and parameterization");
    }
}

Rgba merge_texel(std::span<const WarpedLayer> layers, size_t idx) {
    double sw = 0.0, r = 0.0, g = 0.0, b = 0.0, a = 0.0;
    for (const auto& layer : layers) {
        const double w = layer.weights[idx];
        if (w == 0.0) continue;
        const Rgba& c = layer.map.image().pixels()[idx];
        sw += w;
        r += w * c.r;
        g += w * c.g;
        b += w * c.b;
        a += w * c.a;
    }
    if (sw == 0.0) return Rgba{};
    return {static_cast<float>(r / sw), static_cast<float>(g / sw), static_cast<float>(b / sw),
            static_cast<float>(std::min(1.0, a / sw))};
}

void validate_over_inputs(const EnvironmentMap& user, const EnvironmentMap& background) {
    if (user.width() != background.width() || user.height() != background.height() ||
        user.param() != background.param())
        throw ValidationError("composite inputs must share dimensions and parameterization");
}

Rgba over_texel(const Rgba& u, const Rgba& bg) {
    const double k = 1.0 - u.a;
    return {static_cast<float>(u.r + k * bg.r), static_cast<float>(u.g + k * bg.g),
            static_cast<float>(u.b + k * bg.b),
            static_cast<float>(std::min(1.0, u.a + k * bg.a))};
}

}  // namespace

WarpedLayer warp_view_to_envmap(const CameraView& view, const MapSpec& spec,
                                double layer_weight) {
    validate_spec(spec);
    if (!(layer_weight > 0.0)) throw ValidationError("layer weight must be > 0");
    Image out(spec.width, spec.height);
    std::vector<float> weights(static_cast<size_t>(spec.width) * spec.height, 0.0f);
    parallel_rows(spec.height, [&](int y) { warp_row(view, spec, layer_weight, y, out, weights); });
    return WarpedLayer{EnvironmentMap(std::move(out), spec.param), std::move(weights)};
}

EnvironmentMap merge_views(std::span<const WarpedLayer> layers) {
    validate_layers(layers);
    const int w = layers.front().map.width();
    const int h = layers.front().map.height();
    Image out(w, h);
    parallel_rows(h, [&](int y) {
        for (int x = 0; x < w; ++x)
            out.at(x, y) = merge_texel(layers, static_cast<size_t>(y) * w + x);
    });
    return EnvironmentMap(std::move(out), layers.front().map.param());
}

EnvironmentMap composite_over(const EnvironmentMap& user, const EnvironmentMap& background) {
    validate_over_inputs(user, background);
    const int w = user.width();
    const int h = user.height();
    Image out(w, h);
    parallel_rows(h, [&](int y) {
        for (int x = 0; x < w; ++x) out.at(x, y) = over_texel(user.texel(x, y), background.texel(x, y));
    });
    return EnvironmentMap(std::move(out), user.param());
}

namespace serial {

WarpedLayer warp_view_to_envmap(const CameraView& view, const MapSpec& spec,
                                double layer_weight) {
    validate_spec(spec);
    if (!(layer_weight > 0.0)) throw ValidationError("layer weight must be > 0");
    Image out(spec.width, spec.height);
    std::vector<float> weights(static_cast<size_t>(spec.width) * spec.height, 0.0f);
    for (int y = 0; y < spec.height; ++y) warp_row(view, spec, layer_weight, y, out, weights);
    return WarpedLayer{EnvironmentMap(std::move(out), spec.param), std::move(weights)};
}

EnvironmentMap merge_views(std::span<const WarpedLayer> layers) {
    validate_layers(layers);
    const int w = layers.front().map.width();
    const int h = layers.front().map.height();
    Image out(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            out.at(x, y) = merge_texel(layers, static_cast<size_t>(y) * w + x);
    return EnvironmentMap(std::move(out), layers.front().map.param());
}

EnvironmentMap composite_over(const EnvironmentMap& user, const EnvironmentMap& background) {
    validate_over_inputs(user, background);
    const int w = user.width();
    const int h = user.height();
    Image out(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) out.at(x, y) = over_texel(user.texel(x, y), background.texel(x, y));
    return EnvironmentMap(std::move(out), user.param());
}

}  // namespace serial

}  // namespace embedmap
