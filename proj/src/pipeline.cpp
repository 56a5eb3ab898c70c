#include "embedmap/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "embedmap/image_io.hpp"
#include "embedmap/matte.hpp"
#include "embedmap/parallel.hpp"
#include "embedmap/render.hpp"
#include "embedmap/scene_io.hpp"

namespace embedmap {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
    const std::filesystem::path path(p);
    return path.is_absolute() ? path : base / path;
}

}  // namespace

PipelineConfig load_pipeline_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path.string());
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("config JSON parse error: " + std::string(e.what()));
    }
    PipelineConfig cfg;
    const auto base = path.parent_path();
    try {
        cfg.rig_path = resolve(base, doc.at("rig").get<std::string>());
        cfg.background_path = resolve(base, doc.at("background").get<std::string>());
        cfg.scene_path = resolve(base, doc.at("scene").get<std::string>());
        cfg.out_dir = resolve(base, doc.at("out_dir").get<std::string>());
        cfg.first_frame = doc.at("frames").at("first").get<int>();
        cfg.last_frame = doc.at("frames").at("last").get<int>();
        const auto& map = doc.at("map");
        cfg.map.width = map.at("width").get<int>();
        cfg.map.height = map.at("height").get<int>();
        cfg.map.param = parameterization_from_string(map.at("param").get<std::string>());
        if (doc.contains("matting")) {
            const auto& matting = doc["matting"];
            const auto mode = matting.at("mode").get<std::string>();
            if (mode == "alpha") {
                cfg.matting.mode = MattingMode::AlphaChannel;
            } else if (mode == "clean-plate") {
                cfg.matting.mode = MattingMode::CleanPlate;
                if (matting.contains("plate")) {
                    cfg.matting.plate_pattern =
                        resolve(base, matting["plate"].get<std::string>()).string();
                }
                cfg.matting.t0 = matting.value("t0", 0.02);
                cfg.matting.t1 = matting.value("t1", 0.10);
            } else {
                throw ValidationError("unknown matting mode: " + mode);
            }
        }
        cfg.workers = doc.value("workers", 0);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("config JSON error: " + std::string(e.what()));
    }
    validate_config(cfg);
    return cfg;
}

void validate_config(const PipelineConfig& cfg) {
    if (cfg.rig_path.empty() || cfg.background_path.empty() || cfg.scene_path.empty() ||
        cfg.out_dir.empty())
        throw ValidationError("config paths must be nonempty");
    if (cfg.first_frame > cfg.last_frame)
        throw ValidationError("frame range must satisfy first <= last");
    if (cfg.map.width < 1 || cfg.map.height < 1)
        throw ValidationError("map dimensions must be >= 1");
    if (cfg.map.param == Parameterization::LatLong && cfg.map.width != 2 * cfg.map.height)
        throw ValidationError("LatLong maps require width = 2 x height");
    if (cfg.workers < 0) throw ValidationError("worker count must be >= 1");
    if (cfg.matting.mode == MattingMode::CleanPlate && !(cfg.matting.t0 < cfg.matting.t1))
        throw ValidationError("require t0 < t1");
}

ResolvedMatting resolve_matting(const Rig& rig, const MattingConfig& matting) {
    ResolvedMatting resolved;
    resolved.t0 = matting.t0;
    resolved.t1 = matting.t1;
    if (matting.mode == MattingMode::AlphaChannel) return resolved;
    std::vector<Image> plates;
    plates.reserve(rig.cameras.size());
    for (size_t i = 0; i < rig.cameras.size(); ++i) {
        std::filesystem::path plate_path;
        if (!matting.plate_pattern.empty()) {
            plate_path = format_indexed(matting.plate_pattern, static_cast<int>(i));
        } else if (rig.cameras[i].clean_plate) {
            plate_path = resolve(rig.base_dir, *rig.cameras[i].clean_plate);
        } else {
            throw ValidationError("clean-plate matting needs a plate for every camera");
        }
        plates.push_back(load_image(plate_path));
    }
    resolved.clean_plates = std::move(plates);
    return resolved;
}

EnvironmentMap build_user_envmap(const Rig& rig, int frame_index, const MapSpec& spec,
                                 const ResolvedMatting& matting, StageTimes* times) {
    if (rig.cameras.empty()) throw ValidationError("rig has no cameras");
    std::vector<CameraView> views;
    views.reserve(rig.cameras.size());
    for (size_t i = 0; i < rig.cameras.size(); ++i)
        views.push_back(load_camera_frame(rig, static_cast<int>(i), frame_index));

    auto start = Clock::now();
    for (size_t i = 0; i < views.size(); ++i) {
        MatteFrame matte =
            matting.clean_plates
                ? extract_matte(views[i].frame, (*matting.clean_plates)[i], matting.t0,
                                matting.t1)
                : matte_from_alpha(views[i].frame);
        views[i].frame = std::move(matte.pixels);
    }
    if (times) times->matte_ms = ms_since(start);

    start = Clock::now();
    std::vector<WarpedLayer> layers;
    layers.reserve(views.size());
    for (const auto& view : views) layers.push_back(warp_view_to_envmap(view, spec));
    if (times) times->warp_ms = ms_since(start);

    start = Clock::now();
    EnvironmentMap merged = merge_views(layers);
    if (times) times->merge_ms = ms_since(start);
    return merged;
}

RunMetrics run_pipeline(const PipelineConfig& cfg) {
    validate_config(cfg);
    set_worker_count(cfg.workers > 0 ? cfg.workers : hardware_worker_count());

    const Rig rig = load_rig(cfg.rig_path);
    EnvironmentMap background = load_environment_map(cfg.background_path);
    if (background.width() != cfg.map.width || background.height() != cfg.map.height ||
        background.param() != cfg.map.param)
        background = convert(background, cfg.map.param, cfg.map.width, cfg.map.height);
    const Scene scene = load_scene(cfg.scene_path);
    const ResolvedMatting matting = resolve_matting(rig, cfg.matting);

    std::error_code ec;
    std::filesystem::create_directories(cfg.out_dir, ec);
    if (ec || !std::filesystem::is_directory(cfg.out_dir))
        throw IoError("cannot create output directory: " + cfg.out_dir.string());

    RunMetrics run;
    const auto run_start = Clock::now();
    for (int f = cfg.first_frame; f <= cfg.last_frame; ++f) {
        const auto frame_start = Clock::now();
        try {
            FrameMetrics fm;
            fm.frame_index = f;
            StageTimes stage;
            const EnvironmentMap user = build_user_envmap(rig, f, cfg.map, matting, &stage);
            fm.matte_ms = stage.matte_ms;
            fm.warp_ms = stage.warp_ms;
            fm.merge_ms = stage.merge_ms;

            auto start = Clock::now();
            const EnvironmentMap composite = composite_over(user, background);
            fm.composite_ms = ms_since(start);

            start = Clock::now();
            const RenderOutput rendered = render_reflection(scene, composite);
            fm.render_ms = ms_since(start);

            save_environment_map(composite,
                                 cfg.out_dir / format_indexed("composite_%05d.pfm", f));
            write_png(cfg.out_dir / format_indexed("render_%05d.png", f), rendered.image,
                      false);
            fm.total_ms = ms_since(frame_start);
            run.frames.push_back(fm);
        } catch (const Error& e) {
            run.failures.push_back({f, e.what()});
        }
    }
    run.total_wall_ms = ms_since(run_start);
    run.fps = run.total_wall_ms > 0.0 ? 1000.0 * run.frames.size() / run.total_wall_ms : 0.0;

    if (!run.frames.empty()) {
        std::ofstream metrics(cfg.out_dir / "metrics.json");
        if (!metrics) throw IoError("cannot write metrics.json");
        metrics << report_metrics_json(run.frames, run.fps) << "\n";
    }
    return run;
}

double percentile95(std::vector<double> samples) {
    if (samples.empty()) throw ValidationError("percentile of an empty sample set");
    std::sort(samples.begin(), samples.end());
    const size_t rank = static_cast<size_t>(
        std::ceil(0.95 * static_cast<double>(samples.size())));  // nearest-rank
    return samples[rank - 1];
}

namespace {

struct StageView {
    const char* name;
    double FrameMetrics::* field;
};

constexpr StageView kStages[] = {
    {"matte", &FrameMetrics::matte_ms},         {"warp", &FrameMetrics::warp_ms},
    {"merge", &FrameMetrics::merge_ms},         {"composite", &FrameMetrics::composite_ms},
    {"render", &FrameMetrics::render_ms},       {"total", &FrameMetrics::total_ms},
};

}  // namespace

std::string report_metrics_table(std::span<const FrameMetrics> frames, double fps) {
    if (frames.empty()) throw ValidationError("metrics list is empty");
    std::ostringstream out;
    char line[128];
    std::snprintf(line, sizeof(line), "%-10s %10s %10s\n", "stage", "mean_ms", "p95_ms");
    out << line;
    for (const auto& stage : kStages) {
        std::vector<double> samples;
        samples.reserve(frames.size());
        double sum = 0.0;
        for (const auto& fm : frames) {
            samples.push_back(fm.*(stage.field));
            sum += fm.*(stage.field);
        }
        std::snprintf(line, sizeof(line), "%-10s %10.3f %10.3f\n", stage.name,
                      sum / static_cast<double>(frames.size()), percentile95(samples));
        out << line;
    }
    std::snprintf(line, sizeof(line), "frames: %zu  fps: %.3f\n", frames.size(), fps);
    out << line;
    return out.str();
}

std::string report_metrics_json(std::span<const FrameMetrics> frames, double fps) {
    if (frames.empty()) throw ValidationError("metrics list is empty");
    nlohmann::json doc;
    doc["frames"] = nlohmann::json::array();
    for (const auto& fm : frames) {
        doc["frames"].push_back({{"frame", fm.frame_index},
                                 {"matte_ms", fm.matte_ms},
                                 {"warp_ms", fm.warp_ms},
                                 {"merge_ms", fm.merge_ms},
                                 {"composite_ms", fm.composite_ms},
                                 {"render_ms", fm.render_ms},
                                 {"total_ms", fm.total_ms}});
    }
    doc["fps"] = fps;
    return doc.dump(2);
}

}  // namespace embedmap
