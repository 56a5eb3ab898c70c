#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "embedmap/envmap.hpp"
#include "embedmap/rig_io.hpp"
#include "embedmap/scene.hpp"
#include "embedmap/warp.hpp"

namespace embedmap {

enum class MattingMode { AlphaChannel, CleanPlate };

struct MattingConfig {
    MattingMode mode = MattingMode::AlphaChannel;
    std::string plate_pattern;  // %d takes the camera index; empty = rig-provided plates
    double t0 = 0.02;
    double t1 = 0.10;
};

// Frame-by-frame run: ingest -> matte -> warp -> merge -> composite -> render.
struct PipelineConfig {
    std::filesystem::path rig_path;
    std::filesystem::path background_path;
    std::filesystem::path scene_path;
    std::filesystem::path out_dir;
    int first_frame = 0;
    int last_frame = 0;
    MapSpec map;
    MattingConfig matting;
    int workers = 0;  // 0 = machine parallelism
};

// Parses the pipeline JSON config; relative paths resolve against the config
// file's directory.
PipelineConfig load_pipeline_config(const std::filesystem::path& path);
void validate_config(const PipelineConfig& cfg);

// Per-stage wall times for one frame, in milliseconds. End-to-end covers the
// whole frame including file I/O, so it is never below any single stage.
struct FrameMetrics {
    int frame_index = 0;
    double matte_ms = 0.0;
    double warp_ms = 0.0;
    double merge_ms = 0.0;
    double composite_ms = 0.0;
    double render_ms = 0.0;
    double total_ms = 0.0;
};

struct FrameFailure {
    int frame_index = 0;
    std::string message;
};

struct RunMetrics {
    std::vector<FrameMetrics> frames;
    double fps = 0.0;
    double total_wall_ms = 0.0;
    std::vector<FrameFailure> failures;
};

// Matting inputs resolved once per run; plates are indexed per camera.
struct ResolvedMatting {
    std::optional<std::vector<Image>> clean_plates;
    double t0 = 0.02;
    double t1 = 0.10;
};

ResolvedMatting resolve_matting(const Rig& rig, const MattingConfig& matting);

struct StageTimes {
    double matte_ms = 0.0;
    double warp_ms = 0.0;
    double merge_ms = 0.0;
};

// Matte every camera frame of one instant, warp each view onto the sphere,
// and merge into the user layer. Shared by the pipeline and the
// build-envmap command so both produce identical maps.
EnvironmentMap build_user_envmap(const Rig& rig, int frame_index, const MapSpec& spec,
                                 const ResolvedMatting& matting,
                                 StageTimes* times = nullptr);

// Runs every frame in [first_frame, last_frame], writing composite_%05d.pfm
// and render_%05d.png plus metrics.json into out_dir. A failing frame is
// recorded and skipped; outputs are bit-identical for any worker count.
RunMetrics run_pipeline(const PipelineConfig& cfg);

// Per-stage mean/p95 table plus overall fps.
std::string report_metrics_table(std::span<const FrameMetrics> frames, double fps);
// JSON document {"frames":[...], "fps": x}.
std::string report_metrics_json(std::span<const FrameMetrics> frames, double fps);

double percentile95(std::vector<double> samples);

}  // namespace embedmap
