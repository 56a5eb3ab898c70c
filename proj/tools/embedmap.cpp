#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "embedmap/envmap.hpp"
#include "embedmap/image_io.hpp"
#include "embedmap/parallel.hpp"
#include "embedmap/pipeline.hpp"
#include "embedmap/render.hpp"
#include "embedmap/scene_io.hpp"
#include "embedmap/synthetic.hpp"
#include "embedmap/warp.hpp"

namespace {

using namespace embedmap;

constexpr double kDegToRad = 3.14159265358979323846 / 180.0;

void parse_size(const std::string& s, int& width, int& height) {
    const size_t x = s.find('x');
    if (x == std::string::npos) throw ValidationError("size must look like 512x256: " + s);
    width = std::stoi(s.substr(0, x));
    height = std::stoi(s.substr(x + 1));
    if (width < 1 || height < 1) throw ValidationError("size components must be >= 1");
}

Vec3 parse_csv3(const std::string& s) {
    Vec3 v;
    if (std::sscanf(s.c_str(), "%lf,%lf,%lf", &v.x, &v.y, &v.z) != 3)
        throw ValidationError("expected three comma-separated numbers: " + s);
    return v;
}

UnitDirection azimuth_elevation_dir(double az_deg, double el_deg) {
    const double az = az_deg * kDegToRad;
    const double el = el_deg * kDegToRad;
    return UnitDirection(std::sin(az) * std::cos(el), std::sin(el),
                         -std::cos(az) * std::cos(el));
}

bool g_quiet = false;

void info(const std::string& msg) {
    if (!g_quiet) std::cerr << msg << "\n";
}

struct GenRigOptions {
    std::string out_dir;
    int cameras = 6;
    double fov = 90.0;
    std::string size = "256x256";
    std::string gt_size = "256x128";
    std::string env = "gradient";
    int frames = 1;
    bool billboard = false;
    std::string bb_start = "0,0";    // azimuth,elevation degrees
    std::string bb_end = "40,0";
    double bb_radius = 10.0;
    std::string bb_color = "1,0,0";
};

int run_gen_rig(const GenRigOptions& opt) {
    SyntheticRigSpec spec;
    spec.camera_count = opt.cameras;
    spec.fov_deg = opt.fov;
    parse_size(opt.size, spec.image_width, spec.image_height);
    parse_size(opt.gt_size, spec.ground_truth_width, spec.ground_truth_height);
    spec.env = analytic_env_from_string(opt.env);
    spec.frame_count = opt.frames;
    if (opt.billboard) {
        BillboardSpec bb;
        double az = 0.0, el = 0.0;
        if (std::sscanf(opt.bb_start.c_str(), "%lf,%lf", &az, &el) != 2)
            throw ValidationError("billboard start must be az,el degrees");
        bb.start = azimuth_elevation_dir(az, el);
        if (std::sscanf(opt.bb_end.c_str(), "%lf,%lf", &az, &el) != 2)
            throw ValidationError("billboard end must be az,el degrees");
        bb.end = azimuth_elevation_dir(az, el);
        bb.angular_radius_deg = opt.bb_radius;
        bb.color = parse_csv3(opt.bb_color);
        spec.billboard = bb;
    }
    const auto generated = generate_synthetic_rig(spec, opt.out_dir);
    info("wrote rig to " + generated.rig_path.string());
    return 0;
}

struct BuildEnvmapOptions {
    std::string rig;
    int frame = 0;
    std::string param = "latlong";
    std::string size = "512x256";
    std::string out;
    std::string clean_plate;
    double t0 = 0.02;
    double t1 = 0.10;
};

int run_build_envmap(const BuildEnvmapOptions& opt) {
    const Rig rig = load_rig(opt.rig);
    MapSpec spec;
    parse_size(opt.size, spec.width, spec.height);
    spec.param = parameterization_from_string(opt.param);
    MattingConfig matting;
    if (!opt.clean_plate.empty()) {
        matting.mode = MattingMode::CleanPlate;
        matting.plate_pattern = opt.clean_plate;
        matting.t0 = opt.t0;
        matting.t1 = opt.t1;
    }
    const ResolvedMatting resolved = resolve_matting(rig, matting);
    const EnvironmentMap map = build_user_envmap(rig, opt.frame, spec, resolved);
    const auto out_path = format_indexed(opt.out, opt.frame);
    save_environment_map(map, out_path);
    info("wrote " + out_path);
    return 0;
}

struct CompositeOptions {
    std::string fg, bg, out;
};

int run_composite(const CompositeOptions& opt) {
    const EnvironmentMap fg = load_environment_map(opt.fg);
    const EnvironmentMap bg = load_environment_map(opt.bg);
    save_environment_map(composite_over(fg, bg), opt.out);
    info("wrote " + opt.out);
    return 0;
}

struct RenderOptions {
    std::string scene, env, out;
};

int run_render(const RenderOptions& opt) {
    const Scene scene = load_scene(opt.scene);
    const EnvironmentMap env = load_environment_map(opt.env);
    const RenderOutput output = render_reflection(scene, env);
    const std::string ext = std::filesystem::path(opt.out).extension().string();
    if (ext == ".pfm")
        write_pfm_rgb(opt.out, output.image);
    else if (ext == ".png")
        write_png(opt.out, output.image, false);
    else
        throw ValidationError("render output must be .png or .pfm");
    info("wrote " + opt.out);
    return 0;
}

int run_pipeline_cmd(const std::string& config_path, int threads_override) {
    PipelineConfig cfg = load_pipeline_config(config_path);
    if (threads_override > 0) cfg.workers = threads_override;
    const RunMetrics run = run_pipeline(cfg);
    if (!run.frames.empty() && !g_quiet) std::cout << report_metrics_table(run.frames, run.fps);
    for (const auto& failure : run.failures)
        std::cerr << "frame " << failure.frame_index << " failed: " << failure.message << "\n";
    return run.failures.empty() ? 0 : 2;
}

int run_bench(const std::string& config_path, int repeat, int threads_override) {
    if (repeat < 1) throw ValidationError("repeat must be >= 1");
    PipelineConfig cfg = load_pipeline_config(config_path);
    if (threads_override > 0) cfg.workers = threads_override;
    std::vector<FrameMetrics> all;
    double total_wall_ms = 0.0;
    bool failed = false;
    for (int r = 0; r < repeat; ++r) {
        const RunMetrics run = run_pipeline(cfg);
        all.insert(all.end(), run.frames.begin(), run.frames.end());
        total_wall_ms += run.total_wall_ms;
        failed = failed || !run.failures.empty();
    }
    const double fps = total_wall_ms > 0.0 ? 1000.0 * all.size() / total_wall_ms : 0.0;
    std::cout << report_metrics_table(all, fps);
    const auto json_path = cfg.out_dir / "bench_metrics.json";
    std::ofstream out(json_path);
    if (!out) throw IoError("cannot write " + json_path.string());
    out << report_metrics_json(all, fps) << "\n";
    info("wrote " + json_path.string());
    return failed ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"embedmap - environment-map capture, compositing, and reflection rendering"};
    app.require_subcommand(1);

    int threads = 0;
    app.add_option("--threads", threads, "worker threads (default: machine parallelism)");
    app.add_flag("--quiet", g_quiet, "suppress progress output");

    GenRigOptions gen;
    auto* gen_cmd = app.add_subcommand("gen-rig", "generate a synthetic camera rig");
    gen_cmd->add_option("--out", gen.out_dir, "output directory")->required();
    gen_cmd->add_option("--cameras", gen.cameras, "camera count");
    gen_cmd->add_option("--fov", gen.fov, "horizontal field of view in degrees");
    gen_cmd->add_option("--size", gen.size, "frame size WxH");
    gen_cmd->add_option("--gt-size", gen.gt_size, "ground-truth map size WxH (2:1)");
    gen_cmd->add_option("--env", gen.env, "gradient | color-wheel | disc-light");
    gen_cmd->add_option("--frames", gen.frames, "frame count");
    gen_cmd->add_flag("--billboard", gen.billboard, "add a moving user billboard");
    gen_cmd->add_option("--billboard-start", gen.bb_start, "start direction az,el degrees");
    gen_cmd->add_option("--billboard-end", gen.bb_end, "end direction az,el degrees");
    gen_cmd->add_option("--billboard-radius", gen.bb_radius, "angular radius in degrees");
    gen_cmd->add_option("--billboard-color", gen.bb_color, "color r,g,b");

    BuildEnvmapOptions build;
    auto* build_cmd = app.add_subcommand("build-envmap", "warp one rig instant onto the sphere");
    build_cmd->add_option("--rig", build.rig, "rig JSON path")->required();
    build_cmd->add_option("--frame", build.frame, "frame index")->required();
    build_cmd->add_option("--param", build.param, "latlong | spheremap");
    build_cmd->add_option("--size", build.size, "map size WxH");
    build_cmd->add_option("--out", build.out, "output PFM path (may contain %05d)")->required();
    build_cmd->add_option("--clean-plate", build.clean_plate,
                          "difference-key against this plate (%d takes the camera index)");
    build_cmd->add_option("--key-t0", build.t0, "keying lower threshold");
    build_cmd->add_option("--key-t1", build.t1, "keying upper threshold");

    CompositeOptions comp;
    auto* comp_cmd = app.add_subcommand("composite", "composite a user map over a background");
    comp_cmd->add_option("--fg", comp.fg, "foreground (user) map")->required();
    comp_cmd->add_option("--bg", comp.bg, "background map")->required();
    comp_cmd->add_option("--out", comp.out, "output map")->required();

    RenderOptions render;
    auto* render_cmd = app.add_subcommand("render", "render reflective objects under a map");
    render_cmd->add_option("--scene", render.scene, "scene JSON path")->required();
    render_cmd->add_option("--env", render.env, "environment map path")->required();
    render_cmd->add_option("--out", render.out, "output image (.png or .pfm)")->required();

    std::string pipeline_config;
    auto* pipeline_cmd = app.add_subcommand("pipeline", "run the frame-by-frame pipeline");
    pipeline_cmd->add_option("--config", pipeline_config, "pipeline config JSON")->required();

    std::string bench_config;
    int bench_repeat = 3;
    auto* bench_cmd = app.add_subcommand("bench", "repeat the pipeline and report timings");
    bench_cmd->add_option("--config", bench_config, "pipeline config JSON")->required();
    bench_cmd->add_option("--repeat", bench_repeat, "repetitions");

    CLI11_PARSE(app, argc, argv);

    try {
        if (threads > 0) set_worker_count(threads);
        if (gen_cmd->parsed()) return run_gen_rig(gen);
        if (build_cmd->parsed()) return run_build_envmap(build);
        if (comp_cmd->parsed()) return run_composite(comp);
        if (render_cmd->parsed()) return run_render(render);
        if (pipeline_cmd->parsed()) return run_pipeline_cmd(pipeline_config, threads);
        if (bench_cmd->parsed()) return run_bench(bench_config, bench_repeat, threads);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
