// shackled: render, estimate, bench, genesis and serve from the command line.
//
// Exit codes: 0 success, 1 bad input (parse, schema, validation, I/O),
// 2 budget exhausted.

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "shackled/gasmeter.hpp"
#include "shackled/genesis.hpp"
#include "shackled/pipeline.hpp"
#include "shackled/presets.hpp"
#include "shackled/service.hpp"

namespace {

using namespace shackled;

constexpr int kExitInput = 1;
constexpr int kExitOutOfGas = 2;

// Thrown for anything that should end in exit code 1.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot read " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, std::string_view bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()))) {
        throw InputError("cannot write " + path);
    }
}

SceneDocument load_scene(const std::string& path) {
    try {
        return scene_from_json(read_file(path));
    } catch (const SchemaError& e) {
        throw InputError(path + ": " + e.what());
    }
}

void require_valid(const SceneDocument& doc) {
    const auto problems = validate(doc);
    if (problems.empty()) {
        return;
    }
    std::string msg = "invalid scene:";
    for (const Violation& v : problems) {
        msg += "\n  " + v.field + ": " + v.message;
    }
    throw InputError(msg);
}

CostTable load_costs(const std::string& path) {
    if (path.empty()) {
        return CostTable{};
    }
    try {
        return load_cost_table(path);
    } catch (const ConfigError& e) {
        throw InputError(e.what());
    }
}

CameraModel parse_camera(const std::string& s) { return s == "orthographic" ? CameraModel::Orthographic : CameraModel::Perspective; }

struct RenderOptions {
    std::string scene;
    std::string obj;
    std::uint32_t canvas = 0;
    std::string camera;
    std::uint64_t budget = 0;
    bool no_cull = false;
    bool wireframe = false;
    std::string out;
    std::string costs;
};

int cmd_render(const RenderOptions& o) {
    SceneDocument doc;
    if (!o.scene.empty()) {
        doc = load_scene(o.scene);
    } else {
        try {
            doc.mesh = parse_obj(read_file(o.obj));
        } catch (const ParseError& e) {
            throw InputError(o.obj + ": " + e.what());
        }
    }
    if (o.canvas != 0) {
        doc.settings.canvas_size = o.canvas;
    }
    if (!o.camera.empty()) {
        doc.settings.camera.model = parse_camera(o.camera);
    }
    if (o.no_cull) {
        doc.settings.backface_culling = false;
    }
    if (o.wireframe) {
        doc.settings.wireframe_only = true;
    }
    require_valid(doc);
    const CostTable costs = load_costs(o.costs);
    std::optional<Budget> budget;
    if (o.budget != 0) {
        budget = Budget{o.budget};
    }
    try {
        const MeteredRender r = metered_render(doc, costs, budget);
        const auto bmp = encode_bmp(r.image);
        write_file(o.out, std::string_view(reinterpret_cast<const char*>(bmp.data()), bmp.size()));
        std::cout << "gas=" << r.receipt.total << '\n';
        return 0;
    } catch (const OutOfGas& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitOutOfGas;
    }
}

int cmd_estimate(const std::string& scene, const std::string& costs_path) {
    const SceneDocument doc = load_scene(scene);
    require_valid(doc);
    std::cout << "gas=" << estimate_gas(doc, load_costs(costs_path)) << '\n';
    return 0;
}

int cmd_bench(const std::string& kind, const std::string& scene, const std::string& out, const std::string& costs_path) {
    const CostTable costs = load_costs(costs_path);
    SweepKind sweep = SweepKind::Canvas;
    SceneDocument doc = presets::cube_scene();
    if (kind == "triangles") {
        sweep = SweepKind::Triangles;
        doc = SceneDocument{};
    } else if (kind == "culling") {
        sweep = SweepKind::Culling;
    }
    if (!scene.empty()) {
        doc = load_scene(scene);
    }
    require_valid(doc);
    const auto rows = bench_sweep(sweep, doc, costs);
    write_file(out, to_csv(rows));

    std::vector<double> xs;
    std::vector<double> ys;
    for (const BenchRow& r : rows) {
        if (sweep != SweepKind::Culling) {
            xs.push_back(std::stod(r.parameter));
        }
        ys.push_back(static_cast<double>(r.gas));
    }
    std::cout << std::setprecision(6);
    if (sweep == SweepKind::Canvas) {
        const LinearFit fit = fit_loglog(xs, ys);
        std::cout << "loglog_slope=" << fit.slope << " r2=" << fit.r2 << '\n';
    } else if (sweep == SweepKind::Triangles) {
        const LinearFit fit = fit_linear(xs, ys);
        std::cout << "slope=" << fit.slope << " intercept=" << fit.intercept << " r2=" << fit.r2 << '\n';
    } else {
        std::cout << "culled=" << rows[0].gas << " unculled=" << rows[1].gas << " ratio=" << ys[1] / ys[0] << '\n';
    }
    return 0;
}

int cmd_genesis(const std::string& seed_hex, std::uint64_t count, const std::string& out_dir) {
    genesis::Seed seed;
    try {
        seed = genesis::parse_seed_hex(seed_hex);
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
    std::filesystem::create_directories(out_dir);
    for (std::uint64_t i = 0; i < count; ++i) {
        const SceneDocument doc = genesis::generate_instance(genesis::seed_at_index(seed, i));
        const auto path = std::filesystem::path(out_dir) / ("genesis_" + std::to_string(i) + ".json");
        write_file(path.string(), scene_to_json(doc));
        std::cout << path.string() << " faces=" << doc.mesh.faces.size() << '\n';
    }
    return 0;
}

int cmd_serve(service::Config config, const std::string& costs_path) {
    config.costs = load_costs(costs_path);
    service::Server server(config);
    const int port = server.bind();
    if (port < 0) {
        throw InputError("cannot bind " + config.host + ":" + std::to_string(config.port));
    }
    std::cout << "listening on " << config.host << ':' << port << std::endl;
    return server.serve() ? 0 : kExitInput;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Deterministic fixed-point software renderer with gas metering"};
    app.require_subcommand(1);

    RenderOptions render;
    auto* render_cmd = app.add_subcommand("render", "Render a scene to a BMP file");
    auto* scene_opt = render_cmd->add_option("--scene", render.scene, "Scene JSON")->check(CLI::ExistingFile);
    auto* obj_opt = render_cmd->add_option("--obj", render.obj, "Wavefront OBJ mesh")->check(CLI::ExistingFile);
    scene_opt->excludes(obj_opt);
    render_cmd->add_option("--canvas", render.canvas, "Canvas side in pixels")->check(CLI::Range(1U, kMaxCanvasSize));
    render_cmd->add_option("--camera", render.camera, "Camera model")->check(CLI::IsMember({"perspective", "orthographic"}));
    render_cmd->add_option("--budget", render.budget, "Gas budget")->check(CLI::PositiveNumber);
    render_cmd->add_flag("--no-cull", render.no_cull, "Disable backface culling");
    render_cmd->add_flag("--wireframe", render.wireframe, "Draw edges only");
    render_cmd->add_option("-o,--out", render.out, "Output BMP")->required();
    render_cmd->add_option("--costs", render.costs, "Cost table (key = value lines)")->check(CLI::ExistingFile);

    std::string estimate_scene;
    std::string estimate_costs;
    auto* estimate_cmd = app.add_subcommand("estimate", "Find the minimal gas budget for a scene");
    estimate_cmd->add_option("--scene", estimate_scene, "Scene JSON")->required()->check(CLI::ExistingFile);
    estimate_cmd->add_option("--costs", estimate_costs, "Cost table")->check(CLI::ExistingFile);

    std::string bench_kind;
    std::string bench_scene;
    std::string bench_out;
    std::string bench_costs;
    auto* bench_cmd = app.add_subcommand("bench", "Run a gas sweep and write CSV");
    bench_cmd->add_option("--kind", bench_kind, "Sweep kind")->required()->check(CLI::IsMember({"canvas", "triangles", "culling"}));
    bench_cmd->add_option("--scene", bench_scene, "Base scene JSON")->check(CLI::ExistingFile);
    bench_cmd->add_option("-o,--out", bench_out, "Output CSV")->required();
    bench_cmd->add_option("--costs", bench_costs, "Cost table")->check(CLI::ExistingFile);

    std::string seed_hex;
    std::uint64_t genesis_count = 1;
    std::string genesis_dir = ".";
    auto* genesis_cmd = app.add_subcommand("genesis", "Generate prism scenes from a seed");
    genesis_cmd->add_option("--seed", seed_hex, "Seed, up to 64 hex digits")->required();
    genesis_cmd->add_option("--count", genesis_count, "Number of instances")->check(CLI::PositiveNumber);
    genesis_cmd->add_option("--out-dir", genesis_dir, "Output directory");

    service::Config serve_config;
    std::string serve_costs;
    auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP render service");
    serve_cmd->add_option("--port", serve_config.port, "TCP port")->check(CLI::Range(0, 65535));
    serve_cmd->add_option("--host", serve_config.host, "Bind address");
    serve_cmd->add_option("--max-body-bytes", serve_config.max_body_bytes, "Request size limit")->check(CLI::PositiveNumber);
    serve_cmd->add_option("--costs", serve_costs, "Cost table")->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitInput;
    }

    try {
        if (render_cmd->parsed()) {
            if (render.scene.empty() && render.obj.empty()) {
                throw InputError("render needs --scene or --obj");
            }
            return cmd_render(render);
        }
        if (estimate_cmd->parsed()) {
            return cmd_estimate(estimate_scene, estimate_costs);
        }
        if (bench_cmd->parsed()) {
            return cmd_bench(bench_kind, bench_scene, bench_out, bench_costs);
        }
        if (genesis_cmd->parsed()) {
            return cmd_genesis(seed_hex, genesis_count, genesis_dir);
        }
        if (serve_cmd->parsed()) {
            return cmd_serve(serve_config, serve_costs);
        }
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const FxError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }
    return kExitInput;
}
