#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "shackled/gasmeter.hpp"
#include "shackled/pipeline.hpp"
#include "shackled/presets.hpp"
#include "shackled/service.hpp"

using namespace shackled;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(SHACKLED_CLI_PATH) + " " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[512];
    while (const std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) {
        r.out.append(buf, n);
    }
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("shackled_cli_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    fs::path write(const std::string& name, const std::string& text) const {
        std::ofstream(path / name, std::ios::binary) << text;
        return path / name;
    }
};

std::uint64_t gas_of(const std::string& out) {
    const auto at = out.find("gas=");
    REQUIRE(at != std::string::npos);
    return std::stoull(out.substr(at + 4));
}

}  // namespace

TEST_CASE("render writes the same bytes as the service and prints the receipt") {
    TempDir tmp;
    const SceneDocument doc = presets::first_render();
    const fs::path scene = tmp.write("scene.json", scene_to_json(doc));
    const Run r = run("render --scene " + scene.string() + " -o " + (tmp.path / "out.bmp").string());
    CHECK(r.code == 0);
    CHECK(gas_of(r.out) == metered_render(doc, CostTable{}).receipt.total);
    const service::Response svc = service::handle_render(scene_to_json(doc), std::nullopt, service::Config{});
    CHECK(slurp(tmp.path / "out.bmp") == svc.body);

    const Run est = run("estimate --scene " + scene.string());
    CHECK(est.code == 0);
    CHECK(gas_of(est.out) == gas_of(r.out));
    CHECK(run("estimate --scene " + scene.string()).out == est.out);
}

TEST_CASE("render flags and OBJ input") {
    TempDir tmp;
    const fs::path obj = tmp.write("cube.obj", write_obj(presets::cube(Fx::from_double(0.5))));
    const fs::path out = tmp.path / "o.bmp";
    const Run r = run("render --obj " + obj.string() + " --canvas 32 --camera orthographic --no-cull --wireframe -o " + out.string());
    CHECK(r.code == 0);

    SceneDocument expected;
    expected.mesh = presets::cube(Fx::from_double(0.5));
    expected.settings.canvas_size = 32;
    expected.settings.camera.model = CameraModel::Orthographic;
    expected.settings.backface_culling = false;
    expected.settings.wireframe_only = true;
    const auto bmp = render_bmp(expected);
    CHECK(slurp(out) == std::string(bmp.begin(), bmp.end()));
}

TEST_CASE("empty mesh with a unicolour background renders pure background") {
    TempDir tmp;
    SceneDocument doc;
    doc.settings.canvas_size = 4;
    doc.settings.background.mode = BackgroundMode::Unicolor;
    doc.settings.background.color_top = {1, 2, 3};
    const fs::path scene = tmp.write("empty.json", scene_to_json(doc));
    CHECK(run("render --scene " + scene.string() + " -o " + (tmp.path / "e.bmp").string()).code == 0);
    ImageBuffer bg(4);
    for (ColorRGB& c : bg.pixels) {
        c = {1, 2, 3};
    }
    const auto bmp = encode_bmp(bg);
    CHECK(slurp(tmp.path / "e.bmp") == std::string(bmp.begin(), bmp.end()));
}

TEST_CASE("exit codes") {
    TempDir tmp;
    const fs::path scene = tmp.write("scene.json", scene_to_json(presets::first_render()));
    const fs::path out = tmp.path / "x.bmp";
    CHECK(run("render --scene " + scene.string() + " --budget 1 -o " + out.string()).code == 2);
    CHECK(run("render --scene " + tmp.write("bad.json", "{").string() + " -o " + out.string()).code == 1);
    SceneDocument invalid = presets::first_render();
    invalid.mesh.faces[0][0] = 42;
    CHECK(run("render --scene " + tmp.write("inv.json", scene_to_json(invalid)).string() + " -o " + out.string()).code == 1);
    CHECK(run("render --obj " + tmp.write("q.obj", "v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nf 1 2 3 4\n").string() + " -o " +
              out.string())
              .code == 1);
    CHECK(run("render --scene /nonexistent.json -o " + out.string()).code == 1);
    CHECK(run("bogus").code == 1);
}

TEST_CASE("estimate grows with the triangle count") {
    TempDir tmp;
    const fs::path one = tmp.write("one.json", scene_to_json(triangle_grid_scene(SceneDocument{}, 1)));
    const fs::path many = tmp.write("many.json", scene_to_json(triangle_grid_scene(SceneDocument{}, 16)));
    CHECK(gas_of(run("estimate --scene " + many.string()).out) > gas_of(run("estimate --scene " + one.string()).out));
}

TEST_CASE("bench writes CSV and a summary") {
    TempDir tmp;
    const fs::path csv = tmp.path / "t.csv";
    const Run r = run("bench --kind triangles -o " + csv.string());
    CHECK(r.code == 0);
    CHECK(r.out.find("intercept=") != std::string::npos);
    CHECK(slurp(csv) == to_csv(bench_sweep(SweepKind::Triangles, SceneDocument{}, CostTable{})));

    const Run c = run("bench --kind culling -o " + (tmp.path / "c.csv").string());
    CHECK(c.code == 0);
    CHECK(c.out.find("ratio=") != std::string::npos);
}

TEST_CASE("genesis writes one scene per index") {
    TempDir tmp;
    const Run r = run("genesis --seed 0xabc --count 3 --out-dir " + tmp.path.string());
    CHECK(r.code == 0);
    for (int i = 0; i < 3; ++i) {
        const fs::path p = tmp.path / ("genesis_" + std::to_string(i) + ".json");
        REQUIRE(fs::exists(p));
        CHECK(scene_from_json(slurp(p)).mesh.faces.size() % 7 == 0);
    }
    CHECK(run("genesis --seed xyz --out-dir " + tmp.path.string()).code == 1);
}
