#include <doctest.h>

#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "shackled/pipeline.hpp"
#include "shackled/presets.hpp"
#include "shackled/service.hpp"

using namespace shackled;
using namespace shackled::service;
using nlohmann::json;

namespace {

std::string bmp_string(const SceneDocument& doc) {
    const auto b = render_bmp(doc);
    return {b.begin(), b.end()};
}

}  // namespace

TEST_CASE("render handler") {
    const Config cfg;
    const SceneDocument doc = presets::first_render();
    const Response ok = handle_render(scene_to_json(doc), std::nullopt, cfg);
    CHECK(ok.status == 200);
    CHECK(ok.content_type == "image/bmp");
    CHECK(ok.body == bmp_string(doc));
    REQUIRE(ok.gas.has_value());
    CHECK(*ok.gas == metered_render(doc, cfg.costs).receipt.total);

    const Response bad = handle_render("{not json", std::nullopt, cfg);
    CHECK(bad.status == 400);
    CHECK(json::parse(bad.body)["violations"].size() == 1);

    SceneDocument invalid = doc;
    invalid.mesh.faces[1][2] = 99;
    invalid.settings.canvas_size = 0;
    const Response v = handle_render(scene_to_json(invalid), std::nullopt, cfg);
    CHECK(v.status == 400);
    const json list = json::parse(v.body)["violations"];
    REQUIRE(list.size() == 2);
    CHECK(list[0]["field"].is_string());
    CHECK(list[0]["message"].is_string());

    const Response poor = handle_render(scene_to_json(doc), "1", cfg);
    CHECK(poor.status == 422);
    const json oog = json::parse(poor.body);
    CHECK(oog["budget"] == 1);
    CHECK(oog["gas_used"] == 0);
    CHECK(oog["stage"] == "base");

    CHECK(handle_render(scene_to_json(doc), "abc", cfg).status == 400);
    CHECK(handle_render(scene_to_json(doc), "0", cfg).status == 400);
    CHECK(handle_render(scene_to_json(doc), std::to_string(*ok.gas), cfg).status == 200);
    CHECK(handle_render(scene_to_json(doc), std::to_string(*ok.gas - 1), cfg).status == 422);

    Config small;
    small.max_body_bytes = 16;
    CHECK(handle_render(scene_to_json(doc), std::nullopt, small).status == 413);
}

TEST_CASE("estimate and health handlers") {
    const Config cfg;
    const SceneDocument doc = presets::cube_scene();
    const Response r = handle_estimate(scene_to_json(doc), cfg);
    CHECK(r.status == 200);
    CHECK(json::parse(r.body)["gas"] == estimate_gas(doc, cfg.costs));
    CHECK(handle_estimate("[]", cfg).status == 400);
    CHECK(handle_health().body == "ok");
}

TEST_CASE("responses do not depend on request order") {
    const Config cfg;
    const std::string a = scene_to_json(presets::first_render());
    const std::string b = scene_to_json(presets::cube_scene());
    const Response a1 = handle_render(a, std::nullopt, cfg);
    handle_render(b, std::nullopt, cfg);
    handle_render("{}", std::nullopt, cfg);
    const Response a2 = handle_render(a, std::nullopt, cfg);
    CHECK(a1.body == a2.body);
    CHECK(a1.gas == a2.gas);
}

TEST_CASE("live server over a socket") {
    Config cfg;
    cfg.host = "127.0.0.1";
    cfg.port = 0;
    cfg.max_body_bytes = 64 * 1024;
    Server server(cfg);
    const int port = server.bind();
    REQUIRE(port > 0);
    std::thread worker([&] { server.serve(); });
    server.wait_until_ready();

    httplib::Client client("127.0.0.1", port);
    const SceneDocument doc = presets::first_render();
    const std::string body = scene_to_json(doc);

    auto health = client.Get("/health");
    REQUIRE(health);
    CHECK(health->status == 200);
    CHECK(health->body == "ok");
    CHECK(health->get_header_value("Access-Control-Allow-Origin") == "*");

    auto render = client.Post("/render", body, "application/json");
    REQUIRE(render);
    CHECK(render->status == 200);
    CHECK(render->get_header_value("Content-Type") == "image/bmp");
    CHECK(render->body == bmp_string(doc));
    CHECK(render->get_header_value("X-Gas") == std::to_string(metered_render(doc, cfg.costs).receipt.total));
    CHECK(render->get_header_value("Access-Control-Allow-Origin") == "*");

    auto poor = client.Post("/render?budget=5", body, "application/json");
    REQUIRE(poor);
    CHECK(poor->status == 422);

    auto estimate = client.Post("/estimate", body, "application/json");
    REQUIRE(estimate);
    CHECK(estimate->status == 200);
    CHECK(json::parse(estimate->body)["gas"] == estimate_gas(doc, cfg.costs));

    auto malformed = client.Post("/render", "{oops", "application/json");
    REQUIRE(malformed);
    CHECK(malformed->status == 400);
    CHECK(malformed->get_header_value("Access-Control-Allow-Origin") == "*");

    auto huge = client.Post("/render", std::string(cfg.max_body_bytes + 1, ' '), "application/json");
    REQUIRE(huge);
    CHECK(huge->status == 413);

    auto preflight = client.Options("/render");
    REQUIRE(preflight);
    CHECK(preflight->status == 204);
    CHECK(preflight->get_header_value("Access-Control-Allow-Methods").find("POST") != std::string::npos);

    server.stop();
    worker.join();
}
