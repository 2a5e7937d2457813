#include "shackled/service.hpp"

#include <charconv>

#include <httplib.h>
#include <json.hpp>

#include "shackled/pipeline.hpp"

namespace shackled::service {

namespace {

using nlohmann::json;

Response json_response(int status, const json& body) { return {status, "application/json", body.dump(), std::nullopt}; }

Response violations_response(const std::vector<Violation>& violations) {
    json list = json::array();
    for (const Violation& v : violations) {
        list.push_back({{"field", v.field}, {"message", v.message}});
    }
    return json_response(400, {{"violations", list}});
}

Response too_large(const Config& config) {
    return json_response(413, {{"error", "request body exceeds " + std::to_string(config.max_body_bytes) + " bytes"}});
}

// Parses and validates; on failure `error` holds the 400 response.
std::optional<SceneDocument> load(std::string_view body, Response& error) {
    SceneDocument doc;
    try {
        doc = scene_from_json(body);
    } catch (const SchemaError& e) {
        error = violations_response({{e.path(), e.what()}});
        return std::nullopt;
    }
    if (auto problems = validate(doc); !problems.empty()) {
        error = violations_response(problems);
        return std::nullopt;
    }
    return doc;
}

void apply(const Response& r, httplib::Response& res) {
    res.status = r.status;
    if (r.gas) {
        res.set_header("X-Gas", std::to_string(*r.gas));
    }
    res.set_content(r.body, r.content_type);
}

}  // namespace

Response handle_render(std::string_view body, std::optional<std::string_view> budget, const Config& config) {
    if (body.size() > config.max_body_bytes) {
        return too_large(config);
    }
    std::optional<Budget> limit;
    if (budget) {
        std::uint64_t value = 0;
        const auto [ptr, ec] = std::from_chars(budget->data(), budget->data() + budget->size(), value);
        if (ec != std::errc{} || ptr != budget->data() + budget->size() || value == 0) {
            return violations_response({{"budget", "budget must be a positive integer"}});
        }
        limit = Budget{value};
    }
    Response error;
    const auto doc = load(body, error);
    if (!doc) {
        return error;
    }
    try {
        const MeteredRender r = metered_render(*doc, config.costs, limit);
        const std::vector<std::uint8_t> bmp = encode_bmp(r.image);
        return {200, "image/bmp", std::string(bmp.begin(), bmp.end()), r.receipt.total};
    } catch (const OutOfGas& e) {
        return json_response(422, {{"error", "out of gas"},
                                   {"budget", e.limit()},
                                   {"gas_used", e.receipt().total},
                                   {"stage", std::string(to_string(e.stage()))}});
    } catch (const FxError& e) {
        return violations_response({{"document", e.what()}});
    }
}

Response handle_estimate(std::string_view body, const Config& config) {
    if (body.size() > config.max_body_bytes) {
        return too_large(config);
    }
    Response error;
    const auto doc = load(body, error);
    if (!doc) {
        return error;
    }
    try {
        const std::uint64_t gas = estimate_gas(*doc, config.costs);
        Response r = json_response(200, {{"gas", gas}});
        r.gas = gas;
        return r;
    } catch (const FxError& e) {
        return violations_response({{"document", e.what()}});
    }
}

Response handle_health() { return {200, "text/plain", "ok", std::nullopt}; }

struct Server::Impl {
    Config config;
    httplib::Server http;
    bool bound = false;
};

Server::Server(Config config) : impl_(std::make_unique<Impl>()) {
    impl_->config = std::move(config);
    httplib::Server& http = impl_->http;
    const Config& cfg = impl_->config;

    http.set_payload_max_length(cfg.max_body_bytes);
    http.set_default_headers({
        {"Access-Control-Allow-Origin", "*"},
        {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
        {"Access-Control-Allow-Headers", "Content-Type"},
        {"Access-Control-Expose-Headers", "X-Gas"},
    });
    http.Post("/render", [&cfg](const httplib::Request& req, httplib::Response& res) {
        if (req.has_param("budget")) {
            const std::string budget = req.get_param_value("budget");
            apply(handle_render(req.body, budget, cfg), res);
        } else {
            apply(handle_render(req.body, std::nullopt, cfg), res);
        }
    });
    http.Post("/estimate", [&cfg](const httplib::Request& req, httplib::Response& res) {
        apply(handle_estimate(req.body, cfg), res);
    });
    http.Get("/health", [](const httplib::Request&, httplib::Response& res) { apply(handle_health(), res); });
    http.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
    http.set_exception_handler([](const httplib::Request&, httplib::Response& res, const std::exception_ptr& ep) {
        std::string message = "internal error";
        try {
            std::rethrow_exception(ep);
        } catch (const std::exception& e) {
            message = e.what();
        } catch (...) {
        }
        res.status = 500;
        res.set_content(json{{"error", message}}.dump(), "application/json");
    });
}

Server::~Server() { stop(); }

int Server::bind() {
    const Config& cfg = impl_->config;
    int port = -1;
    if (cfg.port == 0) {
        port = impl_->http.bind_to_any_port(cfg.host);
    } else if (impl_->http.bind_to_port(cfg.host, cfg.port)) {
        port = cfg.port;
    }
    impl_->bound = port > 0;
    return port;
}

bool Server::serve() { return impl_->bound && impl_->http.listen_after_bind(); }

void Server::stop() {
    if (impl_ && impl_->http.is_running()) {
        impl_->http.stop();
    }
}

void Server::wait_until_ready() const { impl_->http.wait_until_ready(); }

bool run(const Config& config) {
    Server server(config);
    return server.bind() > 0 && server.serve();
}

}  // namespace shackled::service
