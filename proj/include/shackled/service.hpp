#pragma once

// HTTP render service.
//
//   POST /render[?budget=G]   scene JSON -> image/bmp
//   POST /estimate            scene JSON -> {"gas": n}
//   GET  /health              -> "ok"
//
// Every response carries permissive CORS headers. Invalid documents get 400
// with {"violations": [{"field": ..., "message": ...}]}, bodies over the size
// limit 413, and renders that exhaust the budget 422.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "shackled/gasmeter.hpp"

namespace shackled::service {

inline constexpr std::size_t kDefaultMaxBodyBytes = 8'388'608;
inline constexpr int kDefaultPort = 8080;

struct Config {
    std::string host = "0.0.0.0";
    int port = kDefaultPort;
    std::size_t max_body_bytes = kDefaultMaxBodyBytes;
    CostTable costs;
};

struct Response {
    int status = 200;
    std::string content_type;
    std::string body;
    std::optional<std::uint64_t> gas;  // sent as X-Gas when set
};

/// Transport-free request handling, shared by the socket server and tests.
/// `budget` is the raw ?budget= query value, if any.
Response handle_render(std::string_view body, std::optional<std::string_view> budget, const Config& config);
Response handle_estimate(std::string_view body, const Config& config);
Response handle_health();

class Server {
public:
    explicit Server(Config config);
    ~Server();
    Server(const Server&) = delete;
    Server& operator=(const Server&) = delete;

    /// Binds the socket; port 0 picks a free one. Returns the bound port,
    /// or -1 on failure.
    int bind();
    /// Serves until stop() is called. Returns false if not bound.
    bool serve();
    void stop();
    void wait_until_ready() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// bind() + serve() on the configured port.
bool run(const Config& config);

}  // namespace shackled::service
