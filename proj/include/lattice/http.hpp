#pragma once

#include "lattice/service.hpp"

#include <httplib.h>

#include <string>

namespace lattice {

struct ServerConfig {
    std::string census_path = "census.json";
};

inline void send(httplib::Response& res, const ApiResponse& r) {
    res.status = r.status;
    res.set_content(r.body, r.content_type.c_str());
}

inline void install_routes(httplib::Server& server, const ServerConfig& config) {
    // the library default sets SO_REUSEPORT, which would let a second server
    // share a busy port instead of failing to bind
    server.set_socket_options([](socket_t sock) {
        int yes = 1;
        setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const void*>(&yes), sizeof(yes));
    });
    server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                                {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                                {"Access-Control-Allow-Headers", "Content-Type"}});
    server.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
    server.Post("/classify", [](const httplib::Request& req, httplib::Response& res) { send(res, handle_classify(req.body)); });
    server.Get("/quadruples", [](const httplib::Request& req, httplib::Response& res) {
        std::optional<std::string> point;
        if (req.has_param("point")) point = req.get_param_value("point");
        send(res, handle_quadruples(point));
    });
    server.Post("/witness", [](const httplib::Request& req, httplib::Response& res) { send(res, handle_witness(req.body)); });
    server.Get("/census/summary", [path = config.census_path](const httplib::Request&, httplib::Response& res) {
        send(res, handle_census_summary(path));
    });
    server.Get("/healthz", [](const httplib::Request&, httplib::Response& res) { send(res, handle_healthz()); });
}

}  // namespace lattice
