#pragma once

#include <map>
#include <string>

#include "httplib.h"
#include "toggled/hint_service.hpp"

namespace toggled::service {

/// Serves the session API on `server`. A non-empty allow_origin enables CORS
/// for that origin ("*" for any).
inline void mount(httplib::Server& server, SessionStore& store, std::string allow_origin = {}) {
    auto handler = [&store, allow_origin](const httplib::Request& req, httplib::Response& res) {
        std::map<std::string, std::string> query;
        for (const auto& [k, v] : req.params) query.emplace(k, v);
        auto out = route(store, req.method, req.path, query, req.body);
        res.status = out.status;
        res.set_content(out.body.dump(), "application/json");
    };
    server.Get(R"(/.*)", handler);
    server.Post(R"(/.*)", handler);
    server.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
    if (!allow_origin.empty()) {
        server.set_default_headers({{"Access-Control-Allow-Origin", allow_origin},
                                    {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                                    {"Access-Control-Allow-Headers", "Content-Type"}});
    }
}

}  // namespace toggled::service
