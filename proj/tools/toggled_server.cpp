#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "toggled/http.hpp"

using toggled::service::SessionStore;

int main(int argc, char** argv) {
    CLI::App app{"Lights Out hint service", "toggled_server"};
    std::string addr = "127.0.0.1";
    int port = 8080;
    std::string allow_origin;
    std::string snapshot;
    toggled::service::ServiceConfig config;
    app.add_option("--addr", addr, "Listen address");
    app.add_option("--port", port, "Listen port")->check(CLI::Range(0, 65535));
    app.add_option("--allow-origin", allow_origin, "CORS origin for the playground ('*' for any)");
    app.add_option("--snapshot", snapshot, "Session snapshot file: loaded at startup, written on shutdown");
    app.add_option("--max-n", config.max_vertices, "Largest graph a session may use");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        config.inductive = toggled::limits_from_env();
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    SessionStore store(config);
    if (!snapshot.empty() && std::filesystem::exists(snapshot)) {
        try {
            std::ifstream f(snapshot);
            store.load(nlohmann::json::parse(f));
            std::cerr << "loaded " << store.ids().size() << " sessions from " << snapshot << '\n';
        } catch (const std::exception& e) {
            std::cerr << "error: cannot load snapshot " << snapshot << ": " << e.what() << '\n';
            return 1;
        }
    }

    httplib::Server server;
    toggled::service::mount(server, store, allow_origin);

    // SIGINT / SIGTERM stop the server from a dedicated thread
    sigset_t signals;
    sigemptyset(&signals);
    sigaddset(&signals, SIGINT);
    sigaddset(&signals, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &signals, nullptr);
    std::thread waiter([&] {
        int sig = 0;
        sigwait(&signals, &sig);
        server.stop();
    });
    waiter.detach();

    std::cerr << "listening on http://" << addr << ':' << port << '\n';
    if (!server.listen(addr, port)) {
        std::cerr << "error: cannot listen on " << addr << ':' << port << '\n';
        return 1;
    }

    if (!snapshot.empty()) {
        std::ofstream f(snapshot);
        f << store.snapshot().dump(2) << '\n';
        std::cerr << "wrote " << store.ids().size() << " sessions to " << snapshot << '\n';
    }
    return 0;
}
