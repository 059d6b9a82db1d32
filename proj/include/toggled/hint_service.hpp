#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <shared_mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <unordered_map>
#include <utility>
#include <vector>

#include "json.hpp"
#include "toggled/generators.hpp"
#include "toggled/gf2.hpp"
#include "toggled/graph.hpp"
#include "toggled/inductive.hpp"
#include "toggled/io.hpp"
#include "toggled/lights.hpp"

namespace toggled::service {

using nlohmann::json;

/// Error carrying the HTTP status it maps to.
class ServiceError : public std::runtime_error {
public:
    ServiceError(int status, const std::string& message) : std::runtime_error(message), status_(status) {}
    int status() const noexcept { return status_; }

private:
    int status_;
};

struct ServiceConfig {
    std::size_t max_vertices = 10'000;
    InductiveLimits inductive = {};
    /// Cached solutions are weight-minimised when the nullity is at most this.
    std::size_t min_weight_nullity = 16;
};

struct Session {
    std::string id;
    Graph graph;
    Configuration initial;
    Configuration current;
    Configuration goal;
    /// When present: apply_press_set(current, graph, *cached_solution) == goal.
    std::optional<PressSet> cached_solution;
    std::vector<std::size_t> history;
    std::uint64_t seed = 0;
    bool solvable = false;

    bool solved() const { return current == goal; }
};

inline json session_view(const Session& s) {
    json edges = json::array();
    for (auto [a, b] : s.graph.edges()) edges.push_back({a, b});
    return {{"id", s.id},
            {"n", s.graph.size()},
            {"edges", std::move(edges)},
            {"initial", s.initial.to_string()},
            {"current", s.current.to_string()},
            {"goal", s.goal.to_string()},
            {"moves", s.history.size()},
            {"history", s.history},
            {"solved", s.solved()},
            {"solvable", s.solvable}};
}

/// In-memory sessions. Distinct sessions proceed in parallel; operations on
/// one session are serialised by its own mutex.
class SessionStore {
public:
    explicit SessionStore(ServiceConfig config = {}, std::uint64_t id_seed = std::random_device{}())
        : config_(std::move(config)), id_rng_(id_seed) {}

    const ServiceConfig& config() const noexcept { return config_; }

    json create(const json& body) {
        if (!body.is_object()) throw ServiceError(400, "request body must be a JSON object");
        Session s;
        s.graph = graph_from_request(body);
        if (s.graph.size() > config_.max_vertices) {
            throw ServiceError(422, "graph has " + std::to_string(s.graph.size()) +
                                        " vertices, service cap is " + std::to_string(config_.max_vertices));
        }
        const auto n = s.graph.size();
        s.seed = body.contains("seed") ? require_uint(body, "seed") : fresh_seed();

        auto initial = body.value("initial", json(std::string(n, '0')));
        if (!initial.is_string()) throw ServiceError(400, "\"initial\" must be a string");
        if (initial.get<std::string>() == "random") {
            std::mt19937_64 rng(s.seed);
            s.initial = Configuration(n);
            for (std::size_t v = 0; v < n; ++v) s.initial.assign(v, rng() & 1u);
        } else {
            s.initial = configuration(initial.get<std::string>(), n, "initial");
        }
        s.current = s.initial;

        auto goal = body.value("goal", json("complement"));
        if (!goal.is_string()) throw ServiceError(400, "\"goal\" must be a string");
        s.goal = goal.get<std::string>() == "complement" ? complement(s.initial)
                                                          : configuration(goal.get<std::string>(), n, "goal");

        auto outcome = solve_transition(s.graph, s.current, s.goal);
        s.solvable = outcome.has_value();
        if (outcome) s.cached_solution = pick_solution(*outcome);

        json view = session_view(s);
        if (s.cached_solution) view["solution"] = s.cached_solution->indices();

        auto slot = std::make_shared<Slot>();
        {
            std::unique_lock lock(map_mutex_);
            do {
                s.id = next_id();
            } while (sessions_.contains(s.id));
            view["id"] = s.id;
            slot->session = std::move(s);
            sessions_.emplace(slot->session.id, slot);
        }
        return view;
    }

    json get(const std::string& id) {
        return with_session(id, [](Session& s) { return session_view(s); });
    }

    json press(const std::string& id, const json& body) {
        if (!body.is_object() || !body.contains("vertex"))
            throw ServiceError(400, "request body must be {\"vertex\": <index>}");
        auto v = require_uint(body, "vertex");
        return with_session(id, [&](Session& s) {
            if (v >= s.graph.size())
                throw ServiceError(400, "vertex " + std::to_string(v) + " out of range [0, " +
                                            std::to_string(s.graph.size()) + ")");
            apply_press(s, v);
            s.history.push_back(v);
            return session_view(s);
        });
    }

    json hint(const std::string& id) {
        return with_session(id, [&](Session& s) -> json {
            if (s.solved()) return {{"status", "already_solved"}};
            if (!ensure_solution(s)) return {{"status", "unsolvable"}};
            return {{"status", "hint"}, {"vertex", s.cached_solution->find_first()},
                    {"remaining", s.cached_solution->count()}};
        });
    }

    json solution(const std::string& id, const std::string& method) {
        if (method != "gf2" && method != "inductive")
            throw ServiceError(400, "method must be gf2 or inductive, got '" + method + "'");
        return with_session(id, [&](Session& s) -> json {
            auto reply = [&](const PressSet& set) {
                return json{{"status", "ok"},
                            {"method", method},
                            {"press_set", set.indices()},
                            {"bits", set.to_string()},
                            {"weight", set.count()}};
            };
            if (s.solved()) {
                auto r = reply(PressSet(s.graph.size()));
                if (method == "inductive") r["trace"] = json::array();
                return r;
            }
            if (method == "gf2") {
                if (!ensure_solution(s)) return {{"status", "unsolvable"}, {"method", method}};
                return reply(*s.cached_solution);
            }
            if (s.goal != complement(s.current))
                throw ServiceError(409, "inductive method only reaches the complement of the current configuration");
            InductiveResult result;
            try {
                result = InductiveSolver(s.graph, config_.inductive).complementing_set();
            } catch (const CapExceeded& e) {
                throw ServiceError(422, e.what());
            }
            auto r = reply(result.press_set);
            r["trace"] = result.trace.to_json();
            return r;
        });
    }

    json scramble(const std::string& id, const json& body) {
        if (!body.is_object() || !body.contains("k")) throw ServiceError(400, "request body must be {\"k\": <count>}");
        auto k = require_uint(body, "k");
        std::optional<std::uint64_t> seed;
        if (body.contains("seed")) seed = require_uint(body, "seed");
        return with_session(id, [&](Session& s) {
            std::mt19937_64 rng(seed.value_or(s.seed));
            if (!seed) s.seed = rng();
            if (s.graph.size() > 0)
                for (std::uint64_t i = 0; i < k; ++i)
                    apply_press(s, static_cast<std::size_t>(gen::uniform_below(rng, s.graph.size())));
            return session_view(s);
        });
    }

    json reset(const std::string& id) {
        return with_session(id, [](Session& s) {
            s.current = s.initial;
            s.history.clear();
            s.cached_solution.reset();
            return session_view(s);
        });
    }

    /// Copy of a session's state; mainly for tests and snapshots.
    Session inspect(const std::string& id) {
        return with_session(id, [](Session& s) { return s; });
    }

    std::vector<std::string> ids() const {
        std::shared_lock lock(map_mutex_);
        std::vector<std::string> out;
        for (const auto& [id, slot] : sessions_) out.push_back(id);
        return out;
    }

    json snapshot() const {
        std::vector<std::shared_ptr<Slot>> slots;
        {
            std::shared_lock lock(map_mutex_);
            for (const auto& [id, slot] : sessions_) slots.push_back(slot);
        }
        json out = json::array();
        for (const auto& slot : slots) {
            std::lock_guard lock(slot->mutex);
            const auto& s = slot->session;
            out.push_back({{"id", s.id},
                           {"graph", to_json(s.graph)},
                           {"initial", s.initial.to_string()},
                           {"current", s.current.to_string()},
                           {"goal", s.goal.to_string()},
                           {"cached_solution", s.cached_solution ? json(s.cached_solution->to_string()) : json()},
                           {"history", s.history},
                           {"seed", s.seed},
                           {"solvable", s.solvable}});
        }
        return out;
    }

    /// Restores sessions written by snapshot(); existing ids are replaced.
    void load(const json& sessions) {
        if (!sessions.is_array()) throw ServiceError(400, "snapshot must be a JSON array");
        for (const auto& j : sessions) {
            Session s;
            try {
                s.id = j.at("id").get<std::string>();
                s.graph = parse_graph(j.at("graph").dump());
                const auto n = s.graph.size();
                s.initial = parse_configuration(j.at("initial").get<std::string>(), n);
                s.current = parse_configuration(j.at("current").get<std::string>(), n);
                s.goal = parse_configuration(j.at("goal").get<std::string>(), n);
                s.history = j.at("history").get<std::vector<std::size_t>>();
                s.seed = j.at("seed").get<std::uint64_t>();
                s.solvable = j.at("solvable").get<bool>();
                if (const auto& c = j.at("cached_solution"); !c.is_null()) {
                    auto cached = bits_cast<PressSet>(parse_configuration(c.get<std::string>(), n));
                    if (apply_press_set(s.current, s.graph, cached) == s.goal) s.cached_solution = cached;
                }
            } catch (const ServiceError&) {
                throw;
            } catch (const std::exception& e) {
                throw ServiceError(400, std::string("bad snapshot entry: ") + e.what());
            }
            auto slot = std::make_shared<Slot>();
            slot->session = std::move(s);
            std::unique_lock lock(map_mutex_);
            sessions_[slot->session.id] = slot;
        }
    }

private:
    struct Slot {
        std::mutex mutex;
        Session session;
    };

    template <class Fn>
    std::invoke_result_t<Fn, Session&> with_session(const std::string& id, Fn&& fn) {
        std::shared_ptr<Slot> slot;
        {
            std::shared_lock lock(map_mutex_);
            auto it = sessions_.find(id);
            if (it == sessions_.end()) throw ServiceError(404, "unknown session '" + id + "'");
            slot = it->second;
        }
        std::lock_guard lock(slot->mutex);
        return fn(slot->session);
    }

    // Pressing v shifts the remaining press-set by {v}; the cache stays valid.
    static void apply_press(Session& s, std::size_t v) {
        s.current = toggled::press(s.current, s.graph, v);
        if (s.cached_solution) s.cached_solution->flip(v);
    }

    PressSet pick_solution(const SolveOutcome& outcome) const {
        if (outcome.nullity() <= config_.min_weight_nullity) return min_weight_solution(outcome, config_.min_weight_nullity);
        return outcome.particular;
    }

    bool ensure_solution(Session& s) const {
        if (s.cached_solution) return true;
        // reachability of the goal never changes under presses
        if (!s.solvable) return false;
        auto outcome = solve_transition(s.graph, s.current, s.goal);
        if (!outcome) return false;
        s.cached_solution = pick_solution(*outcome);
        return true;
    }

    static std::uint64_t require_uint(const json& body, const char* key) {
        const auto& v = body.at(key);
        if (v.is_number_unsigned()) return v.get<std::uint64_t>();
        if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(v.get<std::int64_t>());
        throw ServiceError(400, std::string("\"") + key + "\" must be a non-negative integer");
    }

    static Configuration configuration(const std::string& bits, std::size_t n, const char* what) {
        try {
            return parse_configuration(bits, n);
        } catch (const ParseError& e) {
            throw ServiceError(400, std::string(what) + ": " + e.what());
        }
    }

    static Graph graph_from_request(const json& body) {
        try {
            if (body.contains("graph")) {
                const auto& g = body["graph"];
                return parse_graph(g.is_string() ? g.get<std::string>() : g.dump());
            }
            if (body.contains("generate")) {
                const auto& p = body["generate"];
                if (!p.is_object()) throw ServiceError(400, "\"generate\" must be an object");
                gen::Params params;
                params.kind = p.at("kind").get<std::string>();
                params.n = p.value("n", std::size_t{0});
                params.rows = p.value("rows", std::size_t{0});
                params.cols = p.value("cols", std::size_t{0});
                params.p = p.value("p", 0.0);
                if (p.contains("seed")) params.seed = p["seed"].get<std::uint64_t>();
                return gen::generate(params);
            }
        } catch (const ServiceError&) {
            throw;
        } catch (const std::exception& e) {
            throw ServiceError(400, e.what());
        }
        throw ServiceError(400, "request needs either \"graph\" or \"generate\"");
    }

    std::uint64_t fresh_seed() {
        std::lock_guard lock(id_mutex_);
        return id_rng_();
    }

    std::string next_id() {
        std::lock_guard lock(id_mutex_);
        std::ostringstream os;
        os << std::hex << id_rng_();
        return os.str();
    }

    ServiceConfig config_;
    mutable std::shared_mutex map_mutex_;
    std::unordered_map<std::string, std::shared_ptr<Slot>> sessions_;
    std::mutex id_mutex_;
    std::mt19937_64 id_rng_;
};

struct Response {
    int status = 200;
    json body;
};

/// Transport-independent dispatch of the HTTP API.
///
///   POST /sessions                       create
///   GET  /sessions/{id}                  state
///   POST /sessions/{id}/press            {"vertex": v}
///   GET  /sessions/{id}/hint
///   GET  /sessions/{id}/solution?method=gf2|inductive
///   POST /sessions/{id}/scramble         {"k": k, "seed": s?}
///   POST /sessions/{id}/reset
inline Response route(SessionStore& store, std::string_view method, std::string_view path,
                      const std::map<std::string, std::string>& query, std::string_view body) {
    auto parse_body = [&]() -> json {
        if (body.empty()) return json::object();
        try {
            return json::parse(body);
        } catch (const json::parse_error& e) {
            throw ServiceError(400, std::string("malformed JSON body: ") + e.what());
        }
    };
    std::vector<std::string> parts;
    for (std::size_t pos = 0; pos < path.size();) {
        auto next = path.find('/', pos);
        if (next == std::string_view::npos) next = path.size();
        if (next > pos) parts.emplace_back(path.substr(pos, next - pos));
        pos = next + 1;
    }
    try {
        if (parts.empty() || parts[0] != "sessions") throw ServiceError(404, "no such endpoint");
        if (parts.size() == 1 && method == "POST") return {201, store.create(parse_body())};
        if (parts.size() == 2 && method == "GET") return {200, store.get(parts[1])};
        if (parts.size() == 3) {
            const auto& id = parts[1];
            const auto& action = parts[2];
            if (method == "POST" && action == "press") return {200, store.press(id, parse_body())};
            if (method == "GET" && action == "hint") return {200, store.hint(id)};
            if (method == "GET" && action == "solution") {
                auto it = query.find("method");
                return {200, store.solution(id, it == query.end() ? "gf2" : it->second)};
            }
            if (method == "POST" && action == "scramble") return {200, store.scramble(id, parse_body())};
            if (method == "POST" && action == "reset") return {200, store.reset(id)};
        }
        throw ServiceError(404, "no such endpoint: " + std::string(method) + " " + std::string(path));
    } catch (const ServiceError& e) {
        return {e.status(), {{"error", e.what()}}};
    } catch (const json::exception& e) {
        return {400, {{"error", e.what()}}};
    }
}

}  // namespace toggled::service
