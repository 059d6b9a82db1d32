#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "toggled/bits.hpp"
#include "toggled/gf2.hpp"
#include "toggled/graph.hpp"

namespace toggled {

/// Subset of the root graph's vertices, bit v = vertex v.
using VertexMask = std::uint64_t;

inline constexpr std::size_t max_inductive_vertices = 64;

struct InductiveLimits {
    std::size_t max_vertices = 24;
    std::size_t memo_budget = std::size_t{1} << 20;
    bool record_trace = true;
};

/// Reads TOGGLED_MAX_N, falling back to the default cap.
inline InductiveLimits limits_from_env() {
    InductiveLimits limits;
    if (const char* env = std::getenv("TOGGLED_MAX_N"); env != nullptr && *env != '\0') {
        char* end = nullptr;
        auto v = std::strtoull(env, &end, 10);
        if (*end != '\0' || v > max_inductive_vertices)
            throw std::invalid_argument("TOGGLED_MAX_N must be an integer in [0, 64], got '" +
                                        std::string(env) + "'");
        limits.max_vertices = static_cast<std::size_t>(v);
    }
    return limits;
}

class MemoBudgetExceeded : public CapExceeded {
public:
    using CapExceeded::CapExceeded;
};

enum class TraceKind { base_case, memo_hit, enter, short_circuit, pair, press_all, exit };

inline const char* to_string(TraceKind k) {
    switch (k) {
        case TraceKind::base_case: return "base-case";
        case TraceKind::memo_hit: return "memo-hit";
        case TraceKind::enter: return "recursion-enter";
        case TraceKind::short_circuit: return "short-circuit";
        case TraceKind::pair: return "pair";
        case TraceKind::press_all: return "press-all";
        case TraceKind::exit: return "recursion-exit";
    }
    return "?";
}

/// One proof step. `mask` is the vertex set of the induced subgraph the step
/// belongs to; `set` carries the press-set the step produced, where one exists.
struct TraceEvent {
    TraceKind kind;
    std::size_t depth = 0;
    VertexMask mask = 0;
    VertexMask set = 0;
    std::size_t a = 0;
    std::size_t b = 0;

    friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

inline PressSet mask_to_press_set(VertexMask m, std::size_t n) {
    PressSet s(n);
    for (; m != 0; m &= m - 1) s.set(static_cast<std::size_t>(std::countr_zero(m)));
    return s;
}

struct Trace {
    std::size_t vertex_count = 0;
    std::vector<TraceEvent> events;

    /// Steps taken directly on the root graph.
    std::vector<TraceEvent> top_level() const {
        std::vector<TraceEvent> out;
        for (const auto& e : events)
            if (e.depth == 0 && e.kind != TraceKind::enter && e.kind != TraceKind::exit) out.push_back(e);
        return out;
    }

    /// Rebuilds the answer from the events alone (the recorded `set` payloads
    /// of exits and memo hits are not consulted).
    PressSet replay() const {
        struct Frame {
            VertexMask mask;
            std::vector<VertexMask> children;
            VertexMask acc = 0;
            std::optional<VertexMask> result;
        };
        std::vector<Frame> stack;
        std::unordered_map<VertexMask, VertexMask> solved;
        std::optional<VertexMask> final_result;
        auto deliver = [&](VertexMask r) {
            if (stack.empty()) {
                final_result = r;
            } else {
                stack.back().children.push_back(r);
            }
        };
        auto last_child = [&](std::size_t back) {
            const auto& ch = stack.back().children;
            if (ch.size() < back) throw std::runtime_error("malformed trace: missing sub-result");
            return ch[ch.size() - back];
        };
        for (const auto& e : events) {
            switch (e.kind) {
                case TraceKind::enter: stack.push_back(Frame{e.mask, {}, 0, std::nullopt}); break;
                case TraceKind::base_case: deliver(e.mask); break;
                case TraceKind::memo_hit: {
                    auto it = solved.find(e.mask);
                    if (it == solved.end()) throw std::runtime_error("malformed trace: memo hit before solve");
                    deliver(it->second);
                    break;
                }
                case TraceKind::short_circuit: stack.back().result = last_child(1); break;
                case TraceKind::pair: stack.back().acc ^= last_child(1) ^ last_child(2); break;
                case TraceKind::press_all: stack.back().result = stack.back().acc ^ stack.back().mask; break;
                case TraceKind::exit: {
                    if (stack.empty() || !stack.back().result)
                        throw std::runtime_error("malformed trace: exit without result");
                    auto f = std::move(stack.back());
                    stack.pop_back();
                    solved[f.mask] = *f.result;
                    deliver(*f.result);
                    break;
                }
            }
        }
        if (!final_result || !stack.empty()) throw std::runtime_error("malformed trace: unterminated");
        return mask_to_press_set(*final_result, vertex_count);
    }

    std::string to_text() const {
        auto fmt = [&](VertexMask m) { return mask_to_press_set(m, vertex_count).to_set_string(); };
        std::ostringstream os;
        for (const auto& e : events) {
            os << std::string(2 * e.depth, ' ') << to_string(e.kind);
            switch (e.kind) {
                case TraceKind::enter:
                case TraceKind::base_case:
                case TraceKind::press_all: os << ' ' << fmt(e.mask); break;
                case TraceKind::memo_hit:
                case TraceKind::exit: os << ' ' << fmt(e.mask) << " -> " << fmt(e.set); break;
                case TraceKind::short_circuit: os << ' ' << e.a << " -> " << fmt(e.set); break;
                case TraceKind::pair: os << ' ' << e.a << ' ' << e.b << " -> " << fmt(e.set); break;
            }
            os << '\n';
        }
        return os.str();
    }

    nlohmann::json to_json() const {
        auto idx = [&](VertexMask m) { return mask_to_press_set(m, vertex_count).indices(); };
        auto out = nlohmann::json::array();
        for (const auto& e : events) {
            nlohmann::json j = {{"event", to_string(e.kind)}, {"depth", e.depth}, {"mask", idx(e.mask)}};
            switch (e.kind) {
                case TraceKind::short_circuit: j["vertex"] = e.a; j["set"] = idx(e.set); break;
                case TraceKind::pair: j["a"] = e.a; j["b"] = e.b; j["set"] = idx(e.set); break;
                case TraceKind::memo_hit:
                case TraceKind::exit: j["set"] = idx(e.set); break;
                default: break;
            }
            out.push_back(std::move(j));
        }
        return out;
    }
};

struct InductiveResult {
    PressSet press_set;
    Trace trace;
};

/// Outcome of toggling a pair: either a set whose effect is exactly {a, b},
/// or a complementing set for the whole graph found along the way.
struct PairToggle {
    bool short_circuit = false;
    PressSet set;
};

/// Constructive complementing set by induction on induced subgraphs.
///
/// For vertex set M: pair the odd-degree vertices of G[M] in ascending order;
/// for each pair (a, b) take P_a, P_b complementing G[M - a], G[M - b]. If P_a
/// already toggles a it complements G[M] and is returned as is (likewise P_b).
/// Otherwise P_a ^ P_b toggles exactly {a, b}. The answer is the XOR of all
/// pair sets with M itself.
///
/// One instance is bound to one root graph. The memo table lives for a single
/// public call, so every trace replays on its own. Not thread-safe.
class InductiveSolver {
public:
    explicit InductiveSolver(const Graph& g, InductiveLimits limits = {})
        : limits_(limits), n_(g.size()) {
        if (limits_.max_vertices > max_inductive_vertices)
            throw std::invalid_argument("inductive cap cannot exceed " +
                                        std::to_string(max_inductive_vertices) + " vertices");
        if (n_ > limits_.max_vertices) {
            throw CapExceeded("graph has " + std::to_string(n_) + " vertices, inductive cap is " +
                              std::to_string(limits_.max_vertices));
        }
        adj_.resize(n_, 0);
        for (auto [a, b] : g.edges()) {
            adj_[a] |= VertexMask{1} << b;
            adj_[b] |= VertexMask{1} << a;
        }
        root_ = n_ == 64 ? ~VertexMask{0} : (VertexMask{1} << n_) - 1;
    }

    InductiveResult complementing_set() {
        reset();
        auto m = solve(root_, 0);
        return {mask_to_press_set(m, n_), std::move(trace_)};
    }

    PairToggle pair_toggle_set(std::size_t a, std::size_t b) {
        if (a >= n_ || b >= n_)
            throw std::out_of_range("pair (" + std::to_string(a) + ", " + std::to_string(b) +
                                    ") out of range for " + std::to_string(n_) + " vertices");
        if (a == b) throw std::invalid_argument("pair toggle needs two distinct vertices");
        reset();
        auto r = pair(root_, a, b, 0);
        return {r.short_circuit, mask_to_press_set(r.set, n_)};
    }

    const Trace& last_trace() const noexcept { return trace_; }
    std::size_t memo_size() const noexcept { return memo_.size(); }

private:
    struct MaskPair {
        bool short_circuit;
        VertexMask set;
    };

    static bool odd(VertexMask m) { return std::popcount(m) & 1; }
    static VertexMask bit(std::size_t v) { return VertexMask{1} << v; }

    void reset() {
        memo_.clear();
        trace_ = Trace{n_, {}};
    }

    void record(TraceEvent e) {
        if (limits_.record_trace) trace_.events.push_back(e);
    }

    // P set toggles v iff |N(v) ∩ P| is odd (v itself is never in P here).
    bool toggles(VertexMask p, std::size_t v) const { return odd(adj_[v] & p); }

    MaskPair pair(VertexMask m, std::size_t a, std::size_t b, std::size_t depth) {
        auto pa = solve(m & ~bit(a), depth + 1);
        if (toggles(pa, a)) {
            record({TraceKind::short_circuit, depth, m, pa, a, 0});
            return {true, pa};
        }
        auto pb = solve(m & ~bit(b), depth + 1);
        if (toggles(pb, b)) {
            record({TraceKind::short_circuit, depth, m, pb, b, 0});
            return {true, pb};
        }
        record({TraceKind::pair, depth, m, pa ^ pb, a, b});
        return {false, pa ^ pb};
    }

    VertexMask solve(VertexMask m, std::size_t depth) {
        if (std::popcount(m) <= 1) {
            record({TraceKind::base_case, depth, m, m});
            return m;
        }
        if (auto it = memo_.find(m); it != memo_.end()) {
            record({TraceKind::memo_hit, depth, m, it->second});
            return it->second;
        }
        record({TraceKind::enter, depth, m});

        std::vector<std::size_t> odd_vertices;
        for (VertexMask rest = m; rest != 0; rest &= rest - 1) {
            auto v = static_cast<std::size_t>(std::countr_zero(rest));
            if (odd(adj_[v] & m)) odd_vertices.push_back(v);
        }

        VertexMask acc = 0;
        std::optional<VertexMask> result;
        for (std::size_t k = 0; k + 1 < odd_vertices.size(); k += 2) {
            auto r = pair(m, odd_vertices[k], odd_vertices[k + 1], depth);
            if (r.short_circuit) {
                result = r.set;
                break;
            }
            acc ^= r.set;
        }
        if (!result) {
            record({TraceKind::press_all, depth, m});
            result = acc ^ m;
        }

        if (memo_.size() >= limits_.memo_budget) {
            throw MemoBudgetExceeded("memo table reached " + std::to_string(memo_.size()) +
                                     " entries (budget " + std::to_string(limits_.memo_budget) + ")");
        }
        memo_.emplace(m, *result);
        record({TraceKind::exit, depth, m, *result});
        return *result;
    }

    InductiveLimits limits_;
    std::size_t n_;
    VertexMask root_ = 0;
    std::vector<VertexMask> adj_;
    std::unordered_map<VertexMask, VertexMask> memo_;
    Trace trace_;
};

inline InductiveResult complementing_set(const Graph& g, InductiveLimits limits = {}) {
    return InductiveSolver(g, limits).complementing_set();
}

}  // namespace toggled
