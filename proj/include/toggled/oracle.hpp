#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "json.hpp"
#include "toggled/generators.hpp"
#include "toggled/gf2.hpp"
#include "toggled/graph.hpp"
#include "toggled/inductive.hpp"
#include "toggled/io.hpp"
#include "toggled/lights.hpp"

namespace toggled::oracle {

inline constexpr std::size_t brute_force_max_vertices = 20;
inline constexpr std::size_t exhaustive_max_vertices = 6;

struct BruteForceResult {
    /// Sorted by weight, then by index list (index_lex_less).
    std::vector<PressSet> solutions;

    bool solvable() const noexcept { return !solutions.empty(); }
    std::optional<PressSet> minimum() const {
        if (solutions.empty()) return std::nullopt;
        return solutions.front();
    }
};

/// Every press-set whose effect equals target, by trying all 2^n of them.
/// Candidates are visited in integer order of the mask (vertex 0 = LSB).
inline BruteForceResult brute_force_solutions(const Graph& g, const Configuration& target) {
    const auto n = g.size();
    if (n > brute_force_max_vertices) {
        throw CapExceeded("brute force is limited to " + std::to_string(brute_force_max_vertices) +
                          " vertices, graph has " + std::to_string(n));
    }
    if (target.size() != n) throw std::invalid_argument("target length does not match graph");

    std::vector<std::uint32_t> closed(n, 0);
    for (std::size_t v = 0; v < n; ++v) {
        closed[v] |= std::uint32_t{1} << v;
        for (std::size_t u = 0; u < n; ++u)
            if (g.adjacent(v, u)) closed[v] |= std::uint32_t{1} << u;
    }
    std::uint32_t want = 0;
    for (std::size_t v = 0; v < n; ++v)
        if (target.test(v)) want |= std::uint32_t{1} << v;

    const std::uint32_t total = std::uint32_t{1} << n;
    std::vector<std::uint32_t> toggled(total, 0);
    BruteForceResult out;
    for (std::uint32_t m = 0; m < total; ++m) {
        if (m != 0) {
            auto low = static_cast<std::size_t>(std::countr_zero(m));
            toggled[m] = toggled[m & (m - 1)] ^ closed[low];
        }
        if (toggled[m] != want) continue;
        PressSet s(n);
        for (std::size_t v = 0; v < n; ++v)
            if ((m >> v) & 1u) s.set(v);
        out.solutions.push_back(std::move(s));
    }
    std::sort(out.solutions.begin(), out.solutions.end(), [](const PressSet& a, const PressSet& b) {
        auto wa = a.count(), wb = b.count();
        return wa != wb ? wa < wb : index_lex_less(a, b);
    });
    return out;
}

/// Labelled graphs on n vertices, either all of them or a seeded G(n, p) sample.
struct GraphCorpus {
    enum class Kind { exhaustive, sampled };

    Kind kind = Kind::exhaustive;
    std::size_t n = 0;
    std::size_t count = 0;
    std::uint64_t seed = 0;
    double p = 0.5;

    static GraphCorpus exhaustive(std::size_t n) {
        if (n > exhaustive_max_vertices) {
            throw std::invalid_argument("exhaustive corpus limited to n <= " +
                                        std::to_string(exhaustive_max_vertices) + ", got " +
                                        std::to_string(n));
        }
        return {Kind::exhaustive, n, 0, 0, 0.5};
    }

    static GraphCorpus sampled(std::size_t n, std::size_t count, std::uint64_t seed, double p = 0.5) {
        if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("edge probability must lie in [0, 1]");
        return {Kind::sampled, n, count, seed, p};
    }

    std::size_t size() const {
        if (kind == Kind::sampled) return count;
        return std::size_t{1} << (n * (n - (n > 0 ? 1 : 0)) / 2);
    }

    /// k-th graph. Exhaustive: bit j of k selects the j-th pair (a,b), a<b, in
    /// lexicographic order. Sampled: graph k uses its own derived seed.
    Graph at(std::size_t k) const {
        if (k >= size()) throw std::out_of_range("corpus index out of range");
        if (kind == Kind::sampled) return gen::erdos_renyi(n, p, derive_seed(seed, k));
        Graph g(n);
        std::size_t bit = 0;
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a + 1; b < n; ++b, ++bit)
                if ((k >> bit) & 1u) g.add_edge(a, b);
        return g;
    }

    static std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t k) {
        // splitmix64 finaliser
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (k + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
};

inline std::vector<Graph> enumerate_graphs(const GraphCorpus& corpus) {
    std::vector<Graph> out;
    out.reserve(corpus.size());
    for (std::size_t k = 0; k < corpus.size(); ++k) out.push_back(corpus.at(k));
    return out;
}

struct TheoremReport {
    std::size_t checked = 0;
    /// Offending graphs in edge-list format, a leading '#' line giving the reason.
    std::vector<std::string> failures;

    nlohmann::json to_json() const { return {{"checked", checked}, {"failures", failures}}; }
};

struct VerifyOptions {
    std::size_t threads = 0;  // 0 = hardware concurrency
    InductiveLimits limits{.record_trace = false};
    /// Random start configurations per graph for the configuration-independence check.
    std::size_t configurations_per_graph = 0;
};

/// Checks one graph; returns a failure reason or nullopt.
inline std::optional<std::string> check_theorem(const Graph& g, const VerifyOptions& opts,
                                                std::uint64_t config_seed = 0) {
    const auto all_on = Configuration::ones(g.size());
    std::optional<SolveOutcome> linear;
    try {
        linear = solve_complement(g);
    } catch (const std::exception& e) {
        return std::string("gf2: ") + e.what();
    }
    if (effect(g, linear->particular) != all_on) return "gf2 particular does not complement";

    PressSet witness;
    try {
        witness = InductiveSolver(g, opts.limits).complementing_set().press_set;
    } catch (const std::exception& e) {
        return std::string("inductive: ") + e.what();
    }
    if (effect(g, witness) != all_on) return "inductive set does not complement";

    SpanReducer<PressSetTag> quiet(linear->nullspace_basis);
    if (!quiet.contains(witness ^ linear->particular)) return "solutions differ outside the nullspace";

    if (opts.configurations_per_graph > 0) {
        std::mt19937_64 rng(config_seed);
        for (std::size_t t = 0; t < opts.configurations_per_graph; ++t) {
            Configuration c(g.size());
            for (std::size_t v = 0; v < g.size(); ++v)
                if (rng() & 1u) c.set(v);
            if (apply_press_set(c, g, witness) != complement(c))
                return "witness fails on configuration " + c.to_string();
        }
    }
    return std::nullopt;
}

/// Runs check_theorem over a corpus, fanning out across threads. The report is
/// independent of the thread count.
inline TheoremReport verify_theorem(const GraphCorpus& corpus, const VerifyOptions& opts = {}) {
    const std::size_t total = corpus.size();
    std::size_t workers = opts.threads != 0 ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = std::max<std::size_t>(1, std::min(workers, total));

    std::vector<std::vector<std::pair<std::size_t, std::string>>> found(workers);
    std::vector<std::exception_ptr> errors(workers);
    auto run = [&](std::size_t w) {
        try {
            for (std::size_t k = w; k < total; k += workers) {
                auto g = corpus.at(k);
                if (auto why = check_theorem(g, opts, GraphCorpus::derive_seed(corpus.seed ^ 0x5eed, k)))
                    found[w].emplace_back(k, "# " + *why + "\n" + to_edge_list(g));
            }
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run, w);
        for (auto& t : pool) t.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);

    std::vector<std::pair<std::size_t, std::string>> merged;
    for (auto& f : found) merged.insert(merged.end(), f.begin(), f.end());
    std::sort(merged.begin(), merged.end());
    TheoremReport report;
    report.checked = total;
    for (auto& [k, s] : merged) report.failures.push_back(std::move(s));
    return report;
}

}  // namespace toggled::oracle
