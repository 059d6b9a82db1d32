// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any failure.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <mutex>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "support/naive.hpp"
#include "toggled/generators.hpp"
#include "toggled/gf2.hpp"
#include "toggled/hint_service.hpp"
#include "toggled/inductive.hpp"
#include "toggled/io.hpp"
#include "toggled/lights.hpp"
#include "toggled/oracle.hpp"

using namespace toggled;
using nlohmann::json;

namespace {

struct Verdict {
    bool pass;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string read_file(const std::string& path) {
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

struct SampledCorpus {
    std::size_t n;
    double p;
    oracle::GraphCorpus corpus;
};

std::vector<SampledCorpus> sampled_corpora() {
    std::vector<SampledCorpus> out;
    for (std::size_t n : {8, 10, 12, 14})
        for (double p : {0.1, 0.3, 0.5})
            out.push_back({n, p, oracle::GraphCorpus::sampled(n, 500, 1000 * n + static_cast<std::uint64_t>(p * 10), p)});
    return out;
}

Verdict exhaustive_theorem() {
    auto t0 = std::chrono::steady_clock::now();
    std::size_t checked = 0, failures = 0;
    for (std::size_t n : {5, 6}) {
        auto r = oracle::verify_theorem(oracle::GraphCorpus::exhaustive(n));
        checked += r.checked;
        failures += r.failures.size();
    }
    double secs = seconds_since(t0);
    std::ostringstream d;
    d << "checked=" << checked << " (expected 33792) failures=" << failures << " time=" << secs << "s (limit 60s)";
    return {checked == 33792 && failures == 0 && secs < 60.0, d.str()};
}

Verdict randomized_theorem() {
    std::size_t checked = 0, failures = 0;
    oracle::VerifyOptions opts;
    opts.configurations_per_graph = 100;
    std::string first;
    for (const auto& c : sampled_corpora()) {
        auto r = oracle::verify_theorem(c.corpus, opts);
        checked += r.checked;
        failures += r.failures.size();
        if (first.empty() && !r.failures.empty()) first = r.failures.front();
    }
    std::ostringstream d;
    d << "graphs=" << checked << " (expected 6000) configs/graph=100 failures=" << failures;
    if (!first.empty()) d << " first:\n" << first;
    return {checked == 6000 && failures == 0, d.str()};
}

// Reduces inductive ^ gf2 against the nullspace basis, graph by graph.
Verdict solver_equivalence() {
    std::vector<oracle::GraphCorpus> corpora = {oracle::GraphCorpus::exhaustive(5), oracle::GraphCorpus::exhaustive(6)};
    for (const auto& c : sampled_corpora()) corpora.push_back(c.corpus);

    std::atomic<std::size_t> checked{0}, failures{0};
    InductiveLimits limits{.record_trace = false};
    for (const auto& corpus : corpora) {
        const std::size_t total = corpus.size();
        const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t k = w; k < total; k += workers) {
                    auto g = corpus.at(k);
                    auto linear = solve_complement(g);
                    auto witness = InductiveSolver(g, limits).complementing_set().press_set;
                    SpanReducer<PressSetTag> quiet(linear.nullspace_basis);
                    if (quiet.reduce(witness ^ linear.particular).any()) ++failures;
                    ++checked;
                }
            });
        }
        for (auto& t : pool) t.join();
    }
    std::ostringstream d;
    d << "graphs=" << checked.load() << " (expected 39792) nonzero residues=" << failures.load();
    return {checked == 39792 && failures == 0, d.str()};
}

Verdict oracle_equivalence() {
    std::mt19937_64 rng(5150);
    std::size_t graphs = 0, cases = 0, mismatches = 0;
    std::string first;
    for (std::size_t n = 0; n <= 5; ++n) {
        auto corpus = oracle::GraphCorpus::exhaustive(n);
        for (std::size_t k = 0; k < corpus.size(); ++k) {
            auto g = corpus.at(k);
            auto elim = eliminate(build_system(g));
            ++graphs;
            for (int t = 0; t < 50; ++t, ++cases) {
                Configuration target(n);
                for (std::size_t v = 0; v < n; ++v) target.assign(v, rng() & 1u);
                auto brute = oracle::brute_force_solutions(g, target);
                auto linear = solve_with(elim, target);
                bool ok = linear.has_value() == brute.solvable();
                if (ok && linear) {
                    std::size_t expected_count = std::size_t{1} << (n - elim.rank);
                    ok = brute.solutions.size() == expected_count &&
                         min_weight_solution(*linear) == *brute.minimum();
                }
                if (!ok) {
                    ++mismatches;
                    if (first.empty()) first = "target " + target.to_string() + " on\n" + to_edge_list(g);
                }
            }
        }
    }
    std::ostringstream d;
    d << "graphs=" << graphs << " targets=" << cases << " mismatches=" << mismatches;
    if (!first.empty()) d << " first: " << first;
    return {graphs == 1100 && mismatches == 0, d.str()};
}

Verdict worked_traces() {
    const std::string dir = std::string(TOGGLED_TEST_DATA_DIR) + "/golden/";
    std::vector<std::string> bad;
    auto frozen = [&](const char* name, const Graph& g, const char* expected_set, const char* file) {
        auto r = complementing_set(g);
        auto text = r.trace.to_text() + "result " + r.press_set.to_set_string() + "\n";
        if (r.press_set.to_set_string() != expected_set) bad.push_back(std::string(name) + " set");
        if (text != read_file(dir + file)) bad.push_back(std::string(name) + " trace");
        if (r.trace.replay() != r.press_set) bad.push_back(std::string(name) + " replay");
        return r.trace.top_level();
    };

    auto p3 = frozen("P3", gen::path(3), "{1}", "trace_path3.txt");
    if (p3.size() != 1 || p3[0].kind != TraceKind::short_circuit) bad.push_back("P3 short-circuit");

    auto p4 = frozen("P4", gen::path(4), "{0,3}", "trace_path4.txt");
    if (p4.size() != 2 || p4[0].kind != TraceKind::pair || p4[0].a != 0 || p4[0].b != 3 ||
        p4[1].kind != TraceKind::press_all)
        bad.push_back("P4 pair+press-all");

    auto c4 = frozen("C4", gen::cycle(4), "{0,1,2,3}", "trace_cycle4.txt");
    if (c4.size() != 1 || c4[0].kind != TraceKind::press_all) bad.push_back("C4 press-all");

    InductiveSolver k4(gen::complete(4));
    auto pair = k4.pair_toggle_set(0, 1);
    if (!pair.short_circuit || pair.set.to_set_string() != "{1,2,3}") bad.push_back("K4 pair(0,1)");

    std::string d = "P3 {1} short-circuit, P4 {0,3} pair(0,3)+press-all, K4 pair(0,1) short-circuit {1,2,3}, "
                    "C4 {0,1,2,3} press-all";
    for (const auto& b : bad) d += "; mismatch: " + b;
    return {bad.empty(), d};
}

Verdict grid_five() {
    auto t0 = std::chrono::steady_clock::now();
    auto g = gen::grid(5, 5);

    // independent recomputation on unpacked bytes
    auto m = naive::closed_neighborhood_matrix(g);
    auto naive_rank = naive::rank(m);
    auto ns = naive::solve(m, std::vector<std::uint8_t>(25, 1));
    std::size_t naive_min = 26, members = 0;
    const std::size_t d = ns.kernel.size();
    for (std::size_t mask = 0; ns.solvable && d < 8 && mask < (std::size_t{1} << d); ++mask, ++members) {
        auto x = ns.particular;
        for (std::size_t i = 0; i < d; ++i)
            if ((mask >> i) & 1u)
                for (std::size_t v = 0; v < 25; ++v) x[v] ^= ns.kernel[i][v];
        naive_min = std::min<std::size_t>(naive_min, std::count(x.begin(), x.end(), 1));
    }

    auto outcome = solve_complement(g);
    auto best = min_weight_solution(outcome);
    double secs = seconds_since(t0);

    bool ok = naive_rank == 23 && d == 2 && members == 4 && naive_min == 15 && outcome.rank == 23 &&
              outcome.nullity() == 2 && best.count() == 15 && effect(g, best).all() && secs < 1.0;
    std::ostringstream s;
    s << "naive rank=" << naive_rank << " nullity=" << d << " coset=" << members << " min=" << naive_min
      << "; solver rank=" << outcome.rank << " nullity=" << outcome.nullity() << " min=" << best.count()
      << " time=" << secs << "s (limit 1s)";
    return {ok, s.str()};
}

Verdict grid_fifty() {
    auto g = gen::grid(50, 50);
    auto t0 = std::chrono::steady_clock::now();
    auto outcome = solve_complement(g);
    double secs = seconds_since(t0);
    bool verified = effect(g, outcome.particular).all();
    std::ostringstream d;
    d << "2500 unknowns rank=" << outcome.rank << " effect=" << (verified ? "all-ones" : "WRONG") << " time=" << secs
      << "s (limit 5s)";
    return {verified && secs < 5.0, d.str()};
}

Verdict algebraic_properties() {
    constexpr int cases = 10000;
    std::mt19937_64 rng(42);
    struct Case {
        Graph g;
        Configuration c;
        PressSet s1, s2;
    };
    auto draw = [&] {
        std::size_t n = 1 + rng() % 60;
        Case k{naive::random_graph(rng, n, (rng() % 11) / 10.0), Configuration(n), PressSet(n), PressSet(n)};
        for (std::size_t v = 0; v < n; ++v) {
            k.c.assign(v, rng() & 1u);
            k.s1.assign(v, rng() & 1u);
            k.s2.assign(v, rng() & 1u);
        }
        return k;
    };
    std::size_t involution = 0, order = 0, linear = 0, handshake = 0, press_all = 0;
    for (int t = 0; t < cases; ++t) {
        auto k = draw();
        auto n = k.g.size();

        auto v = rng() % n;
        if (press(press(k.c, k.g, v), k.g, v) != k.c) ++involution;

        std::vector<std::size_t> seq(rng() % 12);
        for (auto& u : seq) u = rng() % n;
        auto shuffled = seq;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        auto a = k.c, b = k.c;
        PressSet as_set(n);
        for (auto u : seq) a = press(a, k.g, u), as_set.flip(u);
        for (auto u : shuffled) b = press(b, k.g, u);
        if (a != b || a != apply_press_set(k.c, k.g, as_set)) ++order;

        if (effect(k.g, k.s1 ^ k.s2) != (effect(k.g, k.s1) ^ effect(k.g, k.s2))) ++linear;

        std::size_t odd = 0;
        for (std::size_t u = 0; u < n; ++u) odd += k.g.degree(u) % 2;
        if (odd % 2 != 0 || odd_degree_vertices(k.g).size() != odd) ++handshake;

        // count closed-neighbourhood hits directly
        auto eff = effect(k.g, PressSet::ones(n));
        for (std::size_t u = 0; u < n; ++u) {
            std::size_t hits = 1;
            for (std::size_t w = 0; w < n; ++w) hits += k.g.adjacent(u, w);
            if (eff.test(u) != (hits % 2 == 1) || eff.test(u) != (k.g.degree(u) % 2 == 0)) {
                ++press_all;
                break;
            }
        }
    }
    std::ostringstream d;
    d << cases << " cases each; failures: involution=" << involution << " order=" << order
      << " linearity=" << linear << " handshake=" << handshake << " press-all=" << press_all;
    return {involution + order + linear + handshake + press_all == 0, d.str()};
}

Verdict service_contract() {
    using service::SessionStore;
    SessionStore store;

    struct Model {
        std::string id;
        Graph g;
        Configuration initial, current;
    };
    constexpr int threads = 4, per_thread = 3, steps = 1000;
    std::vector<std::vector<Model>> models(threads);
    std::mt19937_64 setup(7);
    for (auto& mine : models) {
        for (int i = 0; i < per_thread; ++i) {
            auto g = gen::erdos_renyi(6 + setup() % 14, 0.3, setup());
            Configuration c(g.size());
            for (std::size_t v = 0; v < g.size(); ++v) c.assign(v, setup() & 1u);
            std::string id = store.create({{"graph", to_json(g)}, {"initial", c.to_string()}})["id"];
            mine.push_back({id, g, c, c});
        }
    }

    std::atomic<std::size_t> violations{0};
    std::mutex note_mu;
    std::string note;
    auto check = [&](const Model& m, int step) {
        auto s = store.inspect(m.id);
        bool ok = s.current == m.current && s.goal == complement(m.initial) &&
                  (!s.cached_solution || apply_press_set(s.current, s.graph, *s.cached_solution) == s.goal);
        if (!ok) {
            ++violations;
            std::lock_guard lock(note_mu);
            if (note.empty()) note = "session " + m.id + " at step " + std::to_string(step);
        }
    };

    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            std::mt19937_64 rng(100 + t);
            auto& mine = models[t];
            for (int step = 0; step < steps; ++step) {
                auto& m = mine[rng() % mine.size()];
                switch (rng() % 4) {
                    case 0: {
                        auto v = rng() % m.g.size();
                        store.press(m.id, {{"vertex", v}});
                        m.current = press(m.current, m.g, v);
                        break;
                    }
                    case 1: store.hint(m.id); break;
                    case 2: {
                        auto k = rng() % 4;
                        auto seed = rng();
                        store.scramble(m.id, {{"k", k}, {"seed", seed}});
                        std::mt19937_64 replay(seed);
                        for (std::uint64_t i = 0; i < k; ++i)
                            m.current = press(m.current, m.g, gen::uniform_below(replay, m.g.size()));
                        break;
                    }
                    case 3:
                        store.reset(m.id);
                        m.current = m.initial;
                        break;
                }
                for (const auto& other : mine) check(other, step);
            }
        });
    }
    for (auto& th : pool) th.join();
    for (const auto& mine : models)
        for (const auto& m : mine) check(m, steps);

    // hint-following from a fresh session takes exactly the cached weight
    std::size_t hint_runs = 0, hint_bad = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed, ++hint_runs) {
        auto created = store.create({{"generate", {{"kind", "erdos_renyi"}, {"n", 5 + seed % 16}, {"p", 0.3}, {"seed", seed}}},
                                     {"initial", "random"},
                                     {"seed", seed}});
        std::string id = created["id"];
        auto weight = store.inspect(id).cached_solution->count();
        std::size_t presses = 0;
        while (presses <= weight) {
            auto h = store.hint(id);
            if (h["status"] != "hint") break;
            store.press(id, {{"vertex", h["vertex"]}});
            ++presses;
        }
        if (presses != weight || !store.inspect(id).solved()) ++hint_bad;
    }

    std::ostringstream d;
    d << threads << " threads x " << steps << " steps over " << threads * per_thread
      << " sessions: violations=" << violations.load() << "; hint-following runs=" << hint_runs
      << " off-weight=" << hint_bad;
    if (!note.empty()) d << " first: " << note;
    return {violations == 0 && hint_bad == 0, d.str()};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
        {"exhaustive theorem n=5,6", exhaustive_theorem},
        {"randomized theorem", randomized_theorem},
        {"solver equivalence", solver_equivalence},
        {"oracle equivalence n<=5", oracle_equivalence},
        {"worked traces", worked_traces},
        {"5x5 grid", grid_five},
        {"grid(50,50) performance", grid_fifty},
        {"algebraic properties", algebraic_properties},
        {"service contract", service_contract},
    };
    int failed = 0;
    for (const auto& [name, fn] : criteria) {
        Verdict v;
        try {
            v = fn();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        std::printf("%s %s: %s\n", v.pass ? "PASS" : "FAIL", name, v.detail.c_str());
        std::fflush(stdout);
        failed += !v.pass;
    }
    return failed == 0 ? 0 : 1;
}
