#pragma once

#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "toggled/generators.hpp"
#include "toggled/gf2.hpp"
#include "toggled/inductive.hpp"
#include "toggled/io.hpp"
#include "toggled/lights.hpp"
#include "toggled/oracle.hpp"

namespace toggled::cli {

enum ExitCode : int { ok = 0, domain_error = 1, usage_error = 2 };

/// Reported to the user; carries the exit code it maps to.
struct Failure {
    int code;
    std::string message;
};

namespace detail {

inline std::string read_input(const std::string& source, std::istream& in) {
    if (source == "-") return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    std::ifstream f(source);
    if (!f) throw Failure{usage_error, "cannot open '" + source + "'"};
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

inline Graph load_graph(const std::string& source, std::istream& in) {
    try {
        return parse_graph(read_input(source, in));
    } catch (const ParseError& e) {
        throw Failure{usage_error, source + ": " + e.what()};
    }
}

inline Configuration load_configuration(const std::string& bits, std::size_t n, const char* flag) {
    try {
        return parse_configuration(bits, n);
    } catch (const ParseError& e) {
        throw Failure{usage_error, std::string(flag) + ": " + e.what()};
    }
}

inline InductiveLimits env_limits() {
    try {
        return limits_from_env();
    } catch (const std::invalid_argument& e) {
        throw Failure{usage_error, e.what()};
    }
}

inline InductiveResult run_inductive(const Graph& g) {
    try {
        return complementing_set(g, env_limits());
    } catch (const CapExceeded& e) {
        throw Failure{domain_error, e.what()};
    }
}

}  // namespace detail

struct SolveArgs {
    std::string graph = "-";
    std::string target;
    std::string from;
    std::string to;
    std::string method = "gf2";
    bool min_weight = false;
    bool trace = false;
    bool json = false;
    bool require_solvable = false;
};

inline int solve_command(const SolveArgs& a, std::istream& in, std::ostream& out, std::ostream& err) {
    auto g = detail::load_graph(a.graph, in);
    const auto n = g.size();
    auto from = a.from.empty() ? Configuration(n) : detail::load_configuration(a.from, n, "--from");

    Configuration delta;
    if (!a.to.empty()) {
        delta = from ^ detail::load_configuration(a.to, n, "--to");
    } else if (a.target.empty() || a.target == "complement") {
        delta = Configuration::ones(n);
    } else if (a.target == "all-on") {
        delta = from ^ Configuration::ones(n);
    } else if (a.target == "all-off") {
        delta = from;
    } else {
        throw Failure{usage_error, "--target must be complement, all-on or all-off"};
    }
    bool complement_target = delta.all();
    if (a.method != "gf2" && !complement_target)
        throw Failure{usage_error, "--method " + a.method + " only solves the complement target"};
    if (a.trace && a.method == "gf2") throw Failure{usage_error, "--trace needs --method inductive or both"};

    auto elim = eliminate(build_system(g));
    const auto nullity = n - elim.rank;

    std::optional<PressSet> answer;
    std::optional<InductiveResult> inductive;
    if (a.method == "gf2" || a.method == "both") {
        if (auto outcome = solve_with(elim, delta)) {
            try {
                answer = a.min_weight ? min_weight_solution(*outcome) : outcome->particular;
            } catch (const CapExceeded& e) {
                throw Failure{domain_error, e.what()};
            }
        }
    }
    if (a.method == "inductive" || a.method == "both") {
        inductive = detail::run_inductive(g);
        if (a.method == "inductive") answer = inductive->press_set;
    }
    if (a.method == "both") {
        auto quiet = SpanReducer<PressSetTag>(nullspace_basis(elim));
        if (!answer || !quiet.contains(*answer ^ inductive->press_set)) {
            err << "solvers disagree: gf2 " << (answer ? answer->to_set_string() : "unsolvable") << ", inductive "
                << inductive->press_set.to_set_string() << '\n';
            return domain_error;
        }
    }

    if (a.json) {
        nlohmann::json j = {{"press_set", answer ? nlohmann::json(answer->to_string()) : nlohmann::json()},
                            {"weight", answer ? nlohmann::json(answer->count()) : nlohmann::json()},
                            {"nullity", nullity},
                            {"method", a.method}};
        if (a.trace) j["trace"] = inductive->trace.to_json();
        out << j.dump() << '\n';
    } else {
        out << (answer ? answer->to_set_string() : "unsolvable") << '\n';
        if (a.trace) out << inductive->trace.to_text();
    }
    if (!answer) {
        err << "target is not reachable (rank " << elim.rank << ", nullity " << nullity << ")\n";
        return a.require_solvable ? domain_error : ok;
    }
    return ok;
}

/// Entry point shared by the executable and the tests. args excludes argv[0].
inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Lights Out solver: complementing press-sets by induction and over GF(2)", "toggled"};
    app.require_subcommand(1);

    gen::Params gp;
    std::uint64_t gen_seed = 0;
    bool gen_json = false;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a graph");
    gen_cmd->add_option("kind", gp.kind, "path | cycle | complete | grid | petersen | erdos_renyi")->required();
    gen_cmd->add_option("--n", gp.n, "Vertex count");
    gen_cmd->add_option("--rows", gp.rows, "Grid rows");
    gen_cmd->add_option("--cols", gp.cols, "Grid columns");
    gen_cmd->add_option("--p", gp.p, "Edge probability (erdos_renyi)");
    auto* gen_seed_opt = gen_cmd->add_option("--seed", gen_seed, "Random seed (erdos_renyi)");
    gen_cmd->add_flag("--json", gen_json, "Emit JSON instead of an edge list");

    SolveArgs sa;
    auto* solve_cmd = app.add_subcommand("solve", "Find a press-set");
    solve_cmd->add_option("--graph", sa.graph, "Graph file, '-' for stdin");
    auto* target_opt = solve_cmd->add_option("--target", sa.target, "complement | all-on | all-off");
    solve_cmd->add_option("--from", sa.from, "Start configuration (0/1 string)");
    solve_cmd->add_option("--to", sa.to, "Goal configuration (0/1 string)")->excludes(target_opt);
    solve_cmd->add_option("--method", sa.method, "gf2 | inductive | both")
        ->check(CLI::IsMember({"gf2", "inductive", "both"}));
    solve_cmd->add_flag("--min-weight", sa.min_weight, "Minimise the number of presses (gf2)");
    solve_cmd->add_flag("--trace", sa.trace, "Print the inductive construction");
    solve_cmd->add_flag("--json", sa.json, "JSON output");
    solve_cmd->add_flag("--require-solvable", sa.require_solvable, "Exit 1 when the target is unreachable");

    std::size_t exhaustive_n = 0, sampled_n = 0, count = 500, threads = 0, configs = 0;
    std::uint64_t verify_seed = 1;
    double verify_p = 0.5;
    bool verify_json = false;
    auto* verify_cmd = app.add_subcommand("verify", "Check the complement theorem over a corpus");
    auto* ex_opt = verify_cmd->add_option("--exhaustive", exhaustive_n, "All labelled graphs on N <= 6 vertices");
    auto* sa_opt = verify_cmd->add_option("--sampled", sampled_n, "Random G(N, p) graphs");
    ex_opt->excludes(sa_opt);
    verify_cmd->add_option("--count", count, "Sample size");
    verify_cmd->add_option("--seed", verify_seed, "Sample seed");
    verify_cmd->add_option("--p", verify_p, "Edge probability")->check(CLI::Range(0.0, 1.0));
    verify_cmd->add_option("--threads", threads, "Worker threads (0 = all cores)");
    verify_cmd->add_option("--configs", configs, "Random start configurations checked per graph");
    verify_cmd->add_flag("--json", verify_json, "JSON output");

    std::string ns_graph = "-";
    bool ns_json = false;
    auto* ns_cmd = app.add_subcommand("nullspace", "Rank and quiet patterns of the press system");
    ns_cmd->add_option("--graph", ns_graph, "Graph file, '-' for stdin");
    ns_cmd->add_flag("--json", ns_json, "JSON output");

    std::string tr_graph = "-";
    bool tr_json = false;
    auto* tr_cmd = app.add_subcommand("trace", "Show the inductive construction step by step");
    tr_cmd->add_option("--graph", tr_graph, "Graph file, '-' for stdin");
    tr_cmd->add_flag("--json", tr_json, "JSON output");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return usage_error;
    }

    try {
        if (*gen_cmd) {
            if (*gen_seed_opt) gp.seed = gen_seed;
            Graph g;
            try {
                g = gen::generate(gp);
            } catch (const std::invalid_argument& e) {
                throw Failure{usage_error, e.what()};
            }
            if (gen_json) {
                out << to_json(g).dump() << '\n';
            } else {
                out << to_edge_list(g);
            }
            return ok;
        }
        if (*solve_cmd) return solve_command(sa, in, out, err);
        if (*verify_cmd) {
            if (!*ex_opt && !*sa_opt) throw Failure{usage_error, "verify needs --exhaustive N or --sampled N"};
            oracle::GraphCorpus corpus;
            try {
                corpus = *ex_opt ? oracle::GraphCorpus::exhaustive(exhaustive_n)
                                 : oracle::GraphCorpus::sampled(sampled_n, count, verify_seed, verify_p);
            } catch (const std::invalid_argument& e) {
                throw Failure{usage_error, e.what()};
            }
            oracle::VerifyOptions opts;
            opts.threads = threads;
            opts.limits = detail::env_limits();
            opts.limits.record_trace = false;
            opts.configurations_per_graph = configs;
            auto report = oracle::verify_theorem(corpus, opts);
            if (verify_json) {
                out << report.to_json().dump() << '\n';
            } else {
                out << "checked=" << report.checked << " failures=" << report.failures.size() << '\n';
                for (const auto& f : report.failures) out << "---\n" << f;
            }
            return report.failures.empty() ? ok : domain_error;
        }
        if (*ns_cmd) {
            auto g = detail::load_graph(ns_graph, in);
            auto e = eliminate(build_system(g));
            auto basis = nullspace_basis(e);
            if (ns_json) {
                nlohmann::json b = nlohmann::json::array();
                for (const auto& v : basis) b.push_back(v.to_string());
                out << nlohmann::json{{"n", g.size()}, {"rank", e.rank}, {"nullity", basis.size()}, {"basis", b}}.dump()
                    << '\n';
            } else {
                out << "rank=" << e.rank << " nullity=" << basis.size() << '\n';
                for (const auto& v : basis) out << v.to_string() << '\n';
            }
            return ok;
        }
        if (*tr_cmd) {
            auto g = detail::load_graph(tr_graph, in);
            auto r = detail::run_inductive(g);
            if (tr_json) {
                out << nlohmann::json{{"press_set", r.press_set.to_string()}, {"trace", r.trace.to_json()}}.dump()
                    << '\n';
            } else {
                out << r.trace.to_text() << "result " << r.press_set.to_set_string() << '\n';
            }
            return ok;
        }
    } catch (const Failure& f) {
        err << "error: " << f.message << '\n';
        return f.code;
    } catch (const CapExceeded& e) {
        err << "error: " << e.what() << '\n';
        return domain_error;
    }
    return usage_error;
}

}  // namespace toggled::cli
