#pragma once

#include <cctype>
#include <charconv>
#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "toggled/graph.hpp"

namespace toggled {

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

inline bool parse_index(std::string_view tok, std::size_t& out) {
    if (tok.empty()) return false;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    return ec == std::errc{} && ptr == tok.data() + tok.size();
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        std::size_t j = i;
        while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

inline Graph parse_edge_list(std::string_view text) {
    std::size_t line_no = 0;
    bool have_n = false;
    Graph g;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        auto line = text.substr(pos, nl - pos);
        pos = nl + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        auto where = "line " + std::to_string(line_no) + ": ";
        auto toks = split_ws(line);
        if (!have_n) {
            std::size_t n = 0;
            if (toks.size() != 1 || !parse_index(toks[0], n))
                throw ParseError(where + "expected a vertex count, got '" + std::string(line) + "'");
            g = Graph(n);
            have_n = true;
            continue;
        }
        std::size_t a = 0, b = 0;
        if (toks.size() != 2 || !parse_index(toks[0], a) || !parse_index(toks[1], b))
            throw ParseError(where + "expected two vertex indices, got '" + std::string(line) + "'");
        if (a >= g.size() || b >= g.size())
            throw ParseError(where + "vertex index out of range for n=" + std::to_string(g.size()));
        if (a == b) throw ParseError(where + "self-loop at vertex " + std::to_string(a));
        g.add_edge(a, b);
    }
    if (!have_n) throw ParseError("missing vertex count");
    return g;
}

inline Graph parse_json_graph(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("n") || !doc["n"].is_number_unsigned())
        throw ParseError("JSON graph needs a non-negative integer field \"n\"");
    Graph g(doc["n"].get<std::size_t>());
    if (!doc.contains("edges")) return g;
    const auto& edges = doc["edges"];
    if (!edges.is_array()) throw ParseError("\"edges\" must be an array");
    for (std::size_t k = 0; k < edges.size(); ++k) {
        const auto& e = edges[k];
        auto where = "edge " + std::to_string(k) + ": ";
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() || !e[1].is_number_unsigned())
            throw ParseError(where + "expected a pair of non-negative integers");
        auto a = e[0].get<std::size_t>(), b = e[1].get<std::size_t>();
        if (a >= g.size() || b >= g.size())
            throw ParseError(where + "vertex index out of range for n=" + std::to_string(g.size()));
        if (a == b) throw ParseError(where + "self-loop at vertex " + std::to_string(a));
        g.add_edge(a, b);
    }
    return g;
}

}  // namespace detail

/// Reads either the edge-list format or a JSON object {"n": .., "edges": [[a,b], ..]}.
/// JSON is recognised by a leading '{'.
inline Graph parse_graph(std::string_view text) {
    auto body = detail::trim(text);
    if (!body.empty() && body.front() == '{') return detail::parse_json_graph(body);
    return detail::parse_edge_list(text);
}

inline std::string to_edge_list(const Graph& g) {
    std::ostringstream os;
    os << g.size() << '\n';
    for (auto [a, b] : g.edges()) os << a << ' ' << b << '\n';
    return os.str();
}

inline nlohmann::json to_json(const Graph& g) {
    nlohmann::json edges = nlohmann::json::array();
    for (auto [a, b] : g.edges()) edges.push_back({a, b});
    return {{"n", g.size()}, {"edges", std::move(edges)}};
}

/// Parses a 0/1 string and checks it against the graph's vertex count.
inline Configuration parse_configuration(std::string_view s, std::size_t n) {
    Configuration c;
    try {
        c = Configuration::from_string(s);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
    if (c.size() != n) {
        throw ParseError("configuration has length " + std::to_string(c.size()) + ", graph has " +
                         std::to_string(n) + " vertices");
    }
    return c;
}

}  // namespace toggled
