#pragma once

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "toggled/bits.hpp"

namespace toggled {

using Edge = std::pair<std::size_t, std::size_t>;

/// Simple undirected graph on vertices 0..n-1 with bit-row adjacency.
/// Symmetric and loop-free by construction.
class Graph {
public:
    Graph() = default;
    explicit Graph(std::size_t n) : n_(n), adj_(n, BitVector(n)) {}

    Graph(std::size_t n, const std::vector<Edge>& edges) : Graph(n) {
        for (auto [a, b] : edges) add_edge(a, b);
    }

    std::size_t size() const noexcept { return n_; }

    /// Adds {a,b}; adding an existing edge is a no-op.
    void add_edge(std::size_t a, std::size_t b) {
        if (a >= n_ || b >= n_) {
            throw std::out_of_range("edge (" + std::to_string(a) + ", " + std::to_string(b) +
                                    ") has an endpoint outside [0, " + std::to_string(n_) + ")");
        }
        if (a == b) throw std::invalid_argument("self-loop at vertex " + std::to_string(a));
        adj_[a].set(b);
        adj_[b].set(a);
    }

    bool adjacent(std::size_t a, std::size_t b) const { return adj_[a].test(b); }
    const BitVector& neighbors(std::size_t v) const { return adj_[v]; }
    std::size_t degree(std::size_t v) const { return adj_[v].count(); }

    /// {v} ∪ N(v)
    BitVector closed_neighborhood(std::size_t v) const {
        BitVector r = adj_[v];
        r.set(v);
        return r;
    }

    std::size_t edge_count() const {
        std::size_t twice = 0;
        for (const auto& row : adj_) twice += row.count();
        return twice / 2;
    }

    /// Edges (a,b) with a < b, sorted lexicographically.
    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        for (std::size_t a = 0; a < n_; ++a)
            for (auto b = adj_[a].find_next(a + 1); b < n_; b = adj_[a].find_next(b + 1))
                out.emplace_back(a, b);
        return out;
    }

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    std::size_t n_ = 0;
    std::vector<BitVector> adj_;
};

/// Induced subgraph together with the order-preserving renumbering.
struct InducedSubgraph {
    static constexpr std::size_t removed = std::numeric_limits<std::size_t>::max();

    Graph graph;
    std::vector<std::size_t> to_parent;    // new index -> old index
    std::vector<std::size_t> from_parent;  // old index -> new index, or `removed`

    /// Lifts a press-set of the subgraph into the parent's indexing.
    PressSet lift(const PressSet& s) const {
        s.require_same_size(PressSet(graph.size()));
        PressSet out(from_parent.size());
        for (auto i : s.indices()) out.set(to_parent[i]);
        return out;
    }
};

/// Subgraph on V \ {removed_vertex}.
inline InducedSubgraph induced_subgraph(const Graph& g, std::size_t removed_vertex) {
    if (removed_vertex >= g.size()) {
        throw std::out_of_range("vertex " + std::to_string(removed_vertex) + " out of range [0, " +
                                std::to_string(g.size()) + ")");
    }
    InducedSubgraph sub;
    sub.from_parent.assign(g.size(), InducedSubgraph::removed);
    for (std::size_t v = 0; v < g.size(); ++v) {
        if (v == removed_vertex) continue;
        sub.from_parent[v] = sub.to_parent.size();
        sub.to_parent.push_back(v);
    }
    sub.graph = Graph(sub.to_parent.size());
    for (auto [a, b] : g.edges()) {
        if (a == removed_vertex || b == removed_vertex) continue;
        sub.graph.add_edge(sub.from_parent[a], sub.from_parent[b]);
    }
    return sub;
}

}  // namespace toggled
