#pragma once

// Test-only reference routines. They work on unpacked 0/1 bytes and share no
// code with the bit-packed solver.

#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "toggled/graph.hpp"

namespace naive {

using Matrix = std::vector<std::vector<std::uint8_t>>;

inline Matrix closed_neighborhood_matrix(const toggled::Graph& g) {
    Matrix m(g.size(), std::vector<std::uint8_t>(g.size(), 0));
    for (std::size_t i = 0; i < g.size(); ++i) {
        m[i][i] = 1;
        for (std::size_t j = 0; j < g.size(); ++j)
            if (g.adjacent(i, j)) m[i][j] = 1;
    }
    return m;
}

inline std::size_t rank(Matrix m) {
    std::size_t r = 0;
    const std::size_t cols = m.empty() ? 0 : m[0].size();
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        std::size_t p = r;
        while (p < m.size() && m[p][c] == 0) ++p;
        if (p == m.size()) continue;
        std::swap(m[p], m[r]);
        for (std::size_t i = 0; i < m.size(); ++i)
            if (i != r && m[i][c])
                for (std::size_t k = 0; k < cols; ++k) m[i][k] ^= m[r][k];
        ++r;
    }
    return r;
}

/// Solves m x = b by plain Gauss-Jordan on the augmented matrix; returns the
/// particular solution (free variables 0) and one basis vector per free column.
struct Solution {
    bool solvable = false;
    std::vector<std::uint8_t> particular;
    std::vector<std::vector<std::uint8_t>> kernel;
};

inline Solution solve(Matrix m, std::vector<std::uint8_t> b) {
    const std::size_t n = m.size();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < n; ++c) {
        std::size_t p = r;
        while (p < n && m[p][c] == 0) ++p;
        if (p == n) continue;
        std::swap(m[p], m[r]);
        std::swap(b[p], b[r]);
        for (std::size_t i = 0; i < n; ++i) {
            if (i != r && m[i][c]) {
                for (std::size_t k = 0; k < n; ++k) m[i][k] ^= m[r][k];
                b[i] ^= b[r];
            }
        }
        pivots.push_back(c);
        ++r;
    }
    Solution s;
    for (std::size_t i = r; i < n; ++i)
        if (b[i]) return s;
    s.solvable = true;
    s.particular.assign(n, 0);
    for (std::size_t i = 0; i < r; ++i) s.particular[pivots[i]] = b[i];
    std::vector<bool> is_pivot(n, false);
    for (auto c : pivots) is_pivot[c] = true;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        std::vector<std::uint8_t> v(n, 0);
        v[f] = 1;
        for (std::size_t i = 0; i < r; ++i) v[pivots[i]] = m[i][f];
        s.kernel.push_back(std::move(v));
    }
    return s;
}

/// Toggle vector by literally pressing each chosen vertex.
inline std::vector<std::uint8_t> press_all(const toggled::Graph& g, const std::vector<std::uint8_t>& chosen) {
    std::vector<std::uint8_t> out(g.size(), 0);
    for (std::size_t v = 0; v < g.size(); ++v) {
        if (!chosen[v]) continue;
        out[v] ^= 1;
        for (std::size_t u = 0; u < g.size(); ++u)
            if (g.adjacent(v, u)) out[u] ^= 1;
    }
    return out;
}

inline toggled::Graph random_graph(std::mt19937_64& rng, std::size_t n, double p) {
    std::bernoulli_distribution coin(p);
    toggled::Graph g(n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            if (coin(rng)) g.add_edge(a, b);
    return g;
}

}  // namespace naive
