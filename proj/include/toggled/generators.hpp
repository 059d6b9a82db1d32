#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>

#include "toggled/graph.hpp"

namespace toggled::gen {

inline Graph path(std::size_t n) {
    Graph g(n);
    for (std::size_t i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

inline Graph cycle(std::size_t n) {
    if (n < 3) throw std::invalid_argument("cycle needs at least 3 vertices, got " + std::to_string(n));
    Graph g = path(n);
    g.add_edge(n - 1, 0);
    return g;
}

inline Graph complete(std::size_t n) {
    Graph g(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

/// rows x cols lattice, 4-neighbourhood, vertex r*cols + c.
inline Graph grid(std::size_t rows, std::size_t cols) {
    if (rows < 1 || cols < 1)
        throw std::invalid_argument("grid dimensions must be at least 1x1");
    Graph g(rows * cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            auto v = r * cols + c;
            if (c + 1 < cols) g.add_edge(v, v + 1);
            if (r + 1 < rows) g.add_edge(v, v + cols);
        }
    }
    return g;
}

/// Outer 5-cycle 0..4, inner pentagram 5..9, spokes i -- i+5.
inline Graph petersen() {
    Graph g(10);
    for (std::size_t i = 0; i < 5; ++i) {
        g.add_edge(i, (i + 1) % 5);
        g.add_edge(5 + i, 5 + (i + 2) % 5);
        g.add_edge(i, i + 5);
    }
    return g;
}

/// Uniform double in [0,1) from the top 53 bits; stable across standard libraries.
inline double unit_draw(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// G(n, p); pairs (i,j), i<j, visited in lexicographic order, one draw each.
inline Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("edge probability must lie in [0, 1], got " + std::to_string(p));
    std::mt19937_64 rng(seed);
    Graph g(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (unit_draw(rng) < p) g.add_edge(i, j);
    return g;
}

/// Uniform integer in [0, bound) by rejection; bound must be positive.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

/// Named generator request, as accepted by the CLI and the hint service.
struct Params {
    std::string kind;  // path | cycle | complete | grid | petersen | erdos_renyi
    std::size_t n = 0;
    std::size_t rows = 0;
    std::size_t cols = 0;
    double p = 0.0;
    std::optional<std::uint64_t> seed;
};

inline Graph generate(const Params& params) {
    const auto& k = params.kind;
    if (k == "path") return path(params.n);
    if (k == "cycle") return cycle(params.n);
    if (k == "complete") return complete(params.n);
    if (k == "grid") return grid(params.rows, params.cols);
    if (k == "petersen") return petersen();
    if (k == "erdos_renyi") {
        if (!params.seed) throw std::invalid_argument("erdos_renyi requires a seed");
        return erdos_renyi(params.n, params.p, *params.seed);
    }
    throw std::invalid_argument("unknown generator kind '" + k + "'");
}

}  // namespace toggled::gen
