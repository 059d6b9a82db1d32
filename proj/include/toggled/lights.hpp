#pragma once

#include <cstddef>
#include <vector>

#include "toggled/bits.hpp"
#include "toggled/graph.hpp"

namespace toggled {

namespace detail {
template <class Tag>
void require_length(const Bits<Tag>& b, const Graph& g) {
    if (b.size() != g.size()) {
        throw std::invalid_argument("length " + std::to_string(b.size()) + " does not match graph with " +
                                    std::to_string(g.size()) + " vertices");
    }
}
}  // namespace detail

/// Toggles v and every neighbour of v.
inline Configuration press(Configuration c, const Graph& g, std::size_t v) {
    detail::require_length(c, g);
    c.check_index(v);
    c ^= bits_cast<Configuration>(g.closed_neighborhood(v));
    return c;
}

/// Toggle vector of a press-set: bit v is the parity of |N[v] ∩ s|.
inline Configuration effect(const Graph& g, const PressSet& s) {
    detail::require_length(s, g);
    BitVector acc(g.size());
    for (auto v = s.find_first(); v < s.size(); v = s.find_next(v + 1)) {
        acc ^= g.neighbors(v);
        acc.flip(v);
    }
    return bits_cast<Configuration>(acc);
}

inline Configuration apply_press_set(const Configuration& c, const Graph& g, const PressSet& s) {
    detail::require_length(c, g);
    return c ^ effect(g, s);
}

inline Configuration complement(const Configuration& c) { return ~c; }

/// Bit v of effect(g, s), without materialising the whole vector.
inline bool toggle_parity_at(const Graph& g, const PressSet& s, std::size_t v) {
    detail::require_length(s, g);
    s.check_index(v);
    return s.test(v) != bits_cast<PressSet>(g.neighbors(v)).dot(s);
}

/// Ascending; always of even length.
inline std::vector<std::size_t> odd_degree_vertices(const Graph& g) {
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < g.size(); ++v)
        if (g.degree(v) % 2 == 1) out.push_back(v);
    return out;
}

}  // namespace toggled
