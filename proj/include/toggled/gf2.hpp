#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "toggled/bits.hpp"
#include "toggled/graph.hpp"
#include "toggled/lights.hpp"

namespace toggled {

/// Dense matrix over GF(2), one packed BitVector per row.
class GF2Matrix {
public:
    GF2Matrix() = default;
    GF2Matrix(std::size_t rows, std::size_t width) : width_(width), rows_(rows, BitVector(width)) {}

    static GF2Matrix identity(std::size_t n) {
        GF2Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.rows_[i].set(i);
        return m;
    }

    std::size_t rows() const noexcept { return rows_.size(); }
    std::size_t width() const noexcept { return width_; }

    bool get(std::size_t r, std::size_t c) const { return rows_[r].test(c); }
    void set(std::size_t r, std::size_t c, bool v = true) { rows_[r].assign(c, v); }

    BitVector& row(std::size_t r) { return rows_[r]; }
    const BitVector& row(std::size_t r) const { return rows_[r]; }

    void swap_rows(std::size_t a, std::size_t b) { std::swap(rows_[a], rows_[b]); }

    /// row(dst) ^= row(src), word-parallel.
    void add_row(std::size_t dst, std::size_t src) {
        auto* d = rows_[dst].data();
        const auto* s = rows_[src].data();
        for (std::size_t k = 0, words = rows_[dst].words().size(); k < words; ++k) d[k] ^= s[k];
    }

    /// Matrix-vector product; bit r is <row r, x>.
    BitVector multiply(const BitVector& x) const {
        BitVector out(rows());
        for (std::size_t r = 0; r < rows(); ++r)
            if (rows_[r].dot(x)) out.set(r);
        return out;
    }

    friend bool operator==(const GF2Matrix&, const GF2Matrix&) = default;

private:
    std::size_t width_ = 0;
    std::vector<BitVector> rows_;
};

/// A + I: row i is the closed neighbourhood of vertex i.
inline GF2Matrix build_system(const Graph& g) {
    GF2Matrix m(g.size(), g.size());
    for (std::size_t i = 0; i < g.size(); ++i) m.row(i) = g.closed_neighborhood(i);
    return m;
}

/// Reduced row echelon form plus the accumulated row operations,
/// so that transform * original == reduced.
struct Elimination {
    std::size_t rank = 0;
    GF2Matrix reduced;
    GF2Matrix transform;
    std::vector<std::size_t> pivot_columns;  // pivot_columns[r] for r < rank

    /// Applies the recorded row operations to a right-hand side.
    BitVector apply(const BitVector& rhs) const { return transform.multiply(rhs); }
};

/// Gauss-Jordan elimination. Pivot = lowest-index remaining row with a 1 in
/// the current column, so the output is fully deterministic.
inline Elimination eliminate(GF2Matrix m) {
    Elimination e;
    e.transform = GF2Matrix::identity(m.rows());
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.width() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && !m.get(p, c)) ++p;
        if (p == m.rows()) continue;
        m.swap_rows(r, p);
        e.transform.swap_rows(r, p);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i != r && m.get(i, c)) {
                m.add_row(i, r);
                e.transform.add_row(i, r);
            }
        }
        e.pivot_columns.push_back(c);
        ++r;
    }
    e.rank = r;
    e.reduced = std::move(m);
    return e;
}

struct SolveOutcome {
    PressSet particular;
    std::vector<PressSet> nullspace_basis;
    std::size_t rank = 0;

    std::size_t nullity() const noexcept { return nullspace_basis.size(); }
};

/// Basis of the quiet patterns: one vector per free column.
inline std::vector<PressSet> nullspace_basis(const Elimination& e) {
    const auto width = e.reduced.width();
    std::vector<bool> is_pivot(width, false);
    for (auto c : e.pivot_columns) is_pivot[c] = true;
    std::vector<PressSet> basis;
    for (std::size_t f = 0; f < width; ++f) {
        if (is_pivot[f]) continue;
        PressSet b(width);
        b.set(f);
        for (std::size_t r = 0; r < e.rank; ++r)
            if (e.reduced.get(r, f)) b.set(e.pivot_columns[r]);
        basis.push_back(std::move(b));
    }
    return basis;
}

/// Solves the system for one right-hand side using a precomputed elimination.
/// Free variables are set to zero.
inline std::optional<SolveOutcome> solve_with(const Elimination& e, const Configuration& target) {
    auto rhs = e.apply(bits_cast<BitVector>(target));
    if (rhs.find_next(e.rank) < rhs.size()) return std::nullopt;
    SolveOutcome out;
    out.rank = e.rank;
    out.particular = PressSet(e.reduced.width());
    for (std::size_t r = 0; r < e.rank; ++r)
        if (rhs.test(r)) out.particular.set(e.pivot_columns[r]);
    out.nullspace_basis = nullspace_basis(e);
    return out;
}

/// Press-set s with effect(g, s) == target, or nullopt if target is unreachable.
inline std::optional<SolveOutcome> solve(const Graph& g, const Configuration& target) {
    detail::require_length(target, g);
    return solve_with(eliminate(build_system(g)), target);
}

/// Complementing press-set. Every graph admits one, so failure is a bug.
inline SolveOutcome solve_complement(const Graph& g) {
    auto out = solve(g, Configuration::ones(g.size()));
    if (!out) throw std::logic_error("all-ones target reported unsolvable; elimination is broken");
    return *std::move(out);
}

inline std::optional<SolveOutcome> solve_transition(const Graph& g, const Configuration& from,
                                                    const Configuration& to) {
    detail::require_length(from, g);
    detail::require_length(to, g);
    return solve(g, from ^ to);
}

class CapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::size_t default_nullity_cap = 24;

/// Minimum-weight member of particular + span(nullspace_basis); ties go to the
/// lexicographically smallest index list (see index_lex_less). Walks the coset
/// in Gray-code order.
inline PressSet min_weight_solution(const SolveOutcome& outcome,
                                    std::size_t nullity_cap = default_nullity_cap) {
    const auto d = outcome.nullity();
    if (d > nullity_cap || d >= 64) {
        throw CapExceeded("nullspace dimension " + std::to_string(d) + " exceeds cap " +
                          std::to_string(nullity_cap));
    }
    PressSet cur = outcome.particular;
    PressSet best = cur;
    std::size_t best_w = cur.count();
    const std::uint64_t total = std::uint64_t{1} << d;
    for (std::uint64_t k = 1; k < total; ++k) {
        cur ^= outcome.nullspace_basis[static_cast<std::size_t>(std::countr_zero(k))];
        auto w = cur.count();
        if (w < best_w || (w == best_w && index_lex_less(cur, best))) {
            best = cur;
            best_w = w;
        }
    }
    return best;
}

/// Echelon form of a set of vectors, used for span membership.
template <class Tag>
class SpanReducer {
public:
    explicit SpanReducer(const std::vector<Bits<Tag>>& vectors) {
        for (auto v : vectors) {
            reduce_in_place(v);
            auto lead = v.find_first();
            if (lead == v.size()) continue;
            // keep rows fully reduced against each other
            for (auto& [c, row] : rows_)
                if (row.test(lead)) row ^= v;
            rows_.emplace_back(lead, std::move(v));
        }
    }

    std::size_t dimension() const noexcept { return rows_.size(); }

    Bits<Tag> reduce(Bits<Tag> v) const {
        reduce_in_place(v);
        return v;
    }

    bool contains(const Bits<Tag>& v) const { return reduce(v).none(); }

private:
    void reduce_in_place(Bits<Tag>& v) const {
        for (const auto& [c, row] : rows_)
            if (v.test(c)) v ^= row;
    }

    std::vector<std::pair<std::size_t, Bits<Tag>>> rows_;
};

}  // namespace toggled
