#pragma once

// Shared brute-force oracles for the test suites. Everything here is kept
// independent of the library's Smith-normal-form path: subgroup closures are
// computed by BFS over tuples, determinants by Laplace expansion.

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "modlim/linalg.hpp"

namespace testutil {

using modlim::Int;
using modlim::IntMatrix;
using modlim::Modulus;

using Tuple = std::vector<std::int64_t>;

inline Tuple reduce_tuple(const std::vector<Int>& v, Modulus n) {
    Tuple t(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        Int r = v[i] % n;
        if (r < 0) r += n;
        t[i] = r.convert_to<std::int64_t>();
    }
    return t;
}

// Additive closure of the given generators inside (Z/n)^g.
inline std::set<Tuple> subgroup_closure(const std::vector<Tuple>& gens, Modulus n,
                                        std::size_t g) {
    std::set<Tuple> seen;
    seen.insert(Tuple(g, 0));
    std::vector<Tuple> frontier(seen.begin(), seen.end());
    while (!frontier.empty()) {
        std::vector<Tuple> next;
        for (const auto& t : frontier) {
            for (const auto& gen : gens) {
                Tuple s(g);
                for (std::size_t i = 0; i < g; ++i) s[i] = (t[i] + gen[i]) % n;
                if (seen.insert(s).second) next.push_back(s);
            }
        }
        frontier = std::move(next);
    }
    return seen;
}

inline std::set<Tuple> column_span_set(const IntMatrix& m, Modulus n) {
    std::vector<Tuple> gens;
    for (std::size_t j = 0; j < m.cols(); ++j) gens.push_back(reduce_tuple(m.col(j), n));
    return subgroup_closure(gens, n, m.rows());
}

// All tuples of (Z/n)^g, lexicographic.
inline std::vector<Tuple> all_tuples(Modulus n, std::size_t g) {
    std::vector<Tuple> out;
    Tuple t(g, 0);
    while (true) {
        out.push_back(t);
        std::size_t i = g;
        while (i > 0) {
            --i;
            if (++t[i] < n) break;
            t[i] = 0;
            if (i == 0) return out;
        }
        if (g == 0) return out;
    }
}

// Laplace-expansion determinant, independent of the library implementation.
inline Int laplace_det(const IntMatrix& m) {
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    if (n == 1) return m.at(0, 0);
    Int acc = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (m.at(0, j) == 0) continue;
        IntMatrix minor(n - 1, n - 1);
        for (std::size_t r = 1; r < n; ++r) {
            std::size_t cc = 0;
            for (std::size_t c = 0; c < n; ++c) {
                if (c == j) continue;
                minor.at(r - 1, cc++) = m.at(r, c);
            }
        }
        Int term = m.at(0, j) * laplace_det(minor);
        acc += (j % 2 == 0) ? term : -term;
    }
    return acc;
}

// k-th determinantal divisor: gcd of all k x k minors (0 when all vanish).
inline Int determinantal_divisor(const IntMatrix& m, std::size_t k);

inline void choose(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                   std::vector<std::vector<std::size_t>>& out) {
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = start; i < n; ++i) {
        cur.push_back(i);
        choose(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

inline Int determinantal_divisor(const IntMatrix& m, std::size_t k) {
    std::vector<std::vector<std::size_t>> row_sets, col_sets;
    std::vector<std::size_t> cur;
    choose(m.rows(), k, 0, cur, row_sets);
    choose(m.cols(), k, 0, cur, col_sets);
    Int g = 0;
    for (const auto& rs : row_sets) {
        for (const auto& cs : col_sets) {
            IntMatrix sub(k, k);
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j) sub.at(i, j) = m.at(rs[i], cs[j]);
            g = modlim::positive_gcd(g, laplace_det(sub));
        }
    }
    return g;
}

inline IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c,
                               std::int64_t lo, std::int64_t hi) {
    std::uniform_int_distribution<std::int64_t> dist(lo, hi);
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = dist(rng);
    return m;
}

}  // namespace testutil
