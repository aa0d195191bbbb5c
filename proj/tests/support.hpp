#pragma once

// Shared helpers for the unit and acceptance tests.

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "scatterforge/field.hpp"
#include "scatterforge/geometry.hpp"
#include "scatterforge/subspace.hpp"

namespace scatterforge::testing {

inline Vec random_vector(const Field& F, unsigned k, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint32_t> pick(0, F.size() - 1);
    Vec v(k);
    for (auto& x : v) x = Elem{pick(rng)};
    return v;
}

/// A uniformly generated F_q-subspace of F_{q^m}^k of the requested dimension.
inline FqSubspace random_subspace(const Tower& T, unsigned k, unsigned dim, std::mt19937_64& rng) {
    std::vector<Vec> gens;
    for (;;) {
        gens.push_back(random_vector(T.fqm(), k, rng));
        FqSubspace U = FqSubspace::span(T, k, gens);
        if (U.dim() == dim) return U;
        if (U.dim() < gens.size()) gens.pop_back();
    }
}

/// Point weights by grouping the vectors of U under projective normalization.
inline std::map<std::uint64_t, unsigned> point_weight_oracle(const FqSubspace& U) {
    const ProjectiveSpace P(U.tower().fqm(), U.ambient_k());
    std::map<std::uint64_t, std::uint64_t> count;
    U.for_each_vector([&](std::span<const Elem> v) {
        for (Elem x : v)
            if (x.v != 0) {
                ++count[P.rank_of(v)];
                return;
            }
    });
    std::map<std::uint64_t, unsigned> weights;
    for (const auto& [r, c] : count) {
        unsigned w = 0;
        for (std::uint64_t n = c + 1; n > 1; n /= U.tower().q()) ++w;
        weights[r] = w;
    }
    return weights;
}

struct EvasiveCuttingStats {
    unsigned subspaces = 0;
    unsigned forward_premises = 0;   // instances where the evasive hypothesis held
    unsigned converse_premises = 0;  // instances where the cutting hypothesis held
    unsigned counterexamples = 0;
};

/// Forward and converse evasive/cutting implications at k = 3 for one subspace of dimension n:
///   t = 2: n = m + h + 1 and (1,h)-evasive ⇒ 1-cutting; 1-cutting with n > m - 1 ⇒ (1, n-m-1)-evasive.
///   t = 3: (2, n-1)-evasive ⇒ 0-cutting; 0-cutting ⇒ (2, n-1)-evasive.
inline void check_evasive_cutting(const FqSubspace& U, EvasiveCuttingStats& stats) {
    const unsigned m = U.tower().m(), n = U.dim();
    ++stats.subspaces;
    const bool cut1 = geometry::is_cutting(U, 1).holds;
    const bool cut0 = geometry::is_cutting(U, 0).holds;
    if (n >= m + 1) {
        const unsigned h = n - m - 1;
        const bool ev = geometry::is_evasive(U, 1, h).holds;
        if (ev) {
            ++stats.forward_premises;
            stats.counterexamples += !cut1;
        }
        if (cut1) {
            ++stats.converse_premises;
            stats.counterexamples += !ev;
        }
    } else if (n == m && cut1) {
        // The converse would demand (1, -1)-evasiveness.
        ++stats.converse_premises;
        ++stats.counterexamples;
    }
    const bool ev2 = geometry::is_evasive(U, 2, n - 1).holds;
    if (ev2) {
        ++stats.forward_premises;
        stats.counterexamples += !cut0;
    }
    if (cut0) {
        ++stats.converse_premises;
        stats.counterexamples += !ev2;
    }
}

}  // namespace scatterforge::testing
