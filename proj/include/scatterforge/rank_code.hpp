#pragma once

// Rank-metric codes [n, k]_{q^m/q} and their correspondence with q-systems: the columns
// of a generator matrix span the system over F_q.

#include <cstdint>
#include <map>
#include <optional>
#include <span>

#include "scatterforge/errors.hpp"
#include "scatterforge/field.hpp"
#include "scatterforge/geometry.hpp"
#include "scatterforge/matrix.hpp"
#include "scatterforge/subspace.hpp"

namespace scatterforge::rank_code {

using kernels::Exec;

struct RankCode {
    Tower tower;
    Matrix generator;  // k × n over F_{q^m}, rank k

    unsigned k() const { return static_cast<unsigned>(generator.rows()); }
    unsigned n() const { return static_cast<unsigned>(generator.cols()); }
};

/// Code whose generator columns are the stored basis of U. U must span F_{q^m}^k.
RankCode psi(const FqSubspace& U);
/// F_q-span of the generator columns. The columns must be F_q-independent.
FqSubspace phi(const RankCode& C);
/// Columns F_q-independent.
bool is_nondegenerate(const RankCode& C);

unsigned rank_weight(const Tower& T, std::span<const Elem> v);
/// Row space over F_q of the m × n coefficient matrix of v, in reduced row-echelon form
/// (one row per unit of rank weight).
Matrix rank_support(const Tower& T, std::span<const Elem> v);

/// x·G for a message x of length k.
Vec encode(const RankCode& C, std::span<const Elem> message);

struct Distribution {
    std::map<unsigned, std::uint64_t> counts;  // weight -> number of codewords, including 0
    unsigned d_min = 0;
    std::uint64_t total() const;
};

/// One representative per projective message, each class contributing q^m - 1 codewords.
Distribution weight_distribution_direct(const RankCode& C, const Budget& budget = {}, Exec exec = Exec::parallel);
/// W_{n-w} = (q^m - 1)·A_w from the hyperplane spectrum of phi(C).
Distribution weight_distribution_geometric(const RankCode& C, const Budget& budget = {},
                                           Exec exec = Exec::parallel);

struct Minimality {
    bool minimal = true;
    /// Ranks of two projective representatives with supp(first) ⊆ supp(second).
    std::optional<std::pair<std::uint64_t, std::uint64_t>> violating_pair;
    bool cutting = true;  // phi(C) is a cutting blocking set
    std::uint64_t representatives = 0;
};
/// Support containment over projective representatives, checked against the cutting
/// property of phi(C); disagreement throws InvariantViolation. Budget counts pairs of
/// representatives of distinct weight plus the support bitsets.
Minimality is_minimal(const RankCode& C, const Budget& budget = {}, Exec exec = Exec::parallel);

/// Generator of {v : v·c = 0 for all c ∈ C}.
RankCode dual_code(const RankCode& C);
/// Same row space.
bool same_code(const RankCode& a, const RankCode& b);

/// max over `samples` random v of min_c rank(v - c); every codeword is enumerated for each
/// sample. A lower bound on the covering radius.
unsigned covering_radius_lower_bound(const RankCode& C, unsigned samples, std::uint64_t seed,
                                     const Budget& budget = {}, Exec exec = Exec::parallel);

}  // namespace scatterforge::rank_code
