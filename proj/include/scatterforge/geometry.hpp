#pragma once

// Weights, evasiveness, scatteredness, cutting and saturation of q-systems, and weight
// spectra of linear sets with respect to points and hyperplanes.
//
// Budgets count enumerated objects: points or hyperplanes for the predicates, and
// (pairs of points) × (points per line) for the saturation bitmap.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "scatterforge/errors.hpp"
#include "scatterforge/kernels.hpp"
#include "scatterforge/subspace.hpp"

namespace scatterforge::geometry {

using kernels::Exec;

/// dim_q(U ∩ H).
unsigned weight(const FqSubspace& U, const ProjectiveSubspace& H);

/// A projective subspace singled out by a predicate. Points are given by their canonical
/// representative, hyperplanes by the canonical representative of their equation.
struct Witness {
    unsigned subspace_dim = 0;
    std::uint64_t rank = 0;
    Vec coords;
    unsigned value = 0;  // the offending weight or span dimension
};

struct Verdict {
    bool holds = true;
    std::optional<Witness> witness;  // first violation in rank order
    std::uint64_t enumerated = 0;
};

/// Weight of every h-dimensional F_{q^m}-subspace, h ∈ {1, k-1}, indexed by rank of the
/// point or of the hyperplane equation.
std::vector<std::uint8_t> subspace_weights(const FqSubspace& U, unsigned h, const Budget& budget,
                                           Exec exec = Exec::parallel);

Verdict is_evasive(const FqSubspace& U, unsigned h, unsigned r, const Budget& budget = {}, Exec exec = Exec::parallel);
Verdict is_h_scattered(const FqSubspace& U, unsigned h, const Budget& budget = {}, Exec exec = Exec::parallel);
/// Every subspace H of codimension t satisfies ⟨H ∩ U⟩_{F_{q^m}} = H. Supported t: 0, 1, k-1, k.
Verdict is_cutting(const FqSubspace& U, unsigned t, const Budget& budget = {}, Exec exec = Exec::parallel);

struct WeightSpectrum {
    unsigned ambient_k = 0;
    unsigned subspace_dim = 0;
    std::map<unsigned, std::uint64_t> counts;
    std::uint64_t total() const;
};

WeightSpectrum weight_spectrum(const FqSubspace& U, unsigned subspace_dim, const Budget& budget = {},
                               Exec exec = Exec::parallel);

/// Line counts A_2, A_3, A_4 of a rank m+2 linear set of PG(2, q^m) with three characters.
struct LineCharacters {
    std::int64_t a2 = 0;
    std::int64_t a3 = 0;
    std::int64_t a4 = 0;
    std::int64_t a2_explicit = 0;  // direct formula for A_2, must equal a2
    bool integral = true;          // every division was exact
};
LineCharacters closed_form_line_characters(std::uint64_t q, unsigned m);

/// a_i: number of hyperplanes containing i points of L_U, using (q^w-1)/(q-1) points per
/// weight w (exact when U is scattered).
std::map<std::uint64_t, std::uint64_t> point_counts_from_weights(const WeightSpectrum& spectrum, std::uint64_t q);

/// a_i counted directly: for every hyperplane, the number of points of L_U on it.
std::map<std::uint64_t, std::uint64_t> hyperplane_point_counts(const FqSubspace& U, const Budget& budget = {},
                                                               Exec exec = Exec::parallel);

struct StandardEquations {
    bool point_count = false;  // Σ a_i = (N^v - 1)/(N - 1)
    bool incidences = false;   // Σ i a_i = |S| (N^{v-1} - 1)/(N - 1)
    bool pairs = false;        // Σ C(i,2) a_i = C(|S|,2) (N^{v-2} - 1)/(N - 1)
    bool all() const { return point_count && incidences && pairs; }
};
/// Checks the hyperplane identities for a set S of PG(v-1, N).
StandardEquations standard_equations_check(std::uint64_t set_size, const std::map<std::uint64_t, std::uint64_t>& a,
                                           unsigned v, std::uint64_t field_size);

struct LinearSetPoint {
    std::uint64_t rank = 0;
    Vec point;
    unsigned weight = 0;
};
std::vector<LinearSetPoint> linear_set_points(const FqSubspace& U, const Budget& budget = {},
                                              Exec exec = Exec::parallel);

struct Saturation {
    bool saturating = false;
    std::optional<Witness> uncovered;  // first uncovered point of PG(k-1, q^{2m})
    std::uint64_t points = 0;          // size of PG(k-1, q^{2m})
    std::uint64_t covered = 0;
};
/// Whether L_U, embedded in PG(k-1, q^{2m}), is (rho-1)-saturating: every point lies in
/// a subspace spanned by at most rho points of L_U. Needs the tower's quadratic extension.
/// Exhaustive for rho ∈ {1, 2}; for rho >= k it reduces to L_U spanning.
Saturation is_saturating(const FqSubspace& U, unsigned rho, const Budget& budget = {}, Exec exec = Exec::parallel);

}  // namespace scatterforge::geometry
