#pragma once

// Exhaustive enumeration kernels. Each kernel has a serial reference path and an OpenMP
// path selected by Exec; both return identical results.

#include <cstdint>
#include <span>
#include <vector>

#include "scatterforge/field.hpp"
#include "scatterforge/matrix.hpp"
#include "scatterforge/subspace.hpp"

namespace scatterforge::kernels {

enum class Exec { serial, parallel };

/// Applies SCATTERFORGE_THREADS (if set and positive) to the OpenMP runtime.
void configure_threads_from_env();

/// F_q-rank of a list of vectors over F_{q^m}, each `width` coordinates long and laid
/// out contiguously. Holds scratch space; one instance per thread.
class FqRank {
  public:
    FqRank(const Tower& T, unsigned width);
    unsigned operator()(std::span<const Elem> flat);

  private:
    std::uint32_t q_;
    unsigned m_;
    unsigned width_;
    bool bits_;
    FqEchelon ech_;
    std::vector<Elem> buf_;
};

/// counts[r] = number of nonzero vectors of U spanning the point of rank r in PG(k-1, q^m).
/// Serial walks the subspace depth-first; parallel indexes vectors directly.
std::vector<std::uint32_t> point_multiplicities(const FqSubspace& U, Exec exec);

/// weights[r] = dim_q(U ∩ ⟨P_r⟩) from the rank of U under the annihilator of P_r.
std::vector<std::uint8_t> point_weights(const FqSubspace& U, Exec exec);

/// weights[r] = dim_q(U ∩ H_r), H_r = {x : c_r·x = 0}, c_r the point of rank r.
std::vector<std::uint8_t> hyperplane_weights(const FqSubspace& U, Exec exec);

/// spans[r] = dim over F_{q^m} of the F_{q^m}-span of U ∩ H_r.
std::vector<std::uint8_t> hyperplane_span_ranks(const FqSubspace& U, Exec exec);

/// counts[r] = number of the given points (distinct, nonzero) on the hyperplane c_r·x = 0.
std::vector<std::uint32_t> hyperplane_incidences(const Field& F, unsigned k, const std::vector<Vec>& points,
                                                 Exec exec);

/// weights[r] = rank weight of x_r·G for the projective message x_r of rank r.
std::vector<std::uint8_t> codeword_weights(const Tower& T, const Matrix& G, Exec exec);

/// Marks every point of PG(k-1, F) that equals one of `points` or lies on the line through
/// two of them. `points` are coordinates over F (subfields embed by index).
std::vector<std::uint8_t> secant_cover(const Field& F, unsigned k, const std::vector<Vec>& points, Exec exec);

/// min over all codewords c = xG (x ∈ F_{q^m}^k) of rank(v - c).
unsigned min_rank_distance(const Tower& T, const Matrix& G, std::span<const Elem> v, Exec exec);

/// Searches for a pair (a, b) with weight[a] < weight[b] and supp(a) ⊆ supp(b).
/// Supports are subspaces of F_q^n: basis_index[a] lists a basis of supp(a) as base-q
/// integers, and membership holds one bitset over F_q^n per representative
/// (words_per_set 64-bit words each). Returns the pair with the smallest a, then smallest b.
struct SupportPair {
    std::int64_t smaller = -1;
    std::int64_t larger = -1;
    bool found() const { return smaller >= 0; }
};
SupportPair find_nested_support(const std::vector<std::uint8_t>& weight,
                                const std::vector<std::vector<std::uint32_t>>& basis_index,
                                const std::vector<std::uint64_t>& membership, std::size_t words_per_set, Exec exec);

}  // namespace scatterforge::kernels
