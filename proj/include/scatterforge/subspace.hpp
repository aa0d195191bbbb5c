#pragma once

// F_q-subspaces of F_{q^m}^k (q-systems) and F_{q^m}-subspaces of F_{q^m}^k.
//
// Coordinates: an element of F_{q^m} expands over F_q in the power basis of the root of
// the defining polynomial (its packed digits, see field.hpp). A vector of F_{q^m}^k
// expands to k·m F_q-coordinates, coordinate j occupying block [j·m, (j+1)·m).

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "scatterforge/field.hpp"
#include "scatterforge/matrix.hpp"

namespace scatterforge {

using Vec = std::vector<Elem>;

/// PG(k-1, N) with canonical representatives (leftmost nonzero coordinate = 1), ranked
/// in lexicographic order of the representatives, coordinate 0 most significant and
/// element indices as the order on each coordinate. For k = 3 this reads
/// (0,0,1) < (0,1,*) < (1,*,*).
class ProjectiveSpace {
  public:
    ProjectiveSpace(const Field& F, unsigned k);

    const Field& field() const { return *F_; }
    unsigned k() const { return k_; }
    std::uint64_t size() const { return size_; }

    void point(std::uint64_t rank, std::span<Elem> out) const;
    Vec point(std::uint64_t rank) const;
    /// Scales v in place so the leftmost nonzero coordinate is 1; false for the zero vector.
    bool normalize(std::span<Elem> v) const;
    /// Rank of the point spanned by nonzero v (v need not be normalized).
    std::uint64_t rank_of(std::span<const Elem> v) const;

  private:
    const Field* F_;
    unsigned k_;
    std::uint64_t n_;
    std::uint64_t size_;
    std::vector<std::uint64_t> offset_;  // offset_[i]: first rank with leading coordinate i
};

/// An F_q-subspace of F_{q^m}^k given by an F_q-independent basis.
class FqSubspace {
  public:
    /// Throws PreconditionError when the vectors are F_q-dependent or malformed.
    FqSubspace(Tower tower, unsigned ambient_k, std::vector<Vec> basis);

    /// Span of arbitrary generators (dependent ones are dropped, order kept).
    static FqSubspace span(Tower tower, unsigned ambient_k, const std::vector<Vec>& generators);

    const Tower& tower() const { return tower_; }
    unsigned ambient_k() const { return k_; }
    unsigned dim() const { return static_cast<unsigned>(basis_.size()); }
    const std::vector<Vec>& basis() const { return basis_; }

    /// RREF of the dim × (k·m) expansion over F_q.
    const Matrix& canonical() const { return canonical_; }
    bool contains(std::span<const Elem> v) const;

    /// F_q-coordinates of v (length k·m).
    std::vector<Elem> expand(std::span<const Elem> v) const;
    Vec collapse(std::span<const Elem> coords) const;

    /// Calls fn on every vector of the subspace (q^dim of them, zero first).
    void for_each_vector(const std::function<void(std::span<const Elem>)>& fn) const;
    /// Vector with F_q-coordinates given by the base-q digits of `index` w.r.t. basis().
    Vec vector_at(std::uint64_t index) const;

    /// Basis of {u ∈ U : f·u = 0 for every f in functionals} (f·u = Σ f_j u_j over F_{q^m}).
    std::vector<Vec> kernel_of_functionals(const std::vector<Vec>& functionals) const;

    /// Dimension over F_{q^m} of the F_{q^m}-span.
    unsigned span_rank() const;

    friend bool operator==(const FqSubspace& a, const FqSubspace& b);

  private:
    Tower tower_;
    unsigned k_;
    std::vector<Vec> basis_;
    Matrix canonical_;
};

/// An F_{q^m}-subspace of F_{q^m}^k, kept in reduced row-echelon form.
class ProjectiveSubspace {
  public:
    ProjectiveSubspace(const Field& F, unsigned ambient_k, std::vector<Vec> basis);

    static ProjectiveSubspace point(const Field& F, Vec v);
    /// {x : c·x = 0}.
    static ProjectiveSubspace hyperplane(const Field& F, const Vec& c);
    static ProjectiveSubspace from_equations(const Field& F, unsigned ambient_k, const std::vector<Vec>& eqs);
    static ProjectiveSubspace whole(const Field& F, unsigned ambient_k);
    static ProjectiveSubspace zero(const Field& F, unsigned ambient_k);

    unsigned ambient_k() const { return k_; }
    unsigned dim() const { return static_cast<unsigned>(rref_.rows()); }
    std::vector<Vec> basis() const;
    /// Functionals cutting out the subspace (basis of its annihilator).
    std::vector<Vec> equations() const;
    bool contains(std::span<const Elem> v) const;

    friend bool operator==(const ProjectiveSubspace& a, const ProjectiveSubspace& b) { return a.rref_ == b.rref_; }

  private:
    const Field* F_;
    unsigned k_;
    Matrix rref_;
};

/// Dimension over F of the F-span of the given vectors.
unsigned span_rank(const Field& F, const std::vector<Vec>& vectors, unsigned ambient_k);

}  // namespace scatterforge
