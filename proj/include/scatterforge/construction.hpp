#pragma once

// The subspace U_σ = {(x, x^σ + a, x^{σ²} + b) : x ∈ F_{q^m}, a, b ∈ F_q} of F_{q^m}^3,
// the criteria deciding its scatteredness, and its equivalence classes and stabilizer.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "scatterforge/errors.hpp"
#include "scatterforge/field.hpp"
#include "scatterforge/geometry.hpp"
#include "scatterforge/matrix.hpp"
#include "scatterforge/subspace.hpp"

namespace scatterforge::construction {

using kernels::Exec;

struct ConstructionParams {
    Tower tower;
    int s = 1;
    /// m < 5 or m even: outside the family, kept for experiments.
    bool oracle_mode = false;

    /// Requires 1 <= s <= m-1 and gcd(s, m) = 1.
    static ConstructionParams make(Tower tower, int s);
};

FqSubspace build_U_sigma(const ConstructionParams& params);
/// {(x, x^σ, x^{σ²})}.
FqSubspace build_W_sigma(const ConstructionParams& params);
/// ⟨(0,1,0), (0,0,1)⟩_{F_q}.
FqSubspace build_Z_infinity(const Tower& tower);

/// Q(X) = X^{σ²+1} - X^{σ+1} - X^σ + X = Q1(X)·Q2(X), Q1 = X^σ - X, Q2 = X(X^σ - X)^{σ-1} - 1.
struct QPolynomial {
    const Tower* tower;
    int s;
    Elem Q(Elem x) const;
    Elem Q1(Elem x) const;
    Elem Q2(Elem x) const;
};
QPolynomial q_polynomial(const ConstructionParams& params);

struct GCriterion {
    bool holds = true;              // G_{m-1}(γ) != 0 for every γ ∈ F_q^*
    std::optional<Elem> witness;    // first γ with G_{m-1}(γ) = 0
    std::vector<Elem> values;       // G_{m-1}(γ) for γ = 1 … q-1 (by index)
};
/// G_{m-1}(γ) with u = 1/γ for all γ ∈ F_q^*. The tower supplies F_q; m is the sequence length.
GCriterion g_criterion(const Tower& T, unsigned m, int s);
GCriterion g_criterion(const ConstructionParams& params);

/// Smallest prime factor of m exceeds q^{2s} - q^s + 1.
bool factorial_gcd_condition(std::uint64_t q, unsigned m, int s);

bool m5_condition(std::uint32_t p, unsigned e);
bool m7_condition(std::uint32_t p, unsigned e);

struct ScatteredCheck {
    bool scattered = true;
    std::optional<geometry::Witness> witness;        // first point of weight >= 2
    bool bundle_scattered = true;                     // every U ∩ ℓ_λ is scattered
    std::optional<std::uint64_t> bundle_witness;      // λ index, q^m meaning ℓ_∞
    std::uint64_t points = 0;
};
/// Point enumeration plus the line bundle through (0,0,1); disagreement is an InvariantViolation.
ScatteredCheck scatteredness_bruteforce(const FqSubspace& U, const Budget& budget = {}, Exec exec = Exec::parallel);

struct CriteriaReport {
    std::uint32_t p = 0;
    unsigned e = 0;
    unsigned m = 0;
    int s = 0;
    bool oracle_mode = false;
    bool cond_i = false;
    bool cond_ii = false;
    bool cond_iii = false;
    std::optional<Elem> cond_iii_witness;  // first root of Q outside F_q
    std::uint64_t q_roots = 0;             // roots of Q in F_{q^m}
    GCriterion g;
    bool g_matches_cond_iii = false;
    /// Root count of X^{σ+1} - γX + γ at the witness of g (q+1 expected).
    std::optional<std::uint64_t> witness_projective_roots;
    bool factorial = false;
    std::optional<bool> m5;
    std::optional<bool> m7;
    std::optional<ScatteredCheck> bruteforce;
    std::optional<std::string> bruteforce_skipped;  // reason when not run
};

/// Evaluates conditions i)-iii) and the auxiliary criteria. With with_bruteforce the
/// scattered check runs (skipped with a reason when over budget). Throws
/// InvariantViolation when m >= 5 and i)-iii) hold but the subspace is not scattered.
CriteriaReport check_main_theorem(const ConstructionParams& params, bool with_bruteforce, const Budget& budget = {},
                                  Exec exec = Exec::parallel);

struct LambdaLineCheck {
    Matrix power;                 // A_λ^m
    bool is_identity = false;
    std::optional<bool> closed_form_matches;  // λ = 1: A^m = (-(m-1), -m; m, m+1)
    unsigned kernel_dimension = 0;            // of y^{σ²} - (1+λ)y^σ + λy, by enumeration
    bool consistent = false;                  // kernel dimension 2 ⇔ A^m = I
};
LambdaLineCheck lambda_line_matrix_check(const ConstructionParams& params, Elem lambda, const Budget& budget = {});

/// R'_γ = roots of X^{σ+1} - γX + γ in F_{q^m}, for γ ∈ F_q.
struct RootSets {
    std::vector<std::vector<Elem>> sets;  // indexed by γ
    bool pairwise_disjoint = true;
    bool one_excluded = true;
};
RootSets projective_root_sets(const ConstructionParams& params, const Budget& budget = {});

/// U_s and U_t are equivalent iff t ∈ {s, m-s}. Requires gcd(s,m) = gcd(t,m) = 1.
bool equivalence_decision(int s, int t, unsigned m);

struct EquivalenceWitness {
    Matrix map;                      // v ↦ v·map
    unsigned frobenius_shift = 0;    // ℓ with U_s = {(z^{q^{2(m-s)}}, z^{q^{m-s}}+a, z+b)}, z = x^{q^ℓ}
    bool reparametrization_matches = false;
    bool image_matches = false;      // U_s·map = U_t
};
/// Witness for t ∈ {s, m-s}: the identity, or the coordinate reversal for t = m-s.
EquivalenceWitness equivalence_witness(const Tower& tower, int s, int t);

struct StabilizerCheck {
    bool family_stabilizes = true;
    std::uint64_t maps_checked = 0;
    std::uint64_t group_order = 0;  // (q-1)·e·m
    std::optional<std::pair<Elem, unsigned>> first_failure;  // (α, j)
    bool outside_rejected = true;   // sampled α ∉ F_q never stabilize
    std::uint64_t outside_samples = 0;
};
/// Maps v ↦ φ^j(v)·diag(α, α^{q^s}, α^{q^{2s}}), φ = x ↦ x^p, α ∈ F_q^*, j < e·m.
StabilizerCheck stabilizer_family_check(const ConstructionParams& params, unsigned outside_samples = 8);

}  // namespace scatterforge::construction
