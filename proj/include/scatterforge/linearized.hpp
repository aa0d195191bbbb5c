#pragma once

// σ-linearized polynomials L(X) = Σ α_i X^{σ^i} over F_{q^m}, σ = x ↦ x^{q^s}, and their
// projective partners P_L(X) = Σ α_i X^{(σ^i-1)/(σ-1)}, related by L(X) = X·P_L(X^{σ-1}).
//
// Root counts come from the σ-twisted product of companion matrices
//     A_L = C_L · C_L^σ · … · C_L^{σ^{m-1}}:
// L has q^{n_1} roots and P_L has Σ_{λ∈F_q} (q^{n_λ}-1)/(q-1) roots, n_λ being the
// dimension of the λ-eigenspace of A_L.

#include <cstdint>
#include <utility>
#include <vector>

#include "scatterforge/errors.hpp"
#include "scatterforge/field.hpp"
#include "scatterforge/matrix.hpp"

namespace scatterforge::linearized {

struct LinearizedPolynomial {
    int s = 1;
    std::vector<Elem> coeffs;  // α_0 … α_d

    /// Largest i with α_i != 0, or -1 for the zero polynomial.
    int sigma_degree() const;
};

struct ProjectivePolynomial {
    int s = 1;
    std::vector<Elem> coeffs;
};

ProjectivePolynomial projective_partner(const LinearizedPolynomial& L);
LinearizedPolynomial linearized_partner(const ProjectivePolynomial& P);

/// Folds exponents σ^i with i >= m onto i mod m (σ^m is the identity on F_{q^m}).
LinearizedPolynomial reduced(const Tower& T, const LinearizedPolynomial& L);

Elem evaluate(const Tower& T, const LinearizedPolynomial& L, Elem x);
Elem evaluate(const Tower& T, const ProjectivePolynomial& P, Elem x);

/// log_q of the number of roots of L in F_{q^m}, by full enumeration.
unsigned kernel_dimension_bruteforce(const Tower& T, const LinearizedPolynomial& L, const Budget& budget = {});
std::uint64_t count_roots_bruteforce(const Tower& T, const LinearizedPolynomial& L, const Budget& budget = {});
std::uint64_t count_roots_bruteforce(const Tower& T, const ProjectivePolynomial& P, const Budget& budget = {});

/// L = M ∘ X^{σ^shift} with M(0-coefficient) != 0.
struct Normalized {
    LinearizedPolynomial poly;
    unsigned shift = 0;
};
Normalized normalize(const LinearizedPolynomial& L);

struct CompanionData {
    Matrix companion;  // C_L
    Matrix product;    // A_L
    Elem trace_A;
    Elem det_A;
    /// det(X·I - A_L) coefficients, low degree first (monic, length d+1).
    std::vector<Elem> charpoly;
};

/// Requires α_0 != 0 and α_d != 0.
CompanionData companion(const Tower& T, const LinearizedPolynomial& L);

struct RootCounts {
    std::uint64_t roots_of_L = 0;
    /// Roots of P_M for the normalized polynomial M (see normalize()).
    std::uint64_t roots_of_PL = 0;
    unsigned shift = 0;
    std::vector<std::pair<Elem, unsigned>> eigenspaces;  // (λ ∈ F_q, n_λ) with n_λ > 0
};

RootCounts root_count_via_eigenspaces(const Tower& T, const LinearizedPolynomial& L);

/// G_0 = 1, G_1 = -1, G_k + G_{k-1}^σ + u G_{k-2}^{σ²} = 0.
struct GSequence {
    Elem u;
    int s = 1;
    std::vector<Elem> values;  // G_0 … G_m
};

GSequence g_sequence(const Tower& T, Elem u, unsigned m, int s);
/// Re-checks the recursion at every index.
bool satisfies_recursion(const Tower& T, const GSequence& g);

/// G_{m-1}(γ) = Σ_j m(m-j-1)!/(j!(m-2j)!) γ^{-j} in characteristic 2. γ ∈ F_q^*.
Elem g_even_char_closed_form(const Tower& T, Elem gamma, unsigned m);

/// Integer coefficients m(m-j-1)!/(j!(m-2j)!) for j = 0 … ⌊m/2⌋.
std::vector<std::uint64_t> lucas_coefficients(unsigned m);

// --- degree-2 closed forms -----------------------------------------------------------

/// u = α_0^σ α_2 / α_1^{σ+1}; requires α_1 != 0.
Elem degree2_u(const Tower& T, const LinearizedPolynomial& L);

/// A_L written through the G-sequence: N(α_1/α_2)·[[-u^{σ^{-1}}G_{m-2}^σ, -(α_0/α_1)G_{m-1}^σ],
/// [(α_2/α_1)^{σ^{-1}} G_{m-1}, G_m]].
Matrix degree2_product_via_g(const Tower& T, const LinearizedPolynomial& L);

struct Degree2TraceForms {
    Elem via_g_minus;  // N(α_1/α_2)(G_m - u^{σ^{-1}} G_{m-2}^σ)
    Elem via_g_plus;   // N(α_1/α_2)(G_m + G_m^σ + G_{m-1}^σ)
};
Degree2TraceForms degree2_trace_forms(const Tower& T, const LinearizedPolynomial& L);

struct Degree2DetForms {
    Elem product_of_dets;  // Π det(C_L)^{σ^i} = N(α_0/α_2)
    Elem norm_a0_over_a2;
    Elem norm_a0a1_over_a2;
};
Degree2DetForms degree2_det_forms(const Tower& T, const LinearizedPolynomial& L);

}  // namespace scatterforge::linearized
