#pragma once

// Dense univariate polynomials over a Field, low degree first. Only what the tower
// needs: evaluation, division, irreducibility by trial division.

#include <cstdint>
#include <vector>

#include "scatterforge/field.hpp"

namespace scatterforge::poly {

using Poly = std::vector<Elem>;

void trim(Poly& f);
int degree(const Poly& f);  // -1 for the zero polynomial
Elem evaluate(const Field& F, const Poly& f, Elem x);
Poly mul(const Field& F, const Poly& a, const Poly& b);
/// Remainder of a modulo b (b != 0).
Poly mod(const Field& F, Poly a, const Poly& b);

/// Monic polynomial X^d + sum c_i X^i whose lower coefficients are the base-|F| digits of `rank`.
Poly monic_from_rank(const Field& F, unsigned d, std::uint64_t rank);

/// Trial division by every monic polynomial of degree <= deg/2.
bool is_irreducible(const Field& F, const Poly& f);

/// Smallest monic irreducible of degree d, polynomials ordered by the integer
/// sum c_i |F|^i of their coefficient indices.
Poly smallest_monic_irreducible(const Field& F, unsigned d);

/// All roots of f in F by exhaustive evaluation.
std::vector<Elem> roots(const Field& F, const Poly& f);

}  // namespace scatterforge::poly
