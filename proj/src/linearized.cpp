#include "scatterforge/linearized.hpp"

#include <numeric>

namespace scatterforge::linearized {

namespace {

// x^{σ^i} for σ = q^s; i may be negative.
Elem sigma_pow(const Tower& T, Elem x, long i, int s) {
    const long m = T.m();
    long k = (i * s) % m;
    if (k < 0) k += m;
    return T.fqm().frobenius(x, static_cast<std::uint64_t>(k));
}

Matrix twist(const Tower& T, const Matrix& a, long i, int s) {
    return map_entries(a, [&](Elem x) { return sigma_pow(T, x, i, s); });
}

void check_s(const Tower& T, int s) {
    require(s >= 0 && static_cast<unsigned>(s) < T.m(), "linearized: Frobenius step must satisfy 0 <= s < m");
}

}  // namespace

int LinearizedPolynomial::sigma_degree() const {
    for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i)
        if (coeffs[i].v != 0) return i;
    return -1;
}

ProjectivePolynomial projective_partner(const LinearizedPolynomial& L) { return {L.s, L.coeffs}; }

LinearizedPolynomial linearized_partner(const ProjectivePolynomial& P) { return {P.s, P.coeffs}; }

LinearizedPolynomial reduced(const Tower& T, const LinearizedPolynomial& L) {
    const Field& F = T.fqm();
    LinearizedPolynomial out{L.s, std::vector<Elem>(std::min<std::size_t>(L.coeffs.size(), T.m()), F.zero())};
    for (std::size_t i = 0; i < L.coeffs.size(); ++i) out.coeffs[i % T.m()] = F.add(out.coeffs[i % T.m()], L.coeffs[i]);
    while (!out.coeffs.empty() && out.coeffs.back().v == 0) out.coeffs.pop_back();
    return out;
}

Elem evaluate(const Tower& T, const LinearizedPolynomial& L, Elem x) {
    check_s(T, L.s);
    const Field& F = T.fqm();
    Elem acc = F.zero();
    Elem xi = x;  // x^{σ^i}
    for (std::size_t i = 0; i < L.coeffs.size(); ++i) {
        acc = F.add(acc, F.mul(L.coeffs[i], xi));
        xi = sigma_pow(T, xi, 1, L.s);
    }
    return acc;
}

Elem evaluate(const Tower& T, const ProjectivePolynomial& P, Elem x) {
    check_s(T, P.s);
    const Field& F = T.fqm();
    // x^{(σ^i-1)/(σ-1)} = x · x^σ · … · x^{σ^{i-1}}
    Elem acc = F.zero();
    Elem power = F.one();
    Elem xi = x;
    for (std::size_t i = 0; i < P.coeffs.size(); ++i) {
        acc = F.add(acc, F.mul(P.coeffs[i], power));
        power = F.mul(power, xi);
        xi = sigma_pow(T, xi, 1, P.s);
    }
    return acc;
}

std::uint64_t count_roots_bruteforce(const Tower& T, const LinearizedPolynomial& L, const Budget& budget) {
    budget.require(std::uint64_t{T.qm()} * (L.coeffs.size() + 1), "count_roots_bruteforce");
    std::uint64_t n = 0;
    for (std::uint32_t x = 0; x < T.qm(); ++x)
        if (evaluate(T, L, Elem{x}).v == 0) ++n;
    return n;
}

std::uint64_t count_roots_bruteforce(const Tower& T, const ProjectivePolynomial& P, const Budget& budget) {
    budget.require(std::uint64_t{T.qm()} * (P.coeffs.size() + 1), "count_roots_bruteforce");
    std::uint64_t n = 0;
    for (std::uint32_t x = 0; x < T.qm(); ++x)
        if (evaluate(T, P, Elem{x}).v == 0) ++n;
    return n;
}

unsigned kernel_dimension_bruteforce(const Tower& T, const LinearizedPolynomial& L, const Budget& budget) {
    std::uint64_t n = count_roots_bruteforce(T, L, budget);
    unsigned dim = 0;
    while (n > 1) {
        if (n % T.q() != 0) throw InvariantViolation("kernel size of a linearized polynomial is not a q-power");
        n /= T.q();
        ++dim;
    }
    return dim;
}

Normalized normalize(const LinearizedPolynomial& L) {
    require(L.sigma_degree() >= 0, "normalize: zero polynomial");
    Normalized out;
    while (L.coeffs[out.shift].v == 0) ++out.shift;
    out.poly.s = L.s;
    out.poly.coeffs.assign(L.coeffs.begin() + out.shift, L.coeffs.begin() + L.sigma_degree() + 1);
    return out;
}

CompanionData companion(const Tower& T, const LinearizedPolynomial& L) {
    check_s(T, L.s);
    const Field& F = T.fqm();
    const int d = L.sigma_degree();
    require(d >= 1, "companion: sigma-degree >= 1 required");
    require(L.coeffs[0].v != 0, "companion: alpha_0 = 0, normalize with a power of sigma first");
    const Elem lead_inv = F.inv(L.coeffs[d]);

    CompanionData out;
    out.companion = Matrix(d, d);
    for (int i = 1; i < d; ++i) out.companion(i, i - 1) = F.one();
    for (int i = 0; i < d; ++i) out.companion(i, d - 1) = F.neg(F.mul(L.coeffs[i], lead_inv));

    Matrix a = out.companion;
    for (unsigned i = 1; i < T.m(); ++i) a = multiply(F, a, twist(T, out.companion, i, L.s));
    out.product = a;
    out.trace_A = trace(F, a);
    out.det_A = determinant(F, a);

    // det(X·I - A) interpolated from its values at the d+1 elements with indices 0..d.
    const std::size_t n = static_cast<std::size_t>(d) + 1;
    require(T.qm() > static_cast<std::uint32_t>(d), "companion: field too small for characteristic polynomial");
    Matrix vander(n, n + 1);
    for (std::size_t k = 0; k < n; ++k) {
        const Elem x = Elem{static_cast<std::uint32_t>(k)};
        Matrix shifted = a;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) shifted(i, j) = F.neg(a(i, j));
        for (int i = 0; i < d; ++i) shifted(i, i) = F.add(shifted(i, i), x);
        Elem xp = F.one();
        for (std::size_t j = 0; j < n; ++j) {
            vander(k, j) = xp;
            xp = F.mul(xp, x);
        }
        vander(k, n) = determinant(F, shifted);
    }
    rref(F, vander);
    out.charpoly.resize(n);
    for (std::size_t j = 0; j < n; ++j) out.charpoly[j] = vander(j, n);
    return out;
}

RootCounts root_count_via_eigenspaces(const Tower& T, const LinearizedPolynomial& L) {
    const Normalized nl = normalize(L);
    RootCounts out;
    out.shift = nl.shift;
    const int d = nl.poly.sigma_degree();
    if (d == 0) {
        // α X^{σ^shift}: only the zero root; P_M is a nonzero constant.
        out.roots_of_L = 1;
        out.roots_of_PL = 0;
        return out;
    }
    const Field& F = T.fqm();
    const CompanionData cd = companion(T, nl.poly);
    for (Elem c : cd.charpoly)
        if (!F.in_subfield(c)) throw InvariantViolation("characteristic polynomial of A_L not over F_q");

    const std::uint64_t q = T.q();
    out.roots_of_L = 1;
    for (std::uint32_t l = 0; l < q; ++l) {
        const Elem lambda{l};
        // Eigenvalue search: direct evaluation of the characteristic polynomial.
        Elem chi = F.zero();
        for (std::size_t j = cd.charpoly.size(); j-- > 0;) chi = F.add(F.mul(chi, lambda), cd.charpoly[j]);
        if (chi.v != 0) continue;
        Matrix shifted = cd.product;
        for (int i = 0; i < d; ++i) shifted(i, i) = F.sub(shifted(i, i), lambda);
        const unsigned n_lambda = static_cast<unsigned>(d - static_cast<int>(rank(F, shifted)));
        out.eigenspaces.emplace_back(lambda, n_lambda);
        out.roots_of_PL += (ipow(q, n_lambda) - 1) / (q - 1);
        if (lambda == F.one()) out.roots_of_L = ipow(q, n_lambda);
    }
    return out;
}

GSequence g_sequence(const Tower& T, Elem u, unsigned m, int s) {
    check_s(T, s);
    const Field& F = T.fqm();
    require(u.v < F.size(), "g_sequence: u not in F_{q^m}");
    GSequence g{u, s, std::vector<Elem>(m + 1)};
    g.values[0] = F.one();
    if (m >= 1) g.values[1] = F.neg(F.one());
    for (unsigned k = 2; k <= m; ++k) {
        const Elem a = sigma_pow(T, g.values[k - 1], 1, s);
        const Elem b = F.mul(u, sigma_pow(T, g.values[k - 2], 2, s));
        g.values[k] = F.neg(F.add(a, b));
    }
    return g;
}

bool satisfies_recursion(const Tower& T, const GSequence& g) {
    const Field& F = T.fqm();
    if (g.values.size() < 2 || g.values[0] != F.one() || g.values[1] != F.neg(F.one())) return false;
    for (std::size_t k = 2; k < g.values.size(); ++k) {
        const Elem lhs = F.add(F.add(g.values[k], sigma_pow(T, g.values[k - 1], 1, g.s)),
                               F.mul(g.u, sigma_pow(T, g.values[k - 2], 2, g.s)));
        if (lhs.v != 0) return false;
    }
    return true;
}

std::vector<std::uint64_t> lucas_coefficients(unsigned m) {
    require(m >= 1 && m <= 60, "lucas_coefficients: 1 <= m <= 60");
    std::vector<std::uint64_t> out;
    for (unsigned j = 0; 2 * j <= m; ++j) {
        // m(m-j-1)!/(j!(m-2j)!) = m/(m-j) · C(m-j, j)
        unsigned __int128 c = 1;
        for (unsigned i = 1; i <= j; ++i) c = c * (m - j - i + 1) / i;
        const unsigned __int128 num = c * m;
        if (num % (m - j) != 0) throw InvariantViolation("lucas_coefficients: non-integral coefficient");
        out.push_back(static_cast<std::uint64_t>(num / (m - j)));
    }
    return out;
}

Elem g_even_char_closed_form(const Tower& T, Elem gamma, unsigned m) {
    require(T.p() == 2, "g_even_char_closed_form: characteristic 2 required");
    const Field& F = T.fq();
    require(gamma.v != 0 && gamma.v < F.size(), "g_even_char_closed_form: gamma must lie in F_q^*");
    const auto coeffs = lucas_coefficients(m);
    const Elem ginv = F.inv(gamma);
    Elem acc = F.zero();
    Elem power = F.one();
    for (std::uint64_t c : coeffs) {
        if (c % 2 == 1) acc = F.add(acc, power);
        power = F.mul(power, ginv);
    }
    return acc;
}

Elem degree2_u(const Tower& T, const LinearizedPolynomial& L) {
    require(L.sigma_degree() == 2, "degree2: sigma-degree 2 required");
    const Field& F = T.fqm();
    const Elem a0 = L.coeffs[0], a1 = L.coeffs[1], a2 = L.coeffs[2];
    require(a1.v != 0, "degree2: alpha_1 != 0 required for u");
    const Elem num = F.mul(sigma_pow(T, a0, 1, L.s), a2);
    const Elem den = F.mul(sigma_pow(T, a1, 1, L.s), a1);
    return F.div(num, den);
}

Matrix degree2_product_via_g(const Tower& T, const LinearizedPolynomial& L) {
    const Field& F = T.fqm();
    const int s = L.s;
    const unsigned m = T.m();
    const Elem a0 = L.coeffs[0], a1 = L.coeffs[1], a2 = L.coeffs[2];
    const Elem u = degree2_u(T, L);
    const auto G = g_sequence(T, u, m, s).values;
    const Elem n = T.norm(F.div(a1, a2));
    Matrix a(2, 2);
    a(0, 0) = F.neg(F.mul(sigma_pow(T, u, -1, s), sigma_pow(T, G[m - 2], 1, s)));
    a(0, 1) = F.neg(F.mul(F.div(a0, a1), sigma_pow(T, G[m - 1], 1, s)));
    a(1, 0) = F.mul(sigma_pow(T, F.div(a2, a1), -1, s), G[m - 1]);
    a(1, 1) = G[m];
    return map_entries(a, [&](Elem x) { return F.mul(n, x); });
}

Degree2TraceForms degree2_trace_forms(const Tower& T, const LinearizedPolynomial& L) {
    const Field& F = T.fqm();
    const int s = L.s;
    const unsigned m = T.m();
    const Elem u = degree2_u(T, L);
    const auto G = g_sequence(T, u, m, s).values;
    const Elem n = T.norm(F.div(L.coeffs[1], L.coeffs[2]));
    Degree2TraceForms out;
    out.via_g_minus =
        F.mul(n, F.sub(G[m], F.mul(sigma_pow(T, u, -1, s), sigma_pow(T, G[m - 2], 1, s))));
    out.via_g_plus =
        F.mul(n, F.add(F.add(G[m], sigma_pow(T, G[m], 1, s)), sigma_pow(T, G[m - 1], 1, s)));
    return out;
}

Degree2DetForms degree2_det_forms(const Tower& T, const LinearizedPolynomial& L) {
    const Field& F = T.fqm();
    const CompanionData cd = companion(T, L);
    const Elem det_c = determinant(F, cd.companion);
    Degree2DetForms out;
    out.product_of_dets = F.one();
    for (unsigned i = 0; i < T.m(); ++i) out.product_of_dets = F.mul(out.product_of_dets, sigma_pow(T, det_c, i, L.s));
    out.norm_a0_over_a2 = T.norm(F.div(L.coeffs[0], L.coeffs[2]));
    out.norm_a0a1_over_a2 = T.norm(F.div(F.mul(L.coeffs[0], L.coeffs[1]), L.coeffs[2]));
    return out;
}

}  // namespace scatterforge::linearized
