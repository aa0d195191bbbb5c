#include "scatterforge/polynomial.hpp"

#include "scatterforge/errors.hpp"

namespace scatterforge::poly {

void trim(Poly& f) {
    while (!f.empty() && f.back().v == 0) f.pop_back();
}

int degree(const Poly& f) {
    for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
        if (f[i].v != 0) return i;
    return -1;
}

Elem evaluate(const Field& F, const Poly& f, Elem x) {
    Elem acc = F.zero();
    for (auto it = f.rbegin(); it != f.rend(); ++it) acc = F.add(F.mul(acc, x), *it);
    return acc;
}

Poly mul(const Field& F, const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, F.zero());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].v == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    }
    trim(r);
    return r;
}

Poly mod(const Field& F, Poly a, const Poly& b) {
    const int db = degree(b);
    require(db >= 0, "poly::mod: division by zero polynomial");
    const Elem lead_inv = F.inv(b[db]);
    for (int i = degree(a); i >= db; --i) {
        if (a[i].v == 0) continue;
        const Elem c = F.mul(a[i], lead_inv);
        for (int j = 0; j <= db; ++j) a[i - db + j] = F.sub(a[i - db + j], F.mul(c, b[j]));
    }
    trim(a);
    return a;
}

Poly monic_from_rank(const Field& F, unsigned d, std::uint64_t rank) {
    Poly f(d + 1, F.zero());
    for (unsigned i = 0; i < d; ++i) {
        f[i] = Elem{static_cast<std::uint32_t>(rank % F.size())};
        rank /= F.size();
    }
    f[d] = F.one();
    return f;
}

bool is_irreducible(const Field& F, const Poly& f) {
    const int d = degree(f);
    if (d < 1) return false;
    if (d == 1) return true;
    // Roots first: cheap and catches most candidates.
    for (std::uint32_t x = 0; x < F.size(); ++x)
        if (evaluate(F, f, Elem{x}).v == 0) return false;
    for (int k = 2; 2 * k <= d; ++k) {
        const std::uint64_t count = ipow(F.size(), static_cast<unsigned>(k));
        require(count <= (std::uint64_t{1} << 26), "poly::is_irreducible: trial division too large");
        for (std::uint64_t r = 0; r < count; ++r) {
            if (mod(F, f, monic_from_rank(F, k, r)).empty()) return false;
        }
    }
    return true;
}

Poly smallest_monic_irreducible(const Field& F, unsigned d) {
    require(d >= 1, "smallest_monic_irreducible: degree must be >= 1");
    const std::uint64_t count = ipow(F.size(), d);
    for (std::uint64_t r = 0; r < count; ++r) {
        Poly f = monic_from_rank(F, d, r);
        if (is_irreducible(F, f)) return f;
    }
    throw InvariantViolation("no irreducible polynomial found");  // cannot happen over a field
}

std::vector<Elem> roots(const Field& F, const Poly& f) {
    std::vector<Elem> out;
    for (std::uint32_t x = 0; x < F.size(); ++x)
        if (evaluate(F, f, Elem{x}).v == 0) out.push_back(Elem{x});
    return out;
}

}  // namespace scatterforge::poly
