#include "scatterforge/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace scatterforge::geometry {

namespace {

std::uint64_t upow(std::uint64_t b, unsigned e) {
    std::uint64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

Witness make_witness(const FqSubspace& U, unsigned subspace_dim, std::uint64_t rank, unsigned value) {
    const ProjectiveSpace PS(U.tower().fqm(), U.ambient_k());
    return Witness{subspace_dim, rank, PS.point(rank), value};
}

}  // namespace

unsigned weight(const FqSubspace& U, const ProjectiveSubspace& H) {
    require(H.ambient_k() == U.ambient_k(), "weight: ambient dimension mismatch");
    return static_cast<unsigned>(U.kernel_of_functionals(H.equations()).size());
}

std::vector<std::uint8_t> subspace_weights(const FqSubspace& U, unsigned h, const Budget& budget, Exec exec) {
    const unsigned k = U.ambient_k();
    require(h == 1 || h + 1 == k, "subspace_weights: only points and hyperplanes are enumerated");
    const ProjectiveSpace PS(U.tower().fqm(), k);
    budget.require(PS.size(), "subspace enumeration");
    return h == 1 ? kernels::point_weights(U, exec) : kernels::hyperplane_weights(U, exec);
}

Verdict is_evasive(const FqSubspace& U, unsigned h, unsigned r, const Budget& budget, Exec exec) {
    const unsigned k = U.ambient_k();
    require(h <= k, "is_evasive: h exceeds the ambient dimension");
    Verdict out;
    if (h == 0) return out;
    if (h == k) {
        out.enumerated = 1;
        out.holds = U.dim() <= r;
        if (!out.holds) out.witness = Witness{k, 0, {}, U.dim()};
        return out;
    }
    const auto weights = subspace_weights(U, h, budget, exec);
    out.enumerated = weights.size();
    const auto it = std::find_if(weights.begin(), weights.end(), [r](std::uint8_t w) { return w > r; });
    if (it != weights.end()) {
        out.holds = false;
        out.witness = make_witness(U, h, static_cast<std::uint64_t>(it - weights.begin()), *it);
    }
    return out;
}

Verdict is_h_scattered(const FqSubspace& U, unsigned h, const Budget& budget, Exec exec) {
    return is_evasive(U, h, h, budget, exec);
}

Verdict is_cutting(const FqSubspace& U, unsigned t, const Budget& budget, Exec exec) {
    const unsigned k = U.ambient_k();
    require(t <= k, "is_cutting: codimension exceeds the ambient dimension");
    Verdict out;
    if (t == k) return out;
    if (t == 0) {
        out.enumerated = 1;
        const unsigned span = U.span_rank();
        out.holds = span == k;
        if (!out.holds) out.witness = Witness{k, 0, {}, span};
        return out;
    }
    const ProjectiveSpace PS(U.tower().fqm(), k);
    if (t + 1 == k) {
        // Points: cut iff they meet U.
        budget.require(PS.size(), "cutting check over points");
        const auto mult = kernels::point_multiplicities(U, exec);
        out.enumerated = mult.size();
        const auto it = std::find(mult.begin(), mult.end(), 0u);
        if (it != mult.end()) {
            out.holds = false;
            out.witness = make_witness(U, 1, static_cast<std::uint64_t>(it - mult.begin()), 0);
        }
        return out;
    }
    require(t == 1, "is_cutting: codimension must be 0, 1, k-1 or k");
    budget.require(PS.size(), "cutting check over hyperplanes");
    const auto spans = kernels::hyperplane_span_ranks(U, exec);
    out.enumerated = spans.size();
    const auto it = std::find_if(spans.begin(), spans.end(), [k](std::uint8_t s) { return s + 1u != k; });
    if (it != spans.end()) {
        out.holds = false;
        out.witness = make_witness(U, k - 1, static_cast<std::uint64_t>(it - spans.begin()), *it);
    }
    return out;
}

std::uint64_t WeightSpectrum::total() const {
    std::uint64_t t = 0;
    for (const auto& [w, c] : counts) t += c;
    return t;
}

WeightSpectrum weight_spectrum(const FqSubspace& U, unsigned subspace_dim, const Budget& budget, Exec exec) {
    WeightSpectrum out{U.ambient_k(), subspace_dim, {}};
    for (std::uint8_t w : subspace_weights(U, subspace_dim, budget, exec)) ++out.counts[w];
    return out;
}

LineCharacters closed_form_line_characters(std::uint64_t q, unsigned m) {
    require(q >= 2 && m >= 4, "closed_form_line_characters: needs q >= 2 and m >= 4");
    require(2.0 * m * std::log2(static_cast<double>(q)) < 62.0, "closed_form_line_characters: q^{2m} exceeds 2^62");
    using I = __int128;
    auto P = [q](unsigned e) { return static_cast<I>(upow(q, e)); };
    LineCharacters out;
    auto divide = [&out](I num, I den) {
        if (num % den != 0) out.integral = false;
        return static_cast<std::int64_t>(num / den);
    };
    const I qq = static_cast<I>(q);
    const I total = P(2 * m) + P(m) + 1;
    out.a4 = divide((P(m - 1) - 1) * (P(m - 4) - 1), (qq + 1) * (qq - 1) * (qq - 1));
    out.a3 = divide((P(m - 1) - 1) * (P(5) + P(m) * (P(4) - P(3) - 1)), (qq - 1) * (qq - 1) * P(4));
    out.a2 = static_cast<std::int64_t>(total - out.a3 - out.a4);
    out.a2_explicit = divide(P(7) + P(m + 1) * (P(6) - P(5) - P(4) - 1) + P(2 * m) * (P(7) - P(6) - P(5) + P(2) + 1),
                             P(4) * (qq + 1) * (qq - 1) * (qq - 1));
    return out;
}

std::map<std::uint64_t, std::uint64_t> point_counts_from_weights(const WeightSpectrum& spectrum, std::uint64_t q) {
    std::map<std::uint64_t, std::uint64_t> a;
    for (const auto& [w, c] : spectrum.counts) a[(upow(q, w) - 1) / (q - 1)] += c;
    return a;
}

std::map<std::uint64_t, std::uint64_t> hyperplane_point_counts(const FqSubspace& U, const Budget& budget, Exec exec) {
    const unsigned k = U.ambient_k();
    const ProjectiveSpace PS(U.tower().fqm(), k);
    const auto pts = linear_set_points(U, budget, exec);
    budget.require(PS.size(), "hyperplane point counts");
    std::vector<Vec> vectors;
    vectors.reserve(pts.size());
    for (const auto& p : pts) vectors.push_back(p.point);
    std::map<std::uint64_t, std::uint64_t> a;
    for (std::uint32_t c : kernels::hyperplane_incidences(U.tower().fqm(), k, vectors, exec)) ++a[c];
    return a;
}

StandardEquations standard_equations_check(std::uint64_t set_size, const std::map<std::uint64_t, std::uint64_t>& a,
                                           unsigned v, std::uint64_t field_size) {
    require(v >= 2 && field_size >= 2, "standard_equations_check: needs v >= 2");
    using I = __int128;
    auto gauss = [&](unsigned e) { return static_cast<I>((upow(field_size, e) - 1) / (field_size - 1)); };
    auto choose2 = [](I x) { return x * (x - 1) / 2; };
    I s0 = 0, s1 = 0, s2 = 0;
    for (const auto& [i, c] : a) {
        s0 += c;
        s1 += static_cast<I>(i) * c;
        s2 += choose2(static_cast<I>(i)) * c;
    }
    const I n = static_cast<I>(set_size);
    return {s0 == gauss(v), s1 == n * gauss(v - 1), s2 == choose2(n) * gauss(v - 2)};
}

std::vector<LinearSetPoint> linear_set_points(const FqSubspace& U, const Budget& budget, Exec exec) {
    const ProjectiveSpace PS(U.tower().fqm(), U.ambient_k());
    budget.require(std::max<std::uint64_t>(PS.size(), upow(U.tower().q(), U.dim())), "linear set enumeration");
    const auto mult = kernels::point_multiplicities(U, exec);
    const std::uint64_t q = U.tower().q();
    std::vector<LinearSetPoint> out;
    for (std::uint64_t r = 0; r < mult.size(); ++r) {
        if (mult[r] == 0) continue;
        unsigned w = 0;
        for (std::uint64_t x = std::uint64_t{mult[r]} + 1; x > 1; x /= q) ++w;
        out.push_back({r, PS.point(r), w});
    }
    return out;
}

Saturation is_saturating(const FqSubspace& U, unsigned rho, const Budget& budget, Exec exec) {
    const Tower& T = U.tower();
    const unsigned k = U.ambient_k();
    require(rho >= 1, "is_saturating: rho must be positive");
    require(T.has_q2m(), "is_saturating: tower lacks the quadratic extension");
    const Field& big = T.fq2m();
    const ProjectiveSpace PS(big, k);
    Saturation out;
    out.points = PS.size();
    if (rho >= k) {
        out.saturating = U.span_rank() == k;
        out.covered = out.saturating ? out.points : 0;
        return out;
    }
    require(rho <= 2, "is_saturating: exhaustive check supports rho in {1, 2} or rho >= k");
    const auto pts = linear_set_points(U, budget, exec);
    const std::uint64_t pairs = rho == 1 ? 0 : pts.size() * (pts.size() - 1) / 2;
    budget.require(std::max<std::uint64_t>(PS.size(), pairs * big.size()), "saturation bitmap");
    std::vector<Vec> vectors;
    vectors.reserve(pts.size());
    for (const auto& p : pts) vectors.push_back(p.point);
    std::vector<std::uint8_t> covered;
    if (rho == 2) {
        covered = kernels::secant_cover(big, k, vectors, exec);
    } else {
        covered.assign(PS.size(), 0);
        for (const Vec& v : vectors) covered[PS.rank_of(v)] = 1;
    }
    out.covered = static_cast<std::uint64_t>(std::count(covered.begin(), covered.end(), 1));
    out.saturating = out.covered == out.points;
    if (!out.saturating) {
        const auto r = static_cast<std::uint64_t>(std::find(covered.begin(), covered.end(), 0) - covered.begin());
        out.uncovered = Witness{1, r, PS.point(r), 0};
    }
    return out;
}

}  // namespace scatterforge::geometry
