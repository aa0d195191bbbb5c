#include "scatterforge/rank_code.hpp"

#include <algorithm>
#include <random>

namespace scatterforge::rank_code {

RankCode psi(const FqSubspace& U) {
    const unsigned k = U.ambient_k();
    require(U.span_rank() == k, "psi: the subspace does not span the ambient space");
    Matrix G(k, U.dim());
    for (unsigned c = 0; c < U.dim(); ++c)
        for (unsigned i = 0; i < k; ++i) G(i, c) = U.basis()[c][i];
    return {U.tower(), std::move(G)};
}

namespace {

std::vector<Vec> columns(const RankCode& C) {
    std::vector<Vec> cols(C.n(), Vec(C.k()));
    for (unsigned c = 0; c < C.n(); ++c)
        for (unsigned i = 0; i < C.k(); ++i) cols[c][i] = C.generator(i, c);
    return cols;
}

}  // namespace

bool is_nondegenerate(const RankCode& C) {
    return FqSubspace::span(C.tower, C.k(), columns(C)).dim() == C.n();
}

FqSubspace phi(const RankCode& C) {
    require(is_nondegenerate(C), "phi: generator columns are F_q-dependent");
    return FqSubspace(C.tower, C.k(), columns(C));
}

Matrix rank_support(const Tower& T, std::span<const Elem> v) {
    const unsigned m = T.m();
    const std::uint32_t q = T.q();
    Matrix A(m, v.size());
    for (std::size_t j = 0; j < v.size(); ++j) {
        std::uint32_t x = v[j].v;
        for (unsigned i = 0; i < m; ++i, x /= q) A(i, j) = Elem{x % q};
    }
    rref(T.fq(), A);
    return A;
}

unsigned rank_weight(const Tower& T, std::span<const Elem> v) {
    kernels::FqRank rank(T, 1);
    return rank(v);
}

Vec encode(const RankCode& C, std::span<const Elem> message) {
    require(message.size() == C.k(), "encode: message has wrong length");
    const Field& F = C.tower.fqm();
    Vec c(C.n(), F.zero());
    for (unsigned j = 0; j < C.n(); ++j)
        for (unsigned i = 0; i < C.k(); ++i) c[j] = F.add(c[j], F.mul(message[i], C.generator(i, j)));
    return c;
}

std::uint64_t Distribution::total() const {
    std::uint64_t t = 0;
    for (const auto& [w, c] : counts) t += c;
    return t;
}

namespace {

void finish(Distribution& d) {
    d.counts[0] += 1;
    for (const auto& [w, c] : d.counts)
        if (w > 0 && c > 0) {
            d.d_min = w;
            break;
        }
}

}  // namespace

Distribution weight_distribution_direct(const RankCode& C, const Budget& budget, Exec exec) {
    const ProjectiveSpace PS(C.tower.fqm(), C.k());
    budget.require(PS.size(), "codeword enumeration");
    const std::uint64_t scale = C.tower.qm() - 1;
    Distribution d;
    for (std::uint8_t w : kernels::codeword_weights(C.tower, C.generator, exec)) d.counts[w] += scale;
    finish(d);
    return d;
}

Distribution weight_distribution_geometric(const RankCode& C, const Budget& budget, Exec exec) {
    const auto spectrum = geometry::weight_spectrum(phi(C), C.k() - 1, budget, exec);
    const std::uint64_t scale = C.tower.qm() - 1;
    Distribution d;
    for (const auto& [w, count] : spectrum.counts) d.counts[C.n() - w] += scale * count;
    finish(d);
    return d;
}

Minimality is_minimal(const RankCode& C, const Budget& budget, Exec exec) {
    const Tower& T = C.tower;
    const Field& F = T.fqm();
    const unsigned k = C.k();
    const unsigned n = C.n();
    const std::uint32_t q = T.q();
    const ProjectiveSpace PS(F, k);
    const std::uint64_t reps = PS.size();
    const std::uint64_t space = ipow(q, n);
    const std::size_t words = (space + 63) / 64;
    budget.require(reps * space, "support bitsets");

    Minimality out;
    out.representatives = reps;
    std::vector<std::uint8_t> weight(reps);
    std::vector<std::vector<std::uint32_t>> basis_index(reps);
    std::vector<std::uint64_t> membership(reps * words, 0);
    const Field& fq = T.fq();
    const auto total = static_cast<std::int64_t>(reps);
#pragma omp parallel for schedule(dynamic, 64) if (exec == Exec::parallel)
    for (std::int64_t r = 0; r < total; ++r) {
        const Matrix S = rank_support(T, encode(C, PS.point(static_cast<std::uint64_t>(r))));
        const auto w = static_cast<unsigned>(S.rows());
        weight[r] = static_cast<std::uint8_t>(w);
        auto index_of = [&](std::span<const Elem> row) {
            std::uint32_t idx = 0;
            for (unsigned j = n; j-- > 0;) idx = idx * q + row[j].v;
            return idx;
        };
        for (unsigned i = 0; i < w; ++i) basis_index[r].push_back(index_of(S.row(i)));
        // Every vector of the support: Σ c_i S_i over coefficient tuples.
        std::uint64_t* set = membership.data() + static_cast<std::uint64_t>(r) * words;
        std::vector<Elem> acc(n);
        const std::uint64_t combos = ipow(q, w);
        for (std::uint64_t t = 0; t < combos; ++t) {
            std::fill(acc.begin(), acc.end(), fq.zero());
            std::uint64_t digits = t;
            for (unsigned i = 0; i < w; ++i, digits /= q) {
                const Elem c{static_cast<std::uint32_t>(digits % q)};
                if (c.v == 0) continue;
                for (unsigned j = 0; j < n; ++j) acc[j] = fq.add(acc[j], fq.mul(c, S(i, j)));
            }
            const std::uint32_t idx = index_of(acc);
            set[idx >> 6] |= std::uint64_t{1} << (idx & 63);
        }
    }

    // Equal weights: containment means equality, found by sorting reduced bases.
    std::vector<std::uint64_t> order(reps);
    for (std::uint64_t r = 0; r < reps; ++r) order[r] = r;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::uint64_t a, std::uint64_t b) { return basis_index[a] < basis_index[b]; });
    std::optional<std::pair<std::uint64_t, std::uint64_t>> equal;
    for (std::uint64_t i = 1; i < reps; ++i) {
        const std::uint64_t a = order[i - 1], b = order[i];
        if (basis_index[a] != basis_index[b]) continue;
        const auto pair = std::make_pair(std::min(a, b), std::max(a, b));
        if (!equal || pair < *equal) equal = pair;
    }

    std::map<unsigned, std::uint64_t> by_weight;
    for (std::uint8_t w : weight) ++by_weight[w];
    std::uint64_t pairs = 0, heavier = reps;
    for (const auto& [w, c] : by_weight) {
        heavier -= c;
        pairs += c * heavier;
    }
    budget.require(pairs, "support containment pairs");
    const auto nested = kernels::find_nested_support(weight, basis_index, membership, words, exec);

    std::optional<std::pair<std::uint64_t, std::uint64_t>> violation = equal;
    if (nested.found()) {
        const auto pair = std::make_pair(static_cast<std::uint64_t>(nested.smaller),
                                         static_cast<std::uint64_t>(nested.larger));
        if (!violation || pair < *violation) violation = pair;
    }
    out.minimal = !violation.has_value();
    out.violating_pair = violation;
    out.cutting = geometry::is_cutting(phi(C), 1, budget, exec).holds;
    if (out.minimal != out.cutting)
        throw InvariantViolation("is_minimal: support containment and cutting property disagree");
    return out;
}

RankCode dual_code(const RankCode& C) { return {C.tower, right_kernel(C.tower.fqm(), C.generator)}; }

bool same_code(const RankCode& a, const RankCode& b) {
    Matrix x = a.generator, y = b.generator;
    rref(a.tower.fqm(), x);
    rref(b.tower.fqm(), y);
    return x == y;
}

unsigned covering_radius_lower_bound(const RankCode& C, unsigned samples, std::uint64_t seed, const Budget& budget,
                                     Exec exec) {
    const Field& F = C.tower.fqm();
    budget.require(std::uint64_t{samples} * ipow(F.size(), C.k()), "covering radius sampling");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint32_t> pick(0, F.size() - 1);
    unsigned best = 0;
    Vec v(C.n());
    for (unsigned i = 0; i < samples; ++i) {
        for (auto& x : v) x = Elem{pick(rng)};
        best = std::max(best, kernels::min_rank_distance(C.tower, C.generator, v, exec));
    }
    return best;
}

}  // namespace scatterforge::rank_code
