#include <cmath>
#include <random>

#include "doctest.h"
#include "scatterforge/construction.hpp"
#include "scatterforge/geometry.hpp"
#include "support.hpp"

using namespace scatterforge;
using namespace scatterforge::geometry;

namespace {

construction::ConstructionParams params(std::uint32_t p, unsigned e, unsigned m, int s) {
    return construction::ConstructionParams::make(Tower::build(p, e, m), s);
}

FqSubspace whole_space(const Tower& T, unsigned k) {
    std::vector<Vec> basis;
    for (unsigned j = 0; j < k; ++j)
        for (unsigned i = 0; i < T.m(); ++i) {
            Vec v(k);
            v[j] = T.fqm().pow(T.fqm().element(T.q()), i);
            basis.push_back(v);
        }
    return FqSubspace(T, k, basis);
}

std::uint64_t ipow64(std::uint64_t b, unsigned e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

}  // namespace

TEST_SUITE("geometry") {
    TEST_CASE("weight") {
        const auto P = params(2, 1, 5, 1);
        const Field& F = P.tower.fqm();
        const FqSubspace U = construction::build_U_sigma(P);
        CHECK(weight(U, ProjectiveSubspace::whole(F, 3)) == U.dim());
        CHECK(weight(U, ProjectiveSubspace::zero(F, 3)) == 0);
        CHECK(weight(U, ProjectiveSubspace::hyperplane(F, {F.one(), F.zero(), F.zero()})) == 2);
    }

    TEST_CASE("scattered and evasive examples") {
        const auto P = params(2, 1, 5, 1);
        const FqSubspace U = construction::build_U_sigma(P);
        const FqSubspace single(P.tower, 3, {Vec{Elem{3}, Elem{1}, Elem{0}}});
        CHECK(is_h_scattered(single, 1).holds);
        const auto v = is_h_scattered(U, 1);
        CHECK(v.holds);
        CHECK(v.enumerated == 1057);
        CHECK(is_h_scattered(construction::build_W_sigma(P), 2).holds);
        CHECK(is_evasive(U, 1, 1).holds);
        for (unsigned h : {1u, 2u}) CHECK(is_evasive(U, h, U.dim()).holds);
        const auto lines = is_evasive(U, 2, 3);
        CHECK_FALSE(lines.holds);
        REQUIRE(lines.witness);
        CHECK(lines.witness->value == 4);
    }

    TEST_CASE("non-scattered witness is the first heavy point") {
        const auto P = params(2, 2, 5, 1);
        const FqSubspace U = construction::build_U_sigma(P);
        const auto v = is_h_scattered(U, 1);
        CHECK_FALSE(v.holds);
        REQUIRE(v.witness);
        const auto oracle = testing::point_weight_oracle(U);
        std::uint64_t first = 0;
        for (const auto& [r, w] : oracle)
            if (w >= 2) {
                first = r;
                break;
            }
        CHECK(v.witness->rank == first);
        CHECK(v.witness->value == oracle.at(first));
    }

    TEST_CASE("point weights equal the grouping oracle") {
        std::mt19937_64 rng(11);
        for (auto [p, m, dim] : {std::tuple{2u, 5u, 7u}, {3u, 3u, 5u}, {2u, 4u, 9u}}) {
            const Tower T = Tower::build(p, 1, m);
            for (int i = 0; i < 5; ++i) {
                const FqSubspace U = testing::random_subspace(T, 3, dim, rng);
                const auto w = subspace_weights(U, 1, Budget{});
                const auto oracle = testing::point_weight_oracle(U);
                for (std::uint64_t r = 0; r < w.size(); ++r) {
                    const auto it = oracle.find(r);
                    REQUIRE(w[r] == (it == oracle.end() ? 0u : it->second));
                }
            }
        }
    }

    TEST_CASE("cutting examples") {
        const auto P = params(2, 1, 5, 1);
        const FqSubspace all = whole_space(P.tower, 3);
        for (unsigned t = 0; t <= 3; ++t) CHECK(is_cutting(all, t).holds);
        const FqSubspace U = construction::build_U_sigma(P);
        CHECK(is_cutting(U, 1).holds);
        CHECK(is_cutting(U, 0).holds);
        const FqSubspace flat(P.tower, 3, {Vec{Elem{1}, Elem{0}, Elem{0}}, Vec{Elem{0}, Elem{1}, Elem{0}}});
        const auto v = is_cutting(flat, 1);
        CHECK_FALSE(v.holds);
        CHECK(v.witness);
        CHECK_FALSE(is_cutting(flat, 0).holds);
        CHECK_FALSE(is_cutting(flat, 2).holds);
    }

    TEST_CASE("line spectra") {
        for (auto [p, expected] : {std::pair{2u, std::map<unsigned, std::uint64_t>{{2, 812}, {3, 240}, {4, 5}}},
                                   {3u, std::map<unsigned, std::uint64_t>{{2, 56043}, {3, 3240}, {4, 10}}}}) {
            const auto P = params(p, 1, 5, 1);
            const FqSubspace U = construction::build_U_sigma(P);
            const auto spectrum = weight_spectrum(U, 2);
            CHECK(spectrum.counts == expected);
            const std::uint64_t qm = P.tower.qm();
            CHECK(spectrum.total() == qm * qm + qm + 1);
            const auto cf = closed_form_line_characters(p, 5);
            CHECK(cf.integral);
            CHECK(cf.a2 == cf.a2_explicit);
            CHECK(static_cast<std::uint64_t>(cf.a2) == expected.at(2));
            CHECK(static_cast<std::uint64_t>(cf.a3) == expected.at(3));
            CHECK(static_cast<std::uint64_t>(cf.a4) == expected.at(4));
            CHECK(spectrum.counts == weight_spectrum(U, 2, Budget{}, Exec::serial).counts);
        }
        for (unsigned m : {5u, 7u, 9u, 11u})
            for (std::uint64_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u}) {
                if (2.0 * m * std::log2(static_cast<double>(q)) >= 62.0) {
                    CHECK_THROWS_AS(closed_form_line_characters(q, m), PreconditionError);
                    continue;
                }
                const auto cf = closed_form_line_characters(q, m);
                CHECK(cf.integral);
                CHECK(cf.a2 == cf.a2_explicit);
                const std::uint64_t N = ipow64(q, m);
                CHECK(static_cast<std::uint64_t>(cf.a2 + cf.a3 + cf.a4) == N * N + N + 1);
            }
    }

    TEST_CASE("standard equations") {
        const std::uint64_t N = 32;
        CHECK(standard_equations_check(0, {{0, N * N + N + 1}}, 3, N).all());
        const auto P = params(2, 1, 5, 1);
        const FqSubspace U = construction::build_U_sigma(P);
        const auto spectrum = weight_spectrum(U, 2);
        auto a = point_counts_from_weights(spectrum, 2);
        CHECK(a == hyperplane_point_counts(U));
        CHECK(standard_equations_check(127, a, 3, N).all());
        a[15] -= 1;
        const auto bad = standard_equations_check(127, a, 3, N);
        CHECK_FALSE(bad.all());
        CHECK((!bad.incidences || !bad.pairs));
    }

    TEST_CASE("linear set points") {
        const auto P = params(2, 1, 5, 1);
        const FqSubspace single(P.tower, 3, {Vec{Elem{3}, Elem{1}, Elem{0}}});
        const auto one = linear_set_points(single);
        REQUIRE(one.size() == 1);
        CHECK(one[0].weight == 1);
        std::mt19937_64 rng(3);
        for (auto [p, m, dim] : {std::tuple{2u, 5u, 7u}, {3u, 3u, 5u}, {2u, 5u, 9u}}) {
            const Tower T = Tower::build(p, 1, m);
            const FqSubspace U = p == 2 && dim == 7 ? construction::build_U_sigma(params(2, 1, 5, 1))
                                                    : testing::random_subspace(T, 3, dim, rng);
            const auto pts = linear_set_points(U);
            std::uint64_t total = 0;
            for (const auto& pt : pts) total += ipow64(p, pt.weight) - 1;
            CHECK(total == ipow64(p, dim) - 1);
            if (is_h_scattered(U, 1).holds) CHECK(pts.size() == (ipow64(p, dim) - 1) / (p - 1));
        }
        CHECK(linear_set_points(construction::build_U_sigma(P)).size() == 127);
    }

    TEST_CASE("saturation against a pairwise oracle") {
        const Tower T = Tower::build(2, 1, 3).with_quadratic_extension();
        const Field& F = T.fq2m();
        const ProjectiveSpace P(F, 3);
        std::mt19937_64 rng(6);
        for (unsigned dim : {3u, 4u, 5u}) {
            const FqSubspace U = testing::random_subspace(T, 3, dim, rng);
            std::vector<Vec> L;
            for (const auto& pt : linear_set_points(U)) L.push_back(pt.point);
            auto det = [&](const Vec& a, const Vec& b, const Vec& c) {
                const Elem t0 = F.mul(a[0], F.sub(F.mul(b[1], c[2]), F.mul(b[2], c[1])));
                const Elem t1 = F.mul(a[1], F.sub(F.mul(b[0], c[2]), F.mul(b[2], c[0])));
                const Elem t2 = F.mul(a[2], F.sub(F.mul(b[0], c[1]), F.mul(b[1], c[0])));
                return F.add(F.sub(t0, t1), t2);
            };
            std::uint64_t covered = 0;
            for (std::uint64_t r = 0; r < P.size(); ++r) {
                const Vec x = P.point(r);
                bool hit = false;
                for (std::size_t i = 0; i < L.size() && !hit; ++i) {
                    if (P.rank_of(L[i]) == r) hit = true;
                    for (std::size_t j = i + 1; j < L.size() && !hit; ++j) hit = det(L[i], L[j], x) == F.zero();
                }
                covered += hit;
            }
            const auto sat = is_saturating(U, 2);
            CHECK(sat.points == P.size());
            CHECK(sat.covered == covered);
            CHECK(sat.saturating == (covered == P.size()));
            CHECK(sat.uncovered.has_value() == !sat.saturating);
        }
        const FqSubspace flat(T, 3, {Vec{Elem{1}, Elem{0}, Elem{0}}, Vec{Elem{0}, Elem{1}, Elem{0}}});
        const auto sat = is_saturating(flat, 2);
        CHECK_FALSE(sat.saturating);
        REQUIRE(sat.uncovered);
        CHECK(sat.uncovered->coords[2] != Elem{0});
        const FqSubspace U = construction::build_U_sigma(construction::ConstructionParams::make(T, 1));
        CHECK(is_saturating(U, 3).saturating);
        CHECK_FALSE(is_saturating(flat, 3).saturating);
        CHECK_THROWS_AS(is_saturating(construction::build_U_sigma(params(2, 1, 5, 1)), 2), PreconditionError);
    }

    TEST_CASE("evasive and cutting implications on random subspaces") {
        const Tower T = Tower::build(2, 1, 5);
        std::mt19937_64 rng(21);
        testing::EvasiveCuttingStats stats;
        for (unsigned dim : {6u, 7u, 8u})
            for (int i = 0; i < 10; ++i) testing::check_evasive_cutting(testing::random_subspace(T, 3, dim, rng), stats);
        for (int s : {1, 2, 3, 4}) testing::check_evasive_cutting(construction::build_U_sigma(params(2, 1, 5, s)), stats);
        CHECK(stats.counterexamples == 0);
        CHECK(stats.forward_premises > 0);
        CHECK(stats.converse_premises > 0);
    }
}
