#include <random>

#include "doctest.h"
#include "scatterforge/construction.hpp"
#include "scatterforge/rank_code.hpp"
#include "support.hpp"

using namespace scatterforge;
using namespace scatterforge::rank_code;

namespace {

RankCode u_sigma_code(std::uint32_t p, unsigned m, int s = 1) {
    return psi(construction::build_U_sigma(construction::ConstructionParams::make(Tower::build(p, 1, m), s)));
}

// Spanning F_q-subspace of F_{q^m}^3 of the given dimension.
FqSubspace random_system(const Tower& T, unsigned dim, std::mt19937_64& rng) {
    for (;;) {
        FqSubspace U = testing::random_subspace(T, 3, dim, rng);
        if (U.span_rank() == 3) return U;
    }
}

}  // namespace

TEST_SUITE("rank_code") {
    TEST_CASE("psi and phi") {
        const RankCode C = u_sigma_code(2, 5);
        CHECK(C.n() == 7);
        CHECK(C.k() == 3);
        CHECK(is_nondegenerate(C));
        const Tower T = Tower::build(2, 1, 5);
        std::mt19937_64 rng(31);
        for (int i = 0; i < 20; ++i) {
            const FqSubspace U = random_system(T, 3 + i % 6, rng);
            CHECK(phi(psi(U)) == U);
        }
        const FqSubspace flat(T, 3, {Vec{Elem{1}, Elem{0}, Elem{0}}, Vec{Elem{0}, Elem{1}, Elem{0}}});
        CHECK_THROWS_AS(psi(flat), PreconditionError);
        RankCode degenerate{T, Matrix(1, 2)};
        degenerate.generator(0, 0) = Elem{1};
        degenerate.generator(0, 1) = Elem{1};
        CHECK_FALSE(is_nondegenerate(degenerate));
        CHECK_THROWS_AS(phi(degenerate), PreconditionError);
    }

    TEST_CASE("rank weight and support") {
        const Tower T = Tower::build(2, 1, 5);
        const Field& F = T.fqm();
        CHECK(rank_weight(T, Vec(7, Elem{0})) == 0);
        const Elem g = F.primitive();
        CHECK(rank_weight(T, Vec{F.one(), g, F.mul(g, g), F.zero(), F.zero()}) == 3);
        CHECK(rank_weight(T, Vec{F.one(), F.one(), F.zero()}) == 1);
        std::mt19937_64 rng(12);
        for (int i = 0; i < 100; ++i) {
            const Vec v = testing::random_vector(F, 7, rng);
            const Matrix supp = rank_support(T, v);
            CHECK(supp.rows() == rank_weight(T, v));
            for (std::uint32_t l = 1; l < 32; ++l) {
                Vec w = v;
                for (Elem& x : w) x = F.mul(x, Elem{l});
                REQUIRE(rank_weight(T, w) == rank_weight(T, v));
                REQUIRE(rank_support(T, w) == supp);
            }
        }
    }

    TEST_CASE("weight distribution of psi(U_sigma)") {
        const RankCode C = u_sigma_code(2, 5);
        const auto direct = weight_distribution_direct(C);
        const auto geometric = weight_distribution_geometric(C);
        const std::map<unsigned, std::uint64_t> expected{{0, 1}, {3, 155}, {4, 7440}, {5, 25172}};
        CHECK(direct.counts == expected);
        CHECK(geometric.counts == expected);
        CHECK(direct.d_min == 3);
        CHECK(direct.total() == 32768);
        CHECK(weight_distribution_direct(C, Budget{}, Exec::serial).counts == expected);
    }

    TEST_CASE("distribution routes agree on random systems") {
        std::mt19937_64 rng(13);
        for (auto [p, m] : {std::pair{2u, 4u}, {3u, 3u}, {2u, 5u}}) {
            const Tower T = Tower::build(p, 1, m);
            for (unsigned dim : {3u, 5u, 7u}) {
                const RankCode C = psi(random_system(T, dim, rng));
                const auto d = weight_distribution_direct(C);
                CHECK(d.counts == weight_distribution_geometric(C).counts);
                std::uint64_t total = 1;
                for (unsigned i = 0; i < m * 3; ++i) total *= p;
                CHECK(d.total() == total);
                CHECK(d.counts.at(0) == 1);
            }
        }
    }

    TEST_CASE("minimality") {
        const auto m2 = is_minimal(u_sigma_code(2, 5));
        CHECK(m2.minimal);
        CHECK(m2.cutting);
        CHECK(m2.representatives == 1057);
        const Tower T = Tower::build(2, 1, 5);
        const FqSubspace frame(T, 3, {Vec{Elem{1}, Elem{0}, Elem{0}}, Vec{Elem{0}, Elem{1}, Elem{0}},
                                      Vec{Elem{0}, Elem{0}, Elem{1}}});
        const auto frame_min = is_minimal(psi(frame));
        CHECK_FALSE(frame_min.minimal);
        CHECK_FALSE(frame_min.cutting);
        CHECK(frame_min.violating_pair);
        const FqSubspace line(T, 1, {Vec{Elem{1}}, Vec{Elem{2}}});
        CHECK(is_minimal(psi(line)).minimal);
        std::mt19937_64 rng(14);
        unsigned minimal = 0, not_minimal = 0;
        for (auto [p, m] : {std::pair{2u, 4u}, {3u, 3u}}) {
            const Tower Ts = Tower::build(p, 1, m);
            for (unsigned dim : {4u, 5u, 6u, 7u})
                for (int i = 0; i < 3; ++i) {
                    const auto r = is_minimal(psi(random_system(Ts, dim, rng)));
                    CHECK(r.minimal == r.cutting);
                    (r.minimal ? minimal : not_minimal)++;
                }
        }
        CHECK(minimal > 0);
        CHECK(not_minimal > 0);
        CHECK_THROWS_AS(is_minimal(u_sigma_code(2, 5), Budget{1000}), BudgetExceeded);
    }

    TEST_CASE("dual code") {
        const RankCode C = u_sigma_code(2, 5);
        const RankCode D = dual_code(C);
        CHECK(D.n() == 7);
        CHECK(D.k() == 4);
        const Matrix GH = multiply(C.tower.fqm(), C.generator, transpose(D.generator));
        for (std::size_t i = 0; i < GH.rows(); ++i)
            for (std::size_t j = 0; j < GH.cols(); ++j) CHECK(GH(i, j) == Elem{0});
        CHECK(same_code(dual_code(D), C));
        CHECK_FALSE(same_code(D, C));
    }

    TEST_CASE("covering radius lower bound") {
        const Tower T = Tower::build(2, 1, 3);
        const RankCode full{T, Matrix::identity(3)};
        CHECK(covering_radius_lower_bound(full, 5, 1) == 0);
        const FqSubspace U(T, 1, {Vec{Elem{1}}, Vec{Elem{2}}, Vec{Elem{4}}});
        const RankCode rep = psi(U);  // [3,1] code
        const unsigned b = covering_radius_lower_bound(rep, 20, 2);
        CHECK(b >= 1);
        CHECK(b <= 3);
        CHECK(covering_radius_lower_bound(rep, 20, 2) == b);
        CHECK(covering_radius_lower_bound(rep, 20, 2, Budget{}, Exec::serial) == b);
        const RankCode D = dual_code(u_sigma_code(2, 5));
        CHECK(covering_radius_lower_bound(D, 4, 1) <= 2);
    }
}
