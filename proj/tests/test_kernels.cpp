#include <random>

#include "doctest.h"
#include "scatterforge/construction.hpp"
#include "scatterforge/kernels.hpp"
#include "scatterforge/rank_code.hpp"
#include "support.hpp"

using namespace scatterforge;
using namespace scatterforge::kernels;

TEST_SUITE("kernels") {
    TEST_CASE("serial and parallel paths agree") {
        std::mt19937_64 rng(17);
        for (auto [p, e, m, dim] : {std::tuple{2u, 1u, 5u, 7u}, {3u, 1u, 3u, 5u}, {2u, 2u, 3u, 5u}, {2u, 1u, 4u, 6u}}) {
            const Tower T = Tower::build(p, e, m);
            const FqSubspace U = testing::random_subspace(T, 3, dim, rng);
            CHECK(point_multiplicities(U, Exec::serial) == point_multiplicities(U, Exec::parallel));
            CHECK(point_weights(U, Exec::serial) == point_weights(U, Exec::parallel));
            CHECK(hyperplane_weights(U, Exec::serial) == hyperplane_weights(U, Exec::parallel));
            CHECK(hyperplane_span_ranks(U, Exec::serial) == hyperplane_span_ranks(U, Exec::parallel));
            std::vector<Vec> pts;
            for (const auto& pt : geometry::linear_set_points(U)) pts.push_back(pt.point);
            CHECK(hyperplane_incidences(T.fqm(), 3, pts, Exec::serial) ==
                  hyperplane_incidences(T.fqm(), 3, pts, Exec::parallel));
            CHECK(secant_cover(T.fqm(), 3, pts, Exec::serial) == secant_cover(T.fqm(), 3, pts, Exec::parallel));
            if (U.span_rank() == 3) {
                const auto C = rank_code::psi(U);
                CHECK(codeword_weights(T, C.generator, Exec::serial) == codeword_weights(T, C.generator, Exec::parallel));
                const Vec v = testing::random_vector(T.fqm(), C.n(), rng);
                CHECK(min_rank_distance(T, C.generator, v, Exec::serial) ==
                      min_rank_distance(T, C.generator, v, Exec::parallel));
            }
        }
    }

    TEST_CASE("point multiplicities and weights are consistent") {
        const auto P = construction::ConstructionParams::make(Tower::build(2, 2, 5), 1);
        const FqSubspace U = construction::build_U_sigma(P);
        const auto mult = point_multiplicities(U, Exec::parallel);
        const auto w = point_weights(U, Exec::parallel);
        for (std::size_t r = 0; r < w.size(); ++r) {
            std::uint64_t expected = 1;
            for (unsigned i = 0; i < w[r]; ++i) expected *= 4;
            REQUIRE(mult[r] == expected - 1);
        }
    }

    TEST_CASE("F_q rank") {
        const Tower T = Tower::build(3, 1, 3);
        FqRank rank(T, 2);
        const std::vector<Elem> flat{Elem{1}, Elem{0}, Elem{2}, Elem{0}, Elem{0}, Elem{5}};
        CHECK(rank(flat) == 2);  // (2,0) = 2·(1,0)
        const std::vector<Elem> dep{Elem{1}, Elem{4}, Elem{2}, Elem{8}};
        CHECK(rank(dep) == 1);
        const Tower T2 = Tower::build(2, 1, 5);
        FqRank r2(T2, 1);
        CHECK(r2(std::vector<Elem>{Elem{1}, Elem{2}, Elem{3}}) == 2);
    }

    TEST_CASE("nested supports") {
        // Supports in F_2^3 as bitsets over the 8 vectors; 0: ⟨e0⟩, 1: ⟨e0, e1⟩, 2: ⟨e2⟩.
        const std::vector<std::uint8_t> weight{1, 2, 1};
        const std::vector<std::vector<std::uint32_t>> basis{{1}, {1, 2}, {4}};
        const std::vector<std::uint64_t> membership{0b11, 0b1111, 0b10001};
        for (Exec ex : {Exec::serial, Exec::parallel}) {
            const auto pair = find_nested_support(weight, basis, membership, 1, ex);
            REQUIRE(pair.found());
            CHECK(pair.smaller == 0);
            CHECK(pair.larger == 1);
        }
        // 1: ⟨e1, e0+e2⟩ contains neither e0 nor e2.
        const std::vector<std::uint64_t> apart{0b11, 0b10100101, 0b10001};
        const std::vector<std::vector<std::uint32_t>> apart_basis{{1}, {2, 5}, {4}};
        CHECK_FALSE(find_nested_support(weight, apart_basis, apart, 1, Exec::serial).found());
    }
}
