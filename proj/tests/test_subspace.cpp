#include <random>

#include "doctest.h"
#include "scatterforge/construction.hpp"
#include "scatterforge/subspace.hpp"
#include "support.hpp"

using namespace scatterforge;

TEST_SUITE("subspace") {
    TEST_CASE("projective space ranking") {
        const Tower T = Tower::build(2, 1, 5);
        const ProjectiveSpace P(T.fqm(), 3);
        CHECK(P.size() == 1057);
        CHECK(P.point(0) == Vec{Elem{0}, Elem{0}, Elem{1}});
        CHECK(P.point(1) == Vec{Elem{0}, Elem{1}, Elem{0}});
        CHECK(P.point(33) == Vec{Elem{1}, Elem{0}, Elem{0}});
        for (std::uint64_t r = 0; r < P.size(); ++r) {
            Vec v = P.point(r);
            REQUIRE(P.rank_of(v) == r);
            for (Elem& x : v) x = T.fqm().mul(x, Elem{7});
            REQUIRE(P.rank_of(v) == r);
        }
        Vec zero(3);
        CHECK_FALSE(P.normalize(zero));
    }

    TEST_CASE("canonical form equality") {
        const Tower T = Tower::build(3, 1, 3);
        const Field& F = T.fqm();
        std::mt19937_64 rng(4);
        for (int i = 0; i < 50; ++i) {
            const FqSubspace U = testing::random_subspace(T, 3, 4, rng);
            std::vector<Vec> mixed;
            const auto& b = U.basis();
            for (std::size_t j = 0; j < b.size(); ++j) {
                Vec v = b[j];
                const Vec& w = b[(j + 1) % b.size()];
                for (unsigned c = 0; c < 3; ++c) v[c] = F.add(v[c], F.mul(Elem{2}, w[c]));
                mixed.push_back(v);
            }
            mixed.push_back(b[0]);
            const FqSubspace V = FqSubspace::span(T, 3, mixed);
            CHECK(V.dim() == U.dim());
            CHECK(V == U);
            for (const Vec& v : mixed) CHECK(U.contains(v));
        }
    }

    TEST_CASE("dependent bases are rejected") {
        const Tower T = Tower::build(2, 1, 5);
        const Vec v{Elem{3}, Elem{0}, Elem{1}};
        CHECK_THROWS_AS(FqSubspace(T, 3, {v, v}), PreconditionError);
        CHECK_THROWS_AS(FqSubspace(T, 3, {Vec{Elem{1}, Elem{2}}}), PreconditionError);
    }

    TEST_CASE("vector enumeration and indexing agree") {
        const Tower T = Tower::build(3, 1, 3);
        std::mt19937_64 rng(8);
        const FqSubspace U = testing::random_subspace(T, 3, 4, rng);
        std::vector<Vec> walked;
        U.for_each_vector([&](std::span<const Elem> v) { walked.emplace_back(v.begin(), v.end()); });
        CHECK(walked.size() == 81);
        CHECK(walked[0] == Vec(3, Elem{0}));
        std::vector<Vec> indexed;
        for (std::uint64_t i = 0; i < 81; ++i) indexed.push_back(U.vector_at(i));
        std::sort(walked.begin(), walked.end());
        std::sort(indexed.begin(), indexed.end());
        CHECK(walked == indexed);
        CHECK(std::adjacent_find(walked.begin(), walked.end()) == walked.end());
    }

    TEST_CASE("expansion round trip") {
        const Tower T = Tower::build(2, 2, 3);
        std::mt19937_64 rng(2);
        const FqSubspace U = testing::random_subspace(T, 3, 3, rng);
        for (int i = 0; i < 20; ++i) {
            const Vec v = testing::random_vector(T.fqm(), 3, rng);
            const auto c = U.expand(v);
            CHECK(c.size() == 9);
            CHECK(U.collapse(c) == v);
        }
    }

    TEST_CASE("kernel of functionals") {
        const auto params = construction::ConstructionParams::make(Tower::build(2, 1, 5), 1);
        const FqSubspace U = construction::build_U_sigma(params);
        const Field& F = params.tower.fqm();
        // x_0 = 0 cuts U_σ in ⟨(0,1,0), (0,0,1)⟩.
        const auto ker = U.kernel_of_functionals({Vec{F.one(), F.zero(), F.zero()}});
        CHECK(ker.size() == 2);
        CHECK(FqSubspace(params.tower, 3, ker) == construction::build_Z_infinity(params.tower));
        CHECK(U.kernel_of_functionals({}).size() == U.dim());
        CHECK(U.span_rank() == 3);
    }

    TEST_CASE("projective subspaces") {
        const Tower T = Tower::build(2, 1, 5);
        const Field& F = T.fqm();
        const auto H = ProjectiveSubspace::hyperplane(F, {F.one(), F.zero(), F.zero()});
        CHECK(H.dim() == 2);
        CHECK(H.equations().size() == 1);
        CHECK(H.contains(Vec{Elem{0}, Elem{5}, Elem{9}}));
        CHECK_FALSE(H.contains(Vec{Elem{1}, Elem{5}, Elem{9}}));
        CHECK(ProjectiveSubspace::whole(F, 3).equations().empty());
        CHECK(ProjectiveSubspace::zero(F, 3).dim() == 0);
        CHECK(ProjectiveSubspace::from_equations(F, 3, H.equations()) == H);
        CHECK(ProjectiveSubspace::point(F, {Elem{0}, Elem{3}, Elem{0}}) ==
              ProjectiveSubspace::point(F, {Elem{0}, Elem{1}, Elem{0}}));
    }
}
