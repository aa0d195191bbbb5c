#include "doctest.h"
#include "scatterforge/certificate.hpp"

using namespace scatterforge;
using namespace scatterforge::certificate;

namespace {

json reparse(const json& j) { return json::parse(j.dump(2)); }

}  // namespace

TEST_SUITE("certificate") {
    TEST_CASE("construct certificates") {
        const Options opt;
        const json c = cmd_construct(2, 1, 5, 1, opt);
        CHECK(c["schema_version"] == 1);
        CHECK(c["scattered"] == true);
        CHECK(c["conditions"]["iii"] == true);
        CHECK(c["witnesses"].empty());
        CHECK(c["enumeration"]["points"] == 1057);
        CHECK(c["flags"].empty());
        const json oracle = cmd_construct(2, 1, 4, 1, opt);
        REQUIRE(oracle["flags"].size() == 1);
        CHECK(oracle["flags"][0] == "m not odd ≥ 5: oracle mode");
        const json q4 = cmd_construct(2, 2, 5, 1, opt);
        CHECK(q4["conditions"]["iii"] == false);
        CHECK(q4["witnesses"][0]["kind"] == "q_root_outside_fq");
        CHECK(q4["witnesses"][1]["kind"] == "g_zero");
        CHECK(q4["witnesses"][1]["projective_roots"] == 5);
        Options tight;
        tight.budget = 1000;
        const json skipped = cmd_construct(2, 1, 7, 1, tight);
        CHECK(skipped["scattered"] == "skipped");
        CHECK(skipped["enumeration"].contains("skipped_reason"));
        CHECK_THROWS_AS(cmd_construct(2, 1, 6, 2, opt), PreconditionError);
    }

    TEST_CASE("replay reproduces every command") {
        const Options opt;
        for (const json& c : {cmd_construct(2, 2, 5, 1, opt), cmd_spectrum(2, 1, 5, 1, opt),
                              cmd_equivalence(2, 1, 7, 1, 6, opt), cmd_scan("p=2;e=1;m=4,5;s=all", opt)}) {
            const auto r = replay(reparse(c));
            CHECK(r.match);
            CHECK(r.problems.empty());
            CHECK(replay(reparse(c), kernels::Exec::serial).match);
        }
    }

    TEST_CASE("replay uses the recorded field") {
        Options opt;
        opt.seeds.poly_qm = std::vector<std::vector<std::uint32_t>>{{1}, {0}, {0}, {1}, {0}, {1}};
        const json c = cmd_construct(2, 1, 5, 1, opt);
        CHECK(c["field"]["poly_qm"][3] == json::array({1}));
        CHECK(replay(reparse(c)).match);
    }

    TEST_CASE("corrupted certificates fail replay") {
        const Options opt;
        json s = reparse(cmd_spectrum(2, 1, 5, 1, opt));
        s["spectrum"]["4"] = 4;
        const auto r = replay(s);
        CHECK_FALSE(r.match);
        bool identity = false;
        for (const auto& p : r.problems) identity = identity || p.find("identity") != std::string::npos;
        CHECK(identity);
        json c = reparse(cmd_construct(2, 1, 5, 1, opt));
        c["scattered"] = false;
        CHECK_FALSE(replay(c).match);
        json t = reparse(cmd_construct(2, 1, 5, 1, opt));
        t["timing"]["seconds"] = 1e9;
        CHECK(replay(t).match);
        CHECK_THROWS_AS(replay(json::object()), PreconditionError);
    }

    TEST_CASE("spectrum certificate") {
        const json s = cmd_spectrum(2, 1, 5, 1, Options{});
        CHECK(s["spectrum"] == json{{"2", 812}, {"3", 240}, {"4", 5}});
        CHECK(s["closed_form"]["match"] == true);
        CHECK(s["standard_equations"] == json{{"incidences", true}, {"pairs", true}, {"point_count", true}});
        CHECK(s["linear_set_size"] == 127);
        CHECK(spectrum_csv(s) == "weight,count,closed_form\n2,812,812\n3,240,240\n4,5,5\n");
    }

    TEST_CASE("equivalence certificate") {
        const json yes = cmd_equivalence(2, 1, 7, 1, 6, Options{});
        CHECK(yes["equivalent"] == true);
        CHECK(yes["witness"]["image_matches"] == true);
        CHECK(yes["witness"]["frobenius_shift"] == 2);
        const json no = cmd_equivalence(2, 1, 7, 1, 2, Options{});
        CHECK(no["equivalent"] == false);
        CHECK(no["witness"].is_null());
    }

    TEST_CASE("grid parsing") {
        const Grid g = parse_grid("p=2,3;e=1;m=5,7;s=all");
        CHECK(g.p == std::vector<std::uint32_t>{2, 3});
        CHECK(g.e == std::vector<unsigned>{1});
        CHECK(g.m == std::vector<unsigned>{5, 7});
        CHECK(g.s.empty());
        CHECK(parse_grid("p=2;e=1;m=5;s=1,2").s == std::vector<int>{1, 2});
        CHECK_THROWS_AS(parse_grid("p=2;e=1;m=5"), PreconditionError);
        CHECK_THROWS_AS(parse_grid("p=2;e=x;m=5;s=all"), PreconditionError);
        CHECK_THROWS_AS(parse_grid("p=2;e=1;m=5;s=all;z=3"), PreconditionError);
    }

    TEST_CASE("scan rows") {
        const json scan = cmd_scan("p=2,4;e=1;m=5,6;s=all", Options{});
        const auto& rows = scan["rows"];
        REQUIRE(rows.size() == 12);
        CHECK(rows[0]["s"] == 1);
        CHECK(rows[0]["scattered"] == true);
        CHECK(rows[4]["m"] == 6);
        CHECK(rows[6].contains("error"));
        CHECK(rows[11].contains("error"));
        const json explicit_s = cmd_scan("p=2;e=1;m=5;s=5", Options{});
        CHECK(explicit_s["rows"][0].contains("error"));
        Options tight;
        tight.budget = 100;
        CHECK(cmd_scan("p=2;e=1;m=7;s=1", tight)["rows"][0]["scattered"] == "skipped");
    }
}
