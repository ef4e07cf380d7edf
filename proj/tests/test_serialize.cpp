#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "fsscode/serialize.hpp"
#include "oracles.hpp"

using namespace fss;
using fixtures::sys;

TEST_CASE("set system JSON round trip") {
    const SetSystem b = fixtures::bibd632();
    const json j = to_json(b);
    CHECK(j.at("v") == 6);
    CHECK(j.at("t") == 2);
    CHECK(j.at("blocks").at(0) == json::array({1, 2, 5}));
    CHECK(set_system_from_json(j).blocks() == b.blocks());
    CHECK_THROWS(set_system_from_json(json{{"v", 2}, {"blocks", {{1, 3}}}}));
    CHECK_THROWS(set_system_from_json(json{{"blocks", {{1, 2}}}}));
}

TEST_CASE("shift JSON round trip and list form") {
    const SetSystem s = sys(3, {{1, 2}, {2, 3}});
    const ShiftSequence seq = ShiftSequence::from_flat(s, 5, {0, 3, 1, 4});
    const json j = to_json(s, seq);
    CHECK(j.at("m") == 5);
    CHECK(j.at("shifts").size() == 4);
    CHECK(j.at("shifts").at(1) == json{{"block", 1}, {"point", 2}, {"s", 3}});
    CHECK(j.at("shifts").at(2) == json{{"block", 2}, {"point", 2}, {"s", 1}});
    CHECK(shifts_from_json(s, j).flat() == seq.flat());
    CHECK(shifts_from_json(s, json{{"m", 5}, {"list", {3, 4}}}).flat() == std::vector<Shift>{0, 3, 0, 4});
    CHECK(shifts_from_json(s, json{{"m", 5}, {"list", {0, 3, 1, 4}}}).flat() == seq.flat());
    CHECK_THROWS(shifts_from_json(s, json{{"m", 5}, {"list", {1, 2, 3}}}));
}

TEST_CASE("girth report JSON") {
    GirthReport none;
    none.cap = 12;
    CHECK(to_json(none).at("girth") == "unbounded");
    CHECK(to_json(none).at("cap") == 12);

    const GirthReport g = inevitable_girth(fixtures::repeated(2, 3));
    const json j = to_json(g);
    CHECK(j.at("girth") == 12);
    CHECK(j.at("witness").at("points").size() == 6);
    CHECK(j.at("witness").at("points").at(0) == 1);

    const GirthReport t = tanner_girth(BinaryMatrix::from_dense({{1, 1}, {1, 1}}), 8);
    const json tj = to_json(t, 2);
    CHECK(tj.at("girth") == 4);
    const json& cyc = tj.at("witness").at("cycle");
    REQUIRE(cyc.size() == 4);
    CHECK(cyc.at(0).contains("row"));
    CHECK(cyc.at(1).contains("col"));
}

TEST_CASE("stats JSON") {
    const json j = to_json(block_stats(fixtures::bibd632()));
    CHECK(j.at("K") == json(std::vector<int>(10, 3)));
    CHECK(j.at("R") == json(std::vector<int>(6, 5)));
    CHECK(j.at("lambda").at(2).at("values") == json::array({2}));
}

TEST_CASE("alist of a small matrix") {
    const BinaryMatrix h = BinaryMatrix::from_dense({{1, 1, 0}, {0, 1, 1}});
    const std::string text = to_alist(h);
    CHECK(text.rfind("3 2\n2 2\n1 2 1\n2 2\n1 0\n1 2\n2 0\n1 2\n2 3\n", 0) == 0);
    CHECK(from_alist(text) == h);
}

TEST_CASE("alist round trip on random matrices") {
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 30; ++trial) {
        const SetSystem s = oracle::random_system(rng, 6, 8);
        const std::size_t m = 1 + rng() % 4;
        const BinaryMatrix h = expand(assemble(s, oracle::to_sequence(s, m, oracle::random_shifts(rng, s, m))));
        CHECK(from_alist(to_alist(h)) == h);
    }
}

TEST_CASE("alist reader rejects inconsistent input") {
    CHECK_THROWS(from_alist(""));
    CHECK_THROWS(from_alist("2 1\n1 2\n1 1\n2\n1\n1\n1 0\n"));
    CHECK_THROWS(from_alist("2 1\n1 2\n1 1\n2\n1\n2\n1 2\n"));
    CHECK_THROWS(from_alist("2 1\n1 2\n1 1\n2\n3\n1\n1 3\n"));
}

TEST_CASE("file helpers") {
    CHECK_THROWS(read_file("/nonexistent/fsscode/file"));
}
