#include <doctest.h>

#include <map>
#include <random>

#include "fixtures.hpp"
#include "fsscode/girth.hpp"
#include "oracles.hpp"

using namespace fss;
using fixtures::sys;

namespace {

// Least l <= cap admitting a closed walk i_1 -> ... -> i_l -> i_1 whose
// steps stay in blocks, with successive blocks distinct cyclically and every
// (point, block) entered as often as left. 0 when there is none.
std::size_t naive_inevitable(const SetSystem& s, std::size_t cap) {
    for (std::size_t len = 2; len <= cap; ++len) {
        std::vector<Point> pts(len + 1);
        std::vector<std::size_t> blks(len);
        std::map<std::pair<Point, std::size_t>, int> net;
        bool found = false;
        auto rec = [&](auto&& self, std::size_t j) -> void {
            if (found) return;
            if (j == len) {
                if (pts[len] != pts[0] || blks[len - 1] == blks[0]) return;
                for (const auto& [key, n] : net) {
                    if (n != 0) return;
                }
                found = true;
                return;
            }
            for (std::size_t k = 0; k < s.b(); ++k) {
                if (j > 0 && k == blks[j - 1]) continue;
                const auto& blk = s.block(k);
                if (std::find(blk.begin(), blk.end(), pts[j]) == blk.end()) continue;
                for (Point y : blk) {
                    if (y == pts[j]) continue;
                    blks[j] = k;
                    pts[j + 1] = y;
                    --net[{pts[j], k}];
                    ++net[{y, k}];
                    self(self, j + 1);
                    ++net[{pts[j], k}];
                    --net[{y, k}];
                }
            }
        };
        for (Point p = 0; p < s.v() && !found; ++p) {
            pts[0] = p;
            rec(rec, 0);
        }
        if (found) return len;
    }
    return 0;
}

BinaryMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, double density) {
    std::bernoulli_distribution bit(density);
    std::vector<std::vector<int>> d(rows, std::vector<int>(cols));
    for (auto& r : d) {
        for (auto& x : r) x = bit(rng);
    }
    return BinaryMatrix::from_dense(d);
}

}  // namespace

TEST_CASE("tanner_girth of small graphs") {
    CHECK(tanner_girth(BinaryMatrix::identity(4), 20).unbounded());
    const BinaryMatrix four = BinaryMatrix::from_dense({{1, 1}, {1, 1}});
    CHECK(tanner_girth(four, 20).girth == 4);
    CHECK(tanner_girth(four, 3).unbounded());
    // A 2k-cycle: row r covers columns r and r+1 mod k.
    for (std::size_t k = 2; k <= 8; ++k) {
        std::vector<std::vector<int>> d(k, std::vector<int>(k, 0));
        for (std::size_t r = 0; r < k; ++r) d[r][r] = d[r][(r + 1) % k] = 1;
        const GirthReport g = tanner_girth(BinaryMatrix::from_dense(d), 20);
        CHECK(g.girth == 2 * k);
        CHECK(verify_tanner_cycle(BinaryMatrix::from_dense(d), g.cycle).empty());
    }
}

TEST_CASE("tanner_girth agrees with the edge-removal oracle") {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 150; ++trial) {
        const std::size_t rows = 2 + rng() % 8, cols = 2 + rng() % 10;
        const BinaryMatrix h = random_matrix(rng, rows, cols, 0.15 + 0.1 * static_cast<double>(rng() % 3));
        const std::size_t expected = oracle::girth(h.to_dense());
        const GirthReport g = tanner_girth(h, 40);
        if (expected == oracle::kInf) {
            CHECK(g.unbounded());
            CHECK_FALSE(has_cycle_within(h, 40));
            continue;
        }
        REQUIRE(g.girth.has_value());
        CHECK(*g.girth == expected);
        CHECK(g.cycle.size() == expected);
        CHECK(verify_tanner_cycle(h, g.cycle).empty());
        CHECK(has_cycle_within(h, expected));
        CHECK_FALSE(has_cycle_within(h, expected - 2));
    }
}

TEST_CASE("verify_tanner_cycle rejects non-cycles") {
    const BinaryMatrix h = BinaryMatrix::from_dense({{1, 1}, {1, 1}});
    CHECK_FALSE(verify_tanner_cycle(h, {0, 2, 1}).empty());
    CHECK_FALSE(verify_tanner_cycle(h, {0, 2, 0, 3}).empty());
    CHECK(verify_tanner_cycle(h, {0, 2, 1, 3}).empty());
}

TEST_CASE("twice the shortest BSG closed walk is the Tanner girth") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 60; ++trial) {
        const SetSystem s = oracle::random_system(rng, 6, 8);
        const std::size_t m = 1 + rng() % 6;
        const auto shifts = oracle::random_shifts(rng, s, m);
        const QCProtoMatrix q = assemble(s, oracle::to_sequence(s, m, shifts));
        const WalkReport w = bsg_shortest_closed_walk(build_bsg(q), 8);
        const std::size_t expected = oracle::girth(oracle::lift(s, m, shifts));
        if (expected == oracle::kInf || expected > 16) {
            CHECK_FALSE(w.length.has_value());
            continue;
        }
        REQUIRE(w.length.has_value());
        CHECK(2 * *w.length == expected);
        REQUIRE(w.witness.has_value());
        CHECK(verify_bsg_walk(q, *w.witness).empty());
    }
}

TEST_CASE("BSG edges carry shift differences and come in reverse pairs") {
    const SetSystem s = sys(2, {{1, 2}});
    const auto g = build_bsg(assemble(s, ShiftSequence::from_flat(s, 5, {1, 4})));
    REQUIRE(g.edges().size() == 2);
    for (std::size_t e = 0; e < 2; ++e) {
        const auto& a = g.edges()[e];
        const auto& b = g.edges()[g.reverse(e)];
        CHECK(a.from == b.to);
        CHECK(a.to == b.from);
        CHECK((a.s + b.s) % 5 == 0);
        CHECK(a.s == (a.from == 0 ? 3u : 2u));
    }
}

TEST_CASE("verify_bsg_walk rejects invalid walks") {
    const SetSystem s = fixtures::repeated(2, 2);
    const QCProtoMatrix q = assemble(s, ShiftSequence::from_flat(s, 3, {0, 0, 0, 1}));
    CHECK_FALSE(verify_bsg_walk(q, WalkWitness{{0, 1}, {0, 1}}).empty());
    CHECK_FALSE(verify_bsg_walk(q, WalkWitness{{0, 1}, {0, 0}}).empty());
    const QCProtoMatrix z = assemble(s, ShiftSequence::from_flat(s, 3, {0, 0, 0, 0}));
    CHECK(verify_bsg_walk(z, WalkWitness{{0, 1}, {0, 1}}).empty());
}

TEST_CASE("inevitable girth of repeated blocks") {
    const GirthReport a = inevitable_girth(fixtures::repeated(2, 3));
    CHECK(a.girth == 12);
    REQUIRE(a.walk.has_value());
    CHECK(verify_inevitable_walk(fixtures::repeated(2, 3), *a.walk).empty());
    const GirthReport b = inevitable_girth(fixtures::repeated(3, 4));
    CHECK(b.girth == 12);
    CHECK(verify_inevitable_walk(fixtures::repeated(3, 4), *b.walk).empty());
    CHECK(inevitable_girth(fixtures::repeated(2, 2), 12).unbounded());
}

TEST_CASE("inevitable girth of the BIBD(6,3,2)") {
    const SetSystem b = fixtures::bibd632();
    const GirthReport g = inevitable_girth(b);
    REQUIRE(g.girth.has_value());
    CHECK(*g.girth <= 14);
    CHECK(*g.girth == 14);
    REQUIRE(g.walk.has_value());
    CHECK(g.walk->length() == 7);
    CHECK(verify_inevitable_walk(b, *g.walk).empty());
    const WalkWitness reference = witness_from_interleaved(
        fixtures::reference().at("bibd_walk").at("walk").get<std::vector<long long>>());
    CHECK(reference.length() == 7);
    CHECK(verify_inevitable_walk(b, reference).empty());
}

TEST_CASE("a single block never has an inevitable walk under the strict rule") {
    for (std::size_t k = 2; k <= 5; ++k) {
        const SetSystem one = fixtures::repeated(k, 1);
        for (std::size_t cap = 2; cap <= 12; ++cap) CHECK(inevitable_girth(one, cap).unbounded());
    }
    const GirthReport relaxed = inevitable_girth(fixtures::repeated(3, 1), 12, WalkRule::Relaxed);
    CHECK(relaxed.girth == 6);
    CHECK(verify_inevitable_walk(fixtures::repeated(3, 1), *relaxed.walk, WalkRule::Relaxed).empty());
    CHECK_FALSE(verify_inevitable_walk(fixtures::repeated(3, 1), *relaxed.walk).empty());
}

TEST_CASE("inevitable girth agrees with naive walk enumeration") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 60; ++trial) {
        const SetSystem s = oracle::random_system(rng, 4, 4, 2);
        const std::size_t expected = naive_inevitable(s, 6);
        const GirthReport g = inevitable_girth(s, 6);
        if (expected == 0) {
            CHECK(g.unbounded());
        } else {
            CHECK(g.girth == 2 * expected);
            CHECK(verify_inevitable_walk(s, *g.walk).empty());
        }
        const GirthReport from = inevitable_girth_from(s, 4, 6);
        if (expected >= 4) CHECK(from.girth == g.girth);
    }
}

TEST_CASE("verify_inevitable_walk rejects unbalanced and malformed walks") {
    const SetSystem s = fixtures::repeated(2, 3);
    CHECK_FALSE(verify_inevitable_walk(s, WalkWitness{{0, 1}, {0, 1}}).empty());
    CHECK_FALSE(verify_inevitable_walk(s, WalkWitness{{0, 1, 0, 1, 0, 1}, {0, 1, 2, 0, 1, 1}}).empty());
    CHECK_FALSE(verify_inevitable_walk(s, WalkWitness{{0, 0, 0, 1, 0, 1}, {0, 1, 2, 0, 1, 2}}).empty());
    CHECK(verify_inevitable_walk(s, WalkWitness{{0, 1, 0, 1, 0, 1}, {0, 1, 2, 0, 1, 2}}).empty());
}

TEST_CASE("edge_girth") {
    const std::vector<Block> two{{0, 1}, {0, 1}, {0}};
    CHECK(edge_girth(2, two, 0, 1, 6).girth == 12);
    const std::vector<Block> one{{0, 1}, {0}};
    CHECK(edge_girth(2, one, 0, 1, 6).girth == 12);
    CHECK(edge_girth(2, one, 0, 1, 6).walk == std::nullopt);
    const std::vector<Block> three{{0, 1}, {0, 1}, {0}};
    CHECK(edge_girth(2, three, 0, 1, 5).walk == std::nullopt);
    CHECK(edge_girth(2, three, 0, 1, 6).walk.has_value());
    const std::vector<Block> empty_last{{0, 1}, {}};
    CHECK(edge_girth(2, empty_last, 0, 1, 6).girth == 12);
    CHECK_THROWS_AS(edge_girth(2, one, 1, 1, 6), std::invalid_argument);
    CHECK_THROWS_AS(edge_girth(2, one, 0, 2, 6), std::invalid_argument);
    const std::vector<Block> dup{{0, 1}, {0, 1}};
    CHECK_THROWS_AS(edge_girth(2, dup, 0, 1, 6), std::invalid_argument);
}

TEST_CASE("the expansion never beats g(B)") {
    std::mt19937_64 rng(31);
    int bounded = 0;
    for (int trial = 0; trial < 200 && bounded < 40; ++trial) {
        const SetSystem s = oracle::random_system(rng, 4, 5, 2);
        const GirthReport g = inevitable_girth(s, 8);
        if (g.unbounded()) continue;
        ++bounded;
        const std::size_t m = 2 + rng() % 8;
        const auto h = oracle::lift(s, m, oracle::random_shifts(rng, s, m));
        CHECK(oracle::girth(h) <= *g.girth);
    }
    CHECK(bounded >= 20);
}

TEST_CASE("the FSS(8,10,3) incidence matrix has Tanner girth 6") {
    const BinaryMatrix h = incidence_matrix(fixtures::incidence_example(), 1);
    const GirthReport g = tanner_girth(h, 12);
    CHECK(g.girth == 6);
    CHECK(oracle::girth(h.to_dense()) == 6);
    CHECK(verify_tanner_cycle(h, g.cycle).empty());
}
