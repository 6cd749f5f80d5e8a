#include "bambookg/errors.hpp"
#include "bambookg/graph.hpp"

#include <doctest.h>

#include <array>

using namespace bambookg;

TEST_CASE("record_cooccurrence builds a complete subgraph per chunk") {
    TagGraph g;
    std::array<TagId, 3> tags{0, 1, 2};
    auto deltas = g.record_cooccurrence(tags);
    CHECK(deltas.size() == 3);
    CHECK(g.weight(0, 1) == 1);
    CHECK(g.weight(0, 2) == 1);
    CHECK(g.weight(1, 2) == 1);
    CHECK(g.edge_count() == 3);
    CHECK(g.total_weight() == 3);
}

TEST_CASE("singleton tag set creates no edges") {
    TagGraph g;
    std::array<TagId, 1> tags{0};
    CHECK(g.record_cooccurrence(tags).empty());
    CHECK(g.edge_count() == 0);
}

TEST_CASE("overlapping chunks reinforce the shared pair") {
    TagGraph g;
    std::array<TagId, 3> c1{0, 1, 2}; // {a,b,c}
    std::array<TagId, 3> c2{0, 1, 3}; // {a,b,d}
    g.record_cooccurrence(c1);
    g.record_cooccurrence(c2);
    CHECK(g.weight(0, 1) == 2);
    CHECK(g.weight(0, 2) == 1);
    CHECK(g.weight(1, 2) == 1);
    CHECK(g.weight(0, 3) == 1);
    CHECK(g.weight(1, 3) == 1);
    CHECK(g.weight(2, 3) == 0);
}

TEST_CASE("symmetry holds for every stored edge") {
    TagGraph g;
    std::array<TagId, 4> tags{5, 2, 9, 0};
    g.record_cooccurrence(tags);
    for (TagId a = 0; a < 10; ++a) {
        for (TagId b = 0; b < 10; ++b) {
            CHECK(g.weight(a, b) == g.weight(b, a));
        }
    }
}

TEST_CASE("top_first_degree ranks by (descending weight, ascending id)") {
    // seed 0 with neighbors 1 (w=5), 2 (w=5), 3 (w=1)
    TagGraph g;
    std::array<TagId, 2> e1{0, 3};
    g.record_cooccurrence(e1);
    for (int i = 0; i < 5; ++i) {
        std::array<TagId, 2> e2{0, 1};
        std::array<TagId, 2> e3{0, 2};
        g.record_cooccurrence(e2);
        g.record_cooccurrence(e3);
    }
    auto top = g.top_first_degree(0, 2);
    REQUIRE(top.size() == 2);
    CHECK(top[0].id == 1);
    CHECK(top[0].weight == 5);
    CHECK(top[1].id == 2);
    CHECK(top[1].weight == 5);

    SUBCASE("x = degree gives the full list in contract order") {
        auto all = g.top_first_degree(0, 3);
        REQUIRE(all.size() == 3);
        CHECK(all[2].id == 3);
        CHECK(all[2].weight == 1);
    }
    SUBCASE("x = 0 is empty") { CHECK(g.top_first_degree(0, 0).empty()); }
    SUBCASE("isolated node is empty") {
        g.ensure_node(40);
        CHECK(g.top_first_degree(40, 5).empty());
    }
    SUBCASE("unknown seed throws") {
        CHECK_THROWS_AS(g.top_first_degree(999, 1), UnknownTag);
    }
}

TEST_CASE("top_second_degree applies the decayed path score") {
    // a=0 — b=1 (w=4), b — c=2 (w=3)
    TagGraph g;
    for (int i = 0; i < 4; ++i) {
        std::array<TagId, 2> e{0, 1};
        g.record_cooccurrence(e);
    }
    for (int i = 0; i < 3; ++i) {
        std::array<TagId, 2> e{1, 2};
        g.record_cooccurrence(e);
    }
    std::array<TagId, 1> first{1};
    auto second = g.top_second_degree(0, first, 1, 0.5);
    REQUIRE(second.size() == 1);
    CHECK(second[0].id == 2);
    CHECK(second[0].score == doctest::Approx(6.0)); // 4 * 3 * 0.5
    CHECK(second[0].via == 1);

    SUBCASE("candidates already in first are excluded") {
        std::array<TagId, 2> both{1, 2};
        CHECK(g.top_second_degree(0, both, 5, 0.5).empty());
    }
    SUBCASE("y larger than candidate count returns all, no padding") {
        CHECK(g.top_second_degree(0, first, 100, 0.5).size() == 1);
    }
}

TEST_CASE("second-degree score maximizes over intermediaries") {
    // seed 0; intermediaries 1 (w=2 to seed) and 2 (w=5 to seed); both reach 3
    TagGraph g;
    auto add = [&](TagId a, TagId b, int times) {
        for (int i = 0; i < times; ++i) {
            std::array<TagId, 2> e{a, b};
            g.record_cooccurrence(e);
        }
    };
    add(0, 1, 2);
    add(0, 2, 5);
    add(1, 3, 10); // via 1: 2 * 10 * 0.5 = 10
    add(2, 3, 3);  // via 2: 5 * 3 * 0.5  = 7.5
    std::array<TagId, 2> first{1, 2};
    auto second = g.top_second_degree(0, first, 3, 0.5);
    REQUIRE(second.size() == 1);
    CHECK(second[0].id == 3);
    CHECK(second[0].score == doctest::Approx(10.0));
    CHECK(second[0].via == 1);
}
