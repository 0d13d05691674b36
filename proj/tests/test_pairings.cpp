#include <catch2/catch_amalgamated.hpp>

#include <multisle/pairings.hpp>

#include <set>

using namespace multisle;

TEST_CASE("catalan numbers") {
    const std::int64_t known[] = {1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862};
    for (int n = 0; n <= 9; ++n) CHECK(catalan(n) == known[n]);
    CHECK(catalan(12) == 208012);
    CHECK(catalan(16) == 35357670);
    CHECK(catalan(30) == 3814986502092304LL);
    CHECK_THROWS_AS(catalan(-1), std::invalid_argument);
    CHECK_THROWS_AS(catalan(40), numerical_error);
}

TEST_CASE("involution and crossing predicates") {
    CHECK(is_involution_without_fixed_points({0, 2, 1, 4, 3}));
    CHECK_FALSE(is_involution_without_fixed_points({0, 1, 2, 4, 3})); // fixed points
    CHECK_FALSE(is_involution_without_fixed_points({0, 2, 1, 4, 5})); // not involutive
    CHECK_FALSE(is_involution_without_fixed_points({0, 2, 1, 4})); // odd count

    CHECK(is_noncrossing({0, 2, 1, 4, 3}));
    CHECK(is_noncrossing({0, 4, 3, 2, 1}));
    CHECK_FALSE(is_noncrossing({0, 3, 4, 1, 2})); // (1,3) and (2,4) cross
}

TEST_CASE("pairing constructors validate") {
    auto p = make_pairing_from_pairs(2, {{1, 2}, {3, 4}});
    CHECK(p.points() == 4);
    CHECK(p.pairs() == 2);
    CHECK(p.pair_list() == std::vector<std::pair<int, int>>{{1, 2}, {3, 4}});

    CHECK_THROWS_AS(make_pairing_from_pairs(2, {{1, 3}, {2, 4}}), std::invalid_argument);
    CHECK_THROWS_AS(make_pairing_from_pairs(2, {{1, 1}, {2, 4}}), std::invalid_argument);
    CHECK_THROWS_AS(make_pairing_from_pairs(2, {{1, 2}, {1, 4}}), std::invalid_argument);
    CHECK_THROWS_AS(make_pairing(std::vector<int>{0, 3, 4, 1, 2}), std::invalid_argument);
}

TEST_CASE("enumeration counts match catalan and entries are valid") {
    for (int n = 0; n <= 8; ++n) {
        auto all = enumerate_noncrossing_pairings(n);
        CHECK(static_cast<std::int64_t>(all.size()) == catalan(n));
        for (const auto& p : all) {
            REQUIRE(is_involution_without_fixed_points(p.match));
            REQUIRE(is_noncrossing(p.match));
            // each chord joins an odd point to an even point
            for (auto [a, b] : p.pair_list()) REQUIRE((a + b) % 2 == 1);
        }
    }
    CHECK_THROWS_AS(enumerate_noncrossing_pairings(13), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_noncrossing_pairings(-2), std::invalid_argument);
}

TEST_CASE("enumeration is sorted and duplicate-free") {
    auto all = enumerate_noncrossing_pairings(5);
    std::set<std::vector<int>> seen;
    std::vector<int> prev;
    for (const auto& p : all) {
        if (!prev.empty()) CHECK(prev < p.match);
        prev = p.match;
        seen.insert(p.match);
    }
    CHECK(seen.size() == all.size());

    auto small = enumerate_noncrossing_pairings(3);
    REQUIRE(small.size() == 5);
    CHECK(small.front().match == std::vector<int>{0, 2, 1, 4, 3, 6, 5});
    CHECK(small.back().match == std::vector<int>{0, 6, 5, 4, 3, 2, 1});
}

TEST_CASE("pairing to cluster partition, small cases") {
    auto p1 = make_pairing_from_pairs(1, {{1, 2}});
    CHECK(pairing_to_partition(p1).blocks == std::vector<std::vector<int>>{{1}});

    auto split = make_pairing_from_pairs(2, {{1, 2}, {3, 4}});
    CHECK(pairing_to_partition(split).blocks == std::vector<std::vector<int>>{{1}, {2}});

    auto nested = make_pairing_from_pairs(2, {{1, 4}, {2, 3}});
    CHECK(pairing_to_partition(nested).blocks == std::vector<std::vector<int>>{{1, 2}});

    // rainbow on 6 points: the annulus between the outer two chords holds
    // edges 1 and 3, the innermost chord cuts edge 2 off on its own
    auto rainbow = make_pairing_from_pairs(3, {{1, 6}, {2, 5}, {3, 4}});
    CHECK(pairing_to_partition(rainbow).blocks == std::vector<std::vector<int>>{{1, 3}, {2}});

    // whereas chords (1,6),(2,3),(4,5) leave edges 1,2,3 on one face
    auto fan = make_pairing_from_pairs(3, {{1, 6}, {2, 3}, {4, 5}});
    CHECK(pairing_to_partition(fan).blocks == std::vector<std::vector<int>>{{1, 2, 3}});

    // comb leaves them all separate
    auto comb = make_pairing_from_pairs(3, {{1, 2}, {3, 4}, {5, 6}});
    CHECK(pairing_to_partition(comb).blocks == std::vector<std::vector<int>>{{1}, {2}, {3}});
}

TEST_CASE("pairing to partition is a bijection onto non-crossing partitions") {
    for (int n = 1; n <= 6; ++n) {
        auto all = enumerate_noncrossing_pairings(n);
        std::set<std::vector<std::vector<int>>> images;
        for (const auto& p : all) {
            auto part = pairing_to_partition(p);
            CHECK(part.elements() == n);
            CHECK(partition_is_noncrossing(part));
            images.insert(partition_key(part));
        }
        // injective with equal cardinality on both sides (both Catalan)
        CHECK(static_cast<std::int64_t>(images.size()) == catalan(n));
    }
}

TEST_CASE("partition crossing predicate") {
    NonCrossingPartition ok{{{1, 2}, {3}}};
    CHECK(partition_is_noncrossing(ok));
    NonCrossingPartition bad{{{1, 3}, {2, 4}}};
    CHECK_FALSE(partition_is_noncrossing(bad));
}
