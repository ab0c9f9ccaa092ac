#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "otv/enumeration.hpp"

using namespace otv;

namespace {
Partition P(std::initializer_list<int> parts) {
    return Partition(std::vector<int>(parts));
}
}  // namespace

TEST_CASE("plane partition counts by two strategies") {
    long expected[] = {1, 1, 3, 6, 13, 24, 48, 86, 160};
    for (int d = 0; d <= 8; ++d) {
        CHECK(count_plane_partitions_cells(d) == expected[d]);
        CHECK(count_plane_partitions_slices(d) == expected[d]);
    }
}

TEST_CASE("renormalized color counts") {
    SUBCASE("empty") {
        ThreeDPartition pi;
        for (int n = 1; n <= 3; ++n) {
            auto c = renormalized_color_count(pi, n);
            for (long v : c) CHECK(v == 0);
        }
    }
    SUBCASE("single box at origin, n = 3") {
        ThreeDPartition pi(Partition(), Partition(), Partition(),
                           {Cell3{0, 0, 0}});
        auto c = renormalized_color_count(pi, 3);
        CHECK(c == std::vector<long>{1, 0, 0});
    }
    SUBCASE("one z leg, no excess, n = 2") {
        ThreeDPartition pi(Partition(), Partition(), P({1}));
        auto c = renormalized_color_count(pi, 2);
        CHECK(c == std::vector<long>{0, 0});
    }
    SUBCASE("invalid cell sets rejected") {
        CHECK_THROWS_AS(ThreeDPartition(Partition(), Partition(), Partition(),
                                        {Cell3{1, 0, 0}}),
                        std::invalid_argument);
    }
}

TEST_CASE("overlap corrections") {
    // two axis lines overlap in the origin box
    auto xi = leg_overlap_counts(P({1}), P({1}), Partition(), 1);
    CHECK(xi == std::vector<long>{-1});
    // three axis lines: -3 pairwise + 1 triple
    auto xi3 = leg_overlap_counts(P({1}), P({1}), P({1}), 1);
    CHECK(xi3 == std::vector<long>{-2});
    auto none = leg_overlap_counts(Partition(), Partition(), P({3, 1}), 2);
    CHECK(none == std::vector<long>{0, 0});
}

TEST_CASE("oracle vertex normalization") {
    SUBCASE("empty legs reduce to 1") {
        for (int n = 1; n <= 2; ++n) {
            auto p = oracle_vertex(Partition(), Partition(),
                                   ColoredPartition(Partition(), n), 4);
            CHECK(p.num_terms() == 1);
            CHECK(p.coefficient(Monomial(static_cast<std::size_t>(n))) == 1);
        }
    }
    SUBCASE("unbalanced rejected") {
        CHECK_THROWS_AS(oracle_vertex(Partition(), Partition(),
                                      ColoredPartition(P({1}), 2), 3),
                        std::invalid_argument);
    }
}
