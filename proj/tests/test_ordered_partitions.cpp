#include "moyweb/ordered_partitions.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace moyweb;

namespace {

// all (Y, Z) disjoint pairs inside {1..m}, via 3-valued assignment
template <typename Fn>
void for_each_disjoint_pair(int m, Fn&& fn) {
    std::vector<int> state(static_cast<size_t>(m), 0);
    while (true) {
        IntSet y, z;
        for (int i = 0; i < m; ++i) {
            if (state[static_cast<size_t>(i)] == 1) y.insert(i + 1);
            if (state[static_cast<size_t>(i)] == 2) z.insert(i + 1);
        }
        fn(y, z);
        int i = 0;
        while (i < m && state[static_cast<size_t>(i)] == 2) state[static_cast<size_t>(i++)] = 0;
        if (i == m) break;
        ++state[static_cast<size_t>(i)];
    }
}

}  // namespace

TEST_CASE("partition degree") {
    CHECK(partition_degree({}, {3, 7}) == 0);
    CHECK(partition_degree({1}, {2}) == 1);
    CHECK(partition_degree({1, 4}, {2, 3}) == 0);
    CHECK_THROWS_AS(partition_degree({1, 2}, {2, 3}), std::invalid_argument);
}

TEST_CASE("partition degree antisymmetry") {
    for_each_disjoint_pair(6, [](const IntSet& y, const IntSet& z) {
        CHECK(partition_degree(y, z) == -partition_degree(z, y));
    });
}

TEST_CASE("partition sums") {
    CHECK(partition_sum({5}, 1, 0) == LaurentPoly::one());
    CHECK(partition_sum({1, 2}, 1, 1) == qint(2));
    CHECK(partition_sum({1, 2, 3, 4}, 2, 2) == qbinom(4, 2));
    CHECK_THROWS_AS(partition_sum({1, 2}, 2, 2), std::invalid_argument);
}

TEST_CASE("partition sum is ground-set independent") {
    const std::pair<int, int> shapes[] = {{1, 1}, {2, 1}, {2, 2}, {3, 1}};
    for (auto [m, n] : shapes) {
        IntSet a, b, c;
        for (int i = 1; i <= m + n; ++i) {
            a.insert(i);
            b.insert(2 * i + 1);
            c.insert(10 * i - 7);
        }
        const LaurentPoly va = partition_sum(a, m, n);
        CHECK(va == partition_sum(b, m, n));
        CHECK(va == partition_sum(c, m, n));
        CHECK(va == qbinom(m + n, m));
    }
}

TEST_CASE("partition sum matches the quantum binomial up to size 8") {
    for (int m = 0; m <= 8; ++m)
        for (int n = 0; m + n <= 8; ++n) {
            IntSet x;
            for (int i = 1; i <= m + n; ++i) x.insert(i);
            CHECK(partition_sum(x, m, n) == qbinom(m + n, m));
        }
}

TEST_CASE("interval split of the degree") {
    CHECK(split_degree_check({1}, {2}, 2, 1));
    CHECK(split_degree_check({1, 3}, {2, 4}, 4, 2));
    CHECK(split_degree_check({}, {}, 3, 1));
    CHECK_THROWS_AS(split_degree_check({1}, {2}, 3, 3), std::invalid_argument);
    for_each_disjoint_pair(4, [](const IntSet& y, const IntSet& z) {
        for (int k = 1; k <= 3; ++k) CHECK(split_degree_check(y, z, 4, k));
    });
}

TEST_CASE("key identity examples") {
    auto [l1, r1] = key_identity_sides({1}, {}, 1);
    CHECK(l1 == LaurentPoly::one());
    CHECK(r1 == LaurentPoly::one());
    auto [l2, r2] = key_identity_sides({1, 2}, {}, 1);
    CHECK(l2 == qint(2));
    CHECK(r2 == qbinom(2, 1));
    auto [l3, r3] = key_identity_sides({1, 3}, {2}, 1);
    CHECK(l3 == r3);
    CHECK_THROWS_AS(key_identity_sides({1}, {2, 3}, 1), std::invalid_argument);
}

TEST_CASE("key identity exhaustively on a 5-element ground set") {
    for_each_disjoint_pair(5, [](const IntSet& x, const IntSet& y) {
        if (x.size() < y.size()) return;
        for (int k1 = 0; k1 <= static_cast<int>(x.size()); ++k1) {
            auto [lhs, rhs] = key_identity_sides(x, y, k1);
            CHECK(lhs == rhs);
        }
    });
}
