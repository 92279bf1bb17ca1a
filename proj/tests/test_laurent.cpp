#include "moyweb/laurent.hpp"
#include "moyweb/ordered_partitions.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace moyweb;

namespace {
LaurentPoly q_pow(long long e) { return LaurentPoly::monomial(e); }
}

TEST_CASE("quantum integers") {
    CHECK(qint(0).is_zero());
    CHECK(qint(1) == LaurentPoly::one());
    CHECK(qint(2) == q_pow(1) + q_pow(-1));
    CHECK(qint(3) == q_pow(2) + q_pow(0) + q_pow(-2));
    CHECK_THROWS_AS(qint(-1), std::domain_error);
}

TEST_CASE("quantum factorials") {
    CHECK(qfact(0) == LaurentPoly::one());
    CHECK(qfact(2) == qint(2));
    // (q+q^-1)(q^2+1+q^-2) multiplied out by hand
    LaurentPoly expect = q_pow(3) + q_pow(1) * Int(2) + q_pow(-1) * Int(2) + q_pow(-3);
    CHECK(qfact(3) == expect);
    CHECK_THROWS_AS(qfact(-2), std::domain_error);
}

TEST_CASE("quantum binomials: base values") {
    CHECK(qbinom(5, 7).is_zero());
    CHECK(qbinom(-1, 0).is_zero());
    CHECK(qbinom(3, -2).is_zero());
    for (int k = 0; k <= 8; ++k) {
        CHECK(qbinom(k, 0) == LaurentPoly::one());
        CHECK(qbinom(k, k) == LaurentPoly::one());
    }
    LaurentPoly expect = q_pow(4) + q_pow(2) + q_pow(0) * Int(2) + q_pow(-2) + q_pow(-4);
    CHECK(qbinom(4, 2) == expect);
    // cross-checked against the brute-force partition sum
    CHECK(qbinom(4, 2) == partition_sum({1, 2, 3, 4}, 2, 2));
}

TEST_CASE("quantum binomial symmetry and positivity") {
    for (int k = 0; k <= 10; ++k)
        for (int l = 0; l <= k; ++l) {
            const LaurentPoly b = qbinom(k, l);
            CHECK(b == qbinom(k, k - l));
            CHECK(is_palindromic(b));
            for (const auto& [e, c] : b.coeffs()) CHECK(c > 0);
        }
}

TEST_CASE("Pascal-type recursion") {
    for (int m = 0; m <= 10; ++m)
        for (int n = 0; m + n <= 10; ++n) {
            if (m + n < 1) continue;
            const LaurentPoly lhs = qbinom(m + n, m);
            const LaurentPoly rhs =
                qbinom(m + n - 1, m).shifted(m) + qbinom(m + n - 1, m - 1).shifted(-n);
            CHECK(lhs == rhs);
        }
}

TEST_CASE("q=1 specialization gives binomial coefficients") {
    long long pascal[13][13] = {};
    for (int k = 0; k <= 12; ++k) {
        pascal[k][0] = 1;
        for (int l = 1; l <= k; ++l)
            pascal[k][l] = pascal[k - 1][l - 1] + (l <= k - 1 ? pascal[k - 1][l] : 0);
    }
    for (int k = 0; k <= 12; ++k)
        for (int l = 0; l <= k; ++l) CHECK(qbinom(k, l).at_one() == Int(pascal[k][l]));
}

TEST_CASE("palindromic predicate") {
    CHECK(is_palindromic(LaurentPoly()));
    CHECK(is_palindromic(q_pow(1) + q_pow(-1)));
    CHECK_FALSE(is_palindromic(q_pow(2) + q_pow(0)));
}

TEST_CASE("ring laws on sample values") {
    const LaurentPoly a = qbinom(4, 2), b = qint(3), c = q_pow(-2) - q_pow(5) * Int(3);
    CHECK((a + b) * c == a * c + b * c);
    CHECK(a * b == b * a);
    CHECK(a + LaurentPoly() == a);
    CHECK(a * LaurentPoly::one() == a);
    CHECK((a - a).is_zero());
    CHECK(a.reciprocal().reciprocal() == a);
}

TEST_CASE("canonical rendering") {
    CHECK(LaurentPoly().to_string() == "0");
    CHECK(qint(3).to_string() == "q^2 + 1 + q^-2");
    CHECK(qfact(3).to_string() == "q^3 + 2q + 2q^-1 + q^-3");
    CHECK((q_pow(1) - LaurentPoly::one()).to_string() == "q - 1");
    CHECK((q_pow(0) * Int(-2) + q_pow(-3)).to_string() == "-2 + q^-3");
}
