#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cokmat/residue.hpp"

using namespace cokmat;

TEST_CASE("factorize canonical examples") {
    const Modulus twelve(12);
    REQUIRE(twelve.factors().size() == 2);
    CHECK(twelve.factors()[0] == PrimePower{2, 2});
    CHECK(twelve.factors()[1] == PrimePower{3, 1});

    CHECK(Modulus(1).factors().empty());

    const Modulus seven(7);
    REQUIRE(seven.factors().size() == 1);
    CHECK(seven.factors()[0] == PrimePower{7, 1});

    CHECK_THROWS_AS(Modulus(0), std::invalid_argument);
    CHECK_THROWS_AS(Modulus(-4), std::invalid_argument);
    CHECK_THROWS_AS(Modulus((int64_t(1) << 31) + 2), capacity_error);
}

TEST_CASE("valuation with the zero convention") {
    CHECK(valuation(4, 2, 3) == 2);
    CHECK(valuation(0, 3, 2) == 2);
    CHECK(valuation(6, 2, 3) == 1);
    CHECK(valuation(1, 5, 4) == 0);
}

TEST_CASE("valuation of products is min(e, v(x) + v(y))") {
    for (const auto& [p, e] : {std::pair<int64_t, int>{2, 8}, {3, 5}, {5, 3}, {13, 2}, {251, 1}}) {
        int64_t q = 1;
        for (int i = 0; i < e; ++i) q *= p;
        REQUIRE(q <= 256);
        for (int64_t x = 0; x < q; ++x) {
            for (int64_t y = 0; y < q; ++y) {
                const int expected = std::min(e, valuation(x, p, e) + valuation(y, p, e));
                CHECK(valuation(x * y % q, p, e) == expected);
            }
        }
    }
}

TEST_CASE("unit inverses") {
    CHECK(unit_inverse(3, 2, 3) == 3);  // 3*3 = 9 = 1 mod 8
    CHECK(unit_inverse(1, 7, 2) == 1);
    CHECK_THROWS_AS(unit_inverse(2, 2, 3), non_unit_error);
    CHECK_THROWS_AS(unit_inverse(0, 3, 1), non_unit_error);
}

TEST_CASE("unit inversion is an involution on the units") {
    for (const int64_t q : {8, 9, 25, 27, 49}) {
        const Modulus mod(q);
        const auto f = mod.factors()[0];
        for (int64_t x = 1; x < q; ++x) {
            if (x % f.p == 0) continue;
            const int64_t inv = unit_inverse(x, f.p, f.e);
            CHECK(x * inv % q == 1);
            CHECK(unit_inverse(inv, f.p, f.e) == x);
        }
    }
}

TEST_CASE("crt projection examples") {
    const Modulus twelve(12);
    CHECK(crt_project(7, twelve, {3, 1}) == 1);
    CHECK(crt_project(7, twelve, {2, 2}) == 3);
    CHECK(crt_project(0, twelve, {2, 2}) == 0);
    CHECK_THROWS_AS(crt_project(7, twelve, {5, 1}), std::invalid_argument);
    CHECK_THROWS_AS(crt_project(7, twelve, {2, 1}), std::invalid_argument);
}

TEST_CASE("crt round-trip is exhaustive up to 1000") {
    for (int64_t a = 1; a <= 1000; ++a) {
        const Modulus mod(a);
        for (int64_t x = 0; x < a; ++x) {
            std::vector<int64_t> images;
            for (const auto& f : mod.factors()) images.push_back(crt_project(x, mod, f));
            REQUIRE(crt_reconstruct(images, mod) == x);
        }
    }
}

TEST_CASE("residue type checks its range") {
    CHECK(Residue(3, 5).value == 3);
    CHECK_THROWS_AS(Residue(5, 5), std::invalid_argument);
    CHECK_THROWS_AS(Residue(-1, 5), std::invalid_argument);
}
