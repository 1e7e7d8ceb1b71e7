#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>

#include "cokmat/cl.hpp"

using namespace cokmat;

TEST_CASE("cl probabilities at the closed-form anchors") {
    CHECK(cl_probability(GroupType(), CLParams{0, {3}}) ==
          doctest::Approx(0.560126).epsilon(1e-5));
    CHECK(cl_probability(GroupType::parse("3:[1]"), CLParams{0, {3}}) ==
          doctest::Approx(0.280063).epsilon(1e-5));
    CHECK(cl_probability(GroupType(), CLParams{1, {2}}) ==
          doctest::Approx(0.577576).epsilon(1e-5));
    CHECK_THROWS_AS(cl_probability(GroupType::parse("5:[1]"), CLParams{0, {2, 3}}),
                    std::invalid_argument);
}

TEST_CASE("rank distribution closed form") {
    CHECK(cl_rank_probability(0, 0, 2) == doctest::Approx(0.288788).epsilon(1e-5));
    CHECK(cl_rank_probability(1, 0, 2) == doctest::Approx(0.577576).epsilon(1e-5));
    CHECK(cl_rank_probability(0, 1, 2) == doctest::Approx(0.577576).epsilon(1e-5));
    CHECK(cl_rank_probability(2, 0, 2) == doctest::Approx(0.128350).epsilon(1e-5));
}

TEST_CASE("rank probabilities sum to one") {
    for (const int64_t p : {int64_t(2), int64_t(3), int64_t(5)}) {
        for (const int u : {0, 1, 2}) {
            double sum = 0.0;
            for (int k = 0; k <= 40; ++k) sum += cl_rank_probability(k, u, p);
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-10));
        }
    }
}

TEST_CASE("rank probability equals the mass of rank-k groups") {
    const uint64_t cutoff = uint64_t(1) << 10;
    for (const int u : {0, 1}) {
        const CLSupport support = enumerate_cl_support(2, u, cutoff);
        for (int k = 0; k <= 2; ++k) {
            double mass = 0.0;
            for (const auto& [g, prob] : support.entries)
                if (g.rank_at(2) == k) mass += prob;
            CHECK(std::abs(cl_rank_probability(k, u, 2) - mass) <= support.tail_mass + 1e-12);
        }
    }
}

TEST_CASE("enumerate_cl_support small cutoffs") {
    const CLSupport two = enumerate_cl_support(2, 0, 2);
    REQUIRE(two.entries.size() == 2);
    CHECK(two.entries[0].first.label() == "1");
    CHECK(two.entries[0].second == doctest::Approx(0.288788).epsilon(1e-5));
    CHECK(two.entries[1].first.label() == "2:[1]");
    CHECK(two.entries[1].second == doctest::Approx(0.288788).epsilon(1e-5));

    const CLSupport three = enumerate_cl_support(3, 0, 1);
    REQUIRE(three.entries.size() == 1);
    CHECK(three.entries[0].second == doctest::Approx(0.560126).epsilon(1e-5));

    CHECK_THROWS_AS(enumerate_cl_support(2, 0, 3), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_cl_support(2, 0, uint64_t(1) << 13), std::invalid_argument);
}

TEST_CASE("tail mass decreases with the cutoff") {
    double last = 1.0;
    for (int w = 0; w <= 10; ++w) {
        const CLSupport s = enumerate_cl_support(2, 0, uint64_t(1) << w);
        CHECK(s.tail_mass <= last + 1e-15);
        last = s.tail_mass;
    }
    CHECK(last < 1e-2);
}

TEST_CASE("cl sampling hits the closed-form frequencies") {
    const CLSupport support = enumerate_cl_support(2, 0, uint64_t(1) << 10);
    REQUIRE(support.tail_mass < 1e-3);
    const RandomStream rs(31415, 0);
    std::map<std::string, int> counts;
    const int draws = 100000;
    int overflow = 0;
    for (int i = 0; i < draws; ++i) {
        const auto g = sample_cl_group(support, rs, uint64_t(i));
        if (g)
            ++counts[g->label()];
        else
            ++overflow;
    }
    CHECK(double(counts["1"]) / draws == doctest::Approx(0.2888).epsilon(0.04));
    CHECK(double(counts["2:[1]"]) / draws == doctest::Approx(0.2888).epsilon(0.04));
    CHECK(overflow < draws / 500);

    // deterministic draws
    const auto again = sample_cl_group(support, RandomStream(31415, 0), 17);
    const auto once = sample_cl_group(support, RandomStream(31415, 0), 17);
    CHECK(again == once);
}

TEST_CASE("large u concentrates on the trivial group") {
    const CLSupport support = enumerate_cl_support(2, 8, uint64_t(1) << 8);
    REQUIRE(!support.entries.empty());
    CHECK(support.entries[0].first.trivial());
    CHECK(support.entries[0].second > 0.99);
}

TEST_CASE("moment identity truncations") {
    // trivial target: the sum is exactly the enumerated mass
    const CLMomentCheck trivial = cl_moment_check(GroupType(), 0, uint64_t(1) << 10);
    CHECK(trivial.defect == doctest::Approx(trivial.tail_mass).epsilon(1e-9));
    CHECK(trivial.defect < 1e-3);

    const CLMomentCheck z2 = cl_moment_check(GroupType::parse("2:[1]"), 0, uint64_t(1) << 8);
    CHECK(z2.defect < 1e-2);

    const CLMomentCheck z2u2 = cl_moment_check(GroupType::parse("2:[1]"), 2, uint64_t(1) << 8);
    CHECK(z2u2.truncated_sum == doctest::Approx(0.25).epsilon(1e-2));
}

TEST_CASE("moment defect shrinks as the cutoff grows") {
    double last = 1.0;
    for (int w = 2; w <= 10; w += 2) {
        const CLMomentCheck check =
            cl_moment_check(GroupType::parse("2:[1]"), 0, uint64_t(1) << w);
        CHECK(check.defect <= last + 1e-12);
        last = check.defect;
    }
}

TEST_CASE("capped table collapses to the rank distribution at e = 1") {
    const CLTable table = cl_table_mod(Modulus(2), 0, 12);
    std::map<std::string, double> probs;
    for (const auto& [g, p] : table.entries) probs[g.label()] = p;
    CHECK(probs["1"] == doctest::Approx(cl_rank_probability(0, 0, 2)).epsilon(1e-3));
    CHECK(probs["2:[1]"] == doctest::Approx(cl_rank_probability(1, 0, 2)).epsilon(1e-3));
    CHECK(probs["2:[1,1]"] == doctest::Approx(cl_rank_probability(2, 0, 2)).epsilon(1e-3));
}
