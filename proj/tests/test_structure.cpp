#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "cokmat/structure.hpp"
#include "cokmat/verify.hpp"

using namespace cokmat;

namespace {

HomVG hom_z2(int n, std::vector<int64_t> bits) {
    std::vector<std::vector<int64_t>> coords;
    for (int i = 0; i < n; ++i) coords.push_back({bits[i]});
    return HomVG::make(GroupType::parse("2:[1]"), coords);
}

}  // namespace

TEST_CASE("ell counts prime factors with multiplicity") {
    CHECK(ell(1) == 0);
    CHECK(ell(12) == 3);
    CHECK(ell(8) == 3);
    CHECK(ell(97) == 1);
    CHECK_THROWS_AS(ell(0), std::invalid_argument);
}

TEST_CASE("code distance examples") {
    CHECK(code_distance(hom_z2(4, {1, 1, 1, 1})) == 4);
    CHECK(code_distance(hom_z2(4, {1, 1, 0, 0})) == 2);
    CHECK(code_distance(hom_z2(4, {0, 0, 0, 0})) == 0);
    // order-4 target: the two odd coordinates carry the surjection
    const HomVG f = HomVG::make(GroupType::parse("2:[2]"), {{1}, {3}, {2}, {2}});
    CHECK(code_distance(f) == 2);
}

TEST_CASE("code distance bound modes") {
    const CodeDistanceBound small = code_distance_bound(hom_z2(4, {1, 1, 0, 0}));
    CHECK(small.exact);
    CHECK(small.value == 2);

    std::vector<int64_t> wide(30, 1);
    const CodeDistanceBound greedy = code_distance_bound(hom_z2(30, wide));
    CHECK(!greedy.exact);
    CHECK(greedy.value == 30);

    wide.assign(30, 0);
    wide[3] = 1;
    wide[17] = 1;
    const CodeDistanceBound two = code_distance_bound(hom_z2(30, wide));
    CHECK(!two.exact);
    CHECK(two.value == 2);
}

TEST_CASE("depth examples") {
    // a code of distance >= delta n has depth 1
    CHECK(depth(hom_z2(10, {1, 1, 1, 1, 1, 1, 1, 1, 1, 1}), 0.3) == 1);
    CHECK(depth(hom_z2(10, {1, 0, 0, 0, 0, 0, 0, 0, 0, 0}), 0.3) == 2);
    CHECK_THROWS_AS(depth(hom_z2(4, {1, 1, 1, 1}), 1.5), std::invalid_argument);
}

TEST_CASE("non-surjective maps reach their image index through the empty set") {
    for (const char* label : {"2:[1]", "2:[2]", "2:[1,1]", "3:[1]"}) {
        const GroupType type = GroupType::parse(label);
        auto group = std::make_shared<const ConcreteGroup>(type);
        const int n = 5;
        const double delta = 0.3;
        std::vector<uint32_t> images(n, 0);
        for (;;) {
            const HomVG f{group, images};
            const uint64_t image =
                subgroup_size(*group, std::vector<uint32_t>(images.begin(), images.end()));
            const int64_t d0 = int64_t(group->size() / image);
            if (d0 > 1 && ell(d0) * delta * n > 0) CHECK(depth(f, delta) >= d0);
            int i = n - 1;
            while (i >= 0 && images[i] == group->size() - 1) {
                images[i] = 0;
                --i;
            }
            if (i < 0) break;
            ++images[i];
        }
    }
}

TEST_CASE("depth one implies code of distance delta n over full enumerations") {
    for (const char* label : {"2:[1]", "3:[1]", "2:[2]", "2:[1,1]", "2:[3]"}) {
        const GroupType type = GroupType::parse(label);
        auto group = std::make_shared<const ConcreteGroup>(type);
        const uint64_t size = group->size();
        int n = 2;
        double budget = double(size) * size;
        while (n < 8 && budget * double(size) <= 300000) {
            budget *= double(size);
            ++n;
        }
        const double delta = 0.4;
        std::vector<uint32_t> images(n, 0);
        for (;;) {
            const HomVG f{group, images};
            if (depth(f, delta) == 1) CHECK(is_code(f, delta * n));
            int i = n - 1;
            while (i >= 0 && images[i] == size - 1) {
                images[i] = 0;
                --i;
            }
            if (i < 0) break;
            ++images[i];
        }
    }
}

TEST_CASE("character sums against the balance bound") {
    const Modulus two(2);
    const CharacterSumReport skew = character_sums(parse_distribution("bernoulli:0.9", two), two);
    REQUIRE(skew.magnitudes.size() == 1);
    CHECK(skew.magnitudes[0] == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(skew.bound == doctest::Approx(std::exp(-0.1 / 4.0)).epsilon(1e-12));
    CHECK(skew.all_within);

    const CharacterSumReport uniform = character_sums(parse_distribution("uniform", two), two);
    CHECK(uniform.magnitudes[0] == doctest::Approx(0.0).epsilon(1e-12));

    const Modulus four(4);
    const CharacterSumReport mod4 =
        character_sums(parse_distribution("table:0=0.7,1=0.3", four), four);
    REQUIRE(mod4.magnitudes.size() == 3);
    const double bound = std::exp(-0.3 / 16.0);
    CHECK(mod4.bound == doctest::Approx(bound).epsilon(1e-12));
    for (const double m : mod4.magnitudes) CHECK(m <= bound + 1e-12);
    CHECK(mod4.magnitudes[1] == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("column probabilities by transform and enumeration") {
    const Modulus two(2);
    const EntryDistribution uniform = parse_distribution("uniform", two);
    const EntryDistribution skew = parse_distribution("bernoulli:0.9", two);

    CHECK(exact_column_prob(hom_z2(1, {1}), 0, uniform, two) ==
          doctest::Approx(0.5).epsilon(1e-12));
    CHECK(exact_column_prob(hom_z2(2, {1, 1}), 0, skew, two) ==
          doctest::Approx(0.82).epsilon(1e-12));
    CHECK(exact_column_prob(hom_z2(3, {1, 1, 1}), 0, skew, two) ==
          doctest::Approx(0.756).epsilon(1e-12));
}

TEST_CASE("transform equals enumeration to 1e-12 and sums to one") {
    const std::vector<std::pair<const char*, int64_t>> scopes = {
        {"2:[1]", 2}, {"3:[1]", 3}, {"2:[2]", 4}, {"2:[1,1]", 2}, {"2:[2,1]", 8}};
    for (const auto& [label, a] : scopes) {
        const Modulus mod(a);
        const GroupType type = GroupType::parse(label);
        auto group = std::make_shared<const ConcreteGroup>(type);
        const RandomStream rs(606, uint64_t(a));
        for (int rep = 0; rep < 20; ++rep) {
            const int n = 2 + int(rs.uniform_below(uint64_t(rep) * 2, 4));
            std::vector<uint32_t> images(n);
            for (int i = 0; i < n; ++i)
                images[i] = uint32_t(rs.uniform_below(1000 + uint64_t(rep) * 16 + i, group->size()));
            const HomVG f{group, images};
            const EntryDistribution dist =
                rep % 2 ? parse_distribution("bernoulli:0.7", mod)
                        : parse_distribution("uniform", mod);
            const auto probs = column_prob_dft_all(f, dist, mod);
            double total = 0.0;
            for (uint32_t target = 0; target < group->size(); ++target) {
                const double via_enum = column_prob_enumerate(f, target, dist, mod);
                CHECK(std::abs(probs[target] - via_enum) <= 1e-12);
                total += probs[target];
            }
            CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("code lemma verification") {
    const Modulus two(2);
    const EntryDistribution skew = parse_distribution("bernoulli:0.9", two);
    const CodeLemmaReport all_ones =
        verify_code_lemma(hom_z2(8, {1, 1, 1, 1, 1, 1, 1, 1}), skew, 1.0, two);
    CHECK(all_ones.precondition_ok);
    CHECK(all_ones.max_deviation == doctest::Approx(std::pow(0.8, 8) / 2).epsilon(1e-9));
    CHECK(all_ones.bound == doctest::Approx(std::exp(-0.1 * 8 / 4.0)).epsilon(1e-12));
    CHECK(all_ones.pass);

    const CodeLemmaReport uniform_case =
        verify_code_lemma(hom_z2(6, {1, 1, 1, 1, 1, 1}), parse_distribution("uniform", two), 0.5,
                          two);
    CHECK(uniform_case.max_deviation <= 1e-12);
    CHECK(uniform_case.pass);

    const CodeLemmaReport broken = verify_code_lemma(hom_z2(6, {1, 0, 0, 0, 0, 0}), skew, 0.5, two);
    CHECK(!broken.precondition_ok);
    CHECK(!broken.pass);
}

TEST_CASE("depth census for Z/2 at n = 4") {
    const DepthCensus census = census_depth(4, GroupType::parse("2:[1]"), 0.3);
    REQUIRE(census.counts.size() == 2);
    CHECK(census.counts.at(1) == 11);
    CHECK(census.counts.at(2) == 5);
    CHECK(census.bound_factors.count(2) == 1);
    CHECK_THROWS_AS(census_depth(30, GroupType::parse("2:[1]"), 0.3), capacity_error);
}

TEST_CASE("depth-one count equals the code count for Z/2") {
    for (int n = 4; n <= 8; n += 2) {
        const DepthCensus census = census_depth(n, GroupType::parse("2:[1]"), 0.3);
        auto group = std::make_shared<const ConcreteGroup>(GroupType::parse("2:[1]"));
        uint64_t codes = 0;
        std::vector<uint32_t> images(n, 0);
        for (;;) {
            if (is_code(HomVG{group, images}, 0.3 * n)) ++codes;
            int i = n - 1;
            while (i >= 0 && images[i] == 1) {
                images[i] = 0;
                --i;
            }
            if (i < 0) break;
            ++images[i];
        }
        CHECK(census.counts.at(1) == codes);
    }
}

TEST_CASE("census-to-bound ratios stay bounded as n grows") {
    double first = 0.0, last = 0.0;
    for (int n = 4; n <= 12; n += 2) {
        const DepthCensus census = census_depth(n, GroupType::parse("2:[1]"), 0.3);
        const double ratio =
            double(census.counts.at(2)) / census.bound_factors.at(2);
        if (n == 4) first = ratio;
        last = ratio;
        CHECK(ratio <= 1.0);
    }
    CHECK(last <= first);
}

TEST_CASE("grid verification drivers hold the lemma bounds") {
    const CharacterBoundReport chars = verify_character_bound_grid({2, 3, 4}, 20);
    CHECK(chars.pass);
    CHECK(chars.cases > 1000);

    const DepthBoundReport depths = verify_depth_bound_grid(0.5);
    CHECK(depths.pass);
    CHECK(depths.qualifying_maps > 0);
}
