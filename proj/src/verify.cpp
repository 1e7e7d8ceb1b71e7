#include "cokmat/verify.hpp"

#include <cmath>
#include <sstream>

namespace cokmat {

namespace {

void compositions(int slots, int budget, std::vector<int>& current,
                  std::vector<std::vector<int>>& out) {
    if (slots == 1) {
        current.push_back(budget);
        out.push_back(current);
        current.pop_back();
        return;
    }
    for (int take = 0; take <= budget; ++take) {
        current.push_back(take);
        compositions(slots - 1, budget - take, current, out);
        current.pop_back();
    }
}

std::string dist_spec_of(const std::vector<int>& numerators, int denominator) {
    std::ostringstream os;
    os << "table:";
    bool first = true;
    for (std::size_t v = 0; v < numerators.size(); ++v) {
        if (numerators[v] == 0) continue;
        if (!first) os << ',';
        os << v << '=' << numerators[v] << '/' << denominator;
        first = false;
    }
    return os.str();
}

}  // namespace

std::vector<EntryDistribution> grid_distributions(const Modulus& a, int denominator) {
    std::vector<std::vector<int>> combos;
    std::vector<int> current;
    compositions(int(a.value()), denominator, current, combos);
    std::vector<EntryDistribution> out;
    for (const auto& numerators : combos) {
        bool any = false;
        for (int k : numerators) any |= (k > 0);
        if (!any) continue;
        EntryDistribution dist = parse_distribution(dist_spec_of(numerators, denominator), a);
        if (dist.balanced(a)) out.push_back(std::move(dist));
    }
    return out;
}

bool is_code(const HomVG& f, double w) {
    const uint64_t full = f.group->size();
    const int max_size = std::min(f.n(), int(std::ceil(w)) - 1);
    std::vector<int> sigma;
    // Depth-first over subsets of size <= max_size.
    const std::function<bool(int)> scan = [&](int next) -> bool {
        if (double(sigma.size()) < w || sigma.empty()) {
            std::vector<uint32_t> gens;
            std::size_t s = 0;
            for (int i = 0; i < f.n(); ++i) {
                if (s < sigma.size() && sigma[s] == i) {
                    ++s;
                    continue;
                }
                gens.push_back(f.images[i]);
            }
            if (subgroup_size(*f.group, gens) != full) return false;
        }
        if (int(sigma.size()) >= max_size) return true;
        for (int i = next; i < f.n(); ++i) {
            sigma.push_back(i);
            if (!scan(i + 1)) return false;
            sigma.pop_back();
        }
        return true;
    };
    return scan(0);
}

CharacterBoundReport verify_character_bound_grid(const std::vector<int64_t>& moduli,
                                                 int denominator) {
    CharacterBoundReport report;
    report.moduli = moduli;
    report.denominator = denominator;
    for (const int64_t a : moduli) {
        const Modulus mod(a);
        for (const EntryDistribution& dist : grid_distributions(mod, denominator)) {
            const CharacterSumReport sums = character_sums(dist, mod);
            for (std::size_t m = 0; m < sums.magnitudes.size(); ++m) {
                ++report.cases;
                const double margin = sums.magnitudes[m] - sums.bound;
                if (margin > report.worst_margin) {
                    report.worst_margin = margin;
                    std::ostringstream os;
                    os << "a=" << a << " m=" << (m + 1) << " dist=" << dist.spec();
                    report.worst_case = os.str();
                }
                if (margin > 1e-12) ++report.failures;
            }
        }
    }
    report.pass = report.failures == 0;
    return report;
}

namespace {

struct GridScope {
    GroupType group;
    int64_t a;
    int denominator;
};

std::vector<GridScope> code_scopes() {
    return {
        {GroupType::parse("2:[1]"), 2, 20},
        {GroupType::parse("3:[1]"), 3, 10},
        {GroupType::parse("2:[2]"), 4, 5},
    };
}

// Odometer over Hom(V, G) = G^n.
bool next_hom(std::vector<uint32_t>& images, uint64_t size) {
    int i = int(images.size()) - 1;
    while (i >= 0 && images[i] == size - 1) {
        images[i] = 0;
        --i;
    }
    if (i < 0) return false;
    ++images[i];
    return true;
}

}  // namespace

CodeBoundReport verify_code_bound_grid(double delta) {
    CodeBoundReport report;
    report.delta = delta;
    for (const GridScope& scope : code_scopes()) {
        const Modulus mod(scope.a);
        const auto dists = grid_distributions(mod, scope.denominator);
        auto group = std::make_shared<const ConcreteGroup>(scope.group);
        const uint64_t size = group->size();
        for (int n = 2; n <= 8; ++n) {
            const double bound_exp = delta * n / double(scope.a * scope.a);
            std::vector<uint32_t> images(n, 0);
            uint64_t hom_index = 0;
            do {
                ++report.homs_enumerated;
                const HomVG f{group, images};
                if (!is_code(f, delta * n)) {
                    ++hom_index;
                    continue;
                }
                ++report.codes_checked;
                for (const EntryDistribution& dist : dists) {
                    const double eps = dist.epsilon_for(mod);
                    const double bound = std::exp(-eps * bound_exp);
                    const auto probs = column_prob_dft_all(f, dist, mod);
                    for (uint32_t target = 0; target < size; ++target) {
                        ++report.cases;
                        const double dev = std::abs(probs[target] - 1.0 / double(size));
                        const double margin = dev - bound;
                        if (margin > report.worst_margin) {
                            report.worst_margin = margin;
                            std::ostringstream os;
                            os << "G=" << scope.group.label() << " n=" << n
                               << " dist=" << dist.spec() << " A=" << target;
                            report.worst_case = os.str();
                        }
                        if (margin > 1e-12) ++report.failures;
                    }
                    if ((hom_index + report.agreement_checks) % 97 == 0) {
                        ++report.agreement_checks;
                        const double via_enum = column_prob_enumerate(f, 0, dist, mod);
                        report.max_dft_enum_gap =
                            std::max(report.max_dft_enum_gap, std::abs(probs[0] - via_enum));
                    }
                }
                ++hom_index;
            } while (next_hom(images, size));
        }
    }
    report.pass = report.failures == 0 && report.max_dft_enum_gap <= 1e-12;
    return report;
}

DepthBoundReport verify_depth_bound_grid(double delta) {
    DepthBoundReport report;
    report.delta = delta;
    const std::vector<std::pair<GridScope, int>> scopes = {
        {{GroupType::parse("2:[1]"), 2, 20}, 8},
        {{GroupType::parse("2:[2]"), 4, 5}, 6},
    };
    for (const auto& [scope, n] : scopes) {
        const Modulus mod(scope.a);
        const auto dists = grid_distributions(mod, scope.denominator);
        auto group = std::make_shared<const ConcreteGroup>(scope.group);
        const uint64_t size = group->size();
        std::vector<uint32_t> images(n, 0);
        do {
            ++report.homs_enumerated;
            const HomVG f{group, images};
            const int64_t d = depth(f, delta);
            if (d <= 1) continue;
            std::vector<uint32_t> gens(images.begin(), images.end());
            const uint64_t image_size = subgroup_size(*group, gens);
            const int64_t image_index = int64_t(size / image_size);
            if (image_index >= d) continue;  // premise needs [G : F(V)] < D
            ++report.qualifying_maps;
            for (const EntryDistribution& dist : dists) {
                const double eps = dist.epsilon_for(mod);
                const double bound =
                    (1.0 - eps) * (double(d) / double(size) +
                                   std::exp(-eps * delta * n / double(scope.a * scope.a)));
                const double p0 = column_prob_dft(f, 0, dist, mod);
                ++report.cases;
                const double margin = p0 - bound;
                if (margin > report.worst_margin) {
                    report.worst_margin = margin;
                    std::ostringstream os;
                    os << "G=" << scope.group.label() << " n=" << n << " D=" << d
                       << " dist=" << dist.spec();
                    report.worst_case = os.str();
                }
                if (margin > 1e-12) ++report.failures;
            }
        } while (next_hom(images, size));
    }
    report.pass = report.failures == 0;
    return report;
}

BoundsReport run_bounds_verification(double delta) {
    BoundsReport report;
    report.delta = delta;
    report.character_bound = verify_character_bound_grid({2, 3, 4}, 20);
    report.code_bound = verify_code_bound_grid(delta);
    report.depth_bound = verify_depth_bound_grid(delta);
    return report;
}

}  // namespace cokmat
