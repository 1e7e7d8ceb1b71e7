#include "cokmat/structure.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

namespace cokmat {

namespace {
constexpr uint64_t kEnumerationCap = 10'000'000;
constexpr int kExactSubsetCap = 24;
constexpr int kDepthCap = 20;
}  // namespace

HomVG HomVG::make(const GroupType& type, const std::vector<std::vector<int64_t>>& coords) {
    auto group = std::make_shared<ConcreteGroup>(type);
    std::vector<uint32_t> images;
    images.reserve(coords.size());
    for (const auto& c : coords) images.push_back(group->encode(c));
    return HomVG{std::move(group), std::move(images)};
}

HomVG HomVG::make(std::shared_ptr<const ConcreteGroup> group, std::vector<uint32_t> images) {
    return HomVG{std::move(group), std::move(images)};
}

std::vector<uint32_t> subgroup_closure(const ConcreteGroup& g,
                                       const std::vector<uint32_t>& gens) {
    std::vector<uint64_t> mask((g.size() + 63) / 64, 0);
    std::vector<uint32_t> elems{0};
    mask[0] = 1;
    for (uint32_t gen : gens) {
        if ((mask[gen >> 6] >> (gen & 63)) & 1) continue;
        const std::size_t base = elems.size();
        uint32_t offset = gen;
        while (!((mask[offset >> 6] >> (offset & 63)) & 1)) {
            for (std::size_t i = 0; i < base; ++i) {
                const uint32_t x = g.add(elems[i], offset);
                mask[x >> 6] |= uint64_t(1) << (x & 63);
                elems.push_back(x);
            }
            offset = g.add(offset, gen);
        }
    }
    return elems;
}

uint64_t subgroup_size(const ConcreteGroup& g, const std::vector<uint32_t>& gens) {
    return subgroup_closure(g, gens).size();
}

int ell(int64_t d) {
    if (d < 1) throw std::invalid_argument("ell needs a positive integer");
    int count = 0;
    for (int64_t p = 2; p * p <= d; ++p)
        while (d % p == 0) {
            d /= p;
            ++count;
        }
    if (d > 1) ++count;
    return count;
}

namespace {

// Visit all size-k subsets of [n]; stop early when visit returns true.
bool for_each_subset(int n, int k, const std::function<bool(const std::vector<int>&)>& visit) {
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
        if (visit(idx)) return true;
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) return false;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

uint64_t span_size_excluding(const HomVG& f, const std::vector<int>& sigma) {
    std::vector<uint32_t> gens;
    gens.reserve(f.images.size());
    std::size_t s = 0;
    for (int i = 0; i < f.n(); ++i) {
        if (s < sigma.size() && sigma[s] == i) {
            ++s;
            continue;
        }
        gens.push_back(f.images[i]);
    }
    return subgroup_size(*f.group, gens);
}

}  // namespace

int code_distance(const HomVG& f) {
    if (f.n() > kExactSubsetCap)
        throw capacity_error("exact code distance capped at n = 24; use code_distance_bound");
    const uint64_t full = f.group->size();
    for (int s = 0; s <= f.n(); ++s) {
        const bool found = for_each_subset(f.n(), s, [&](const std::vector<int>& sigma) {
            return span_size_excluding(f, sigma) != full;
        });
        if (found) return s;
    }
    return f.n() + 1;  // trivial G: no removal kills surjectivity
}

CodeDistanceBound code_distance_bound(const HomVG& f) {
    if (f.n() <= kExactSubsetCap) return {code_distance(f), true};
    // Greedy witness: repeatedly drop the coordinate that shrinks the
    // remaining span the most (ties prefer nonzero images); the witness
    // size is an upper bound on the distance.
    const uint64_t full = f.group->size();
    std::vector<bool> removed(f.n(), false);
    for (int step = 0; step <= f.n(); ++step) {
        std::vector<uint32_t> gens;
        for (int i = 0; i < f.n(); ++i)
            if (!removed[i]) gens.push_back(f.images[i]);
        if (subgroup_size(*f.group, gens) != full) return {step, false};
        uint64_t best_size = ~uint64_t(0);
        bool best_nonzero = false;
        int best = -1;
        for (int drop = 0; drop < f.n(); ++drop) {
            if (removed[drop]) continue;
            gens.clear();
            for (int i = 0; i < f.n(); ++i)
                if (!removed[i] && i != drop) gens.push_back(f.images[i]);
            const uint64_t size = subgroup_size(*f.group, gens);
            const bool nonzero = f.images[drop] != 0;
            if (size < best_size || (size == best_size && nonzero && !best_nonzero)) {
                best_size = size;
                best_nonzero = nonzero;
                best = drop;
            }
        }
        if (best < 0) break;
        removed[best] = true;
    }
    return {f.n() + 1, false};
}

int64_t depth(const HomVG& f, double delta) {
    if (f.n() > kDepthCap) throw capacity_error("depth search capped at n = 20");
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must be in (0,1)");
    const uint64_t full = f.group->size();
    const int lmax = full > 1 ? ell(int64_t(full)) : 0;
    int64_t best = 1;
    for (int s = 0; s <= f.n() && double(s) < lmax * delta * f.n(); ++s) {
        for_each_subset(f.n(), s, [&](const std::vector<int>& sigma) {
            const uint64_t span = span_size_excluding(f, sigma);
            const int64_t index = int64_t(full / span);
            if (index > 1 && double(s) < ell(index) * delta * f.n())
                best = std::max(best, index);
            return false;
        });
    }
    return best;
}

namespace {

// E(zeta^{t y}) for t in [0, a): the single-entry character sums.
std::vector<std::complex<double>> entry_character_table(const EntryDistribution& dist,
                                                        int64_t a) {
    std::vector<std::complex<double>> table(a);
    for (int64_t t = 0; t < a; ++t) {
        std::complex<double> sum = 0.0;
        for (const auto& [v, q] : dist.support()) {
            const int64_t vm = ((v % a) + a) % a;
            const double angle = 2.0 * std::numbers::pi * double(t * vm % a) / double(a);
            sum += q.get_d() * std::complex<double>(std::cos(angle), std::sin(angle));
        }
        table[t] = sum;
    }
    return table;
}

// C_c(g) in Z/a for the character indexed by element c: with cyclic factors
// of order d_j, C_c(g) = sum_j c_j g_j (a / d_j).
int64_t character_pairing(const ConcreteGroup& g, int64_t a, uint32_t c, uint32_t x) {
    int64_t out = 0;
    for (std::size_t j = 0; j < g.gen_orders().size(); ++j) {
        const int64_t d = g.gen_orders()[j];
        const int64_t cj = c % d, xj = x % d;
        out = (out + cj * xj % a * ((a / d) % a)) % a;
        c /= uint32_t(d);
        x /= uint32_t(d);
    }
    return out;
}

}  // namespace

CharacterSumReport character_sums(const EntryDistribution& dist, const Modulus& a) {
    dist.require_balanced(a);
    const auto table = entry_character_table(dist, a.value());
    CharacterSumReport report;
    report.a = a.value();
    report.epsilon = dist.epsilon_for(a);
    report.bound = std::exp(-report.epsilon / double(a.value() * a.value()));
    report.all_within = true;
    for (int64_t m = 1; m < a.value(); ++m) {
        const double mag = std::abs(table[m]);
        report.magnitudes.push_back(mag);
        if (mag > report.bound + 1e-12) report.all_within = false;
    }
    return report;
}

std::vector<double> column_prob_dft_all(const HomVG& f, const EntryDistribution& dist,
                                        const Modulus& a) {
    const ConcreteGroup& g = *f.group;
    if (!g.type().exponent_divides(a.value()))
        throw std::invalid_argument("group exponent must divide the modulus");
    const int64_t av = a.value();
    const auto table = entry_character_table(dist, av);
    const uint64_t size = g.size();
    // S_c = prod_i E(zeta^{C_c(F v_i) y})
    std::vector<std::complex<double>> factors(size);
    for (uint32_t c = 0; c < size; ++c) {
        std::complex<double> prod = 1.0;
        for (const uint32_t img : f.images) prod *= table[character_pairing(g, av, c, img)];
        factors[c] = prod;
    }
    std::vector<double> probs(size);
    for (uint32_t target = 0; target < size; ++target) {
        std::complex<double> sum = 0.0;
        for (uint32_t c = 0; c < size; ++c) {
            const double angle =
                -2.0 * std::numbers::pi * double(character_pairing(g, av, c, target)) / double(av);
            sum += factors[c] * std::complex<double>(std::cos(angle), std::sin(angle));
        }
        probs[target] = sum.real() / double(size);
    }
    return probs;
}

double column_prob_dft(const HomVG& f, uint32_t target, const EntryDistribution& dist,
                       const Modulus& a) {
    return column_prob_dft_all(f, dist, a)[target];
}

double column_prob_enumerate(const HomVG& f, uint32_t target, const EntryDistribution& dist,
                             const Modulus& a) {
    if (!f.group->type().exponent_divides(a.value()))
        throw std::invalid_argument("group exponent must divide the modulus");
    const std::size_t width = dist.support().size();
    double combos = 1.0;
    for (int i = 0; i < f.n(); ++i) {
        combos *= double(width);
        if (combos > double(kEnumerationCap))
            throw capacity_error("support^n exceeds the enumeration cap");
    }
    const ConcreteGroup& g = *f.group;
    std::vector<double> probs(width);
    std::vector<uint32_t> scaled(width * f.images.size());
    for (std::size_t s = 0; s < width; ++s) {
        probs[s] = dist.support()[s].second.get_d();
        const int64_t v = dist.support()[s].first;
        for (int i = 0; i < f.n(); ++i)
            scaled[s * f.images.size() + i] = g.scalar_mul(v, f.images[i]);
    }
    long double total = 0.0L;
    // Odometer over support^n, tracking the partial sums of images.
    std::vector<std::size_t> digit(f.n(), 0);
    std::vector<uint32_t> partial(f.n() + 1, 0);
    std::vector<double> weight(f.n() + 1, 1.0);
    for (int i = 0; i < f.n(); ++i) {
        partial[i + 1] = g.add(partial[i], scaled[0 * f.images.size() + i]);
        weight[i + 1] = weight[i] * probs[0];
    }
    for (;;) {
        if (partial[f.n()] == target) total += (long double)weight[f.n()];
        int i = f.n() - 1;
        while (i >= 0 && digit[i] == width - 1) {
            digit[i] = 0;
            --i;
        }
        if (i < 0) break;
        ++digit[i];
        for (int j = i; j < f.n(); ++j) {
            partial[j + 1] = g.add(partial[j], scaled[digit[j] * f.images.size() + j]);
            weight[j + 1] = weight[j] * probs[digit[j]];
        }
    }
    return double(total);
}

double exact_column_prob(const HomVG& f, uint32_t target, const EntryDistribution& dist,
                         const Modulus& a) {
    const double via_dft = column_prob_dft(f, target, dist, a);
    try {
        const double via_enum = column_prob_enumerate(f, target, dist, a);
        if (std::abs(via_dft - via_enum) > 1e-12)
            throw std::logic_error("transform and enumeration disagree beyond 1e-12");
    } catch (const capacity_error&) {
        // transform-only mode
    }
    return via_dft;
}

CodeLemmaReport verify_code_lemma(const HomVG& f, const EntryDistribution& dist, double delta,
                                  const Modulus& a) {
    dist.require_balanced(a);
    CodeLemmaReport report;
    report.code_distance = code_distance(f);
    report.precondition_ok = double(report.code_distance) >= delta * f.n();
    const double eps = dist.epsilon_for(a);
    report.bound = std::exp(-eps * delta * f.n() / double(a.value() * a.value()));
    report.max_deviation = 0.0;
    if (!report.precondition_ok) {
        report.pass = false;
        return report;
    }
    const auto probs = column_prob_dft_all(f, dist, a);
    const double uniform = 1.0 / double(f.group->size());
    for (const double p : probs) {
        const double dev = std::abs(p - uniform);
        report.deviations.push_back(dev);
        report.max_deviation = std::max(report.max_deviation, dev);
    }
    report.pass = report.max_deviation <= report.bound + 1e-12;
    return report;
}

DepthCensus census_depth(int n, const GroupType& g, double delta) {
    auto group = std::make_shared<const ConcreteGroup>(g);
    const uint64_t size = group->size();
    double total = 1.0;
    for (int i = 0; i < n; ++i) {
        total *= double(size);
        if (total > double(kEnumerationCap))
            throw capacity_error("|G|^n exceeds the census cap");
    }
    DepthCensus census;
    census.n = n;
    census.delta = delta;
    std::vector<uint32_t> images(n, 0);
    for (;;) {
        const int64_t d = depth(HomVG{group, images}, delta);
        ++census.counts[d];
        int i = n - 1;
        while (i >= 0 && images[i] == size - 1) {
            images[i] = 0;
            --i;
        }
        if (i < 0) break;
        ++images[i];
    }
    for (const auto& [d, count] : census.counts) {
        if (d == 1) continue;
        const int k = std::max(0, int(std::ceil(ell(d) * delta * n)) - 1);
        double binom = 1.0;
        for (int i = 0; i < k; ++i) binom = binom * (n - i) / (i + 1);
        census.bound_factors[d] =
            binom * std::pow(double(size), n) * std::pow(double(d), -n + ell(d) * delta * n);
    }
    return census;
}

}  // namespace cokmat
