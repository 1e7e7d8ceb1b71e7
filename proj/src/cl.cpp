#include "cokmat/cl.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace cokmat {

CLParams CLParams::for_modulus(const Modulus& a, int u) {
    CLParams params;
    params.u = u;
    for (const auto& f : a.factors()) params.primes.push_back(f.p);
    return params;
}

double cl_normalizer(int64_t p, int u) {
    double prod = 1.0;
    for (int k = 1;; ++k) {
        const double term = std::pow(double(p), -double(k + u));
        if (term < 1e-16) break;
        prod *= 1.0 - term;
    }
    return prod;
}

double cl_probability(const GroupType& b, const CLParams& params) {
    if (params.u < 0) throw std::invalid_argument("u must be nonnegative");
    for (const auto& [p, lam] : b.components())
        if (std::find(params.primes.begin(), params.primes.end(), p) == params.primes.end())
            throw std::invalid_argument("group has a prime outside the parameter set: " +
                                        std::to_string(p));
    double prob = 1.0;
    for (const int64_t p : params.primes) prob *= cl_normalizer(p, params.u);
    const double order = double(group_order(b));
    return prob / (std::pow(order, params.u) * aut_order(b).get_d());
}

double cl_rank_probability(int k, int u, int64_t p) {
    if (k < 0) throw std::invalid_argument("corank must be nonnegative");
    double value = std::pow(double(p), -double(k) * (k + u));
    for (int i = 1; i <= k; ++i) value /= 1.0 - std::pow(double(p), -i);
    for (int i = 1; i <= k + u; ++i) value /= 1.0 - std::pow(double(p), -i);
    for (int i = 1;; ++i) {
        const double term = std::pow(double(p), -i);
        if (term < 1e-16) break;
        value *= 1.0 - term;
    }
    return value;
}

CLSupport enumerate_cl_support(int64_t p, int u, uint64_t cutoff) {
    int weight = 0;
    uint64_t power = 1;
    while (power < cutoff) {
        power *= uint64_t(p);
        ++weight;
    }
    if (power != cutoff || weight > 12)
        throw std::invalid_argument("cutoff must be p^N with N <= 12");

    CLSupport support{p, u, cutoff, {}, 0.0};
    const CLParams params{u, {p}};
    double total = 0.0;
    for (const GroupType& g : enumerate_p_groups(p, weight)) {
        const double prob = cl_probability(g, params);
        support.entries.emplace_back(g, prob);
        total += prob;
    }
    support.tail_mass = std::max(0.0, 1.0 - total);
    return support;
}

std::optional<GroupType> sample_cl_group(const CLSupport& support, const RandomStream& stream,
                                         uint64_t substream) {
    const double r = stream.uniform01(substream);
    double acc = 0.0;
    for (const auto& [g, prob] : support.entries) {
        acc += prob;
        if (r < acc) return g;
    }
    return std::nullopt;  // overflow bucket
}

std::optional<GroupType> sample_cl_group(int64_t p, int u, uint64_t cutoff,
                                         const RandomStream& stream, uint64_t substream) {
    return sample_cl_group(enumerate_cl_support(p, u, cutoff), stream, substream);
}

CLMomentCheck cl_moment_check(const GroupType& g, int u, uint64_t cutoff) {
    if (g.components().size() > 1)
        throw std::invalid_argument("moment check runs one prime at a time");
    const int64_t p = g.trivial() ? 2 : g.components()[0].first;
    const CLSupport support = enumerate_cl_support(p, u, cutoff);
    const SubgroupLattice& lattice = cached_lattice(g);
    double sum = 0.0;
    for (const auto& [b, prob] : support.entries) sum += prob * double(sur_count(b, lattice));
    const double target = std::pow(double(group_order(g)), -double(u));
    return CLMomentCheck{sum, std::abs(sum - target), support.tail_mass};
}

CLTable cl_table_mod(const Modulus& a, int u, int cutoff_weight) {
    // Per prime: enumerate up to p^cutoff_weight, cap partitions at e, merge.
    CLTable table;
    table.entries.emplace_back(GroupType(), 1.0);
    table.tail_mass = 0.0;
    for (const auto& f : a.factors()) {
        const int weight = std::min(12, cutoff_weight);
        uint64_t cutoff = 1;
        for (int i = 0; i < weight; ++i) cutoff *= uint64_t(f.p);
        const CLSupport support = enumerate_cl_support(f.p, u, cutoff);
        std::map<Partition, double> capped;
        for (const auto& [g, prob] : support.entries) {
            const Partition* lam = g.partition_at(f.p);
            capped[lam ? lam->capped(f.e) : Partition()] += prob;
        }
        std::vector<std::pair<GroupType, double>> next;
        double mass = 0.0;
        for (const auto& [g, prob] : table.entries) {
            for (const auto& [lam, pprob] : capped) {
                GroupType combined = g;
                if (!lam.parts.empty()) {
                    auto comps = g.components();
                    comps.emplace_back(f.p, lam);
                    combined = GroupType(std::move(comps));
                }
                next.emplace_back(combined, prob * pprob);
                mass += prob * pprob;
            }
        }
        table.entries = std::move(next);
        table.tail_mass = 1.0 - mass;
    }
    std::sort(table.entries.begin(), table.entries.end(),
              [](const auto& x, const auto& y) { return GroupTypeLess{}(x.first, y.first); });
    return table;
}

}  // namespace cokmat
