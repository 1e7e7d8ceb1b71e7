#include "cokmat/moments.hpp"

#include <algorithm>

namespace cokmat {

std::vector<GroupType> MomentTable::groups_violating_growth_bound() const {
    std::vector<GroupType> out;
    for (const auto& [g, entry] : entries)
        if (entry.value > mpq_class(wedge_square_order(g))) out.push_back(g);
    return out;
}

SolvedDistribution solve(const MomentTable& moments, int truncation_rank) {
    const std::vector<GroupType> groups = enumerate_groups(moments.a, truncation_rank);
    for (const auto& g : groups)
        if (!moments.entries.count(g))
            throw std::invalid_argument("missing moment for group " + g.label());

    std::vector<const SubgroupLattice*> lattices;
    lattices.reserve(groups.size());
    for (const auto& g : groups) lattices.push_back(&cached_lattice(g));

    // Triangularity: #Sur(H, G) = 0 unless G is a quotient of H, and groups
    // are ordered by |G| ascending, so equation i only involves unknowns
    // j >= i once same-order non-isomorphic pairs (Sur = 0) drop out.
    const std::size_t count = groups.size();
    std::vector<std::vector<uint64_t>> sur(count, std::vector<uint64_t>(count, 0));
    for (std::size_t gi = 0; gi < count; ++gi) {
        for (std::size_t hj = 0; hj < count; ++hj) {
            sur[gi][hj] = sur_count(groups[hj], *lattices[gi]);
            if (hj < gi && sur[gi][hj] != 0)
                throw std::logic_error("triangularity violated in moment system");
        }
        const mpz_class aut = aut_order(groups[gi]);
        if (!aut.fits_ulong_p() || aut.get_ui() != sur[gi][gi])
            throw std::logic_error("diagonal of moment system must be |Aut(G)|");
    }

    SolvedDistribution out;
    out.truncation_rank = truncation_rank;
    std::vector<mpq_class> prob(count);
    for (std::size_t i = count; i-- > 0;) {
        mpq_class rhs = moments.entries.at(groups[i]).value;
        for (std::size_t j = i + 1; j < count; ++j)
            rhs -= prob[j] * mpq_class(static_cast<unsigned long>(sur[i][j]));
        rhs /= mpq_class(static_cast<unsigned long>(sur[i][i]));
        prob[i] = rhs;
    }
    out.total_probability = 0;
    for (std::size_t i = 0; i < count; ++i) {
        out.probabilities.emplace(groups[i], prob[i]);
        out.total_probability += prob[i];
    }

    // Residual probes: any supplied moment beyond the solved set.
    for (const auto& [g, entry] : moments.entries) {
        if (out.probabilities.count(g)) continue;
        const SubgroupLattice& lattice = cached_lattice(g);
        mpq_class predicted = 0;
        for (std::size_t j = 0; j < count; ++j)
            predicted +=
                prob[j] * mpq_class(static_cast<unsigned long>(sur_count(groups[j], lattice)));
        out.residuals.emplace(g, entry.value - predicted);
    }
    return out;
}

MomentTable moments_from_distribution(const std::map<GroupType, mpq_class, GroupTypeLess>& dist,
                                      const Modulus& a, int truncation_rank) {
    for (const auto& [h, p] : dist)
        if (h.max_rank() > truncation_rank)
            throw std::invalid_argument("distribution exceeds truncation rank at " + h.label());
    MomentTable table{a, {}};
    for (const GroupType& g : enumerate_groups(a, truncation_rank)) {
        const SubgroupLattice& lattice = cached_lattice(g);
        mpq_class m = 0;
        for (const auto& [h, p] : dist)
            m += p * mpq_class(static_cast<unsigned long>(sur_count(h, lattice)));
        table.entries.emplace(g, MomentEntry{m, MomentProvenance::Theoretical});
    }
    return table;
}

}  // namespace cokmat
