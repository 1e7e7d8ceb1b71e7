#pragma once

#include <gmpxx.h>
#include <map>

#include "cokmat/groups.hpp"
#include "cokmat/residue.hpp"

namespace cokmat {

enum class MomentProvenance { Theoretical, Empirical };

struct MomentEntry {
    mpq_class value;
    MomentProvenance provenance = MomentProvenance::Theoretical;
};

// Map G -> M_G over groups of exponent dividing a.  Entries above the
// |wedge^2 G| growth bound are legal (empirical tables fluctuate) but are
// flagged by check_growth_bound.
struct MomentTable {
    Modulus a;
    std::map<GroupType, MomentEntry, GroupTypeLess> entries;

    std::vector<GroupType> groups_violating_growth_bound() const;
};

struct SolvedDistribution {
    int truncation_rank;
    std::map<GroupType, mpq_class, GroupTypeLess> probabilities;
    // Defect of each *extra* supplied equation (keys of rank > R) when the
    // solved probabilities are substituted back.
    std::map<GroupType, mpq_class, GroupTypeLess> residuals;
    mpq_class total_probability;
};

// Solve sum_H P(H) #Sur(H, G) = M_G restricted to groups of per-prime rank
// <= R.  Ordered by group order the system is upper triangular with
// diagonal #Sur(G, G) = |Aut(G)| > 0, so back-substitution in exact
// rationals gives the unique solution.  Moment entries for rank-(R+1)
// groups, when supplied, are consumed as residual probes.
SolvedDistribution solve(const MomentTable& moments, int truncation_rank);

// M_G = sum_H dist(H) #Sur(H, G) for all G of rank <= R.
MomentTable moments_from_distribution(const std::map<GroupType, mpq_class, GroupTypeLess>& dist,
                                      const Modulus& a, int truncation_rank);

}  // namespace cokmat
