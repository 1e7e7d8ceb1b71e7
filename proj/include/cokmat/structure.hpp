#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "cokmat/distribution.hpp"
#include "cokmat/groups.hpp"

namespace cokmat {

// A homomorphism F: R^n -> G given by the images of the standard basis
// vectors, G realized concretely.
struct HomVG {
    std::shared_ptr<const ConcreteGroup> group;
    std::vector<uint32_t> images;  // element indices, one per basis vector

    int n() const { return int(images.size()); }

    static HomVG make(const GroupType& type, const std::vector<std::vector<int64_t>>& coords);
    static HomVG make(std::shared_ptr<const ConcreteGroup> group, std::vector<uint32_t> images);
};

// Subgroup generated by a set of elements (coset-extension closure).
std::vector<uint32_t> subgroup_closure(const ConcreteGroup& g,
                                       const std::vector<uint32_t>& gens);
uint64_t subgroup_size(const ConcreteGroup& g, const std::vector<uint32_t>& gens);

// Number of prime factors of D counted with multiplicity.
int ell(int64_t d);

// Largest w such that F restricted to any n - |sigma| coordinates with
// |sigma| < w still surjects onto G; equivalently the smallest size of a
// coordinate set whose removal kills surjectivity (0 for non-surjective F,
// n + 1 when no removal kills it).  Exact subset search; n <= 24.
int code_distance(const HomVG& f);

struct CodeDistanceBound {
    int value;
    bool exact;  // false: greedy witness search, value is an upper bound
};

// Exact for n <= 24, greedy upper bound beyond (labeled).
CodeDistanceBound code_distance_bound(const HomVG& f);

// Maximal D > 1 such that some sigma with |sigma| < ell(D) * delta * n has
// [G : F(V without sigma)] = D; 1 if none.  Exhaustive; n <= 20.
int64_t depth(const HomVG& f, double delta);

// Exact |E(zeta^{m y})| for every m in [1, a-1] against the balance bound
// exp(-epsilon / a^2).
struct CharacterSumReport {
    int64_t a;
    double epsilon;
    double bound;
    std::vector<double> magnitudes;  // index m-1
    bool all_within;
};

CharacterSumReport character_sums(const EntryDistribution& dist, const Modulus& a);

// P(FX = A) for X with iid entries ~ dist, via the group Fourier expansion
//   P(FX = A) = |G|^{-1} sum_{C in G^*} E(zeta^{C(FX - A)}).
double column_prob_dft(const HomVG& f, uint32_t target, const EntryDistribution& dist,
                       const Modulus& a);
std::vector<double> column_prob_dft_all(const HomVG& f, const EntryDistribution& dist,
                                        const Modulus& a);

// P(FX = A) by direct enumeration of support^n; throws capacity_error when
// |support|^n > 10^7.
double column_prob_enumerate(const HomVG& f, uint32_t target, const EntryDistribution& dist,
                             const Modulus& a);

// Runs both routes when the enumeration fits and insists they agree to
// 1e-12; falls back to the transform alone otherwise.
double exact_column_prob(const HomVG& f, uint32_t target, const EntryDistribution& dist,
                         const Modulus& a);

// Per-target deviation |P(FX = A) - |G|^{-1}| against exp(-eps delta n / a^2),
// valid when F is a code of distance delta * n.
struct CodeLemmaReport {
    bool precondition_ok;
    int code_distance;
    double bound;
    std::vector<double> deviations;  // one per A, element-index order
    double max_deviation;
    bool pass;  // precondition_ok and every deviation within bound
};

CodeLemmaReport verify_code_lemma(const HomVG& f, const EntryDistribution& dist, double delta,
                                  const Modulus& a);

// Exact census of Hom(V, G) by depth, with the non-constant factor of the
// counting bound binom(n, ceil(l(D) delta n) - 1) |G|^n D^{-n + l(D) delta n}
// for every depth D > 1 that occurs.
struct DepthCensus {
    int n;
    double delta;
    std::map<int64_t, uint64_t> counts;        // depth -> #F
    std::map<int64_t, double> bound_factors;   // depth D > 1 -> bound factor
};

DepthCensus census_depth(int n, const GroupType& g, double delta);

}  // namespace cokmat
