#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cokmat/groups.hpp"
#include "cokmat/residue.hpp"
#include "cokmat/rng.hpp"

namespace cokmat {

// Parameters of the limit distribution: the u-shift, the primes in play,
// and the truncation depth of the infinite products (terms are dropped once
// below 1e-16, so the dropped tail is under 1e-15).
struct CLParams {
    int u = 0;
    std::vector<int64_t> primes;

    static CLParams for_modulus(const Modulus& a, int u);
};

// prod_{k>=1} (1 - p^{-k-u}).
double cl_normalizer(int64_t p, int u);

// P(Y = B) = prod_{p in P} [prod_{k>=1}(1 - p^{-k-u})] / (|B_p|^u |Aut(B_p)|).
// Throws if B involves a prime outside params.primes.
double cl_probability(const GroupType& b, const CLParams& params);

// P(corank = k) for a random matrix mod a prime p:
//   p^{-k(k+u)} prod_{i=1}^{k}(1-p^{-i})^{-1} prod_{i=1}^{k+u}(1-p^{-i})^{-1}
//   prod_{i>=1}(1-p^{-i}).
double cl_rank_probability(int k, int u, int64_t p);

// All p-groups of order <= cutoff with their probabilities, plus the tail
// mass 1 - sum (never silently renormalized).
struct CLSupport {
    int64_t p;
    int u;
    uint64_t cutoff;
    std::vector<std::pair<GroupType, double>> entries;  // (order, label) sorted
    double tail_mass;
};

// cutoff must be p^N with N <= 12.
CLSupport enumerate_cl_support(int64_t p, int u, uint64_t cutoff);

// Inverse-CDF draw; nullopt is the overflow bucket, hit with probability
// equal to the tail mass.
std::optional<GroupType> sample_cl_group(const CLSupport& support, const RandomStream& stream,
                                         uint64_t substream);
std::optional<GroupType> sample_cl_group(int64_t p, int u, uint64_t cutoff,
                                         const RandomStream& stream, uint64_t substream);

// Truncated moment identity: sum over enumerated B of P(B) #Sur(B, G),
// with its distance from |G|^{-u}.
struct CLMomentCheck {
    double truncated_sum;
    double defect;
    double tail_mass;
};

CLMomentCheck cl_moment_check(const GroupType& g, int u, uint64_t cutoff);

// Law of Y tensor Z/aZ: per-prime supports capped at the exponent of a and
// aggregated, then multiplied across primes.  The tail mass is everything
// whose capped label could not be resolved within the per-prime cutoffs.
struct CLTable {
    std::vector<std::pair<GroupType, double>> entries;
    double tail_mass;
};

CLTable cl_table_mod(const Modulus& a, int u, int cutoff_weight);

}  // namespace cokmat
