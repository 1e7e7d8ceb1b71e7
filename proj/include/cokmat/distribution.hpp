#pragma once

#include <cstdint>
#include <gmpxx.h>
#include <string>
#include <vector>

#include "cokmat/residue.hpp"
#include "cokmat/rng.hpp"

namespace cokmat {

// Raised when a distribution fails the balance hypothesis for the modulus
// in use; carries the offending prime and residue class.
class unbalanced_error : public std::invalid_argument {
  public:
    unbalanced_error(int64_t p, int64_t r, const std::string& msg)
        : std::invalid_argument(msg), prime(p), residue(r) {}
    int64_t prime;
    int64_t residue;
};

// Finite-support law for matrix entries.  Probabilities are exact rationals
// so that "sums to one" and the per-prime balance parameter
//   epsilon(p) = 1 - max_r P(value = r mod p)
// are exact statements, not float comparisons.
class EntryDistribution {
  public:
    EntryDistribution(std::vector<std::pair<int64_t, mpq_class>> support, std::string spec);

    const std::vector<std::pair<int64_t, mpq_class>>& support() const { return support_; }
    const std::string& spec() const { return spec_; }

    mpq_class class_probability(int64_t p, int64_t r) const;  // P(value = r mod p)
    double epsilon(int64_t p) const;
    double epsilon_for(const Modulus& a) const;  // min over primes of a
    bool balanced(const Modulus& a) const;
    // Throws unbalanced_error naming the offending (p, r) when not balanced.
    void require_balanced(const Modulus& a) const;

  private:
    std::vector<std::pair<int64_t, mpq_class>> support_;
    std::string spec_;
};

// Mini-language: "uniform" (uniform on [0,a)), "bernoulli:q" (0 w.p. q,
// 1 w.p. 1-q), "table:v1=p1,v2=p2,...".  Probabilities are decimals or
// fractions like 1/3 and must sum to exactly 1.
EntryDistribution parse_distribution(const std::string& spec, const Modulus& a);

// Exact inverse-CDF sampler over the common denominator of the support:
// draws an integer in [0, Q) by rejection, so sampled frequencies match the
// rational law with no floating-point bias.
class DiscreteSampler {
  public:
    DiscreteSampler(const EntryDistribution& dist, const Modulus& a);

    uint32_t sample(const RandomStream& rs, uint64_t substream) const {
        const uint64_t r = rs.uniform_below(substream, denominator_);
        if (uniform_) return uint32_t(r);
        std::size_t lo = 0, hi = cumulative_.size() - 1;
        while (lo < hi) {
            const std::size_t mid = (lo + hi) / 2;
            if (r < cumulative_[mid])
                hi = mid;
            else
                lo = mid + 1;
        }
        return values_[lo];
    }

  private:
    bool uniform_ = false;
    uint64_t denominator_ = 1;
    std::vector<uint64_t> cumulative_;  // exclusive prefix sums shifted by one
    std::vector<uint32_t> values_;      // support reduced mod a
};

// Parse "0.25", "7", or "3/4" into an exact rational.
mpq_class parse_rational(const std::string& text);

}  // namespace cokmat
