#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cokmat {

// Raised when an input exceeds a documented capacity bound (lattice size,
// enumeration width, word-size modulus, ...).
class capacity_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Raised by unit_inverse on a non-unit argument.
class non_unit_error : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

struct PrimePower {
    int64_t p;
    int e;

    int64_t value() const;  // p^e
    bool operator==(const PrimePower&) const = default;
};

// A positive modulus a <= 2^31 together with its prime factorization,
// primes ascending.  Word-sized on purpose: every product of two residues
// fits in 64 bits before reduction.
class Modulus {
  public:
    explicit Modulus(int64_t a);

    int64_t value() const { return a_; }
    const std::vector<PrimePower>& factors() const { return factors_; }
    bool has_factor(int64_t p) const;
    const PrimePower& factor_of(int64_t p) const;

    bool operator==(const Modulus& o) const { return a_ == o.a_; }

  private:
    int64_t a_;
    std::vector<PrimePower> factors_;
};

// A value in [0, a) tagged with its modulus.
struct Residue {
    int64_t value;
    int64_t modulus;

    Residue(int64_t v, int64_t a);
};

Modulus factorize(int64_t a);

bool is_prime(int64_t n);

// Largest v <= e with p^v | x, where valuation(0) = e by convention so that
// a zero SNF diagonal entry maps to a partition part of e.
int valuation(int64_t x, int64_t p, int e);

// Inverse of a unit x mod p^e; throws non_unit_error when p | x.
int64_t unit_inverse(int64_t x, int64_t p, int e);

// x mod p^e for a factor (p,e) of a.
int64_t crt_project(int64_t x, const Modulus& a, const PrimePower& target);

// Reassemble x mod a from its images mod each prime power of a
// (same order as a.factors()).
int64_t crt_reconstruct(const std::vector<int64_t>& images, const Modulus& a);

inline int64_t mul_mod(int64_t x, int64_t y, int64_t m) {
    return int64_t((__int128)x * y % m);
}

int64_t pow_mod(int64_t base, int64_t exp, int64_t m);

// Inverse mod an arbitrary modulus m (extended Euclid); gcd(x, m) must be 1.
int64_t inverse_mod(int64_t x, int64_t m);

}  // namespace cokmat
