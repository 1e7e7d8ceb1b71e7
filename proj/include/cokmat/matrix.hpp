#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "cokmat/distribution.hpp"
#include "cokmat/groups.hpp"
#include "cokmat/residue.hpp"
#include "cokmat/rng.hpp"

namespace cokmat {

// Dense n x m matrix over Z/aZ, column-major: column j is the image of the
// j-th basis vector of the source module.
class MatrixModA {
  public:
    MatrixModA(int n, int m, Modulus mod);

    int rows() const { return n_; }
    int cols() const { return m_; }
    const Modulus& modulus() const { return mod_; }

    uint32_t at(int i, int j) const { return e_[std::size_t(j) * n_ + i]; }
    void set(int i, int j, uint32_t v) { e_[std::size_t(j) * n_ + i] = v; }
    const uint32_t* col(int j) const { return e_.data() + std::size_t(j) * n_; }

  private:
    int n_, m_;
    Modulus mod_;
    std::vector<uint32_t> e_;
};

// Sample an n x (n+u) matrix with iid entries ~ dist, reduced mod a.  The
// variate for entry (i, j) is derived from (stream.seed, stream.stream,
// column-major entry index), so samples are reproducible under any
// parallel schedule.  Rejects distributions that are not balanced for a.
MatrixModA sample_matrix(int n, int u, const EntryDistribution& dist, const Modulus& a,
                         const RandomStream& stream);

// Heterogeneous-entry variant: chooser(i, j) picks the sampler for each
// entry; every referenced distribution must be balanced for a.
MatrixModA sample_matrix_mixed(int n, int u,
                               const std::function<const DiscreteSampler&(int, int)>& chooser,
                               const Modulus& a, const RandomStream& stream);

// Rank of M reduced mod p (p | a), by elimination over F_p; bit-packed
// fast path for p = 2.
int rank_mod_p(const MatrixModA& m, int64_t p);

// Diagonal p-valuations of the Smith form of M over Z/p^e Z, sorted
// nonincreasing, length min(n, m).  cok(M) tensor Z/p^e is
//   sum_i Z/p^{d_i}  (+)  (Z/p^e)^{max(0, n-m)}.
struct SnfDiagonal {
    int64_t p;
    int e;
    std::vector<int> valuations;
};

SnfDiagonal snf_mod_prime_power(const MatrixModA& m, int64_t p, int e);

// Isomorphism type of cok(M) tensor Z/aZ, assembled per prime power of a.
GroupType cokernel_group(const MatrixModA& m);

}  // namespace cokmat
