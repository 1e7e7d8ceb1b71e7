#pragma once

#include <cstdint>
#include <gmpxx.h>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "cokmat/residue.hpp"

namespace cokmat {

// Partition of an integer: parts positive and nonincreasing; the empty
// partition is the trivial p-group.
struct Partition {
    std::vector<int> parts;

    Partition() = default;
    explicit Partition(std::vector<int> p);

    int weight() const;             // sum of parts
    int rank() const { return int(parts.size()); }
    int largest() const { return parts.empty() ? 0 : parts.front(); }
    Partition capped(int e) const;  // parts clamped to e, zeros dropped

    bool operator==(const Partition&) const = default;
    auto operator<=>(const Partition&) const = default;
};

// Isomorphism class of a finite abelian group as one partition per prime,
// primes ascending, no trivial components stored.
class GroupType {
  public:
    GroupType() = default;  // trivial group
    explicit GroupType(std::vector<std::pair<int64_t, Partition>> components);

    static GroupType p_group(int64_t p, Partition lambda);
    static GroupType parse(const std::string& label);

    const std::vector<std::pair<int64_t, Partition>>& components() const { return comps_; }
    bool trivial() const { return comps_.empty(); }
    const Partition* partition_at(int64_t p) const;
    int rank_at(int64_t p) const;
    int max_rank() const;
    int64_t exponent() const;
    bool exponent_divides(int64_t a) const;

    // Canonical label: "2:[2,1];3:[1]", trivial group is "1".
    std::string label() const;

    bool operator==(const GroupType&) const = default;

  private:
    std::vector<std::pair<int64_t, Partition>> comps_;
};

// Order: by group order, then by label; gives the triangular ordering used
// by the moment solver and a stable canonical order everywhere else.
struct GroupTypeLess {
    bool operator()(const GroupType& x, const GroupType& y) const;
};

uint64_t group_order(const GroupType& g);

// |Aut(G)|, multiplicative over primes; exact at any size.
mpz_class aut_order(const GroupType& g);

// #Hom(H, G) = prod_p p^{sum_{i,j} min(lambda_i, mu_j)}.  Throws
// capacity_error if the count does not fit in 64 bits.
uint64_t hom_count(const GroupType& h, const GroupType& g);

// |wedge^2 G| = prod_p p^{sum_{i<j} min(lambda_i, lambda_j)}.
mpz_class wedge_square_order(const GroupType& g);

// All group types of exponent dividing a with at most max_rank parts per
// prime, sorted by (order, label).
std::vector<GroupType> enumerate_groups(const Modulus& a, int max_rank);

// All p-group types of order dividing p^max_weight (partitions of weight
// <= max_weight, parts unbounded), sorted by (order, label).
std::vector<GroupType> enumerate_p_groups(int64_t p, int max_weight);

// A group type realized as tuples mod its cyclic factors; element handles
// are indices into the mixed-radix enumeration of tuples.
class ConcreteGroup {
  public:
    explicit ConcreteGroup(const GroupType& type);

    const GroupType& type() const { return type_; }
    uint64_t size() const { return size_; }
    int num_gens() const { return int(orders_.size()); }
    const std::vector<int64_t>& gen_orders() const { return orders_; }

    uint32_t zero() const { return 0; }
    uint32_t add(uint32_t x, uint32_t y) const;
    uint32_t neg(uint32_t x) const;
    uint32_t scalar_mul(int64_t k, uint32_t x) const;
    std::vector<int64_t> decode(uint32_t x) const;
    uint32_t encode(const std::vector<int64_t>& coords) const;
    uint32_t generator(int i) const;  // i-th standard generator

  private:
    GroupType type_;
    std::vector<int64_t> orders_;  // cyclic factor orders, prime powers
    uint64_t size_;
};

// Closed subgroup of a ConcreteGroup: sorted element list plus a bitmask
// over element indices for O(words) inclusion tests.
struct Subgroup {
    std::vector<uint32_t> elements;
    std::vector<uint64_t> mask;
    GroupType type;

    bool contains_all(const Subgroup& other) const;
    bool has(uint32_t x) const { return (mask[x >> 6] >> (x & 63)) & 1; }
};

// Complete subgroup lattice of G with the Moebius function mu(C, G) of every
// subgroup against the top.  By Moebius inversion,
//     #Sur(H, G) = sum_{C <= G} mu(C, G) #Hom(H, C).
class SubgroupLattice {
  public:
    static constexpr uint64_t kDefaultMaxOrder = uint64_t(1) << 12;

    explicit SubgroupLattice(const GroupType& g, uint64_t max_order = kDefaultMaxOrder);

    const GroupType& group() const { return group_; }
    const ConcreteGroup& realized() const { return *realized_; }
    const std::vector<Subgroup>& subgroups() const { return subgroups_; }
    int64_t moebius(std::size_t index) const { return moebius_[index]; }
    std::size_t full_index() const { return full_; }

  private:
    GroupType group_;
    std::shared_ptr<ConcreteGroup> realized_;
    std::vector<Subgroup> subgroups_;   // sorted by order ascending
    std::vector<int64_t> moebius_;      // mu(subgroup, G)
    std::size_t full_;
};

SubgroupLattice build_lattice(const GroupType& g,
                              uint64_t max_order = SubgroupLattice::kDefaultMaxOrder);

// Exact surjection count via Moebius inversion over G's subgroup lattice.
uint64_t sur_count(const GroupType& h, const SubgroupLattice& lattice);

// Convenience overload; builds (and caches, process-wide) the lattice of G.
uint64_t sur_count(const GroupType& h, const GroupType& g);

// Shared lattice cache; safe to call from multiple threads.
const SubgroupLattice& cached_lattice(const GroupType& g);

// Isomorphism type of a subset known to be a subgroup, identified by its
// element-order census.
GroupType subgroup_type(const ConcreteGroup& g, const std::vector<uint32_t>& elements);

}  // namespace cokmat
