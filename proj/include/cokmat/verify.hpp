#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cokmat/distribution.hpp"
#include "cokmat/structure.hpp"

namespace cokmat {

// All probability vectors (k_0/denom, ..., k_{a-1}/denom) with positive sum
// one, restricted to laws balanced for a.
std::vector<EntryDistribution> grid_distributions(const Modulus& a, int denominator);

// Every F in Hom(V, G) surjects within bound after deleting any fewer than
// w coordinates?  Subset check up to size ceil(w) - 1.
bool is_code(const HomVG& f, double w);

// |E(zeta^{m y})| <= exp(-eps / a^2) over the full probability grid.
struct CharacterBoundReport {
    std::vector<int64_t> moduli;
    int denominator;
    uint64_t cases = 0;
    uint64_t failures = 0;
    double worst_margin = -1.0;  // max over cases of magnitude - bound
    std::string worst_case;
    bool pass = true;
};

CharacterBoundReport verify_character_bound_grid(const std::vector<int64_t>& moduli,
                                                 int denominator);

// |P(FX=A) - |G|^{-1}| <= exp(-eps delta n / a^2) for every code F of
// distance delta*n, every A, every grid law; includes a deterministic
// transform-vs-enumeration agreement subsample.
struct CodeBoundReport {
    double delta;
    uint64_t homs_enumerated = 0;
    uint64_t codes_checked = 0;
    uint64_t cases = 0;  // (F, dist, A) triples
    uint64_t failures = 0;
    double worst_margin = -1.0;
    std::string worst_case;
    uint64_t agreement_checks = 0;
    double max_dft_enum_gap = 0.0;
    bool pass = true;
};

// Scope fixed by contract: G in {Z/2, Z/3, Z/4}, n in [2, 8], grid
// denominators 20 / 10 / 5 per modulus.
CodeBoundReport verify_code_bound_grid(double delta);

// P(FX=0) <= (1 - eps)(D |G|^{-1} + exp(-eps delta n / a^2)) for every
// enumerated F of depth D > 1 with [G : F(V)] < D.
struct DepthBoundReport {
    double delta;
    uint64_t homs_enumerated = 0;
    uint64_t qualifying_maps = 0;
    uint64_t cases = 0;
    uint64_t failures = 0;
    double worst_margin = -1.0;
    std::string worst_case;
    bool pass = true;
};

// Scope: Z/2 at n = 8, Z/4 at n = 6.
DepthBoundReport verify_depth_bound_grid(double delta);

struct BoundsReport {
    double delta;
    CharacterBoundReport character_bound;
    CodeBoundReport code_bound;
    DepthBoundReport depth_bound;
    bool pass() const {
        return character_bound.pass && code_bound.pass && depth_bound.pass;
    }
};

BoundsReport run_bounds_verification(double delta);

}  // namespace cokmat
