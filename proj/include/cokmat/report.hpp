#pragma once

#include <iosfwd>
#include <string>

#include "cokmat/cl.hpp"
#include "cokmat/experiment.hpp"
#include "cokmat/moments.hpp"
#include "cokmat/verify.hpp"

namespace cokmat {

// Fixed-format double rendering so repeated runs produce byte-identical files.
std::string format_double(double x);

void write_distribution_csv(std::ostream& os, const EmpiricalDistribution& dist);
std::string distribution_json(const EmpiricalDistribution& dist);

// theoretical[k] produced by the caller (closed form); coranks beyond the
// observed support but with mass above 1e-12 are included with count 0.
void write_rank_csv(std::ostream& os, const RankDistribution& dist, int u, int64_t p);
std::string rank_json(const RankDistribution& dist, int u, int64_t p);

void write_cl_table_csv(std::ostream& os, const CLSupport& support);
std::string cl_table_json(const CLSupport& support);

void write_rank_table_csv(std::ostream& os, int64_t p, int u, int kmax);

void write_moment_csv(std::ostream& os, const MomentEstimate& estimate, double theoretical);
std::string moment_json(const MomentEstimate& estimate, double theoretical);

void write_universality_csv(std::ostream& os, const UniversalityReport& report);
std::string universality_json(const UniversalityReport& report);

void write_solved_csv(std::ostream& os, const SolvedDistribution& solved);
std::string solved_json(const SolvedDistribution& solved);

std::string bounds_json(const BoundsReport& report);

// Read a moment table CSV ("group_label,moment" with optional header).
MomentTable read_moment_csv(std::istream& is, const Modulus& a);

}  // namespace cokmat
