#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "cokmat/cl.hpp"
#include "cokmat/distribution.hpp"
#include "cokmat/matrix.hpp"

namespace cokmat {

struct ExperimentConfig {
    int n = 50;
    int u = 0;
    int64_t a = 2;
    std::string dist = "uniform";
    uint64_t trials = 10000;
    uint64_t seed = 1;
    int threads = 0;  // 0: hardware concurrency

    Modulus modulus() const { return Modulus(a); }
    void validate() const;
};

struct ConfidenceInterval {
    double low;
    double high;
};

// Wilson score interval at 95%.
ConfidenceInterval wilson_interval(uint64_t successes, uint64_t trials);

// Observed cokernel frequencies keyed by canonical group label.
struct EmpiricalDistribution {
    std::map<std::string, uint64_t> counts;
    uint64_t trials = 0;

    double frequency(const std::string& label) const;
    ConfidenceInterval ci(const std::string& label) const;
};

struct RankDistribution {
    std::map<int, uint64_t> counts;  // corank -> count
    uint64_t trials = 0;

    double frequency(int corank) const;
    ConfidenceInterval ci(int corank) const;
};

struct MomentEstimate {
    GroupType target;
    double mean;
    double std_error;
    uint64_t trials;
};

EmpiricalDistribution run_cokernel_experiment(const ExperimentConfig& cfg);

// Requires a prime; corank = n - rank of the matrix mod a.
RankDistribution run_rank_experiment(const ExperimentConfig& cfg);

MomentEstimate run_moment_experiment(const ExperimentConfig& cfg, const GroupType& target);

// (1/2) sum |p1 - p2| over the union of supports.
double tv_distance(const std::map<std::string, double>& d1,
                   const std::map<std::string, double>& d2);
double tv_distance(const EmpiricalDistribution& d1, const EmpiricalDistribution& d2);
// Theoretical tail mass counts as its own outcome.
double tv_distance(const EmpiricalDistribution& d, const CLTable& table);

struct UniversalityReport {
    EmpiricalDistribution first;
    EmpiricalDistribution second;
    CLTable reference;
    double tv_between;
    double tv_first_to_cl;
    double tv_second_to_cl;
};

// Same n, u, a; different entry distributions.
UniversalityReport universality_pair(const ExperimentConfig& cfg_a,
                                     const ExperimentConfig& cfg_b);

}  // namespace cokmat
