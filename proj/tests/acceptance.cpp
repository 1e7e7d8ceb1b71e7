// Acceptance suite: every target below is pinned in code with its
// tolerance; the process exits nonzero if any line fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "cokmat/experiment.hpp"
#include "cokmat/moments.hpp"
#include "cokmat/report.hpp"
#include "cokmat/verify.hpp"
#include "oracles.hpp"

using namespace cokmat;

namespace {

constexpr uint64_t kSeed = 20250809;
constexpr uint64_t kTrials = 100000;

int failures = 0;
std::chrono::steady_clock::time_point t0;

void begin(int id, const char* name) {
    std::printf("criterion %2d  %-52s ", id, name);
    std::fflush(stdout);
    t0 = std::chrono::steady_clock::now();
}

void finish(bool pass, const std::string& detail) {
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s  (%.1fs)  %s\n", pass ? "PASS" : "FAIL", secs, detail.c_str());
    if (!pass) ++failures;
}

bool within(double value, double target, double tol, std::string& detail) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%.5f vs %.5f+-%.4g", value, target, tol);
    detail += detail.empty() ? buf : std::string("; ") + buf;
    return std::abs(value - target) <= tol;
}

std::map<std::string, double> rank_freqs(const RankDistribution& d) {
    std::map<std::string, double> out;
    for (const auto& [k, count] : d.counts)
        out[std::to_string(k)] = double(count) / double(d.trials);
    return out;
}

}  // namespace

int main() {
    // Frozen decimal targets must agree with the closed forms they came from.
    if (std::abs(cl_rank_probability(0, 0, 2) - 0.28879) > 2e-5 ||
        std::abs(cl_rank_probability(1, 0, 2) - 0.57758) > 2e-5 ||
        std::abs(cl_rank_probability(2, 0, 2) - 0.12835) > 2e-5 ||
        std::abs(cl_normalizer(3, 0) - 0.56013) > 2e-5) {
        std::printf("closed-form anchors drifted; aborting\n");
        return 99;
    }

    RankDistribution uniform_ranks;

    {
        begin(1, "rank distribution, p=2, u=0, n=100, uniform");
        ExperimentConfig cfg;
        cfg.n = 100;
        cfg.a = 2;
        cfg.trials = kTrials;
        cfg.seed = kSeed;
        uniform_ranks = run_rank_experiment(cfg);
        std::string detail;
        bool pass = within(uniform_ranks.frequency(0), 0.28879, 0.010, detail);
        pass &= within(uniform_ranks.frequency(1), 0.57758, 0.010, detail);
        pass &= within(uniform_ranks.frequency(2), 0.12836, 0.007, detail);
        finish(pass, detail);
    }

    {
        begin(2, "universality, bernoulli:0.9, n=200");
        ExperimentConfig cfg;
        cfg.n = 200;
        cfg.a = 2;
        cfg.dist = "bernoulli:0.9";
        cfg.trials = kTrials;
        cfg.seed = kSeed + 1;
        const RankDistribution skew = run_rank_experiment(cfg);
        std::string detail;
        bool pass = within(skew.frequency(0), 0.28879, 0.015, detail);
        pass &= within(skew.frequency(1), 0.57758, 0.015, detail);
        pass &= within(skew.frequency(2), 0.12836, 0.015, detail);
        const double tv = tv_distance(rank_freqs(uniform_ranks), rank_freqs(skew));
        char buf[64];
        std::snprintf(buf, sizeof buf, "; TV=%.4f<0.02", tv);
        detail += buf;
        pass &= tv < 0.02;
        finish(pass, detail);
    }

    {
        begin(3, "cokernel distribution of the 3-part, n=50, uniform");
        // Run mod 27 so Z/9 is separated from Z/27 and from the rank-1
        // collapse; targets are c/|Aut| with |Aut| = 1, 2, 6, 48 where
        // c = prod(1 - 3^-k) = 0.56013.
        ExperimentConfig cfg;
        cfg.n = 50;
        cfg.a = 27;
        cfg.trials = kTrials;
        cfg.seed = kSeed + 2;
        const EmpiricalDistribution d = run_cokernel_experiment(cfg);
        const double c3 = cl_normalizer(3, 0);
        std::string detail;
        bool pass = within(d.frequency("1"), 0.56013, 0.010, detail);
        pass &= within(d.frequency("3:[1]"), 0.28006, 0.010, detail);
        pass &= within(d.frequency("3:[2]"), c3 / 6.0, 0.005, detail);
        pass &= within(d.frequency("3:[1,1]"), 0.01167, 0.004, detail);
        finish(pass, detail);
    }

    {
        begin(4, "u-shift, p=2, u=1, n=100");
        ExperimentConfig cfg;
        cfg.n = 100;
        cfg.u = 1;
        cfg.a = 2;
        cfg.trials = kTrials;
        cfg.seed = kSeed + 3;
        const EmpiricalDistribution d = run_cokernel_experiment(cfg);
        std::string detail;
        finish(within(d.frequency("1"), 0.57758, 0.010, detail), detail);
    }

    {
        begin(5, "moments E[#Sur(cok M, G)]");
        ExperimentConfig cfg;
        cfg.n = 50;
        cfg.a = 3;
        cfg.trials = kTrials;
        cfg.seed = kSeed + 4;
        const GroupType z3 = GroupType::parse("3:[1]");
        std::string detail;
        bool pass = within(run_moment_experiment(cfg, z3).mean, 1.000, 0.05, detail);
        cfg.u = 1;
        cfg.seed = kSeed + 5;
        pass &= within(run_moment_experiment(cfg, z3).mean, 0.3333, 0.02, detail);
        ExperimentConfig cfg2;
        cfg2.n = 100;
        cfg2.a = 2;
        cfg2.trials = kTrials;
        cfg2.seed = kSeed + 6;
        pass &= within(run_moment_experiment(cfg2, GroupType::parse("2:[1,1]")).mean, 1.00, 0.10,
                       detail);
        finish(pass, detail);
    }

    {
        begin(6, "CL moment identity, cutoff 2^8, G = Z/2");
        const GroupType z2 = GroupType::parse("2:[1]");
        std::string detail;
        bool pass = true;
        double last_tail = 1.0;
        for (const int u : {0, 1, 2}) {
            const CLMomentCheck check = cl_moment_check(z2, u, uint64_t(1) << 8);
            char buf[96];
            std::snprintf(buf, sizeof buf, "u=%d defect=%.2e tail=%.2e", u, check.defect,
                          check.tail_mass);
            detail += detail.empty() ? buf : std::string("; ") + buf;
            pass &= check.defect < 1e-2;
            // heavier u thins both the tail and the defect
            pass &= check.tail_mass <= last_tail + 1e-15;
            pass &= check.defect <= 255.0 * check.tail_mass + 1e-12;
            last_tail = check.tail_mass;
        }
        finish(pass, detail);
    }

    {
        begin(7, "moment inversion, a=2, M=1, R=4");
        MomentTable table{Modulus(2), {}};
        for (const GroupType& g : enumerate_groups(Modulus(2), 4))
            table.entries.emplace(g, MomentEntry{1, MomentProvenance::Theoretical});
        const SolvedDistribution solved = solve(table, 4);
        std::string detail;
        bool pass = true;
        for (int k = 0; k <= 2; ++k) {
            Partition lam(std::vector<int>(std::size_t(k), 1));
            const GroupType g = GroupType::p_group(2, lam);
            const double got = solved.probabilities.at(g).get_d();
            pass &= within(got, cl_rank_probability(k, 0, 2), 1e-3, detail);
        }

        // exact round trip on a synthetic rational law
        std::map<GroupType, mpq_class, GroupTypeLess> dist;
        dist[GroupType()] = mpq_class(3, 7);
        dist[GroupType::parse("2:[1]")] = mpq_class(2, 7);
        dist[GroupType::parse("2:[1,1]")] = mpq_class(1, 7);
        dist[GroupType::parse("2:[1,1,1]")] = mpq_class(1, 7);
        const SolvedDistribution round =
            solve(moments_from_distribution(dist, Modulus(2), 3), 3);
        bool exact = true;
        for (const auto& [g, w] : dist) exact &= round.probabilities.at(g) == w;
        detail += exact ? "; round-trip exact" : "; round-trip NOT exact";
        pass &= exact;
        finish(pass, detail);
    }

    {
        begin(8, "SNF vs column-span census oracle, 10^4 matrices");
        const std::vector<int64_t> moduli = {2, 3, 4, 8, 9, 12};
        uint64_t matches = 0, total = 10000;
        for (uint64_t trial = 0; trial < total; ++trial) {
            const Modulus mod(moduli[trial % moduli.size()]);
            const RandomStream rs(kSeed + 7, trial);
            const int n = 1 + int(rs.uniform_below(1 << 20, 3));
            const int m = 1 + int(rs.uniform_below(1 << 21, 3));
            MatrixModA mat(n, m, mod);
            for (int j = 0; j < m; ++j)
                for (int i = 0; i < n; ++i)
                    mat.set(i, j,
                            uint32_t(rs.uniform_below(uint64_t(j) * n + i,
                                                      uint64_t(mod.value()))));
            if (cokernel_group(mat) == oracle::cokernel_census(mat)) ++matches;
        }
        char buf[64];
        std::snprintf(buf, sizeof buf, "%llu/%llu matched", (unsigned long long)matches,
                      (unsigned long long)total);
        finish(matches == total, buf);
    }

    {
        begin(9, "surjection-count and automorphism oracles");
        bool pass = true;
        uint64_t checked = 0;
        const auto small = oracle::groups_of_order_up_to(16);
        for (const auto& h : small)
            for (const auto& g : small) {
                pass &= sur_count(h, g) == oracle::sur_bruteforce(h, g);
                ++checked;
            }
        uint64_t auts = 0;
        for (const auto& g : oracle::groups_of_order_up_to(64)) {
            const mpz_class aut = aut_order(g);
            pass &= aut.fits_ulong_p() && aut.get_ui() == sur_count(g, g);
            ++auts;
        }
        char buf[96];
        std::snprintf(buf, sizeof buf, "%llu sur pairs, %llu aut identities",
                      (unsigned long long)checked, (unsigned long long)auts);
        finish(pass, buf);
    }

    {
        begin(10, "exact bound verification (lemma grids)");
        std::string detail;
        bool pass = true;
        for (const double delta : {0.1, 0.5}) {
            const BoundsReport report = run_bounds_verification(delta);
            char buf[160];
            std::snprintf(buf, sizeof buf,
                          "delta=%.1f chars=%llu codes=%llu depth=%llu gap=%.1e", delta,
                          (unsigned long long)report.character_bound.cases,
                          (unsigned long long)report.code_bound.cases,
                          (unsigned long long)report.depth_bound.cases,
                          report.code_bound.max_dft_enum_gap);
            detail += detail.empty() ? buf : std::string("; ") + buf;
            pass &= report.pass();
            pass &= report.code_bound.max_dft_enum_gap <= 1e-12;
        }
        finish(pass, detail);
    }

    std::printf("%d criterion(s) failed\n", failures);
    return failures;
}
