#include "cokmat/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <unordered_map>

namespace cokmat {

void ExperimentConfig::validate() const {
    if (n < 1) throw std::invalid_argument("n must be at least 1");
    if (u < 0) throw std::invalid_argument("u must be nonnegative");
    if (trials < 1) throw std::invalid_argument("trials must be at least 1");
    const Modulus m(a);
    parse_distribution(dist, m).require_balanced(m);
}

ConfidenceInterval wilson_interval(uint64_t successes, uint64_t trials) {
    const double z = 1.959963984540054;  // 95%
    const double n = double(trials);
    const double phat = double(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = phat + z2 / (2.0 * n);
    const double margin = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n));
    return {std::max(0.0, (center - margin) / denom), std::min(1.0, (center + margin) / denom)};
}

double EmpiricalDistribution::frequency(const std::string& label) const {
    const auto it = counts.find(label);
    return it == counts.end() ? 0.0 : double(it->second) / double(trials);
}

ConfidenceInterval EmpiricalDistribution::ci(const std::string& label) const {
    const auto it = counts.find(label);
    return wilson_interval(it == counts.end() ? 0 : it->second, trials);
}

double RankDistribution::frequency(int corank) const {
    const auto it = counts.find(corank);
    return it == counts.end() ? 0.0 : double(it->second) / double(trials);
}

ConfidenceInterval RankDistribution::ci(int corank) const {
    const auto it = counts.find(corank);
    return wilson_interval(it == counts.end() ? 0 : it->second, trials);
}

namespace {

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : int(hw);
}

// Run trials [0, trials) split into contiguous chunks, one per worker.
// Each worker owns a local accumulator; merge runs in worker order.  All
// accumulators are integer-valued, so results do not depend on the split.
template <typename Local, typename Body, typename Merge>
void run_trials(uint64_t trials, int threads, const Body& body, const Merge& merge) {
    const int workers = std::max(1, std::min<int>(threads, int(std::min<uint64_t>(trials, 256))));
    std::vector<Local> locals(workers);
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (int w = 0; w < workers; ++w) {
        const uint64_t begin = trials * w / workers;
        const uint64_t end = trials * (w + 1) / workers;
        pool.emplace_back([&, w, begin, end] {
            try {
                for (uint64_t t = begin; t < end; ++t) body(locals[w], t);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& err : errors)
        if (err) std::rethrow_exception(err);
    for (auto& local : locals) merge(local);
}

}  // namespace

EmpiricalDistribution run_cokernel_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    const Modulus mod = cfg.modulus();
    const EntryDistribution dist = parse_distribution(cfg.dist, mod);
    dist.require_balanced(mod);
    const DiscreteSampler sampler(dist, mod);

    EmpiricalDistribution result;
    result.trials = cfg.trials;
    using Local = std::map<std::string, uint64_t>;
    run_trials<Local>(
        cfg.trials, resolve_threads(cfg.threads),
        [&](Local& local, uint64_t t) {
            MatrixModA m(cfg.n, cfg.n + cfg.u, mod);
            const RandomStream rs(cfg.seed, t);
            for (int j = 0; j < m.cols(); ++j)
                for (int i = 0; i < cfg.n; ++i)
                    m.set(i, j, sampler.sample(rs, uint64_t(j) * cfg.n + i));
            ++local[cokernel_group(m).label()];
        },
        [&](Local& local) {
            for (const auto& [label, count] : local) result.counts[label] += count;
        });
    return result;
}

RankDistribution run_rank_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    if (!is_prime(cfg.a))
        throw std::invalid_argument("rank experiments need a prime modulus, got " +
                                    std::to_string(cfg.a));
    const Modulus mod = cfg.modulus();
    const EntryDistribution dist = parse_distribution(cfg.dist, mod);
    const DiscreteSampler sampler(dist, mod);

    RankDistribution result;
    result.trials = cfg.trials;
    using Local = std::map<int, uint64_t>;
    run_trials<Local>(
        cfg.trials, resolve_threads(cfg.threads),
        [&](Local& local, uint64_t t) {
            MatrixModA m(cfg.n, cfg.n + cfg.u, mod);
            const RandomStream rs(cfg.seed, t);
            for (int j = 0; j < m.cols(); ++j)
                for (int i = 0; i < cfg.n; ++i)
                    m.set(i, j, sampler.sample(rs, uint64_t(j) * cfg.n + i));
            ++local[cfg.n - rank_mod_p(m, cfg.a)];
        },
        [&](Local& local) {
            for (const auto& [corank, count] : local) result.counts[corank] += count;
        });
    return result;
}

MomentEstimate run_moment_experiment(const ExperimentConfig& cfg, const GroupType& target) {
    cfg.validate();
    const Modulus mod = cfg.modulus();
    if (!target.exponent_divides(cfg.a))
        throw std::invalid_argument("target group exponent must divide a");
    const EntryDistribution dist = parse_distribution(cfg.dist, mod);
    const DiscreteSampler sampler(dist, mod);
    const SubgroupLattice& lattice = cached_lattice(target);

    struct Local {
        unsigned __int128 sum = 0;
        unsigned __int128 sum_sq = 0;
        std::unordered_map<std::string, uint64_t> memo;
    };
    unsigned __int128 sum = 0, sum_sq = 0;
    run_trials<Local>(
        cfg.trials, resolve_threads(cfg.threads),
        [&](Local& local, uint64_t t) {
            MatrixModA m(cfg.n, cfg.n + cfg.u, mod);
            const RandomStream rs(cfg.seed, t);
            for (int j = 0; j < m.cols(); ++j)
                for (int i = 0; i < cfg.n; ++i)
                    m.set(i, j, sampler.sample(rs, uint64_t(j) * cfg.n + i));
            const GroupType cok = cokernel_group(m);
            const std::string label = cok.label();
            auto it = local.memo.find(label);
            if (it == local.memo.end())
                it = local.memo.emplace(label, sur_count(cok, lattice)).first;
            const uint64_t s = it->second;
            local.sum += s;
            local.sum_sq += (unsigned __int128)s * s;
        },
        [&](Local& local) {
            sum += local.sum;
            sum_sq += local.sum_sq;
        });

    const double n = double(cfg.trials);
    const double mean = double(sum) / n;
    const double mean_sq = double(sum_sq) / n;
    const double variance = std::max(0.0, (mean_sq - mean * mean) * n / std::max(1.0, n - 1));
    return MomentEstimate{target, mean, std::sqrt(variance / n), cfg.trials};
}

double tv_distance(const std::map<std::string, double>& d1,
                   const std::map<std::string, double>& d2) {
    double total = 0.0;
    for (const auto& [k, p] : d1) {
        const auto it = d2.find(k);
        total += std::abs(p - (it == d2.end() ? 0.0 : it->second));
    }
    for (const auto& [k, p] : d2)
        if (!d1.count(k)) total += p;
    return total / 2.0;
}

namespace {
std::map<std::string, double> frequencies(const EmpiricalDistribution& d) {
    std::map<std::string, double> out;
    for (const auto& [label, count] : d.counts) out[label] = double(count) / double(d.trials);
    return out;
}
}  // namespace

double tv_distance(const EmpiricalDistribution& d1, const EmpiricalDistribution& d2) {
    return tv_distance(frequencies(d1), frequencies(d2));
}

double tv_distance(const EmpiricalDistribution& d, const CLTable& table) {
    std::map<std::string, double> theo;
    for (const auto& [g, p] : table.entries) theo[g.label()] = p;
    theo["(tail)"] = table.tail_mass;  // never observed empirically
    return tv_distance(frequencies(d), theo);
}

UniversalityReport universality_pair(const ExperimentConfig& cfg_a,
                                     const ExperimentConfig& cfg_b) {
    if (cfg_a.n != cfg_b.n || cfg_a.u != cfg_b.u || cfg_a.a != cfg_b.a)
        throw std::invalid_argument("universality pair needs matching n, u, a");
    UniversalityReport report;
    report.first = run_cokernel_experiment(cfg_a);
    report.second = run_cokernel_experiment(cfg_b);
    report.reference = cl_table_mod(cfg_a.modulus(), cfg_a.u, 10);
    report.tv_between = tv_distance(report.first, report.second);
    report.tv_first_to_cl = tv_distance(report.first, report.reference);
    report.tv_second_to_cl = tv_distance(report.second, report.reference);
    return report;
}

}  // namespace cokmat
