#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "cokmat/report.hpp"

namespace {

using namespace cokmat;

struct CommonOpts {
    ExperimentConfig cfg;
    std::string out;
    std::string format = "csv";
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--n", opts.cfg.n, "matrix rows (columns are n + u)");
    cmd->add_option("--u", opts.cfg.u, "column surplus u >= 0");
    cmd->add_option("--a", opts.cfg.a, "modulus a");
    cmd->add_option("--dist", opts.cfg.dist,
                    "entry law: uniform | bernoulli:q | table:v1=p1,v2=p2,...");
    cmd->add_option("--trials", opts.cfg.trials, "Monte Carlo trials");
    cmd->add_option("--seed", opts.cfg.seed, "root seed");
    cmd->add_option("--threads", opts.cfg.threads, "worker threads (0 = hardware)");
    cmd->add_option("--out", opts.out, "output path (default stdout)");
    cmd->add_option("--format", opts.format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->set_config("--config", "", "flat key = value file; flags override");
}

void emit(const std::string& out, const std::string& payload) {
    if (out.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream file(out, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file " + out);
    file << payload;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cokernel statistics of balanced random matrices over Z/aZ"};
    app.require_subcommand(1);

    CommonOpts sim_opts, rank_opts, mom_opts, uni_opts;
    std::string mom_group = "2:[1]";
    std::string uni_dist_b = "bernoulli:0.9";

    CLI::App* simulate = app.add_subcommand(
        "simulate", "sample matrices and tally cokernel isomorphism types");
    add_common(simulate, sim_opts);

    CLI::App* rank = app.add_subcommand("rank", "corank histogram mod a prime");
    add_common(rank, rank_opts);

    CLI::App* moment = app.add_subcommand("moment", "estimate E[#Sur(cok M, G)]");
    add_common(moment, mom_opts);
    moment->add_option("--group", mom_group, "target group label, e.g. 3:[1]");

    CLI::App* universality = app.add_subcommand(
        "universality", "same parameters, two entry laws, compared to each other and to CL");
    add_common(universality, uni_opts);
    universality->add_option("--dist-b", uni_dist_b, "entry law of the second run");

    int64_t table_p = 2;
    int table_u = 0, table_cutoff = 8, table_kmax = 12;
    std::string table_out, table_format = "csv";
    CLI::App* cl_table = app.add_subcommand("cl-table", "closed-form CL probabilities per p-group");
    cl_table->add_option("--p", table_p, "prime");
    cl_table->add_option("--u", table_u, "u parameter");
    cl_table->add_option("--cutoff", table_cutoff, "enumerate p-groups of order <= p^cutoff");
    cl_table->add_option("--out", table_out, "output path (default stdout)");
    cl_table->add_option("--format", table_format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
    cl_table->set_config("--config");

    int64_t rt_p = 2;
    int rt_u = 0, rt_kmax = 12;
    std::string rt_out;
    CLI::App* rank_table = app.add_subcommand("rank-table", "closed-form corank probabilities");
    rank_table->add_option("--p", rt_p, "prime");
    rank_table->add_option("--u", rt_u, "u parameter");
    rank_table->add_option("--kmax", rt_kmax, "largest corank listed");
    rank_table->add_option("--out", rt_out, "output path (default stdout)");
    rank_table->set_config("--config");

    std::string solve_in, solve_out, solve_format = "csv";
    int64_t solve_a = 2;
    int solve_rank = 3;
    CLI::App* solve_cmd = app.add_subcommand(
        "solve-moments", "invert sum_H P(H) #Sur(H,G) = M_G over groups of rank <= R");
    solve_cmd->add_option("--in", solve_in, "moment table CSV (group_label,moment)")->required();
    solve_cmd->add_option("--a", solve_a, "modulus a");
    solve_cmd->add_option("--rank", solve_rank, "truncation rank R");
    solve_cmd->add_option("--out", solve_out, "output path (default stdout)");
    solve_cmd->add_option("--format", solve_format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
    solve_cmd->set_config("--config");

    double vb_delta = 0.1;
    std::string vb_out;
    CLI::App* verify = app.add_subcommand(
        "verify-bounds", "exact character/code/depth bound checks; nonzero exit on failure");
    verify->add_option("--delta", vb_delta, "code distance parameter delta in (0,1)");
    verify->add_option("--out", vb_out, "output path (default stdout)");
    verify->set_config("--config");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*simulate) {
            const EmpiricalDistribution dist = run_cokernel_experiment(sim_opts.cfg);
            std::ostringstream os;
            if (sim_opts.format == "json") {
                os << distribution_json(dist);
            } else {
                write_distribution_csv(os, dist);
            }
            emit(sim_opts.out, os.str());
        } else if (*rank) {
            const RankDistribution dist = run_rank_experiment(rank_opts.cfg);
            std::ostringstream os;
            if (rank_opts.format == "json") {
                os << rank_json(dist, rank_opts.cfg.u, rank_opts.cfg.a);
            } else {
                write_rank_csv(os, dist, rank_opts.cfg.u, rank_opts.cfg.a);
            }
            emit(rank_opts.out, os.str());
        } else if (*moment) {
            const GroupType target = GroupType::parse(mom_group);
            const MomentEstimate est = run_moment_experiment(mom_opts.cfg, target);
            const double theoretical =
                std::pow(double(group_order(target)), -double(mom_opts.cfg.u));
            std::ostringstream os;
            if (mom_opts.format == "json") {
                os << moment_json(est, theoretical);
            } else {
                write_moment_csv(os, est, theoretical);
            }
            emit(mom_opts.out, os.str());
        } else if (*universality) {
            ExperimentConfig cfg_b = uni_opts.cfg;
            cfg_b.dist = uni_dist_b;
            const UniversalityReport report = universality_pair(uni_opts.cfg, cfg_b);
            std::ostringstream os;
            if (uni_opts.format == "json") {
                os << universality_json(report);
            } else {
                write_universality_csv(os, report);
            }
            emit(uni_opts.out, os.str());
        } else if (*cl_table) {
            uint64_t cutoff = 1;
            for (int i = 0; i < table_cutoff; ++i) cutoff *= uint64_t(table_p);
            const CLSupport support = enumerate_cl_support(table_p, table_u, cutoff);
            std::ostringstream os;
            if (table_format == "json") {
                os << cl_table_json(support);
            } else {
                write_cl_table_csv(os, support);
            }
            emit(table_out, os.str());
        } else if (*rank_table) {
            std::ostringstream os;
            write_rank_table_csv(os, rt_p, rt_u, rt_kmax);
            emit(rt_out, os.str());
        } else if (*solve_cmd) {
            std::ifstream in(solve_in);
            if (!in) throw std::runtime_error("cannot open " + solve_in);
            const MomentTable table = read_moment_csv(in, Modulus(solve_a));
            for (const GroupType& g : table.groups_violating_growth_bound())
                std::cerr << "warning: moment for " << g.label()
                          << " exceeds |wedge^2 G|; Theorem-style growth bound violated\n";
            const SolvedDistribution solved = solve(table, solve_rank);
            std::ostringstream os;
            if (solve_format == "json") {
                os << solved_json(solved);
            } else {
                write_solved_csv(os, solved);
            }
            emit(solve_out, os.str());
        } else if (*verify) {
            const BoundsReport report = run_bounds_verification(vb_delta);
            emit(vb_out, bounds_json(report));
            if (!report.pass()) {
                std::cerr << "verify-bounds: FAILED\n";
                return 1;
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
