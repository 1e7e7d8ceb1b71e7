#include "cokmat/report.hpp"

#include <cstdio>
#include <istream>
#include <ostream>

#include "json.hpp"

namespace cokmat {

using nlohmann::json;

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

void write_distribution_csv(std::ostream& os, const EmpiricalDistribution& dist) {
    os << "group_label,count,frequency,ci_low,ci_high\n";
    for (const auto& [label, count] : dist.counts) {
        const auto ci = dist.ci(label);
        os << label << ',' << count << ',' << format_double(dist.frequency(label)) << ','
           << format_double(ci.low) << ',' << format_double(ci.high) << '\n';
    }
}

static json distribution_to_json_obj(const EmpiricalDistribution& dist) {
    json rows = json::array();
    for (const auto& [label, count] : dist.counts) {
        const auto ci = dist.ci(label);
        rows.push_back({{"group_label", label},
                        {"count", count},
                        {"frequency", dist.frequency(label)},
                        {"ci_low", ci.low},
                        {"ci_high", ci.high}});
    }
    return json{{"trials", dist.trials}, {"rows", rows}};
}

std::string distribution_json(const EmpiricalDistribution& dist) {
    return distribution_to_json_obj(dist).dump(2) + "\n";
}

void write_rank_csv(std::ostream& os, const RankDistribution& dist, int u, int64_t p) {
    os << "k,frequency,theoretical,ci_low,ci_high\n";
    int kmax = 0;
    for (const auto& [k, count] : dist.counts) kmax = std::max(kmax, k);
    while (cl_rank_probability(kmax + 1, u, p) > 1e-12) ++kmax;
    for (int k = 0; k <= kmax; ++k) {
        const auto ci = dist.ci(k);
        os << k << ',' << format_double(dist.frequency(k)) << ','
           << format_double(cl_rank_probability(k, u, p)) << ',' << format_double(ci.low) << ','
           << format_double(ci.high) << '\n';
    }
}

std::string rank_json(const RankDistribution& dist, int u, int64_t p) {
    json rows = json::array();
    int kmax = 0;
    for (const auto& [k, count] : dist.counts) kmax = std::max(kmax, k);
    while (cl_rank_probability(kmax + 1, u, p) > 1e-12) ++kmax;
    for (int k = 0; k <= kmax; ++k) {
        const auto ci = dist.ci(k);
        rows.push_back({{"k", k},
                        {"frequency", dist.frequency(k)},
                        {"theoretical", cl_rank_probability(k, u, p)},
                        {"ci_low", ci.low},
                        {"ci_high", ci.high}});
    }
    return json{{"trials", dist.trials}, {"rows", rows}}.dump(2) + "\n";
}

void write_cl_table_csv(std::ostream& os, const CLSupport& support) {
    os << "group_label,probability,cumulative\n";
    double cum = 0.0;
    for (const auto& [g, prob] : support.entries) {
        cum += prob;
        os << g.label() << ',' << format_double(prob) << ',' << format_double(cum) << '\n';
    }
    os << "tail_mass," << format_double(support.tail_mass) << ','
       << format_double(cum + support.tail_mass) << '\n';
}

std::string cl_table_json(const CLSupport& support) {
    json rows = json::array();
    double cum = 0.0;
    for (const auto& [g, prob] : support.entries) {
        cum += prob;
        rows.push_back({{"group_label", g.label()}, {"probability", prob}, {"cumulative", cum}});
    }
    return json{{"p", support.p},
                {"u", support.u},
                {"cutoff", support.cutoff},
                {"rows", rows},
                {"tail_mass", support.tail_mass}}
               .dump(2) +
           "\n";
}

void write_rank_table_csv(std::ostream& os, int64_t p, int u, int kmax) {
    os << "k,probability\n";
    for (int k = 0; k <= kmax; ++k)
        os << k << ',' << format_double(cl_rank_probability(k, u, p)) << '\n';
}

void write_moment_csv(std::ostream& os, const MomentEstimate& estimate, double theoretical) {
    os << "group_label,mean,std_error,theoretical,trials\n";
    os << estimate.target.label() << ',' << format_double(estimate.mean) << ','
       << format_double(estimate.std_error) << ',' << format_double(theoretical) << ','
       << estimate.trials << '\n';
}

std::string moment_json(const MomentEstimate& estimate, double theoretical) {
    return json{{"group_label", estimate.target.label()},
                {"mean", estimate.mean},
                {"std_error", estimate.std_error},
                {"theoretical", theoretical},
                {"trials", estimate.trials}}
               .dump(2) +
           "\n";
}

void write_universality_csv(std::ostream& os, const UniversalityReport& report) {
    os << "group_label,frequency_a,frequency_b,cl_probability\n";
    std::map<std::string, double> cl;
    for (const auto& [g, prob] : report.reference.entries) cl[g.label()] = prob;
    std::map<std::string, bool> labels;
    for (const auto& [label, c] : report.first.counts) labels[label] = true;
    for (const auto& [label, c] : report.second.counts) labels[label] = true;
    for (const auto& [label, c] : cl) labels[label] = true;
    for (const auto& [label, unused] : labels) {
        const auto it = cl.find(label);
        os << label << ',' << format_double(report.first.frequency(label)) << ','
           << format_double(report.second.frequency(label)) << ','
           << format_double(it == cl.end() ? 0.0 : it->second) << '\n';
    }
    os << "tv_between," << format_double(report.tv_between) << ",,\n";
    os << "tv_a_to_cl," << format_double(report.tv_first_to_cl) << ",,\n";
    os << "tv_b_to_cl," << format_double(report.tv_second_to_cl) << ",,\n";
}

std::string universality_json(const UniversalityReport& report) {
    json cl = json::array();
    for (const auto& [g, prob] : report.reference.entries)
        cl.push_back({{"group_label", g.label()}, {"probability", prob}});
    return json{{"first", distribution_to_json_obj(report.first)},
                {"second", distribution_to_json_obj(report.second)},
                {"cl_table", cl},
                {"cl_tail_mass", report.reference.tail_mass},
                {"tv_between", report.tv_between},
                {"tv_first_to_cl", report.tv_first_to_cl},
                {"tv_second_to_cl", report.tv_second_to_cl}}
               .dump(2) +
           "\n";
}

void write_solved_csv(std::ostream& os, const SolvedDistribution& solved) {
    os << "group_label,probability,residual\n";
    for (const auto& [g, p] : solved.probabilities)
        os << g.label() << ',' << format_double(p.get_d()) << ",0\n";
    for (const auto& [g, r] : solved.residuals)
        os << g.label() << ",," << format_double(r.get_d()) << '\n';
}

std::string solved_json(const SolvedDistribution& solved) {
    json rows = json::array();
    for (const auto& [g, p] : solved.probabilities)
        rows.push_back({{"group_label", g.label()},
                        {"probability", p.get_d()},
                        {"exact", p.get_str()}});
    json probes = json::array();
    for (const auto& [g, r] : solved.residuals)
        probes.push_back({{"group_label", g.label()}, {"residual", r.get_d()}});
    return json{{"truncation_rank", solved.truncation_rank},
                {"total_probability", solved.total_probability.get_d()},
                {"rows", rows},
                {"residual_probes", probes}}
               .dump(2) +
           "\n";
}

std::string bounds_json(const BoundsReport& report) {
    const auto character = json{{"moduli", report.character_bound.moduli},
                                {"grid_denominator", report.character_bound.denominator},
                                {"cases", report.character_bound.cases},
                                {"failures", report.character_bound.failures},
                                {"worst_margin", report.character_bound.worst_margin},
                                {"worst_case", report.character_bound.worst_case},
                                {"pass", report.character_bound.pass}};
    const auto code = json{{"delta", report.code_bound.delta},
                           {"homs_enumerated", report.code_bound.homs_enumerated},
                           {"codes_checked", report.code_bound.codes_checked},
                           {"cases", report.code_bound.cases},
                           {"failures", report.code_bound.failures},
                           {"worst_margin", report.code_bound.worst_margin},
                           {"worst_case", report.code_bound.worst_case},
                           {"agreement_checks", report.code_bound.agreement_checks},
                           {"max_dft_enum_gap", report.code_bound.max_dft_enum_gap},
                           {"pass", report.code_bound.pass}};
    const auto depth = json{{"delta", report.depth_bound.delta},
                            {"homs_enumerated", report.depth_bound.homs_enumerated},
                            {"qualifying_maps", report.depth_bound.qualifying_maps},
                            {"cases", report.depth_bound.cases},
                            {"failures", report.depth_bound.failures},
                            {"worst_margin", report.depth_bound.worst_margin},
                            {"worst_case", report.depth_bound.worst_case},
                            {"pass", report.depth_bound.pass}};
    return json{{"delta", report.delta},
                {"character_sum_bound", character},
                {"code_deviation_bound", code},
                {"depth_column_bound", depth},
                {"pass", report.pass()}}
               .dump(2) +
           "\n";
}

MomentTable read_moment_csv(std::istream& is, const Modulus& a) {
    MomentTable table{a, {}};
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("moment rows look like group_label,moment");
        const std::string label = line.substr(0, comma);
        if (label == "group_label") continue;  // header
        const GroupType g = GroupType::parse(label);
        if (!g.exponent_divides(a.value()))
            throw std::invalid_argument("group " + label + " has exponent not dividing a");
        table.entries.emplace(
            g, MomentEntry{parse_rational(line.substr(comma + 1)), MomentProvenance::Empirical});
    }
    return table;
}

}  // namespace cokmat
