#include "cokmat/distribution.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace cokmat {

namespace {
constexpr int64_t kMaxUniformSupport = 1 << 20;
}

mpq_class parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty number");
    const std::size_t slash = text.find('/');
    if (slash != std::string::npos) {
        const mpz_class num(text.substr(0, slash), 10);
        const mpz_class den(text.substr(slash + 1), 10);
        if (den == 0) throw std::invalid_argument("zero denominator in " + text);
        mpq_class q(num, den);
        q.canonicalize();
        return q;
    }
    const std::size_t dot = text.find('.');
    if (dot == std::string::npos) return mpq_class(mpz_class(text, 10));
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    const std::size_t places = text.size() - dot - 1;
    if (digits.empty() || digits == "-") throw std::invalid_argument("bad number: " + text);
    mpz_class den = 1;
    for (std::size_t i = 0; i < places; ++i) den *= 10;
    mpq_class q(mpz_class(digits, 10), den);
    q.canonicalize();
    return q;
}

EntryDistribution::EntryDistribution(std::vector<std::pair<int64_t, mpq_class>> support,
                                     std::string spec)
    : support_(std::move(support)), spec_(std::move(spec)) {
    if (support_.empty()) throw std::invalid_argument("empty support");
    mpq_class total = 0;
    for (const auto& [v, q] : support_) {
        if (q <= 0) throw std::invalid_argument("probabilities must be positive");
        total += q;
    }
    if (total != 1) throw std::invalid_argument("probabilities must sum to exactly 1");
}

mpq_class EntryDistribution::class_probability(int64_t p, int64_t r) const {
    mpq_class sum = 0;
    for (const auto& [v, q] : support_)
        if (((v % p) + p) % p == r) sum += q;
    return sum;
}

double EntryDistribution::epsilon(int64_t p) const {
    mpq_class worst = 0;
    for (int64_t r = 0; r < p; ++r) worst = std::max(worst, class_probability(p, r));
    return 1.0 - mpq_class(worst).get_d();
}

double EntryDistribution::epsilon_for(const Modulus& a) const {
    double eps = 1.0;
    for (const auto& f : a.factors()) eps = std::min(eps, epsilon(f.p));
    return eps;
}

bool EntryDistribution::balanced(const Modulus& a) const {
    for (const auto& f : a.factors())
        for (int64_t r = 0; r < f.p; ++r)
            if (class_probability(f.p, r) == 1) return false;
    return true;
}

void EntryDistribution::require_balanced(const Modulus& a) const {
    for (const auto& f : a.factors()) {
        for (int64_t r = 0; r < f.p; ++r) {
            if (class_probability(f.p, r) == 1) {
                std::ostringstream msg;
                msg << "distribution '" << spec_ << "' is not balanced mod " << a.value()
                    << ": P(y = " << r << " mod " << f.p << ") = 1";
                throw unbalanced_error(f.p, r, msg.str());
            }
        }
    }
}

EntryDistribution parse_distribution(const std::string& spec, const Modulus& a) {
    std::vector<std::pair<int64_t, mpq_class>> support;
    if (spec == "uniform") {
        if (a.value() > kMaxUniformSupport)
            throw capacity_error("uniform support too large to materialize");
        const mpq_class each(1, static_cast<unsigned long>(a.value()));
        for (int64_t v = 0; v < a.value(); ++v) support.emplace_back(v, each);
    } else if (spec.rfind("bernoulli:", 0) == 0) {
        const mpq_class q = parse_rational(spec.substr(10));
        if (q <= 0 || q >= 1)
            throw std::invalid_argument("bernoulli parameter must be in (0,1)");
        support.emplace_back(0, q);
        support.emplace_back(1, mpq_class(1) - q);
    } else if (spec.rfind("table:", 0) == 0) {
        std::map<int64_t, mpq_class> table;
        std::stringstream body(spec.substr(6));
        std::string item;
        while (std::getline(body, item, ',')) {
            const std::size_t eq = item.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("table entries look like value=prob");
            const int64_t v = std::stoll(item.substr(0, eq));
            table[v] += parse_rational(item.substr(eq + 1));
        }
        for (auto& [v, q] : table) support.emplace_back(v, q);
    } else {
        throw std::invalid_argument("unknown distribution spec: " + spec);
    }
    return EntryDistribution(std::move(support), spec);
}

DiscreteSampler::DiscreteSampler(const EntryDistribution& dist, const Modulus& a) {
    if (dist.spec() == "uniform") {
        uniform_ = true;
        denominator_ = uint64_t(a.value());
        return;
    }
    mpz_class den = 1;
    for (const auto& [v, q] : dist.support()) den = lcm(den, q.get_den());
    if (!den.fits_ulong_p() || den.get_ui() > (uint64_t(1) << 62))
        throw capacity_error("probability denominators too large for exact sampling");
    denominator_ = den.get_ui();
    uint64_t acc = 0;
    for (const auto& [v, q] : dist.support()) {
        const mpz_class num = q.get_num() * (den / q.get_den());
        acc += num.get_ui();
        cumulative_.push_back(acc);
        values_.push_back(uint32_t(((v % a.value()) + a.value()) % a.value()));
    }
}

}  // namespace cokmat
