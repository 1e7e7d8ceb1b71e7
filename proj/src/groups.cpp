#include "cokmat/groups.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <sstream>
#include <unordered_map>

namespace cokmat {

Partition::Partition(std::vector<int> p) : parts(std::move(p)) {
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (parts[i] <= 0) throw std::invalid_argument("partition parts must be positive");
        if (i > 0 && parts[i] > parts[i - 1])
            throw std::invalid_argument("partition parts must be nonincreasing");
    }
}

int Partition::weight() const {
    int w = 0;
    for (int p : parts) w += p;
    return w;
}

Partition Partition::capped(int e) const {
    std::vector<int> out;
    for (int p : parts) {
        const int c = std::min(p, e);
        if (c > 0) out.push_back(c);
    }
    return Partition(std::move(out));
}

GroupType::GroupType(std::vector<std::pair<int64_t, Partition>> components)
    : comps_(std::move(components)) {
    for (std::size_t i = 0; i < comps_.size(); ++i) {
        if (!is_prime(comps_[i].first))
            throw std::invalid_argument("group component index must be prime");
        if (comps_[i].second.parts.empty())
            throw std::invalid_argument("trivial components must not be stored");
        if (i > 0 && comps_[i].first <= comps_[i - 1].first)
            throw std::invalid_argument("component primes must be strictly ascending");
    }
}

GroupType GroupType::p_group(int64_t p, Partition lambda) {
    if (lambda.parts.empty()) return GroupType();
    return GroupType({{p, std::move(lambda)}});
}

const Partition* GroupType::partition_at(int64_t p) const {
    for (const auto& [q, lam] : comps_)
        if (q == p) return &lam;
    return nullptr;
}

int GroupType::rank_at(int64_t p) const {
    const Partition* lam = partition_at(p);
    return lam ? lam->rank() : 0;
}

int GroupType::max_rank() const {
    int r = 0;
    for (const auto& [p, lam] : comps_) r = std::max(r, lam.rank());
    return r;
}

int64_t GroupType::exponent() const {
    int64_t e = 1;
    for (const auto& [p, lam] : comps_) {
        int64_t q = 1;
        for (int i = 0; i < lam.largest(); ++i) q *= p;
        e *= q;
    }
    return e;
}

bool GroupType::exponent_divides(int64_t a) const {
    for (const auto& [p, lam] : comps_) {
        int64_t pe = 1;
        for (int i = 0; i < lam.largest(); ++i) {
            pe *= p;
            if (pe > a) return false;
        }
        if (a % pe != 0) return false;
    }
    return true;
}

std::string GroupType::label() const {
    if (comps_.empty()) return "1";
    std::ostringstream os;
    for (std::size_t c = 0; c < comps_.size(); ++c) {
        if (c) os << ';';
        os << comps_[c].first << ":[";
        const auto& parts = comps_[c].second.parts;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (i) os << ',';
            os << parts[i];
        }
        os << ']';
    }
    return os.str();
}

GroupType GroupType::parse(const std::string& label) {
    if (label == "1") return GroupType();
    std::vector<std::pair<int64_t, Partition>> comps;
    std::size_t pos = 0;
    while (pos < label.size()) {
        const std::size_t colon = label.find(':', pos);
        if (colon == std::string::npos || colon + 1 >= label.size() || label[colon + 1] != '[')
            throw std::invalid_argument("bad group label: " + label);
        const int64_t p = std::stoll(label.substr(pos, colon - pos));
        const std::size_t close = label.find(']', colon);
        if (close == std::string::npos) throw std::invalid_argument("bad group label: " + label);
        std::vector<int> parts;
        std::size_t q = colon + 2;
        while (q < close) {
            std::size_t next = label.find(',', q);
            if (next == std::string::npos || next > close) next = close;
            parts.push_back(std::stoi(label.substr(q, next - q)));
            q = next + 1;
        }
        comps.emplace_back(p, Partition(std::move(parts)));
        pos = close + 1;
        if (pos < label.size()) {
            if (label[pos] != ';') throw std::invalid_argument("bad group label: " + label);
            ++pos;
        }
    }
    return GroupType(std::move(comps));
}

bool GroupTypeLess::operator()(const GroupType& x, const GroupType& y) const {
    const uint64_t ox = group_order(x), oy = group_order(y);
    if (ox != oy) return ox < oy;
    return x.label() < y.label();
}

namespace {

uint64_t checked_pow(int64_t p, int e, const char* what) {
    uint64_t v = 1;
    for (int i = 0; i < e; ++i) {
        if (v > ~uint64_t(0) / uint64_t(p)) throw capacity_error(what);
        v *= uint64_t(p);
    }
    return v;
}

}  // namespace

uint64_t group_order(const GroupType& g) {
    uint64_t o = 1;
    for (const auto& [p, lam] : g.components()) {
        const uint64_t po = checked_pow(p, lam.weight(), "group order exceeds 64 bits");
        if (o > ~uint64_t(0) / po) throw capacity_error("group order exceeds 64 bits");
        o *= po;
    }
    return o;
}

// Aut order of an abelian p-group via the standard closed form on the
// partition (Hillar–Rhea).  With parts ascending e_1 <= ... <= e_n,
//   |Aut| = prod_k (p^{d_k} - p^{k-1})
//         * prod_j p^{e_j (n - d_j)}
//         * prod_i p^{(e_i - 1)(n - c_i + 1)}
// where c_k / d_k bound the run of parts equal to e_k.
static mpz_class aut_order_p(int64_t p, const Partition& lambda) {
    std::vector<int> e(lambda.parts.rbegin(), lambda.parts.rend());  // ascending
    const int n = int(e.size());
    std::vector<int> c(n), d(n);
    for (int k = 0; k < n; ++k) {
        int lo = k, hi = k;
        while (lo > 0 && e[lo - 1] == e[k]) --lo;
        while (hi + 1 < n && e[hi + 1] == e[k]) ++hi;
        c[k] = lo + 1;  // 1-based
        d[k] = hi + 1;
    }
    const mpz_class zp(static_cast<long>(p));
    mpz_class result = 1;
    for (int k = 0; k < n; ++k) {
        mpz_class pd, pk;
        mpz_pow_ui(pd.get_mpz_t(), zp.get_mpz_t(), d[k]);
        mpz_pow_ui(pk.get_mpz_t(), zp.get_mpz_t(), k);  // p^{(k+1)-1}
        result *= pd - pk;
    }
    long exp = 0;
    for (int j = 0; j < n; ++j) exp += long(e[j]) * (n - d[j]);
    for (int i = 0; i < n; ++i) exp += long(e[i] - 1) * (n - c[i] + 1);
    mpz_class pe;
    mpz_pow_ui(pe.get_mpz_t(), zp.get_mpz_t(), exp);
    return result * pe;
}

mpz_class aut_order(const GroupType& g) {
    mpz_class r = 1;
    for (const auto& [p, lam] : g.components()) r *= aut_order_p(p, lam);
    return r;
}

uint64_t hom_count(const GroupType& h, const GroupType& g) {
    uint64_t count = 1;
    for (const auto& [p, mu] : g.components()) {
        const Partition* lam = h.partition_at(p);
        if (!lam) continue;  // p^0
        long exp = 0;
        for (int li : lam->parts)
            for (int mj : mu.parts) exp += std::min(li, mj);
        const double bits = double(exp) * std::log2(double(p));
        if (bits >= 63.0) throw capacity_error("hom count exceeds 64 bits");
        uint64_t pe = 1;
        for (long i = 0; i < exp; ++i) pe *= uint64_t(p);
        if (count > ~uint64_t(0) / pe) throw capacity_error("hom count exceeds 64 bits");
        count *= pe;
    }
    return count;
}

mpz_class wedge_square_order(const GroupType& g) {
    mpz_class r = 1;
    for (const auto& [p, lam] : g.components()) {
        long exp = 0;
        for (std::size_t i = 0; i < lam.parts.size(); ++i)
            for (std::size_t j = i + 1; j < lam.parts.size(); ++j)
                exp += std::min(lam.parts[i], lam.parts[j]);
        mpz_class pe;
        const mpz_class zp(static_cast<long>(p));
        mpz_pow_ui(pe.get_mpz_t(), zp.get_mpz_t(), exp);
        r *= pe;
    }
    return r;
}

namespace {

// Partitions with parts <= max_part, at most max_rank parts, weight <= max_weight.
void collect_partitions(int max_part, int max_rank, int max_weight,
                        std::vector<int>& current, std::vector<Partition>& out) {
    out.push_back(Partition(current));
    if (int(current.size()) >= max_rank) return;
    const int cap = std::min(current.empty() ? max_part : current.back(), max_weight);
    for (int next = cap; next >= 1; --next) {
        current.push_back(next);
        collect_partitions(max_part, max_rank, max_weight - next, current, out);
        current.pop_back();
    }
}

}  // namespace

std::vector<GroupType> enumerate_groups(const Modulus& a, int max_rank) {
    if (max_rank < 0) throw std::invalid_argument("max_rank must be nonnegative");
    std::vector<GroupType> result;
    result.emplace_back();
    for (const auto& f : a.factors()) {
        std::vector<Partition> parts;
        std::vector<int> cur;
        collect_partitions(f.e, max_rank, f.e * max_rank, cur, parts);
        std::vector<GroupType> next;
        for (const auto& g : result) {
            for (const auto& lam : parts) {
                if (lam.parts.empty()) {
                    next.push_back(g);
                } else {
                    auto comps = g.components();
                    comps.emplace_back(f.p, lam);
                    next.push_back(GroupType(std::move(comps)));
                }
            }
        }
        result = std::move(next);
    }
    std::sort(result.begin(), result.end(), GroupTypeLess{});
    return result;
}

std::vector<GroupType> enumerate_p_groups(int64_t p, int max_weight) {
    std::vector<GroupType> out;
    std::vector<int> cur;
    std::vector<Partition> parts;
    collect_partitions(max_weight, max_weight, max_weight, cur, parts);
    for (auto& lam : parts) out.push_back(GroupType::p_group(p, lam));
    std::sort(out.begin(), out.end(), GroupTypeLess{});
    return out;
}

ConcreteGroup::ConcreteGroup(const GroupType& type) : type_(type) {
    size_ = 1;
    for (const auto& [p, lam] : type.components()) {
        for (int part : lam.parts) {
            const uint64_t q = checked_pow(p, part, "concrete group too large");
            if (size_ > (uint64_t(1) << 32) / q) throw capacity_error("concrete group too large");
            orders_.push_back(int64_t(q));
            size_ *= q;
        }
    }
}

uint32_t ConcreteGroup::add(uint32_t x, uint32_t y) const {
    uint32_t out = 0, scale = 1;
    for (const int64_t d : orders_) {
        const int64_t xc = x % d, yc = y % d;
        out += uint32_t((xc + yc) % d) * scale;
        x /= uint32_t(d);
        y /= uint32_t(d);
        scale *= uint32_t(d);
    }
    return out;
}

uint32_t ConcreteGroup::neg(uint32_t x) const {
    uint32_t out = 0, scale = 1;
    for (const int64_t d : orders_) {
        const int64_t xc = x % d;
        out += uint32_t((d - xc) % d) * scale;
        x /= uint32_t(d);
        scale *= uint32_t(d);
    }
    return out;
}

uint32_t ConcreteGroup::scalar_mul(int64_t k, uint32_t x) const {
    uint32_t out = 0, scale = 1;
    for (const int64_t d : orders_) {
        const int64_t xc = x % d;
        const int64_t km = ((k % d) + d) % d;
        out += uint32_t((km * xc) % d) * scale;
        x /= uint32_t(d);
        scale *= uint32_t(d);
    }
    return out;
}

std::vector<int64_t> ConcreteGroup::decode(uint32_t x) const {
    std::vector<int64_t> coords(orders_.size());
    for (std::size_t i = 0; i < orders_.size(); ++i) {
        coords[i] = x % orders_[i];
        x /= uint32_t(orders_[i]);
    }
    return coords;
}

uint32_t ConcreteGroup::encode(const std::vector<int64_t>& coords) const {
    uint32_t out = 0, scale = 1;
    for (std::size_t i = 0; i < orders_.size(); ++i) {
        out += uint32_t(((coords[i] % orders_[i]) + orders_[i]) % orders_[i]) * scale;
        scale *= uint32_t(orders_[i]);
    }
    return out;
}

uint32_t ConcreteGroup::generator(int i) const {
    uint32_t scale = 1;
    for (int j = 0; j < i; ++j) scale *= uint32_t(orders_[j]);
    return scale;
}

bool Subgroup::contains_all(const Subgroup& other) const {
    for (std::size_t w = 0; w < mask.size(); ++w)
        if ((other.mask[w] & ~mask[w]) != 0) return false;
    return true;
}

GroupType subgroup_type(const ConcreteGroup& g, const std::vector<uint32_t>& elements) {
    // For each prime p | |S|, count N_j = #{x in S : p^j x = 0}; the
    // exponents s_j = log_p N_j determine the partition via conjugation.
    const uint64_t order = elements.size();
    std::vector<std::pair<int64_t, Partition>> comps;
    uint64_t rest = order;
    for (int64_t p = 2; rest > 1; ++p) {
        if (rest % p != 0) continue;
        int e = 0;
        while (rest % p == 0) {
            rest /= p;
            ++e;
        }
        std::vector<long> s(e + 1);
        s[0] = 0;
        int64_t pj = 1;
        for (int j = 1; j <= e; ++j) {
            pj *= p;
            uint64_t count = 0;
            for (uint32_t x : elements)
                if (g.scalar_mul(pj, x) == 0) ++count;
            long lg = 0;
            uint64_t c = count;
            while (c > 1) {
                if (c % uint64_t(p) != 0)
                    throw std::logic_error("subgroup census not a p-power");
                c /= uint64_t(p);
                ++lg;
            }
            s[j] = lg;
        }
        // t_j = s_j - s_{j-1} counts parts >= j; conjugate back to parts.
        std::vector<int> parts;
        for (int j = 1; j <= e; ++j) {
            const long tj = s[j] - s[j - 1];
            const long tn = (j < e) ? s[j + 1] - s[j] : 0;
            for (long k = 0; k < tj - tn; ++k) parts.push_back(j);
        }
        std::sort(parts.rbegin(), parts.rend());
        if (!parts.empty()) comps.emplace_back(p, Partition(std::move(parts)));
    }
    return GroupType(std::move(comps));
}

namespace {

struct MaskHash {
    std::size_t operator()(const std::vector<uint64_t>& m) const {
        std::size_t h = 1469598103934665603ull;
        for (uint64_t w : m) {
            h ^= std::size_t(w);
            h *= 1099511628211ull;
        }
        return h;
    }
};

Subgroup make_subgroup(const ConcreteGroup& g, std::vector<uint32_t> elements,
                       std::size_t words) {
    std::sort(elements.begin(), elements.end());
    Subgroup s;
    s.mask.assign(words, 0);
    for (uint32_t x : elements) s.mask[x >> 6] |= uint64_t(1) << (x & 63);
    s.type = subgroup_type(g, elements);
    s.elements = std::move(elements);
    return s;
}

// Extend subgroup H by one element: <H, g> = union over k of (H + k g).
std::vector<uint32_t> extend(const ConcreteGroup& g, const Subgroup& h, uint32_t gen) {
    std::vector<uint32_t> out(h.elements);
    uint32_t offset = gen;
    while (!h.has(offset)) {
        for (uint32_t x : h.elements) out.push_back(g.add(x, offset));
        offset = g.add(offset, gen);
    }
    return out;
}

}  // namespace

SubgroupLattice::SubgroupLattice(const GroupType& g, uint64_t max_order) : group_(g) {
    const uint64_t order = group_order(g);
    if (order > max_order)
        throw capacity_error("group order " + std::to_string(order) +
                             " exceeds lattice bound " + std::to_string(max_order));
    realized_ = std::make_shared<ConcreteGroup>(g);
    const std::size_t words = (realized_->size() + 63) / 64;

    std::unordered_map<std::vector<uint64_t>, std::size_t, MaskHash> seen;
    subgroups_.push_back(make_subgroup(*realized_, {0}, words));
    seen.emplace(subgroups_[0].mask, 0);
    // Breadth-first closure: every subgroup arises by repeatedly adjoining
    // one element to a smaller one.
    for (std::size_t head = 0; head < subgroups_.size(); ++head) {
        const Subgroup current = subgroups_[head];  // copy: vector may grow
        for (uint32_t cand = 1; cand < realized_->size(); ++cand) {
            if (current.has(cand)) continue;
            auto elems = extend(*realized_, current, cand);
            auto sub = make_subgroup(*realized_, std::move(elems), words);
            if (seen.emplace(sub.mask, subgroups_.size()).second)
                subgroups_.push_back(std::move(sub));
        }
    }

    std::sort(subgroups_.begin(), subgroups_.end(),
              [](const Subgroup& x, const Subgroup& y) {
                  if (x.elements.size() != y.elements.size())
                      return x.elements.size() < y.elements.size();
                  return x.elements < y.elements;
              });
    full_ = subgroups_.size() - 1;

    // mu(C, G) top-down: mu(G, G) = 1, mu(C, G) = -sum_{C < D <= G} mu(D, G).
    moebius_.assign(subgroups_.size(), 0);
    moebius_[full_] = 1;
    for (std::size_t i = subgroups_.size(); i-- > 0;) {
        if (i == full_) continue;
        int64_t acc = 0;
        for (std::size_t j = i + 1; j < subgroups_.size(); ++j) {
            if (subgroups_[j].elements.size() <= subgroups_[i].elements.size()) continue;
            if (subgroups_[j].contains_all(subgroups_[i])) acc += moebius_[j];
        }
        moebius_[i] = -acc;
    }
}

SubgroupLattice build_lattice(const GroupType& g, uint64_t max_order) {
    return SubgroupLattice(g, max_order);
}

uint64_t sur_count(const GroupType& h, const SubgroupLattice& lattice) {
    __int128 acc = 0;
    for (std::size_t i = 0; i < lattice.subgroups().size(); ++i) {
        const int64_t mu = lattice.moebius(i);
        if (mu == 0) continue;
        acc += __int128(mu) * __int128(hom_count(h, lattice.subgroups()[i].type));
    }
    if (acc < 0) throw std::logic_error("negative surjection count");
    if (acc > __int128(~uint64_t(0))) throw capacity_error("sur count exceeds 64 bits");
    return uint64_t(acc);
}

const SubgroupLattice& cached_lattice(const GroupType& g) {
    static std::mutex mtx;
    static std::unordered_map<std::string, std::unique_ptr<SubgroupLattice>> cache;
    const std::string key = g.label();
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::make_unique<SubgroupLattice>(g)).first;
    return *it->second;
}

uint64_t sur_count(const GroupType& h, const GroupType& g) {
    return sur_count(h, cached_lattice(g));
}

}  // namespace cokmat
