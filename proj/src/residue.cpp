#include "cokmat/residue.hpp"

namespace cokmat {

namespace {
constexpr int64_t kMaxModulus = int64_t(1) << 31;
}

int64_t PrimePower::value() const {
    int64_t v = 1;
    for (int i = 0; i < e; ++i) v *= p;
    return v;
}

Modulus::Modulus(int64_t a) : a_(a) {
    if (a <= 0) throw std::invalid_argument("modulus must be positive (Z is out of scope)");
    if (a > kMaxModulus) throw capacity_error("modulus exceeds 2^31");
    int64_t rest = a;
    for (int64_t p = 2; p * p <= rest; ++p) {
        if (rest % p != 0) continue;
        int e = 0;
        while (rest % p == 0) {
            rest /= p;
            ++e;
        }
        factors_.push_back({p, e});
    }
    if (rest > 1) factors_.push_back({rest, 1});
}

bool Modulus::has_factor(int64_t p) const {
    for (const auto& f : factors_)
        if (f.p == p) return true;
    return false;
}

const PrimePower& Modulus::factor_of(int64_t p) const {
    for (const auto& f : factors_)
        if (f.p == p) return f;
    throw std::invalid_argument("prime " + std::to_string(p) + " does not divide modulus");
}

Residue::Residue(int64_t v, int64_t a) : value(v), modulus(a) {
    if (a <= 0 || v < 0 || v >= a) throw std::invalid_argument("residue out of range");
}

Modulus factorize(int64_t a) { return Modulus(a); }

bool is_prime(int64_t n) {
    if (n < 2) return false;
    for (int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

int valuation(int64_t x, int64_t p, int e) {
    if (x == 0) return e;
    int v = 0;
    while (v < e && x % p == 0) {
        x /= p;
        ++v;
    }
    return v;
}

int64_t inverse_mod(int64_t x, int64_t m) {
    int64_t r0 = m, r1 = x % m, t0 = 0, t1 = 1;
    while (r1 != 0) {
        const int64_t q = r0 / r1;
        r0 -= q * r1;
        std::swap(r0, r1);
        t0 -= q * t1;
        std::swap(t0, t1);
    }
    if (r0 != 1) throw non_unit_error("element not invertible mod " + std::to_string(m));
    return t0 < 0 ? t0 + m : t0;
}

int64_t unit_inverse(int64_t x, int64_t p, int e) {
    if (x % p == 0)
        throw non_unit_error(std::to_string(x) + " is not a unit mod " + std::to_string(p) +
                             "^" + std::to_string(e));
    return inverse_mod(x, PrimePower{p, e}.value());
}

int64_t crt_project(int64_t x, const Modulus& a, const PrimePower& target) {
    const PrimePower& f = a.factor_of(target.p);
    if (f.e != target.e) throw std::invalid_argument("prime power is not a factor of modulus");
    return x % f.value();
}

int64_t crt_reconstruct(const std::vector<int64_t>& images, const Modulus& a) {
    if (images.size() != a.factors().size())
        throw std::invalid_argument("one image per prime power required");
    int64_t x = 0;
    for (std::size_t i = 0; i < images.size(); ++i) {
        const int64_t q = a.factors()[i].value();
        const int64_t rest = a.value() / q;
        // x += images[i] * rest * (rest^{-1} mod q), all mod a
        const int64_t coeff = mul_mod(rest % a.value(), inverse_mod(rest % q, q), a.value());
        x = (x + mul_mod(images[i], coeff, a.value())) % a.value();
    }
    return x;
}

int64_t pow_mod(int64_t base, int64_t exp, int64_t m) {
    int64_t r = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) r = mul_mod(r, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return r;
}

}  // namespace cokmat
