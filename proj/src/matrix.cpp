#include "cokmat/matrix.hpp"

#include <algorithm>

namespace cokmat {

MatrixModA::MatrixModA(int n, int m, Modulus mod)
    : n_(n), m_(m), mod_(std::move(mod)), e_(std::size_t(n) * m, 0) {
    if (n < 1 || m < 1) throw std::invalid_argument("matrix dimensions must be positive");
}

MatrixModA sample_matrix(int n, int u, const EntryDistribution& dist, const Modulus& a,
                         const RandomStream& stream) {
    dist.require_balanced(a);
    const DiscreteSampler sampler(dist, a);
    MatrixModA m(n, n + u, a);
    for (int j = 0; j < m.cols(); ++j)
        for (int i = 0; i < n; ++i)
            m.set(i, j, sampler.sample(stream, uint64_t(j) * n + i));
    return m;
}

MatrixModA sample_matrix_mixed(int n, int u,
                               const std::function<const DiscreteSampler&(int, int)>& chooser,
                               const Modulus& a, const RandomStream& stream) {
    MatrixModA m(n, n + u, a);
    for (int j = 0; j < m.cols(); ++j)
        for (int i = 0; i < n; ++i)
            m.set(i, j, chooser(i, j).sample(stream, uint64_t(j) * n + i));
    return m;
}

namespace {

// GF(2) rank on bit-packed rows.
int rank_gf2(const MatrixModA& m) {
    const int n = m.rows(), cols = m.cols();
    const int words = (cols + 63) / 64;
    std::vector<uint64_t> rows(std::size_t(n) * words, 0);
    for (int j = 0; j < cols; ++j) {
        const uint32_t* c = m.col(j);
        for (int i = 0; i < n; ++i)
            if (c[i] & 1) rows[std::size_t(i) * words + (j >> 6)] |= uint64_t(1) << (j & 63);
    }
    std::vector<int> pivot_of_col(cols, -1);
    int rank = 0;
    for (int i = 0; i < n; ++i) {
        uint64_t* r = &rows[std::size_t(i) * words];
        int lead = -1;
        for (;;) {
            lead = -1;
            for (int w = 0; w < words; ++w) {
                if (r[w]) {
                    lead = 64 * w + __builtin_ctzll(r[w]);
                    break;
                }
            }
            if (lead < 0 || pivot_of_col[lead] < 0) break;
            const uint64_t* pv = &rows[std::size_t(pivot_of_col[lead]) * words];
            for (int w = lead >> 6; w < words; ++w) r[w] ^= pv[w];
        }
        if (lead >= 0) {
            pivot_of_col[lead] = i;
            ++rank;
        }
    }
    return rank;
}

// Row echelon over F_p.  For small p the inner loop accumulates unreduced
// 64-bit sums (products < 2^32, at most min(n,m) of them), reducing only at
// pivot time.
int rank_generic(const MatrixModA& m, int64_t p) {
    const int n = m.rows(), cols = m.cols();
    std::vector<uint64_t> a(std::size_t(n) * cols);
    for (int j = 0; j < cols; ++j) {
        const uint32_t* c = m.col(j);
        for (int i = 0; i < n; ++i) a[std::size_t(i) * cols + j] = c[i] % uint64_t(p);
    }
    const bool lazy = p < (1 << 16) && std::min(n, cols) < (1 << 16);
    const uint64_t q = uint64_t(p);
    int rank = 0;
    for (int col = 0; col < cols && rank < n; ++col) {
        int piv = -1;
        for (int i = rank; i < n; ++i) {
            uint64_t& x = a[std::size_t(i) * cols + col];
            x %= q;
            if (x) {
                piv = i;
                break;
            }
        }
        if (piv < 0) continue;
        if (piv != rank)
            std::swap_ranges(&a[std::size_t(piv) * cols + col], &a[std::size_t(piv) * cols + cols],
                             &a[std::size_t(rank) * cols + col]);
        uint64_t* pr = &a[std::size_t(rank) * cols];
        for (int j = col; j < cols; ++j) pr[j] %= q;
        const uint64_t inv = uint64_t(inverse_mod(int64_t(pr[col]), p));
        for (int k = rank + 1; k < n; ++k) {
            uint64_t* rk = &a[std::size_t(k) * cols];
            const uint64_t v = rk[col] % q;
            if (!v) {
                rk[col] = 0;
                continue;
            }
            const uint64_t c = q - v * inv % q;
            if (lazy) {
                for (int j = col + 1; j < cols; ++j) rk[j] += c * pr[j];
            } else {
                for (int j = col + 1; j < cols; ++j)
                    rk[j] = (rk[j] + (__uint128_t)c * pr[j]) % q;
            }
            rk[col] = 0;
        }
        ++rank;
    }
    return rank;
}

// Smith form over the local ring Z/p^e Z by repeated pivoting on a
// minimal-valuation entry (first such entry in row-major submatrix order),
// clearing its row and column, and recursing on the rest.
std::vector<int> snf_general(const MatrixModA& mat, int64_t p, int e, uint64_t q) {
    const int n = mat.rows(), cols = mat.cols();
    const int k = std::min(n, cols);
    std::vector<uint64_t> a(std::size_t(n) * cols);
    for (int j = 0; j < cols; ++j) {
        const uint32_t* c = mat.col(j);
        for (int i = 0; i < n; ++i) a[std::size_t(i) * cols + j] = c[i] % q;
    }
    const bool lazy = q < (1 << 16) && k < (1 << 16);
    std::vector<int> vals;
    for (int t = 0; t < k; ++t) {
        int bi = -1, bj = -1, bv = e + 1;
        for (int i = t; i < n && bv > 0; ++i) {
            uint64_t* ri = &a[std::size_t(i) * cols];
            for (int j = t; j < cols; ++j) {
                ri[j] %= q;
                if (ri[j] == 0) continue;
                const int v = valuation(int64_t(ri[j]), p, e);
                if (v < bv) {
                    bv = v;
                    bi = i;
                    bj = j;
                    if (v == 0) break;
                }
            }
        }
        if (bi < 0) break;  // submatrix is zero mod q
        if (bi != t)
            std::swap_ranges(&a[std::size_t(bi) * cols], &a[std::size_t(bi) * cols + cols],
                             &a[std::size_t(t) * cols]);
        if (bj != t)
            for (int i = t; i < n; ++i)
                std::swap(a[std::size_t(i) * cols + t], a[std::size_t(i) * cols + bj]);
        uint64_t* rt = &a[std::size_t(t) * cols];
        uint64_t pv = 1;
        for (int v = 0; v < bv; ++v) pv *= uint64_t(p);
        for (int j = t; j < cols; ++j) rt[j] %= q;
        const uint64_t unit_inv = uint64_t(inverse_mod(int64_t(rt[t] / pv), int64_t(q)));
        for (int j = t; j < cols; ++j) rt[j] = (__uint128_t)rt[j] * unit_inv % q;
        // rt[t] == p^bv; every submatrix entry has valuation >= bv.
        for (int i = t + 1; i < n; ++i) {
            uint64_t* ri = &a[std::size_t(i) * cols];
            const uint64_t x = ri[t] % q;
            if (x) {
                const uint64_t c = (q - x / pv) % q;
                if (lazy) {
                    for (int j = t + 1; j < cols; ++j) ri[j] += c * rt[j];
                } else {
                    for (int j = t + 1; j < cols; ++j)
                        ri[j] = (ri[j] + (__uint128_t)c * rt[j]) % q;
                }
            }
            ri[t] = 0;
        }
        for (int j = t + 1; j < cols; ++j) rt[j] = 0;  // column ops land on row t only
        vals.push_back(bv);
    }
    while (int(vals.size()) < k) vals.push_back(e);
    return vals;
}

}  // namespace

int rank_mod_p(const MatrixModA& m, int64_t p) {
    if (!m.modulus().has_factor(p))
        throw std::invalid_argument("prime " + std::to_string(p) + " does not divide modulus");
    return p == 2 ? rank_gf2(m) : rank_generic(m, p);
}

SnfDiagonal snf_mod_prime_power(const MatrixModA& m, int64_t p, int e) {
    const PrimePower& f = m.modulus().factor_of(p);
    if (f.e != e) throw std::invalid_argument("p^e is not the p-part of the modulus");
    SnfDiagonal out{p, e, {}};
    const int k = std::min(m.rows(), m.cols());
    if (e == 1) {
        // Over a field the diagonal is rank zeros and corank ones.
        const int r = rank_mod_p(m, p);
        out.valuations.assign(std::size_t(k - r), 1);
        out.valuations.resize(std::size_t(k), 0);
        std::sort(out.valuations.rbegin(), out.valuations.rend());
    } else {
        out.valuations = snf_general(m, p, e, uint64_t(f.value()));
        std::sort(out.valuations.rbegin(), out.valuations.rend());
    }
    return out;
}

GroupType cokernel_group(const MatrixModA& m) {
    std::vector<std::pair<int64_t, Partition>> comps;
    const int free_rank = std::max(0, m.rows() - m.cols());
    for (const auto& f : m.modulus().factors()) {
        const SnfDiagonal d = snf_mod_prime_power(m, f.p, f.e);
        std::vector<int> parts(std::size_t(free_rank), f.e);
        for (int v : d.valuations)
            if (v > 0) parts.push_back(v);
        std::sort(parts.rbegin(), parts.rend());
        if (!parts.empty()) comps.emplace_back(f.p, Partition(std::move(parts)));
    }
    return GroupType(std::move(comps));
}

}  // namespace cokmat
