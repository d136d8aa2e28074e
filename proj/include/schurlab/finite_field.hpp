/**
 * @file finite_field.hpp
 * @brief Table-driven GF(q) for small odd prime powers and row-echelon helpers.
 */
#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "schurlab/errors.hpp"

namespace schurlab {

constexpr int kMaxDim = 8;
using Vec = std::array<uint8_t, kMaxDim>;

inline bool prime_power(int q, int& p, int& k) {
    if (q < 2) return false;
    for (p = 2; p * p <= q; ++p)
        if (q % p == 0) break;
    if (p * p > q) p = q;
    k = 0;
    int t = q;
    while (t % p == 0) {
        t /= p;
        ++k;
    }
    return t == 1;
}

class GF {
public:
    static const GF& get(int q) {
        static std::mutex mu;
        static std::map<int, std::unique_ptr<GF>> cache;
        std::lock_guard<std::mutex> lock(mu);
        auto& slot = cache[q];
        if (!slot) slot.reset(new GF(q));
        return *slot;
    }

    int q() const { return q_; }
    int p() const { return p_; }
    uint8_t add(uint8_t a, uint8_t b) const { return add_[a * q_ + b]; }
    uint8_t sub(uint8_t a, uint8_t b) const { return add_[a * q_ + neg_[b]]; }
    uint8_t mul(uint8_t a, uint8_t b) const { return mul_[a * q_ + b]; }
    uint8_t neg(uint8_t a) const { return neg_[a]; }
    uint8_t inv(uint8_t a) const { return inv_[a]; }
    // a - c*b
    uint8_t axpy(uint8_t a, uint8_t c, uint8_t b) const { return sub(a, mul(c, b)); }

private:
    explicit GF(int q) : q_(q) {
        int k;
        if (q > 255 || !prime_power(q, p_, k)) throw ValidationError("field size must be a prime power below 256");
        if (p_ == 2) throw ValidationError("odd characteristic required");
        // elements are base-p digit vectors of polynomials modulo a monic irreducible f
        std::vector<int> f(k + 1, 0);
        if (k > 1) {
            bool found = false;
            int total = 1;
            for (int i = 0; i < k; ++i) total *= p_;
            for (int code = 0; code < total && !found; ++code) {
                int c = code;
                for (int i = 0; i < k; ++i) {
                    f[i] = c % p_;
                    c /= p_;
                }
                f[k] = 1;
                if (f[0] == 0) continue;
                bool irreducible = true;
                if (k <= 3) {
                    for (int x = 0; x < p_ && irreducible; ++x) {
                        int val = 0;
                        for (int i = k; i >= 0; --i) val = (val * x + f[i]) % p_;
                        if (val == 0) irreducible = false;
                    }
                } else {
                    throw ValidationError("extension degree above 3 not supported");
                }
                found = irreducible;
            }
        }
        auto digits = [&](int a) {
            std::vector<int> d(k, 0);
            for (int i = 0; i < k; ++i) {
                d[i] = a % p_;
                a /= p_;
            }
            return d;
        };
        auto pack = [&](const std::vector<int>& d) {
            int a = 0;
            for (int i = k - 1; i >= 0; --i) a = a * p_ + ((d[i] % p_) + p_) % p_;
            return a;
        };
        add_.resize(q * q);
        mul_.resize(q * q);
        neg_.resize(q);
        inv_.resize(q, 0);
        for (int a = 0; a < q; ++a) {
            auto da = digits(a);
            std::vector<int> dn(k);
            for (int i = 0; i < k; ++i) dn[i] = (p_ - da[i]) % p_;
            neg_[a] = static_cast<uint8_t>(pack(dn));
            for (int b = 0; b < q; ++b) {
                auto db = digits(b);
                std::vector<int> s(k);
                for (int i = 0; i < k; ++i) s[i] = (da[i] + db[i]) % p_;
                add_[a * q + b] = static_cast<uint8_t>(pack(s));
                std::vector<int> pr(2 * k, 0);
                for (int i = 0; i < k; ++i)
                    for (int j = 0; j < k; ++j) pr[i + j] = (pr[i + j] + da[i] * db[j]) % p_;
                for (int deg = 2 * k - 2; deg >= k; --deg) {
                    int c = pr[deg];
                    if (!c) continue;
                    for (int i = 0; i <= k; ++i) pr[deg - k + i] = ((pr[deg - k + i] - c * f[i]) % p_ + p_) % p_;
                }
                pr.resize(k);
                mul_[a * q + b] = static_cast<uint8_t>(pack(pr));
            }
        }
        for (int a = 1; a < q; ++a)
            for (int b = 1; b < q; ++b)
                if (mul_[a * q + b] == 1) inv_[a] = static_cast<uint8_t>(b);
    }

    int q_ = 0, p_ = 0;
    std::vector<uint8_t> add_, mul_, neg_, inv_;
};

/// Incrementally built row-echelon basis: each row is normalized at its pivot
/// and vanishes at the pivots of earlier rows.
class Echelon {
public:
    Echelon(const GF& F, int D) : F_(&F), D_(D) {}

    Vec reduce(Vec v) const {
        for (size_t r = 0; r < rows_.size(); ++r) {
            uint8_t c = v[piv_[r]];
            if (!c) continue;
            for (int t = 0; t < D_; ++t) v[t] = F_->axpy(v[t], c, rows_[r][t]);
        }
        return v;
    }
    bool insert(const Vec& v) {
        Vec w = reduce(v);
        int p = -1;
        for (int t = 0; t < D_; ++t)
            if (w[t]) {
                p = t;
                break;
            }
        if (p < 0) return false;
        uint8_t ic = F_->inv(w[p]);
        for (int t = 0; t < D_; ++t) w[t] = F_->mul(w[t], ic);
        rows_.push_back(w);
        piv_.push_back(p);
        return true;
    }
    bool contains(const Vec& v) const {
        Vec w = reduce(v);
        for (int t = 0; t < D_; ++t)
            if (w[t]) return false;
        return true;
    }
    int rank() const { return static_cast<int>(rows_.size()); }

private:
    const GF* F_;
    int D_;
    std::vector<Vec> rows_;
    std::vector<int> piv_;
};

/// Anti-diagonal symmetric form Q(e_p, e_s) = delta_{p+s, D+1}.
inline uint8_t form(const GF& F, int D, const Vec& a, const Vec& b) {
    uint8_t s = 0;
    for (int p = 0; p < D; ++p)
        if (a[p] && b[D - 1 - p]) s = F.add(s, F.mul(a[p], b[D - 1 - p]));
    return s;
}

/// Basis of the solution space of the homogeneous system rows * x = 0.
inline std::vector<Vec> null_space(const GF& F, int D, std::vector<Vec> rows) {
    std::vector<int> pivcol;
    int r = 0;
    for (int c = 0; c < D && r < static_cast<int>(rows.size()); ++c) {
        int sel = -1;
        for (int i = r; i < static_cast<int>(rows.size()); ++i)
            if (rows[i][c]) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        std::swap(rows[r], rows[sel]);
        uint8_t ic = F.inv(rows[r][c]);
        for (int t = 0; t < D; ++t) rows[r][t] = F.mul(rows[r][t], ic);
        for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
            if (i == r || !rows[i][c]) continue;
            uint8_t m = rows[i][c];
            for (int t = 0; t < D; ++t) rows[i][t] = F.axpy(rows[i][t], m, rows[r][t]);
        }
        pivcol.push_back(c);
        ++r;
    }
    std::vector<bool> is_piv(D, false);
    for (int c : pivcol) is_piv[c] = true;
    std::vector<Vec> out;
    for (int fc = 0; fc < D; ++fc) {
        if (is_piv[fc]) continue;
        Vec x{};
        x[fc] = 1;
        for (int i = 0; i < r; ++i) x[pivcol[i]] = F.neg(rows[i][fc]);
        out.push_back(x);
    }
    return out;
}

/// Basis of S^perp under the anti-diagonal form.
inline std::vector<Vec> perp_basis(const GF& F, int D, const std::vector<Vec>& S) {
    std::vector<Vec> rows;
    for (const auto& s : S) {
        Vec t{};
        for (int p = 0; p < D; ++p) t[p] = s[D - 1 - p];
        rows.push_back(t);
    }
    return null_space(F, D, rows);
}

}  // namespace schurlab
