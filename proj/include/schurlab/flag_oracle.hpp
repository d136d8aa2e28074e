/**
 * @file flag_oracle.hpp
 * @brief Brute-force ground truth over F_q: flags (plain and isotropic), orbit
 *        classification of pairs, convolution and comultiplication counts, and
 *        interpolation of counts in q.
 *
 * Fibers {y : (x, y) in O_B} are enumerated cell by cell: column j of B fixes
 * how many new pivots the step y_j / y_{j-1} takes in each step of x. In the
 * isotropic case only y_1..y_r are chosen (orthogonality imposed as linear
 * constraints, self-orthogonality tested per vector) and y_{n-j} = y_j^perp.
 */
#pragma once

#include <cstdlib>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "schurlab/combinatorics.hpp"
#include "schurlab/finite_field.hpp"
#include "schurlab/ring.hpp"

namespace schurlab {

// ---------------------------------------------------------------------------
// scale guards

struct ScaleLimits {
    int max_q = 13;
    int max_dim = 6;       // plain flags
    int max_dim_iso = 7;   // isotropic flags
};

inline constexpr int kAbsoluteMaxQ = 31;
inline constexpr int kAbsoluteMaxDim = kMaxDim;

inline ScaleLimits scale_limits() {
    ScaleLimits s;
    if (const char* e = std::getenv("SCHURLAB_MAX_Q")) s.max_q = std::min(std::atoi(e), kAbsoluteMaxQ);
    if (const char* e = std::getenv("SCHURLAB_MAX_DIM")) {
        int v = std::min(std::atoi(e), kAbsoluteMaxDim);
        s.max_dim = v;
        s.max_dim_iso = v;
    }
    return s;
}

/// Guard for direct enumeration requests.
inline void guard_direct(int q, int D, bool iso) {
    ScaleLimits s = scale_limits();
    int p, k;
    if (!prime_power(q, p, k) || p == 2) throw ValidationError("q must be an odd prime power, got " + std::to_string(q));
    if (q > s.max_q) throw ScaleExceeded("q = " + std::to_string(q) + " exceeds " + std::to_string(s.max_q));
    int lim = iso ? s.max_dim_iso : s.max_dim;
    if (D > lim) throw ScaleExceeded("ambient dimension " + std::to_string(D) + " exceeds " + std::to_string(lim));
}

/// Guard for internal sampling (interpolation may need larger q).
inline void guard_internal(int q, int D) {
    if (q > kAbsoluteMaxQ) throw ScaleExceeded("interpolation would need q = " + std::to_string(q));
    if (D > kAbsoluteMaxDim) throw ScaleExceeded("ambient dimension " + std::to_string(D) + " too large");
}

inline const std::vector<int>& sample_qs() {
    static const std::vector<int> qs{3, 5, 7, 9, 11, 13, 17, 19, 23, 25, 27, 29, 31};
    return qs;
}

// ---------------------------------------------------------------------------
// flags

/// A flag given by an adapted ordered basis: step i is spanned by the first
/// dims[0] + ... + dims[i-1] vectors.
struct Flag {
    int D = 0;
    std::vector<Vec> basis;
    Comp dims;

    int n() const { return static_cast<int>(dims.size()); }
    int cum(int i) const {
        int s = 0;
        for (int t = 0; t < i; ++t) s += dims[t];
        return s;
    }
};

inline Vec unit_vec(int p) {
    Vec v{};
    v[p] = 1;
    return v;
}

/// Coordinate flag: step i spanned by e_1, ..., e_{a_1+...+a_i}.
inline Flag prefix_flag(const Comp& dims) {
    Flag f;
    f.dims = dims;
    f.D = std::accumulate(dims.begin(), dims.end(), 0);
    for (int p = 0; p < f.D; ++p) f.basis.push_back(unit_vec(p));
    return f;
}

/// Coordinate pair (x, y) in the orbit of C: units (i, j, k) are listed
/// lexicographically; x_i is spanned by units of row <= i, y_j by units of column <= j.
/// For symmetric C both flags are isotropic for the anti-diagonal form.
inline std::pair<Flag, Flag> coordinate_pair(const Mat& C) {
    const int n = C.n();
    Flag x = prefix_flag(C.ro());
    Flag y;
    y.D = x.D;
    y.dims = C.co();
    std::vector<std::pair<int, int>> units;  // (row, col)
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int k = 0; k < C(i, j); ++k) units.emplace_back(i, j);
    for (int j = 1; j <= n; ++j)
        for (int p = 0; p < static_cast<int>(units.size()); ++p)
            if (units[p].second == j) y.basis.push_back(unit_vec(p));
    return {x, y};
}

/// Echelon forms of all prefixes of a flag, for repeated classification.
struct PrefixEchelons {
    std::vector<Echelon> pre;
    PrefixEchelons(const GF& F, const Flag& x) {
        Echelon e(F, x.D);
        pre.push_back(e);
        int p = 0;
        for (int i = 0; i < x.n(); ++i) {
            for (int t = 0; t < x.dims[i]; ++t) e.insert(x.basis[p++]);
            pre.push_back(e);
        }
    }
};

/// m_ij = |x_i cap y_j / (x_{i-1} cap y_j + x_i cap y_{j-1})|.
inline Mat classify(const GF& F, const PrefixEchelons& xe, const Flag& x, const Flag& y) {
    const int n = x.n();
    if (y.n() != n || y.D != x.D) throw ValidationError("flags of different shape");
    std::vector<std::vector<int>> I(n + 1, std::vector<int>(n + 1, 0));
    for (int i = 1; i <= n; ++i) {
        Echelon e = xe.pre[i];
        int xi = e.rank();
        int p = 0, yj = 0;
        for (int j = 1; j <= n; ++j) {
            for (int t = 0; t < y.dims[j - 1]; ++t) e.insert(y.basis[p++]);
            yj += y.dims[j - 1];
            I[i][j] = xi + yj - e.rank();
        }
    }
    Mat m = Mat::finite(n);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) m.set(i, j, I[i][j] - I[i - 1][j] - I[i][j - 1] + I[i - 1][j - 1]);
    return m;
}

inline Mat classify(const GF& F, const Flag& x, const Flag& y) { return classify(F, PrefixEchelons(F, x), x, y); }

inline Mat classify_isotropic(const GF& F, const Flag& x, const Flag& y) {
    Mat m = classify(F, x, y);
    if (!is_j_symmetric(m)) throw SymmetryViolation("isotropic pair classified as " + m.str());
    return m;
}

inline bool is_isotropic_flag(const GF& F, const Flag& x) {
    const int n = x.n();
    for (int i = 0; i <= n; ++i) {
        int ci = x.cum(i), cj = x.cum(n - i);
        // x_i perp x_{n-i} and dimensions complementary
        if (ci + cj != x.D) return false;
        for (int a = 0; a < ci; ++a)
            for (int b = 0; b < cj; ++b)
                if (form(F, x.D, x.basis[a], x.basis[b])) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// cell enumeration

namespace detail {

/// Affine solution set of rows * g = rhs (columns 0..f-1), as particular + span(null).
inline bool solve_affine(const GF& F, int f, std::vector<Vec> rows, std::vector<uint8_t> rhs, Vec& part,
                         std::vector<Vec>& null) {
    const int m = static_cast<int>(rows.size());
    std::vector<int> pivcol;
    int r = 0;
    for (int c = 0; c < f && r < m; ++c) {
        int sel = -1;
        for (int i = r; i < m; ++i)
            if (rows[i][c]) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        std::swap(rows[r], rows[sel]);
        std::swap(rhs[r], rhs[sel]);
        uint8_t ic = F.inv(rows[r][c]);
        for (int t = 0; t < f; ++t) rows[r][t] = F.mul(rows[r][t], ic);
        rhs[r] = F.mul(rhs[r], ic);
        for (int i = 0; i < m; ++i) {
            if (i == r || !rows[i][c]) continue;
            uint8_t mm = rows[i][c];
            for (int t = 0; t < f; ++t) rows[i][t] = F.axpy(rows[i][t], mm, rows[r][t]);
            rhs[i] = F.axpy(rhs[i], mm, rhs[r]);
        }
        pivcol.push_back(c);
        ++r;
    }
    for (int i = r; i < m; ++i)
        if (rhs[i]) return false;
    part = Vec{};
    for (int i = 0; i < r; ++i) part[pivcol[i]] = rhs[i];
    std::vector<bool> is_piv(f, false);
    for (int c : pivcol) is_piv[c] = true;
    null.clear();
    for (int fc = 0; fc < f; ++fc) {
        if (is_piv[fc]) continue;
        Vec x{};
        x[fc] = 1;
        for (int i = 0; i < r; ++i) x[pivcol[i]] = F.neg(rows[i][fc]);
        null.push_back(x);
    }
    return true;
}

/// Iterates over all vectors of F^k (odometer).
template <class Fn>
void for_each_tuple(int q, int k, Fn&& fn) {
    std::vector<uint8_t> t(k, 0);
    while (true) {
        fn(t);
        int i = 0;
        while (i < k && ++t[i] == q) t[i++] = 0;
        if (i == k) return;
    }
}

template <class Visit>
struct CellEnum {
    const GF& F;
    int D;
    const Flag& x;
    std::vector<std::vector<int>> need;  // need[j][k]: pivots of y-step j inside x-step k
    Comp ydims;
    bool iso;
    int ncols;
    Visit& visit;

    Flag y;
    std::vector<int> xlabel;

    CellEnum(const GF& F_, const Flag& x_, std::vector<std::vector<int>> need_, Comp ydims_, bool iso_, Visit& v)
        : F(F_), D(x_.D), x(x_), need(std::move(need_)), ydims(std::move(ydims_)), iso(iso_), visit(v) {
        const int n = static_cast<int>(ydims.size());
        ncols = iso ? (n - 1) / 2 : n;
        y.D = D;
        y.dims = ydims;
        for (int k = 0; k < x.n(); ++k)
            for (int t = 0; t < x.dims[k]; ++t) xlabel.push_back(k);
    }

    void run() {
        Echelon e(F, D);
        column(0, e);
    }

    void finish(const Echelon& ech) {
        if (!iso) {
            visit(static_cast<const Flag&>(y));
            return;
        }
        const int n = static_cast<int>(ydims.size());
        const int r = (n - 1) / 2;
        Echelon e = ech;
        size_t keep = y.basis.size();
        for (int j = r + 1; j <= n; ++j) {
            int c = y.cum(n - j);
            std::vector<Vec> S(y.basis.begin(), y.basis.begin() + c);
            for (const auto& v : perp_basis(F, D, S))
                if (e.insert(v)) y.basis.push_back(v);
            if (static_cast<int>(y.basis.size()) != y.cum(j))
                throw ConsistencyFailure("isotropic completion has wrong dimension");
        }
        visit(static_cast<const Flag&>(y));
        y.basis.resize(keep);
    }

    void column(int j, const Echelon& ech) {
        if (j == ncols) {
            finish(ech);
            return;
        }
        // complement of y_{j} adapted to the image of x
        std::vector<Vec> u;
        std::vector<int> lab;
        Echelon e = ech;
        for (int p = 0; p < D; ++p)
            if (e.insert(x.basis[p])) {
                u.push_back(x.basis[p]);
                lab.push_back(xlabel[p]);
            }
        std::vector<int> left = need[j];
        std::vector<int> piv;
        choose(j, ech, u, lab, left, piv, 0);
    }

    void choose(int j, const Echelon& ech, const std::vector<Vec>& u, const std::vector<int>& lab,
                std::vector<int>& left, std::vector<int>& piv, int idx) {
        const int m = static_cast<int>(u.size());
        if (idx == m) {
            for (int v : left)
                if (v) return;
            std::vector<bool> isp(m, false);
            for (int p : piv) isp[p] = true;
            fill(j, ech, u, isp, piv, 0);
            return;
        }
        int k = lab[idx];
        // remaining slots of this label must still be able to host the required pivots
        int remaining_same = 0;
        for (int t = idx; t < m; ++t)
            if (lab[t] == k) ++remaining_same;
        if (left[k] > 0) {
            --left[k];
            piv.push_back(idx);
            choose(j, ech, u, lab, left, piv, idx + 1);
            piv.pop_back();
            ++left[k];
        }
        if (remaining_same > left[k]) choose(j, ech, u, lab, left, piv, idx + 1);
    }

    void fill(int j, const Echelon& ech, const std::vector<Vec>& u, const std::vector<bool>& isp,
              const std::vector<int>& piv, size_t pi) {
        if (pi == piv.size()) {
            Echelon e = ech;
            size_t base = y.basis.size() - piv.size();
            for (size_t t = base; t < y.basis.size(); ++t) e.insert(y.basis[t]);
            column(j + 1, e);
            return;
        }
        const int p = piv[pi];
        std::vector<int> S;
        for (int s = 0; s < p; ++s)
            if (!isp[s]) S.push_back(s);
        const int f = static_cast<int>(S.size());
        auto build = [&](const Vec& g) {
            Vec w = u[p];
            for (int t = 0; t < f; ++t) {
                if (!g[t]) continue;
                for (int c = 0; c < D; ++c) w[c] = F.add(w[c], F.mul(g[t], u[S[t]][c]));
            }
            return w;
        };
        if (!iso) {
            for_each_tuple(F.q(), f, [&](const std::vector<uint8_t>& t) {
                Vec g{};
                for (int a = 0; a < f; ++a) g[a] = t[a];
                y.basis.push_back(build(g));
                fill(j, ech, u, isp, piv, pi + 1);
                y.basis.pop_back();
            });
            return;
        }
        // orthogonal to everything chosen so far
        std::vector<Vec> rows;
        std::vector<uint8_t> rhs;
        for (const auto& yv : y.basis) {
            Vec row{};
            for (int t = 0; t < f; ++t) row[t] = form(F, D, u[S[t]], yv);
            rows.push_back(row);
            rhs.push_back(F.neg(form(F, D, u[p], yv)));
        }
        Vec part;
        std::vector<Vec> null;
        if (!solve_affine(F, f, rows, rhs, part, null)) return;
        const int k = static_cast<int>(null.size());
        for_each_tuple(F.q(), k, [&](const std::vector<uint8_t>& t) {
            Vec g = part;
            for (int a = 0; a < k; ++a) {
                if (!t[a]) continue;
                for (int c = 0; c < f; ++c) g[c] = F.add(g[c], F.mul(t[a], null[a][c]));
            }
            Vec w = build(g);
            if (form(F, D, w, w)) return;
            y.basis.push_back(w);
            fill(j, ech, u, isp, piv, pi + 1);
            y.basis.pop_back();
        });
    }
};

}  // namespace detail

/// Visit every flag y with classify(x, y) == B (isotropic: y isotropic, B symmetric).
template <class Visit>
void enumerate_fiber(const GF& F, const Flag& x, const Mat& B, bool iso, Visit&& visit) {
    const int n = B.n();
    if (x.n() != n) throw CompositionMismatch("fiber: flag has " + std::to_string(x.n()) + " steps, matrix " +
                                              std::to_string(n));
    if (B.ro() != x.dims) throw CompositionMismatch("fiber: ro(B) differs from the flag type");
    if (iso && (n % 2 == 0 || !is_j_symmetric(B))) throw ValidationError("isotropic fiber needs a symmetric matrix");
    std::vector<std::vector<int>> need(n, std::vector<int>(n));
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) need[j][k] = B(k + 1, j + 1);
    detail::CellEnum<std::remove_reference_t<Visit>> ce(F, x, need, B.co(), iso, visit);
    ce.run();
}

// ---------------------------------------------------------------------------
// direct enumeration

inline std::vector<Flag> enumerate_flags(const Comp& dims, int q) {
    const int D = std::accumulate(dims.begin(), dims.end(), 0);
    guard_direct(q, D, false);
    const GF& F = GF::get(q);
    Flag x = prefix_flag(Comp{D});
    std::vector<std::vector<int>> need;
    for (int a : dims) need.push_back({a});
    std::vector<Flag> out;
    auto visit = [&](const Flag& y) { out.push_back(y); };
    detail::CellEnum<decltype(visit)> ce(F, x, need, dims, false, visit);
    ce.run();
    return out;
}

inline std::vector<Flag> enumerate_isotropic_flags(const Comp& dims, int q) {
    const int D = std::accumulate(dims.begin(), dims.end(), 0);
    if (dims.size() % 2 == 0 || !is_symmetric_comp(dims) || D % 2 == 0)
        throw ValidationError("isotropic flags need a symmetric composition of an odd number into an odd number of parts");
    guard_direct(q, D, true);
    const GF& F = GF::get(q);
    Flag x = prefix_flag(Comp{D});
    std::vector<std::vector<int>> need;
    for (int a : dims) need.push_back({a});
    std::vector<Flag> out;
    auto visit = [&](const Flag& y) { out.push_back(y); };
    detail::CellEnum<decltype(visit)> ce(F, x, need, dims, true, visit);
    ce.run();
    return out;
}

// ---------------------------------------------------------------------------
// group elements

using GroupElt = std::vector<Vec>;  // columns: g e_p = g[p]

inline Vec apply(const GF& F, int D, const GroupElt& g, const Vec& v) {
    Vec out{};
    for (int p = 0; p < D; ++p) {
        if (!v[p]) continue;
        for (int c = 0; c < D; ++c) out[c] = F.add(out[c], F.mul(v[p], g[p][c]));
    }
    return out;
}

inline Flag apply(const GF& F, const GroupElt& g, const Flag& x) {
    Flag y = x;
    for (auto& v : y.basis) v = apply(F, x.D, g, v);
    return y;
}

inline GroupElt random_invertible(const GF& F, int D, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> dist(0, F.q() - 1);
    while (true) {
        GroupElt g(D);
        Echelon e(F, D);
        bool ok = true;
        for (int p = 0; p < D && ok; ++p) {
            for (int c = 0; c < D; ++c) g[p][c] = static_cast<uint8_t>(dist(rng));
            ok = e.insert(g[p]);
        }
        if (ok) return g;
    }
}

/// Inverse of a D x D matrix given by columns; returns false if singular.
inline bool invert(const GF& F, int D, const GroupElt& g, GroupElt& out) {
    // rows of the augmented system [M | I] with M_{c,p} = g[p][c]
    std::vector<std::array<uint8_t, 2 * kMaxDim>> a(D);
    for (int c = 0; c < D; ++c) {
        a[c].fill(0);
        for (int p = 0; p < D; ++p) a[c][p] = g[p][c];
        a[c][D + c] = 1;
    }
    for (int col = 0; col < D; ++col) {
        int sel = -1;
        for (int r = col; r < D; ++r)
            if (a[r][col]) {
                sel = r;
                break;
            }
        if (sel < 0) return false;
        std::swap(a[col], a[sel]);
        uint8_t ic = F.inv(a[col][col]);
        for (int t = 0; t < 2 * D; ++t) a[col][t] = F.mul(a[col][t], ic);
        for (int r = 0; r < D; ++r) {
            if (r == col || !a[r][col]) continue;
            uint8_t m = a[r][col];
            for (int t = 0; t < 2 * D; ++t) a[r][t] = F.axpy(a[r][t], m, a[col][t]);
        }
    }
    out.assign(D, Vec{});
    for (int c = 0; c < D; ++c)
        for (int p = 0; p < D; ++p) out[p][c] = a[c][D + p];
    return true;
}

/// Random element of the orthogonal group of the anti-diagonal form, as a Cayley
/// transform (I + N/2)(I - N/2)^{-1} with N = J K, K skew. If allowed(a, b) is
/// false the entry K_{a,b} is forced to zero.
inline GroupElt random_orthogonal(const GF& F, int D, std::mt19937_64& rng,
                                  const std::function<bool(int, int)>& allowed = nullptr) {
    std::uniform_int_distribution<int> dist(0, F.q() - 1);
    const uint8_t half = F.inv(2 % F.p());
    while (true) {
        std::vector<std::vector<uint8_t>> K(D, std::vector<uint8_t>(D, 0));
        for (int a = 0; a < D; ++a)
            for (int b = a + 1; b < D; ++b) {
                if (allowed && !allowed(a, b)) continue;
                K[a][b] = static_cast<uint8_t>(dist(rng));
                K[b][a] = F.neg(K[a][b]);
            }
        // N = J K: N[c][p] = K[D-1-c][p]; halve
        GroupElt plus(D, Vec{}), minus(D, Vec{});
        for (int p = 0; p < D; ++p)
            for (int c = 0; c < D; ++c) {
                uint8_t nh = F.mul(K[D - 1 - c][p], half);
                uint8_t id = c == p ? 1 : 0;
                plus[p][c] = F.add(id, nh);
                minus[p][c] = F.sub(id, nh);
            }
        GroupElt minv;
        if (!invert(F, D, minus, minv)) continue;
        GroupElt g(D, Vec{});
        for (int p = 0; p < D; ++p) g[p] = apply(F, D, plus, minv[p]);
        return g;
    }
}

// ---------------------------------------------------------------------------
// convolution counts

/// For fixed B: counts[C][A] = #{x2 : (x1, x2) in O_B, (x2, x3) in O_A} for the
/// coordinate pair (x1, x3) of each C in Cs, so e_B * e_A = sum_C counts[C][A] e_C.
/// If g is given, all representatives are first moved by g.
using ProductCounts = std::map<Mat, std::map<Mat, long long>>;

inline ProductCounts product_counts(const GF& F, const Mat& B, const std::vector<Mat>& Cs, bool iso,
                                    const GroupElt* g = nullptr) {
    Flag x1 = prefix_flag(B.ro());
    if (g) x1 = apply(F, *g, x1);
    std::vector<Flag> x3s;
    for (const auto& C : Cs) {
        if (C.ro() != B.ro()) throw CompositionMismatch("target matrix row sums differ from ro(B)");
        Flag x3 = coordinate_pair(C).second;
        x3s.push_back(g ? apply(F, *g, x3) : x3);
    }
    ProductCounts out;
    std::vector<std::map<Mat, long long>*> slots;
    for (const auto& C : Cs) slots.push_back(&out[C]);
    enumerate_fiber(F, x1, B, iso, [&](const Flag& x2) {
        PrefixEchelons pe(F, x2);
        for (size_t c = 0; c < Cs.size(); ++c) {
            Mat A = classify(F, pe, x2, x3s[c]);
            ++(*slots[c])[A];
        }
    });
    for (auto it = out.begin(); it != out.end();) {
        for (auto jt = it->second.begin(); jt != it->second.end();)
            jt = jt->second == 0 ? it->second.erase(jt) : std::next(jt);
        it = it->second.empty() ? out.erase(it) : std::next(it);
    }
    return out;
}

/// Same count for one (C, A), enumerating x2 from the x3 side instead:
/// #{x2 : (x2, x3) in O_A, (x1, x2) in O_B}. Cheaper when A has the smaller fiber.
inline long long product_count_dual(const GF& F, const Mat& B, const Mat& C, const Mat& A, bool iso) {
    if (C.ro() != B.ro() || C.co() != A.co() || B.co() != A.ro()) throw CompositionMismatch("dual count: blocks differ");
    auto [x1, x3] = coordinate_pair(C);
    PrefixEchelons pe1(F, x1);
    long long c = 0;
    enumerate_fiber(F, x3, A.transpose(), iso, [&](const Flag& x2) {
        if (classify(F, pe1, x1, x2) == B) ++c;
    });
    return c;
}

/// All matrices C (symmetric when iso) with ro(C) = b.
inline std::vector<Mat> matrices_with_ro(const Comp& b, bool iso) {
    const int n = static_cast<int>(b.size());
    const int d = std::accumulate(b.begin(), b.end(), 0);
    std::vector<Mat> out;
    for (const auto& c : compositions(d, n)) {
        if (iso && !is_symmetric_comp(c)) continue;
        auto ms = iso ? j_matrices_with(b, c) : matrices_with(b, c, false);
        out.insert(out.end(), ms.begin(), ms.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// e_B * e_A at one q, as C -> count.
inline std::map<Mat, long long> convolve(const Mat& B, const Mat& A, int q, bool iso = false) {
    if (B.co() != A.ro()) throw CompositionMismatch("co(B) != ro(A)");
    guard_direct(q, B.sum(), iso);
    const GF& F = GF::get(q);
    std::vector<Mat> Cs;
    for (const auto& C : matrices_with_ro(B.ro(), iso))
        if (C.co() == A.co()) Cs.push_back(C);
    auto counts = product_counts(F, B, Cs, iso);
    std::map<Mat, long long> out;
    for (auto& [C, row] : counts) {
        auto it = row.find(A);
        if (it != row.end()) out[C] = it->second;
    }
    // second representative
    std::mt19937_64 rng(0x5eed + q);
    GroupElt g = iso ? random_orthogonal(F, B.sum(), rng) : random_invertible(F, B.sum(), rng);
    auto again = product_counts(F, B, Cs, iso, &g);
    std::map<Mat, long long> out2;
    for (auto& [C, row] : again) {
        auto it = row.find(A);
        if (it != row.end()) out2[C] = it->second;
    }
    if (out != out2) throw RepresentativeDependence("convolution counts changed under a group translate");
    return out;
}

inline long long fiber_size(const GF& F, const Flag& x, const Mat& B, bool iso) {
    long long c = 0;
    enumerate_fiber(F, x, B, iso, [&](const Flag&) { ++c; });
    return c;
}

/// Degree of q -> |{y : (x, y) in O_A}|, found by raising the bound until the
/// held-back samples agree.
inline int fiber_degree(const Mat& A, bool iso, QPoly* poly = nullptr) {
    std::vector<std::pair<long long, BigInt>> samples;
    for (int q : sample_qs()) {
        guard_internal(q, A.sum());
        const GF& F = GF::get(q);
        samples.emplace_back(q, BigInt(fiber_size(F, prefix_flag(A.ro()), A, iso)));
        const int m = static_cast<int>(samples.size());
        if (m < 3) continue;
        // accept the smallest bound that fits all but two samples and predicts both
        for (int b = 0; b <= m - 3; ++b) {
            try {
                QPoly p = interpolate(samples, b);
                if (poly) *poly = p;
                return p.degree();
            } catch (const ConsistencyFailure&) {
            }
        }
    }
    throw ConsistencyFailure("fiber count did not fit a polynomial within the sample range");
}

// ---------------------------------------------------------------------------
// sub-flags under coordinate projections

/// For each step: {v in x_i : v_p = 0 for p in [zlo, zhi)}, then keep coordinates [klo, khi).
inline Flag restrict_flag(const GF& F, const Flag& x, int zlo, int zhi, int klo, int khi) {
    Flag out;
    out.D = khi - klo;
    Echelon ech(F, out.D);
    int prev = 0;
    for (int i = 1; i <= x.n(); ++i) {
        int c = x.cum(i);
        // rows of x_i; eliminate the zero-range coordinates
        std::vector<Vec> rows(x.basis.begin(), x.basis.begin() + c);
        int r = 0;
        for (int col = zlo; col < zhi && r < static_cast<int>(rows.size()); ++col) {
            int sel = -1;
            for (int t = r; t < static_cast<int>(rows.size()); ++t)
                if (rows[t][col]) {
                    sel = t;
                    break;
                }
            if (sel < 0) continue;
            std::swap(rows[r], rows[sel]);
            uint8_t ic = F.inv(rows[r][col]);
            for (int t = 0; t < x.D; ++t) rows[r][t] = F.mul(rows[r][t], ic);
            for (int t = 0; t < static_cast<int>(rows.size()); ++t) {
                if (t == r || !rows[t][col]) continue;
                uint8_t m = rows[t][col];
                for (int s = 0; s < x.D; ++s) rows[t][s] = F.axpy(rows[t][s], m, rows[r][s]);
            }
            ++r;
        }
        for (int t = r; t < static_cast<int>(rows.size()); ++t) {
            Vec v{};
            for (int s = klo; s < khi; ++s) v[s - klo] = rows[t][s];
            if (ech.insert(v)) out.basis.push_back(v);
        }
        out.dims.push_back(static_cast<int>(out.basis.size()) - prev);
        prev = static_cast<int>(out.basis.size());
    }
    return out;
}

// ---------------------------------------------------------------------------
// comultiplication counts

/// Key (B', B'') of a comultiplication count.
using PairCounts = std::map<std::pair<Mat, Mat>, long long>;

/// Plain case: F^d = F^{d'} (first coordinates) + F^{d''} (last). V = V' + V'' of
/// type b' + b''. Returns N(B', B'') = #{V~ in fiber_B(V) : pi'(V~) = V~', pi''(V~) = V~''}
/// for fixed representatives of the orbits B', B''.
///
/// Isotropic case: D'' = span(e_1..e_{d''}), T = span(e_{d''+1}..e_{D-d''}), W the rest;
/// L = L'' + pi^{-1}(L') + (L''_{n-i})^# with L' isotropic of type b' and L'' of type b''.
inline PairCounts comult_counts(const GF& F, const Mat& B, const Comp& bp, const Comp& bpp, bool iso,
                                const GroupElt* g = nullptr) {
    const int n = B.n();
    const int dp = std::accumulate(bp.begin(), bp.end(), 0);
    const int dpp = std::accumulate(bpp.begin(), bpp.end(), 0);
    const int D = B.sum();
    Flag L;
    L.D = D;
    if (!iso) {
        if (dp + dpp != D) throw CompositionMismatch("split does not add up");
        for (int i = 0; i < n; ++i) {
            if (bp[i] + bpp[i] != B.ro()[i]) throw CompositionMismatch("b' + b'' != ro(B)");
            int c1 = 0, c2 = 0;
            for (int t = 0; t < i; ++t) {
                c1 += bp[t];
                c2 += bpp[t];
            }
            for (int t = 0; t < bp[i]; ++t) L.basis.push_back(unit_vec(c1 + t));
            for (int t = 0; t < bpp[i]; ++t) L.basis.push_back(unit_vec(dp + c2 + t));
        }
    } else {
        if (dp + 2 * dpp != D) throw CompositionMismatch("isotropic split does not add up");
        for (int i = 0; i < n; ++i) {
            if (bp[i] + bpp[i] + bpp[n - 1 - i] != B.ro()[i]) throw CompositionMismatch("b' + b'' + rev(b'') != ro(B)");
        }
        auto cumv = [](const Comp& c, int i) {
            int s = 0;
            for (int t = 0; t < i; ++t) s += c[t];
            return s;
        };
        for (int i = 1; i <= n; ++i) {
            for (int p = cumv(bpp, i - 1); p < cumv(bpp, i); ++p) L.basis.push_back(unit_vec(p));
            for (int p = cumv(bp, i - 1); p < cumv(bp, i); ++p) L.basis.push_back(unit_vec(dpp + p));
            // W-part: e_p with D-d'' <= p (0-based) and p < D - c''_{n-i}
            int hi_prev = D - cumv(bpp, n - i + 1), hi = D - cumv(bpp, n - i);
            for (int p = std::max(hi_prev, D - dpp); p < hi; ++p) L.basis.push_back(unit_vec(p));
        }
    }
    L.dims = B.ro();
    if (g) L = apply(F, *g, L);

    Flag Lp = prefix_flag(bp), Lpp = prefix_flag(bpp);
    PrefixEchelons pe1(F, Lp), pe2(F, Lpp);
    PairCounts raw;
    enumerate_fiber(F, L, B, iso, [&](const Flag& y) {
        Flag y1 = iso ? restrict_flag(F, y, D - dpp, D, dpp, D - dpp) : restrict_flag(F, y, 0, 0, 0, dp);
        Flag y2 = iso ? restrict_flag(F, y, dpp, D, 0, dpp) : restrict_flag(F, y, 0, dp, dp, D);
        Mat B1 = classify(F, pe1, Lp, y1);
        Mat B2 = classify(F, pe2, Lpp, y2);
        ++raw[{B1, B2}];
    });
    PairCounts out;
    for (auto& [key, c] : raw) {
        long long f1 = fiber_size(F, Lp, key.first, iso);
        long long f2 = fiber_size(F, Lpp, key.second, false);
        if (c % (f1 * f2) != 0) throw ConsistencyFailure("comultiplication count not divisible by fiber sizes");
        out[key] = c / (f1 * f2);
    }
    return out;
}

/// Interpolate a family of per-key counts gathered at increasing q.
template <class Key>
std::map<Key, QPoly> interpolate_family(const std::function<std::map<Key, long long>(int q)>& at_q,
                                        const std::function<int(const Key&)>& bound_of, int D, int max_bound) {
    const int needed = std::max(0, max_bound) + 2;
    if (needed > static_cast<int>(sample_qs().size()))
        throw ScaleExceeded("degree bound " + std::to_string(max_bound) + " needs more q samples than available");
    std::vector<std::map<Key, long long>> tables;
    std::vector<int> qs;
    for (int t = 0; t < needed; ++t) {
        int q = sample_qs()[t];
        guard_internal(q, D);
        qs.push_back(q);
        tables.push_back(at_q(q));
    }
    std::set<Key> keys;
    for (auto& tb : tables)
        for (auto& [k, v] : tb) keys.insert(k);
    std::map<Key, QPoly> out;
    for (const auto& k : keys) {
        std::vector<std::pair<long long, BigInt>> samples;
        for (size_t t = 0; t < tables.size(); ++t) {
            auto it = tables[t].find(k);
            samples.emplace_back(qs[t], BigInt(it == tables[t].end() ? 0 : it->second));
        }
        QPoly p = interpolate(samples, std::max(0, bound_of(k)));
        if (!p.is_zero()) out[k] = p;
    }
    return out;
}

}  // namespace schurlab
