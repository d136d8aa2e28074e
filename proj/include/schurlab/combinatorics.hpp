/**
 * @file combinatorics.hpp
 * @brief Index matrices (finite and periodic), compositions, the statistics
 *        d_A, eps_i, the Bruhat order, the twist u(b,a) and 0/1 column matrices.
 */
#pragma once

#include <nlohmann/json.hpp>

#include <algorithm>
#include <compare>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "schurlab/errors.hpp"

namespace schurlab {

using Comp = std::vector<int>;

inline int floordiv(int a, int b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }
inline int wrap(int i, int n) { return i - n * floordiv(i - 1, n); }  // into [1,n]

/// A nonnegative integer matrix, either n x n (finite) or Z x Z with period n.
/// Rows i in [1,n] are stored by diagonal offset k = j - i in [-s, s].
class Mat {
public:
    Mat() = default;
    static Mat finite(int n) { return Mat(n, false, n > 0 ? n - 1 : 0); }
    static Mat periodic(int n) { return Mat(n, true, 0); }
    static Mat diag(const Comp& a, bool periodic = false) {
        Mat m = periodic ? Mat::periodic(static_cast<int>(a.size())) : Mat::finite(static_cast<int>(a.size()));
        for (int i = 1; i <= m.n_; ++i) m.set(i, i, a[i - 1]);
        return m;
    }

    int n() const { return n_; }
    bool is_periodic() const { return per_; }
    int stored_spread() const { return s_; }

    int operator()(int i, int j) const {
        if (per_) {
            int sh = n_ * floordiv(i - 1, n_);
            i -= sh;
            j -= sh;
        } else if (i < 1 || i > n_ || j < 1 || j > n_) {
            return 0;
        }
        int k = j - i;
        if (k < -s_ || k > s_) return 0;
        return a_[idx(i, k)];
    }

    void set(int i, int j, int val) {
        if (val < 0) throw ValidationError("negative matrix entry");
        if (per_) {
            int sh = n_ * floordiv(i - 1, n_);
            i -= sh;
            j -= sh;
        } else if (i < 1 || i > n_ || j < 1 || j > n_) {
            if (val == 0) return;
            throw ValidationError("entry outside finite window");
        }
        int k = j - i;
        if (k < -s_ || k > s_) {
            if (val == 0) return;
            grow(std::abs(k));
        }
        a_[idx(i, k)] = val;
        if (per_ && val == 0 && std::abs(k) == s_) shrink();
    }
    void add(int i, int j, int dv) { set(i, j, (*this)(i, j) + dv); }

    /// Actual spread: max |j - i| over nonzero entries.
    int spread() const {
        int best = 0;
        for (int i = 1; i <= n_; ++i)
            for (int k = -s_; k <= s_; ++k)
                if (a_[idx(i, k)] != 0) best = std::max(best, std::abs(k));
        return best;
    }

    int sum() const { return std::accumulate(a_.begin(), a_.end(), 0); }
    Comp ro() const {
        Comp r(n_, 0);
        for (int i = 1; i <= n_; ++i)
            for (int k = -s_; k <= s_; ++k) r[i - 1] += a_[idx(i, k)];
        return r;
    }
    Comp co() const {
        Comp c(n_, 0);
        for (int i = 1; i <= n_; ++i)
            for (int k = -s_; k <= s_; ++k) {
                int v = a_[idx(i, k)];
                if (v == 0) continue;
                int j = per_ ? wrap(i + k, n_) : i + k;
                c[j - 1] += v;
            }
        return c;
    }
    bool is_diagonal() const {
        for (int i = 1; i <= n_; ++i)
            for (int k = -s_; k <= s_; ++k)
                if (k != 0 && a_[idx(i, k)] != 0) return false;
        return true;
    }
    Mat transpose() const {
        Mat t(n_, per_, s_);
        for (auto [i, j, v] : entries()) t.set(j, i, v);
        return t;
    }
    /// Nonzero entries (i, j, a_ij), i in [1,n], in (i, j) order.
    std::vector<std::tuple<int, int, int>> entries() const {
        std::vector<std::tuple<int, int, int>> out;
        for (int i = 1; i <= n_; ++i)
            for (int k = -s_; k <= s_; ++k)
                if (int v = a_[idx(i, k)]) out.emplace_back(i, i + k, v);
        return out;
    }

    Mat operator+(const Mat& o) const {
        Mat r = *this;
        for (auto [i, j, v] : o.entries()) r.add(i, j, v);
        return r;
    }

    auto operator<=>(const Mat& o) const = default;
    bool operator==(const Mat& o) const = default;

    size_t hash() const {
        size_t h = std::hash<int>()(n_ * 2 + per_) ^ (static_cast<size_t>(s_) << 20);
        for (int v : a_) h = h * 1000003u ^ static_cast<size_t>(v);
        return h;
    }

    std::string str() const {
        std::ostringstream os;
        if (!per_) {
            os << "[";
            for (int i = 1; i <= n_; ++i) {
                os << (i > 1 ? ";" : "");
                for (int j = 1; j <= n_; ++j) os << (j > 1 ? "," : "") << (*this)(i, j);
            }
            os << "]";
        } else {
            os << "P" << n_ << "{";
            bool first = true;
            for (auto [i, j, v] : entries()) {
                os << (first ? "" : ",") << "(" << i << "," << j << "):" << v;
                first = false;
            }
            os << "}";
        }
        return os.str();
    }

    nlohmann::json to_json() const {
        nlohmann::json e = nlohmann::json::array();
        for (auto [i, j, v] : entries()) e.push_back({i, j, v});
        return {{"n", n_}, {"d", sum()}, {"periodic", per_}, {"entries", e}};
    }
    static Mat from_json(const nlohmann::json& j) {
        try {
            int n = j.at("n").get<int>();
            bool per = j.value("periodic", false);
            if (n <= 0) throw ValidationError("matrix period must be positive");
            Mat m = per ? Mat::periodic(n) : Mat::finite(n);
            for (const auto& t : j.at("entries")) {
                int i = t.at(0).get<int>(), jj = t.at(1).get<int>(), v = t.at(2).get<int>();
                if (i < 1 || i > n) throw ValidationError("row index outside [1,n]");
                m.add(i, jj, v);
            }
            if (j.contains("d") && j["d"].get<int>() != m.sum()) throw ValidationError("declared d mismatches entries");
            return m;
        } catch (const nlohmann::json::exception& ex) {
            throw ParseError(std::string("matrix JSON: ") + ex.what());
        }
    }

private:
    Mat(int n, bool per, int s) : n_(n), per_(per), s_(s), a_(static_cast<size_t>(n) * (2 * s + 1), 0) {}
    size_t idx(int i, int k) const { return static_cast<size_t>(i - 1) * (2 * s_ + 1) + (k + s_); }
    void grow(int s) {
        if (!per_) throw ValidationError("entry outside finite window");
        Mat g(n_, per_, s);
        for (int i = 1; i <= n_; ++i)
            for (int k = -s_; k <= s_; ++k) g.a_[g.idx(i, k)] = a_[idx(i, k)];
        *this = std::move(g);
    }
    void shrink() {
        int s = spread();
        if (s == s_) return;
        Mat g(n_, per_, s);
        for (int i = 1; i <= n_; ++i)
            for (int k = -s; k <= s; ++k) g.a_[g.idx(i, k)] = a_[idx(i, k)];
        *this = std::move(g);
    }

    int n_ = 0;
    bool per_ = false;
    int s_ = 0;
    std::vector<int> a_;
};

struct MatHash {
    size_t operator()(const Mat& m) const { return m.hash(); }
};

inline std::string comp_str(const Comp& c) {
    std::string s = "(";
    for (size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
    return s + ")";
}

// ---------------------------------------------------------------------------
// compositions

inline std::vector<Comp> compositions(int d, int n) {
    std::vector<Comp> out;
    if (n <= 0) {
        if (d == 0) out.push_back({});
        return out;
    }
    Comp c(n, 0);
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == n - 1) {
            c[pos] = left;
            out.push_back(c);
            return;
        }
        for (int v = left; v >= 0; --v) {
            c[pos] = v;
            rec(pos + 1, left - v);
        }
    };
    rec(0, d);
    std::sort(out.begin(), out.end());
    return out;
}

inline bool is_symmetric_comp(const Comp& a) {
    int n = static_cast<int>(a.size());
    for (int i = 0; i < n; ++i)
        if (a[i] != a[n - 1 - i]) return false;
    return true;
}

/// Lambda^j_{d,n}: symmetric compositions of 2d+1 into n (odd) parts.
inline std::vector<Comp> j_compositions(int d, int n) {
    std::vector<Comp> out;
    for (auto& c : compositions(2 * d + 1, n))
        if (is_symmetric_comp(c)) out.push_back(c);
    return out;
}

// ---------------------------------------------------------------------------
// enumeration of matrices with prescribed row and column sums

/// Finite: all n x n matrices with ro = r, co = c. Periodic: all with spread <= s.
inline std::vector<Mat> matrices_with(const Comp& r, const Comp& c, bool periodic, int s = 0) {
    const int n = static_cast<int>(r.size());
    std::vector<Mat> out;
    if (std::accumulate(r.begin(), r.end(), 0) != std::accumulate(c.begin(), c.end(), 0)) return out;
    if (!periodic) s = n - 1;
    Comp colleft = c;
    Mat cur = periodic ? Mat::periodic(n) : Mat::finite(n);
    std::vector<std::pair<int, int>> cells;  // (i, k)
    for (int i = 1; i <= n; ++i)
        for (int k = -s; k <= s; ++k) {
            int j = i + k;
            if (!periodic && (j < 1 || j > n)) continue;
            cells.emplace_back(i, k);
        }
    std::function<void(size_t, int)> rec = [&](size_t idx, int rowleft) {
        if (idx == cells.size()) {
            for (int v : colleft)
                if (v != 0) return;
            out.push_back(cur);
            return;
        }
        auto [i, k] = cells[idx];
        bool last_in_row = idx + 1 == cells.size() || cells[idx + 1].first != i;
        int col = periodic ? wrap(i + k, n) : i + k;
        int lo = last_in_row ? rowleft : 0;
        int hi = std::min(rowleft, colleft[col - 1]);
        for (int v = hi; v >= lo; --v) {
            cur.set(i, i + k, v);
            colleft[col - 1] -= v;
            int nextrow = last_in_row ? (i < n ? r[i] : 0) : rowleft - v;
            rec(idx + 1, nextrow);
            colleft[col - 1] += v;
        }
        cur.set(i, i + k, 0);
    };
    rec(0, r.empty() ? 0 : r[0]);
    std::sort(out.begin(), out.end());
    return out;
}

inline bool is_j_symmetric(const Mat& a) {
    int n = a.n();
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            if (a(i, j) != a(n + 1 - i, n + 1 - j)) return false;
    return true;
}

/// Xi^j: symmetric n x n matrices with prescribed (symmetric) row and column sums.
inline std::vector<Mat> j_matrices_with(const Comp& r, const Comp& c) {
    std::vector<Mat> out;
    for (auto& m : matrices_with(r, c, false))
        if (is_j_symmetric(m)) out.push_back(m);
    return out;
}

/// Xi^i condition: middle row and column equal the unit vector.
inline bool is_i_matrix(const Mat& a) {
    int n = a.n(), m = (n + 1) / 2;
    for (int j = 1; j <= n; ++j) {
        if (a(m, j) != (j == m ? 1 : 0)) return false;
        if (a(j, m) != (j == m ? 1 : 0)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// statistics

/// d_A = sum_{1<=i<=n, i>=k, j<l} a_ij a_kl  (k, j, l over Z in the periodic case).
inline long long d_stat(const Mat& A) {
    long long d = 0;
    const int n = A.n();
    if (!A.is_periodic()) {
        for (auto [i, j, a] : A.entries())
            for (auto [k, l, b] : A.entries())
                if (i >= k && j < l) d += static_cast<long long>(a) * b;
        return d;
    }
    const int s = A.spread();
    for (auto [i, j, a] : A.entries())
        for (int k = i - 2 * s - 1; k <= i; ++k)
            for (int l = j + 1; l <= k + s; ++l) d += static_cast<long long>(a) * A(k, l);
    (void)n;
    return d;
}

/// eps_i(A) = sum_{r<=i<s} a_rs - sum_{r>i>=s} a_rs.
inline int epsilon_stat(const Mat& A, int i) {
    int e = 0;
    if (!A.is_periodic()) {
        for (auto [r, c, a] : A.entries()) {
            if (r <= i && i < c) e += a;
            if (r > i && i >= c) e -= a;
        }
        return e;
    }
    const int s = A.spread();
    for (int r = i - s; r <= i; ++r)
        for (int c = i + 1; c <= r + s; ++c) e += A(r, c);
    for (int r = i + 1; r <= i + s; ++r)
        for (int c = r - s; c <= i; ++c) e -= A(r, c);
    return e;
}

/// Partial sums: for i<j, sum_{r<=i, c>=j} a_rc; for i>j, sum_{r>=i, c<=j} a_rc.
inline int bruhat_sigma(const Mat& A, int i, int j) {
    int t = 0;
    if (!A.is_periodic()) {
        for (auto [r, c, a] : A.entries()) {
            if (i < j && r <= i && c >= j) t += a;
            if (i > j && r >= i && c <= j) t += a;
        }
        return t;
    }
    const int s = A.spread();
    if (i < j) {
        for (int r = j - s; r <= i; ++r)
            for (int c = j; c <= r + s; ++c) t += A(r, c);
    } else if (i > j) {
        for (int r = i; r <= j + s; ++r)
            for (int c = r - s; c <= j; ++c) t += A(r, c);
    }
    return t;
}

/// Index pairs on which the order is tested.
inline std::vector<std::pair<int, int>> bruhat_pairs(int n, bool periodic, int s) {
    std::vector<std::pair<int, int>> p;
    if (!periodic) {
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j)
                if (i != j) p.emplace_back(i, j);
    } else {
        for (int i = 1; i <= n; ++i)
            for (int k = 1; k <= s; ++k) {
                p.emplace_back(i, i + k);
                p.emplace_back(i, i - k);
            }
    }
    return p;
}

inline bool bruhat_leq(const Mat& A, const Mat& B) {
    if (A.n() != B.n() || A.is_periodic() != B.is_periodic()) return false;
    if (A.ro() != B.ro() || A.co() != B.co()) return false;
    int s = std::max(A.spread(), B.spread());
    for (auto [i, j] : bruhat_pairs(A.n(), A.is_periodic(), s))
        if (bruhat_sigma(A, i, j) > bruhat_sigma(B, i, j)) return false;
    return true;
}

/// Strictly monotone along the Bruhat order; used to build linear extensions.
inline long long bruhat_rank(const Mat& A, int s) {
    long long t = 0;
    for (auto [i, j] : bruhat_pairs(A.n(), A.is_periodic(), s)) t += bruhat_sigma(A, i, j);
    return t;
}

/// u(b, a) for n = 2r+1.
inline long long u_twist(const Comp& b, const Comp& a) {
    const int n = static_cast<int>(b.size());
    if (n % 2 == 0 || a.size() != b.size()) throw ValidationError("u(b,a) needs odd n and equal lengths");
    const int r = (n - 1) / 2;
    long long t = 0;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            if (i + j >= n + 1) t += static_cast<long long>(b[i - 1]) * b[j - 1] - static_cast<long long>(a[i - 1]) * a[j - 1];
    for (int i = r + 1; i <= n; ++i) t += a[i - 1] - b[i - 1];
    if (t % 2 != 0) throw NonInteger("u(b,a) half-sum is not integral");
    return t / 2;
}

/// Fiber dimension of a symmetric matrix in Xi^j:
/// (sum_{i>=k, j<l} a_ij a_kl - sum_{i>=r+1>j} a_ij) / 2.
inline long long dj_stat(const Mat& A) {
    const int n = A.n();
    const int r = (n - 1) / 2;
    long long t = d_stat(A);
    for (auto [i, j, a] : A.entries())
        if (i >= r + 1 && j < r + 1) t -= a;
    if (t % 2 != 0) throw NonInteger("d^j half-sum is not integral for " + A.str());
    return t / 2;
}

// ---------------------------------------------------------------------------
// 0/1 column matrices: column c (1-based) holds its unique 1 in row rows[c-1].

struct ColMatrix {
    int n = 0;
    std::vector<int> rows;

    int d() const { return static_cast<int>(rows.size()); }
    int at(int i, int c) const { return rows[c - 1] == i ? 1 : 0; }
    Comp ro() const {
        Comp r(n, 0);
        for (int x : rows) r[x - 1]++;
        return r;
    }
    auto operator<=>(const ColMatrix&) const = default;
    bool operator==(const ColMatrix&) const = default;
    std::string str() const {
        std::string s = "<";
        for (size_t c = 0; c < rows.size(); ++c) s += (c ? "," : "") + std::to_string(rows[c]);
        return s + ">";
    }
};

inline std::vector<ColMatrix> all_col_matrices(int d, int n) {
    std::vector<ColMatrix> out;
    ColMatrix m{n, std::vector<int>(d, 1)};
    std::function<void(int)> rec = [&](int c) {
        if (c == d) {
            out.push_back(m);
            return;
        }
        for (int i = 1; i <= n; ++i) {
            m.rows[c] = i;
            rec(c + 1);
        }
    };
    rec(0);
    return out;
}

inline bool is_pi_j(const ColMatrix& A) {
    const int n = A.n, D = A.d();
    for (int c = 1; c <= D; ++c)
        if (A.rows[c - 1] != n + 1 - A.rows[D - c]) return false;
    return true;
}

/// A^J = (A | eps_{r+1} | J_n A J_d).
inline ColMatrix a_to_AJ(const ColMatrix& A) {
    const int n = A.n, d = A.d();
    if (n % 2 == 0) throw ValidationError("A^J needs odd n");
    ColMatrix J{n, std::vector<int>(2 * d + 1)};
    for (int c = 1; c <= d; ++c) J.rows[c - 1] = A.rows[c - 1];
    J.rows[d] = (n + 1) / 2;
    for (int c = d + 2; c <= 2 * d + 1; ++c) J.rows[c - 1] = n + 1 - A.rows[2 * d + 1 - c];
    return J;
}

inline ColMatrix AJ_to_a(const ColMatrix& J) {
    int d = (J.d() - 1) / 2;
    return ColMatrix{J.n, std::vector<int>(J.rows.begin(), J.rows.begin() + d)};
}

/// d_A for a column matrix (same double sum as for square matrices).
inline long long d_stat(const ColMatrix& A) {
    long long t = 0;
    const int D = A.d();
    for (int j = 1; j <= D; ++j)
        for (int l = j + 1; l <= D; ++l)
            if (A.rows[j - 1] >= A.rows[l - 1]) ++t;
    return t;
}

/// l_A = (sum_{i>=k, j<l} a_ij a_kl - sum_{i>=r+1, j<d+1} a_ij) / 2 for A in Pi^j.
inline long long ell_stat(const ColMatrix& A) {
    if (!is_pi_j(A)) throw ValidationError("ell_stat needs a matrix in Pi^j");
    const int r = (A.n - 1) / 2, d = (A.d() - 1) / 2;
    long long t = d_stat(A);
    for (int c = 1; c < d + 1; ++c)
        if (A.rows[c - 1] >= r + 1) --t;
    if (t % 2 != 0) throw NonInteger("l_A half-sum is not integral");
    return t / 2;
}

}  // namespace schurlab

template <>
struct std::hash<schurlab::Mat> {
    size_t operator()(const schurlab::Mat& m) const { return m.hash(); }
};
