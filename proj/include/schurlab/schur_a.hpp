/**
 * @file schur_a.hpp
 * @brief Finite and affine q-Schur algebras of type A over Z[v, v^-1].
 *
 * Products of semisimple basis elements with arbitrary ones follow the Du-Fu
 * formulas; all other products go through monomials in semisimple factors.
 */
#pragma once

#include <map>
#include <mutex>
#include <optional>

#include "schurlab/based_algebra.hpp"
#include "schurlab/words.hpp"

namespace schurlab {

/// Only diagonal and (i, i+1) entries.
inline bool is_upper_semisimple(const Mat& B) {
    for (auto [i, j, a] : B.entries())
        if (j != i && j != i + 1) return false;
    return true;
}

/// Only diagonal and (i+1, i) entries.
inline bool is_lower_semisimple(const Mat& B) {
    for (auto [i, j, a] : B.entries())
        if (j != i && j != i - 1) return false;
    return true;
}

/// Finite matrix viewed as a periodic one supported in the window [1,n]^2.
inline Mat to_periodic(const Mat& A) {
    if (A.is_periodic()) return A;
    Mat P = Mat::periodic(A.n());
    for (auto [i, j, a] : A.entries()) P.set(i, j, a);
    return P;
}

inline bool window_supported(const Mat& A) {
    if (!A.is_periodic()) return true;
    for (auto [i, j, a] : A.entries())
        if (j < 1 || j > A.n()) return false;
    return true;
}

inline Mat to_finite(const Mat& A) {
    if (!A.is_periodic()) return A;
    if (!window_supported(A)) throw ValidationError(A.str() + " is not supported in the window");
    Mat F = Mat::finite(A.n());
    for (auto [i, j, a] : A.entries()) F.set(i, j, a);
    return F;
}

/// Du-Fu product e_B * e_A in the e-basis (C -> polynomial in q).
/// B upper semisimple: sum over T with row sums alpha, t_ij <= a_{i+1,j}, giving A + T - T^.
/// B lower semisimple: sum over T with row sums beta, t_ij <= a_ij, giving A - T + T^.
inline std::map<Mat, QPoly> dufu_e(const Mat& B, const Mat& A) {
    if (B.n() != A.n() || B.is_periodic() != A.is_periodic()) throw ValidationError("ambient mismatch");
    if (B.co() != A.ro()) throw CompositionMismatch("co(B) != ro(A)");
    const int n = A.n();
    const bool per = A.is_periodic();
    std::map<Mat, QPoly> out;
    if (B.is_diagonal()) {
        out.emplace(A, QPoly(1));
        return out;
    }
    const bool upper = is_upper_semisimple(B);
    if (!upper && !is_lower_semisimple(B)) throw ValidationError(B.str() + " is not semisimple");
    const int rows = per ? n : n - 1;
    std::vector<int> mult(rows + 1, 0);
    for (int i = 1; i <= rows; ++i) mult[i] = upper ? B(i, i + 1) : B(i + 1, i);
    const int s = A.spread();
    // candidate columns with their caps, per row
    std::vector<std::vector<std::pair<int, int>>> cand(rows + 1);
    for (int i = 1; i <= rows; ++i) {
        int src = upper ? i + 1 : i;
        int lo = per ? src - s : 1, hi = per ? src + s : n;
        for (int j = lo; j <= hi; ++j) {
            int cap = A(src, j);
            if (cap > 0) cand[i].emplace_back(j, cap);
        }
    }
    Mat T = per ? Mat::periodic(n) : Mat::finite(n);
    auto emit = [&]() {
        Mat C = A;
        for (int i = 1; i <= rows; ++i)
            for (auto [j, cap] : cand[i]) {
                int t = T(i, j);
                if (!t) continue;
                if (upper) {
                    C.add(i, j, t);
                    C.add(i + 1, j, -t);
                } else {
                    C.add(i, j, -t);
                    C.add(i + 1, j, t);
                }
            }
        long long ex = 0;
        QPoly coef(1);
        for (int i = 1; i <= rows; ++i) {
            if (upper) {
                // sum_{j>l} (a_ij - t_{i-1,j}) t_il ; prod [a_ij + t_ij - t_{i-1,j}; t_ij]
                for (auto [l, cap] : cand[i]) {
                    int t = T(i, l);
                    if (!t) continue;
                    for (int j = l + 1; j <= l + 2 * s + 2; ++j) ex += static_cast<long long>(A(i, j) - T(i - 1, j)) * t;
                    coef = coef * qbinom(A(i, l) + t - T(i - 1, l), t);
                }
            } else {
                // row i+1 of the formula: sum_{j<l} (a_{i+1,j} - t_{i+1,j}) t_{il} ; prod [a_{i+1,j} - t_{i+1,j} + t_ij; t_ij]
                for (auto [l, cap] : cand[i]) {
                    int t = T(i, l);
                    if (!t) continue;
                    for (int j = l - 2 * s - 2; j < l; ++j) ex += static_cast<long long>(A(i + 1, j) - T(i + 1, j)) * t;
                    coef = coef * qbinom(A(i + 1, l) - T(i + 1, l) + t, t);
                }
            }
        }
        coef = coef * QPoly::mono(static_cast<int>(ex));
        auto it = out.find(C);
        if (it == out.end()) out.emplace(C, coef);
        else it->second += coef;
    };
    std::function<void(int, size_t, int)> rec = [&](int i, size_t idx, int left) {
        if (i > rows) {
            emit();
            return;
        }
        if (idx == cand[i].size()) {
            if (left == 0) rec(i + 1, 0, i + 1 <= rows ? mult[i + 1] : 0);
            return;
        }
        auto [j, cap] = cand[i][idx];
        for (int t = std::min(cap, left); t >= 0; --t) {
            T.set(i, j, t);
            rec(i, idx + 1, left - t);
        }
        T.set(i, j, 0);
    };
    rec(1, 0, mult[1]);
    return out;
}

class SchurA : public BasedAlgebra {
public:
    SchurA(int n, int d, bool periodic, int spread = 2) : n_(n), d_(d), per_(periodic), spread_(spread) {
        if (n < 1 || d < 0) throw ValidationError("need n >= 1 and d >= 0");
        // number of weights, C(d+n-1, n-1)
        long double w = 1;
        for (int k = 1; k < n; ++k) w = w * (d + k) / k;
        if (w > 220) throw ScaleExceeded("type A Schur algebra n = " + std::to_string(n) + ", d = " + std::to_string(d) +
                                         " has too many weights");
    }

    int n() const { return n_; }
    int d() const { return d_; }
    bool periodic() const { return per_; }
    int spread() const { return spread_; }

    nlohmann::json ambient_json() const {
        return {{"type", per_ ? "affine-a" : "a"}, {"n", n_}, {"d", d_}, {"spread", spread_}};
    }

    std::vector<Comp> weights() const { return compositions(d_, n_); }
    Mat diag(const Comp& a) const { return Mat::diag(a, per_); }
    Mat empty_mat() const { return per_ ? Mat::periodic(n_) : Mat::finite(n_); }

    Element unit() const {
        Element u;
        for (const auto& a : weights()) add_term(u, diag(a), 1);
        return u;
    }

    long long dA(const Mat& A) const {
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = dmemo_.find(A);
            if (it != dmemo_.end()) return it->second;
        }
        long long v = d_stat(A);
        std::lock_guard<std::mutex> lock(mu_);
        dmemo_.emplace(A, v);
        return v;
    }

    /// [B] * x for semisimple B (Du-Fu, converted to the standard basis).
    Element mult_factor(const Mat& B, const Element& x) const override {
        Element out;
        const long long dB = dA(B);
        const Comp cb = B.co();
        for (const auto& [A, c] : x) {
            if (A.ro() != cb) continue;
            if (B.is_diagonal()) {
                add_term(out, A, c);
                continue;
            }
            const long long base = -dB - dA(A);
            for (const auto& [C, p] : dufu_e(B, A)) add_term(out, C, c * p.to_v().shifted(static_cast<int>(base + dA(C))));
        }
        return out;
    }

    /// Checked e_B * x with B upper (resp. lower) semisimple, both in the e-basis.
    Element multiply_semisimple_e(const Mat& B, const Element& x, bool upper) const {
        if (upper ? !is_upper_semisimple(B) : !is_lower_semisimple(B))
            throw ValidationError(B.str() + " is not " + (upper ? "upper" : "lower") + " semisimple");
        Element out;
        for (const auto& [A, c] : x) {
            if (A.ro() != B.co()) throw CompositionMismatch("co(B) differs from ro of " + A.str());
            for (const auto& [C, p] : dufu_e(B, A)) add_term(out, C, c * p.to_v());
        }
        return out;
    }

    Element to_e_basis(const Element& x) const {
        Element out;
        for (const auto& [A, c] : x) add_term(out, A, c.shifted(static_cast<int>(-dA(A))));
        return out;
    }
    Element from_e_basis(const Element& x) const {
        Element out;
        for (const auto& [A, c] : x) add_term(out, A, c.shifted(static_cast<int>(dA(A))));
        return out;
    }

    /// Upper layers first: every (i, j) with j > i moves to (i+1, j); then lower
    /// entries (i, j) with j < i move to (i-1, j).
    std::optional<std::pair<Mat, Mat>> peel(const Mat& A) const override {
        if (A.is_diagonal()) return std::nullopt;
        const Comp ro = A.ro();
        bool has_upper = false;
        for (auto [i, j, a] : A.entries())
            if (j > i) has_upper = true;
        Mat A1 = empty_mat(), B = empty_mat();
        std::vector<int> mv(n_ + 2, 0);
        for (auto [i, j, a] : A.entries()) {
            if (has_upper && j > i) {
                A1.add(i + 1, j, a);
                mv[i] += a;
            } else if (!has_upper && j < i) {
                A1.add(i - 1, j, a);
                mv[i - 1 >= 1 ? i - 1 : n_] += a;
            } else {
                A1.add(i, j, a);
            }
        }
        for (int k = 1; k <= n_; ++k) {
            if (has_upper) {
                B.add(k, k, ro[k - 1] - mv[k]);
                if (mv[k]) B.add(k, k + 1, mv[k]);
            } else {
                // row k sends mv[k-1] entries up to row k-1
                int in = k > 1 ? mv[k - 1] : (per_ ? mv[n_] : 0);
                B.add(k, k, ro[k - 1] - in);
                if (in) B.add(k, k - 1, in);
            }
        }
        return std::make_pair(B, A1);
    }

    std::vector<Mat> block_below(const Mat& A) const override {
        return matrices_with(A.ro(), A.co(), per_, std::max(0, A.spread()));
    }

    // -------------------------------------------------------------------
    // generators

    /// g * x for a single generator (divided powers included).
    Element act(const Gen& g, const Element& x) const {
        Element out;
        auto idx = [&](int i) { return per_ ? wrap(i, n_) : i; };
        auto check = [&](int i) {
            if (per_ ? false : (i < 1 || i >= n_)) throw ValidationError("generator index out of range: " + g.str());
        };
        switch (g.kind) {
            case Gen::Kind::E:
            case Gen::Kind::F: {
                check(g.i);
                const int m = g.power;
                for (const auto& [A, c] : x) {
                    Comp a = A.ro();
                    Mat B = empty_mat();
                    const int i = idx(g.i), i1 = idx(g.i + 1);
                    if (g.kind == Gen::Kind::E) {
                        if (a[i - 1] < m) continue;
                        for (int k = 1; k <= n_; ++k) B.add(k, k, a[k - 1] - (k == i ? m : 0));
                        B.add(g.i + 1, g.i, m);
                    } else {
                        if (a[i1 - 1] < m) continue;
                        for (int k = 1; k <= n_; ++k) B.add(k, k, a[k - 1] - (k == i1 ? m : 0));
                        B.add(g.i, g.i + 1, m);
                    }
                    add_into(out, mult_factor(B, single(A)), c);
                }
                return out;
            }
            case Gen::Kind::K:
            case Gen::Kind::Kinv: {
                check(g.i);
                const int s = g.kind == Gen::Kind::K ? 1 : -1;
                for (const auto& [A, c] : x) {
                    Comp a = A.ro();
                    add_term(out, A, c.shifted(s * (a[idx(g.i + 1) - 1] - a[idx(g.i) - 1])));
                }
                return out;
            }
            case Gen::Kind::H:
            case Gen::Kind::Hinv: {
                if (!per_ && (g.i < 1 || g.i > n_)) throw ValidationError("generator index out of range: " + g.str());
                const int s = g.kind == Gen::Kind::H ? 1 : -1;
                for (const auto& [A, c] : x) add_term(out, A, c.shifted(s * A.ro()[idx(g.i) - 1]));
                return out;
            }
            case Gen::Kind::Idem: {
                if (static_cast<int>(g.weight.size()) != n_) throw ValidationError("idempotent has wrong length");
                for (const auto& [A, c] : x)
                    if (A.ro() == g.weight) add_term(out, A, c);
                return out;
            }
            default:
                throw ValidationError("generator " + g.str() + " does not belong to a type A Schur algebra");
        }
    }

    /// The product of a word (leftmost factor outermost) times the unit.
    Element word(const Word& w) const { return apply_word(w, unit()); }

    Element apply_word(const Word& w, Element x) const {
        for (auto it = w.rbegin(); it != w.rend(); ++it) x = act(*it, x);
        return x;
    }

    Element gen(const Gen& g) const { return act(g, unit()); }

    /// Divided-power word W with W = v^k [B] for semisimple B (k returned).
    /// Periodic B with all multiplicities positive has no such word.
    std::pair<Word, int> semisimple_word(const Mat& B) const {
        Word w;
        if (!B.is_diagonal()) {
            const bool upper = is_upper_semisimple(B);
            std::vector<int> m(n_ + 1, 0);
            for (int i = 1; i <= n_; ++i) m[i] = upper ? B(i, i + 1) : B(i + 1, i);
            int brk = n_;
            if (per_) {
                brk = 0;
                for (int i = 1; i <= n_ && !brk; ++i)
                    if (m[i] == 0) brk = i;
                if (!brk) throw NotInChevalleyImage(B.str() + " is a periodic semisimple element with no zero step");
            }
            // upper: F_{k-1} F_{k-2} ... F_{k+1}; lower: E_{k+1} E_{k+2} ... E_{k-1}
            for (int t = 1; t < n_; ++t) {
                int i = upper ? wrap(brk - t, n_) : wrap(brk + t, n_);
                if (m[i]) w.push_back(upper ? Gen::F(i, m[i]) : Gen::E(i, m[i]));
            }
        }
        w.push_back(Gen::idem(B.co()));
        Element val = word(w);
        if (val.size() != 1 || val.begin()->first != B)
            throw ConsistencyFailure("divided-power word for " + B.str() + " does not give a single basis element");
        const LaurentPoly& c = val.begin()->second;
        if (c.terms().size() != 1 || c.terms().begin()->second != 1)
            throw ConsistencyFailure("divided-power word for " + B.str() + " has coefficient " + c.str());
        return {w, c.min_exp()};
    }

    /// xi_{d,i,c}: [A] -> v^{c eps_i(A)} [A].
    Element xi_twist(const Element& x, int i, int c) const {
        Element out;
        for (const auto& [A, p] : x) add_term(out, A, p.shifted(c * epsilon_stat(A, i)));
        return out;
    }

    /// All matrices in the (ro, co)-blocks of this algebra (bounded spread when periodic).
    std::vector<Mat> all_matrices() const {
        std::vector<Mat> out;
        for (const auto& b : weights())
            for (const auto& a : weights()) {
                auto ms = matrices_with(b, a, per_, spread_);
                out.insert(out.end(), ms.begin(), ms.end());
            }
        return out;
    }

private:
    int n_, d_;
    bool per_;
    int spread_;
    mutable std::map<Mat, long long> dmemo_;
};

}  // namespace schurlab
