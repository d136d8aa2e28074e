/**
 * @file schur_j.hpp
 * @brief The jmath-Schur algebra of type B (n = 2r+1 steps, isotropic flags in
 *        F^{2d+1}) and its imath truncation.
 *
 * Products are not available in closed form. Products of a single-index
 * generator factor with standard basis elements are interpolated from flag
 * counts; everything else goes through monomials in such factors.
 */
#pragma once

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>

#include "schurlab/based_algebra.hpp"
#include "schurlab/flag_oracle.hpp"
#include "schurlab/words.hpp"

namespace schurlab {

/// Off-diagonal pattern of a peel factor: lower (e-type) or upper (f-type),
/// with multiplicities m_i for the mirrored pairs of index i <= r.
struct JFactorShape {
    bool lower = false;
    std::vector<std::pair<int, int>> mult;  // (i, m_i), m_i > 0
};

inline std::optional<JFactorShape> j_factor_shape(const Mat& B) {
    const int n = B.n(), r = (n - 1) / 2;
    JFactorShape s;
    bool up = false, lo = false;
    for (auto [i, j, a] : B.entries()) {
        if (i == j) continue;
        const bool mirror = i > r + 1 || (i == r + 1 && j > i);
        int ii = mirror ? n + 1 - i : i, jj = mirror ? n + 1 - j : j;
        if (jj == ii + 1 && ii <= r) up = true;
        else if (jj == ii - 1 && ii >= 2) lo = true;
        else return std::nullopt;
    }
    if (up && lo) return std::nullopt;
    s.lower = lo;
    for (int i = 1; i <= r; ++i) {
        int m = lo ? B(i + 1, i) : B(i, i + 1);
        if (m) s.mult.emplace_back(i, m);
    }
    return s;
}

class SchurJ : public BasedAlgebra {
public:
    SchurJ(int n, int d) : n_(n), d_(d) {
        if (n < 1 || n % 2 == 0) throw ValidationError("jmath Schur algebras need odd n");
        if (d < 0) throw ValidationError("need d >= 0");
        if (2 * d + 1 > kAbsoluteMaxDim)
            throw ScaleExceeded("jmath Schur algebra with d = " + std::to_string(d) + " needs flags in dimension " +
                                std::to_string(2 * d + 1));
    }

    int n() const { return n_; }
    int d() const { return d_; }
    int r() const { return (n_ - 1) / 2; }
    int D() const { return 2 * d_ + 1; }

    nlohmann::json ambient_json() const { return {{"type", "jmath"}, {"n", n_}, {"d", d_}}; }

    std::vector<Comp> weights() const { return j_compositions(d_, n_); }
    Mat diag(const Comp& a) const { return Mat::diag(a); }

    Element unit() const {
        Element u;
        for (const auto& a : weights()) add_term(u, diag(a), 1);
        return u;
    }

    long long dj(const Mat& A) const {
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = dmemo_.find(A);
            if (it != dmemo_.end()) return it->second;
        }
        long long v = dj_stat(A);
        std::lock_guard<std::mutex> lock(mu_);
        dmemo_.emplace(A, v);
        return v;
    }

    std::vector<Mat> all_matrices() const {
        std::vector<Mat> out;
        for (const auto& b : weights())
            for (const auto& a : weights()) {
                auto ms = j_matrices_with(b, a);
                out.insert(out.end(), ms.begin(), ms.end());
            }
        return out;
    }

    // -------------------------------------------------------------------
    // generator factors

    /// Matrix of e_i^{(m)} 1_lambda (lower = true) or f_i^{(m)} 1_lambda; nullopt if zero.
    std::optional<Mat> gen_matrix(bool lower, int i, int m, const Comp& lam) const {
        if (i < 1 || i > r()) throw ValidationError("generator index " + std::to_string(i) + " outside [1," +
                                                    std::to_string(r()) + "]");
        const int n = n_;
        Comp diag = lam;
        if (lower) {
            diag[i - 1] -= m;
            diag[n - i] -= m;
        } else {
            diag[i] -= m;
            diag[n - i - 1] -= m;
        }
        for (int x : diag)
            if (x < 0) return std::nullopt;
        Mat B = Mat::diag(diag);
        if (lower) {
            B.add(i + 1, i, m);
            B.add(n - i, n + 1 - i, m);
        } else {
            B.add(i, i + 1, m);
            B.add(n + 1 - i, n - i, m);
        }
        return B;
    }

    /// dj(B) minus the exponent in the defining function of e_i (resp. f_i) on 1_lambda;
    /// zero means e_i 1_lambda = [B].
    int generator_normalization_gap(bool lower, int i, const Comp& lam) const {
        auto B = gen_matrix(lower, i, 1, lam);
        if (!B) return 0;
        int expo = lower ? lam[i] : lam[i - 1];  // |L'_{i+1}/L'_i| or |L'_i/L'_{i-1}|
        return static_cast<int>(dj(*B)) - expo;
    }

    // -------------------------------------------------------------------
    // products

    /// [B][A] for all A in the block (co(B), co), from interpolated counts.
    const std::map<Mat, Element>& factor_table(const Mat& B, const Comp& co) const {
        auto key = std::make_pair(B, co);
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = tables_.find(key);
            if (it != tables_.end()) return it->second;
        }
        auto shape = j_factor_shape(B);
        if (!shape || shape->mult.size() != 1) throw ValidationError(B.str() + " is not a single-index factor");
        const int i = shape->mult[0].first;
        // rows of x2 that differ from x1
        std::vector<int> moved{i, i + 1, n_ - i, n_ + 1 - i};
        auto agree = [&](const Mat& A, const Mat& C) {
            for (int k = 1; k <= n_; ++k) {
                if (std::find(moved.begin(), moved.end(), k) != moved.end()) continue;
                for (int l = 1; l <= n_; ++l)
                    if (A(k, l) != C(k, l)) return false;
            }
            return true;
        };
        std::vector<Mat> As = j_matrices_with(B.co(), co), Cs = j_matrices_with(B.ro(), co);
        const long long dB = dj(B);
        using Key = std::pair<Mat, Mat>;  // (A, C)
        int max_bound = 0;
        for (const auto& A : As)
            for (const auto& C : Cs)
                if (agree(A, C))
                    max_bound = std::max<int>(max_bound, static_cast<int>(std::min(dB, dB + dj(A) - dj(C))));
        std::function<std::map<Key, long long>(int)> at_q = [&](int q) {
            const GF& F = GF::get(q);
            std::map<Key, long long> flat;
            for (auto& [C, row] : product_counts(F, B, Cs, true))
                for (auto& [A, c] : row) flat[{A, C}] = c;
            return flat;
        };
        std::function<int(const Key&)> bound_of = [&](const Key& k) {
            return static_cast<int>(std::min(dB, dB + dj(k.first) - dj(k.second)));
        };
        std::map<Mat, Element> rows;
        for (const auto& A : As) rows[A];
        if (!Cs.empty() && !As.empty()) {
            for (auto& [k, p] : interpolate_family<Key>(at_q, bound_of, D(), max_bound)) {
                if (!agree(k.first, k.second)) throw ConsistencyFailure("factor product moved an unaffected row");
                add_term(rows[k.first], k.second, p.to_v().shifted(static_cast<int>(dj(k.second) - dB - dj(k.first))));
            }
        }
        std::lock_guard<std::mutex> lock(mu_);
        return tables_.emplace(key, std::move(rows)).first->second;
    }

    /// Single-index factors (leftmost first) and k with their product = v^k [B].
    const std::pair<std::vector<Mat>, int>& factor_word(const Mat& B) const {
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = words_.find(B);
            if (it != words_.end()) return it->second;
        }
        auto shape = j_factor_shape(B);
        if (!shape) throw ValidationError(B.str() + " is not a peel factor");
        std::vector<int> perm;
        for (size_t t = 0; t < shape->mult.size(); ++t) perm.push_back(static_cast<int>(t));
        std::optional<std::pair<std::vector<Mat>, int>> found;
        do {
            std::vector<Mat> fs;
            Comp w = B.co();
            bool ok = true;
            for (auto it = perm.rbegin(); it != perm.rend(); ++it) {
                auto [i, m] = shape->mult[*it];
                auto S = gen_matrix(shape->lower, i, m, w);
                if (!S) {
                    ok = false;
                    break;
                }
                fs.insert(fs.begin(), *S);
                w = S->ro();
            }
            if (!ok) continue;
            Element x = single(diag(B.co()));
            for (auto it = fs.rbegin(); it != fs.rend(); ++it) x = mult_single(*it, x);
            if (x.size() != 1 || x.begin()->first != B) continue;
            const LaurentPoly& c = x.begin()->second;
            if (c.terms().size() != 1 || c.terms().begin()->second != 1) continue;
            found = std::make_pair(fs, c.min_exp());
            break;
        } while (std::next_permutation(perm.begin(), perm.end()));
        if (!found) throw MonomialUnavailable("no ordering of single-index factors gives " + B.str());
        std::lock_guard<std::mutex> lock(mu_);
        return words_.emplace(B, std::move(*found)).first->second;
    }

    /// Word W (divided powers, trailing idempotent) and k with M_A = v^{-k} W.
    std::pair<Word, int> monomial_word(const Mat& A) const {
        Word w;
        int k = 0;
        auto push = [&](const Mat& S) {
            auto sh = j_factor_shape(S);
            auto [i, m] = sh->mult[0];
            w.push_back(sh->lower ? Gen::je(i, m) : Gen::jf(i, m));
        };
        for (const auto& B : monomial_factors(A)) {
            if (B.is_diagonal()) continue;
            auto sh = j_factor_shape(B);
            if (sh->mult.size() == 1) {
                push(B);
                continue;
            }
            const auto& [fs, kk] = factor_word(B);
            for (const auto& S : fs) push(S);
            k += kk;
        }
        w.push_back(Gen::idem(A.co()));
        return {w, k};
    }

    Element mult_factor(const Mat& B, const Element& x) const override {
        if (B.is_diagonal()) {
            Element out;
            for (const auto& [A, c] : x)
                if (A.ro() == B.co()) add_term(out, A, c);
            return out;
        }
        auto shape = j_factor_shape(B);
        if (!shape) throw ValidationError(B.str() + " is not a peel factor");
        if (shape->mult.size() == 1) return mult_single(B, x);
        const auto& [fs, k] = factor_word(B);
        Element y;
        for (const auto& [A, c] : x)
            if (A.ro() == B.co()) add_term(y, A, c);
        for (auto it = fs.rbegin(); it != fs.rend(); ++it) y = mult_single(*it, y);
        return scaled(y, LaurentPoly::v(-k));
    }

    /// Upper phase: entries right of the diagonal in rows <= r move one row down
    /// (mirrored), except (r, r+1). Lower phase: entries left of the diagonal in
    /// rows 2..r+1 move up, middle-row entries right of the diagonal move down
    /// (mirrored). What is left is a single f_r-type factor.
    std::optional<std::pair<Mat, Mat>> peel(const Mat& A) const override {
        if (A.is_diagonal()) return std::nullopt;
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = peels_.find(A);
            if (it != peels_.end()) return it->second;
        }
        auto p = layer_peel(A);
        if (!leads(p.first, p.second, A)) p = searched_peel(A);
        std::lock_guard<std::mutex> lock(mu_);
        return peels_.emplace(A, p).first->second;
    }

    std::vector<Mat> block_below(const Mat& A) const override { return j_matrices_with(A.ro(), A.co()); }

private:
    /// [B] M_{A1} = [A] + lower terms?
    bool leads(const Mat& B, const Mat& A1, const Mat& A) const {
        Element e = mult_factor(B, monomial(A1));
        auto it = e.find(A);
        if (it == e.end() || it->second != LaurentPoly(1)) return false;
        for (const auto& [C, c] : e)
            if (C != A && !leq(C, A)) return false;
        return true;
    }

    /// Fallback when the layer peel loses the leading term (this happens when
    /// mirrored entries meet in the middle row): try every single-index factor
    /// and every lower A1 in the right block.
    std::pair<Mat, Mat> searched_peel(const Mat& A) const {
        const int n = n_;
        const Comp ro = A.ro();
        const long long ra = rank(A);
        for (int i = 1; i <= r(); ++i)
            for (bool lower : {false, true})
                for (int m = 1; m <= d_; ++m) {
                    Comp lam = ro;
                    int sgn = lower ? -1 : 1;
                    lam[i - 1] -= sgn * m;
                    lam[n - i] -= sgn * m;
                    lam[i] += sgn * m;
                    lam[n - i - 1] += sgn * m;
                    if (std::any_of(lam.begin(), lam.end(), [](int x) { return x < 0; })) continue;
                    auto B = gen_matrix(lower, i, m, lam);
                    if (!B || B->ro() != ro) continue;
                    auto cands = j_matrices_with(lam, A.co());
                    std::stable_sort(cands.begin(), cands.end(),
                                     [&](const Mat& a, const Mat& b) { return rank(a) > rank(b); });
                    for (const auto& A1 : cands)
                        if (rank(A1) < ra && leads(*B, A1, A)) return {*B, A1};
                }
        throw TriangularityFailure("no single-index factor gives a monomial leading with " + A.str());
    }

    std::pair<Mat, Mat> layer_peel(const Mat& A) const {
        const int n = n_, r = this->r();
        const Comp ro = A.ro();
        // (r, r+1) stays put: moving it would merge with its mirror on the middle diagonal
        auto up_move = [&](int i, int j) { return i <= r && j > i && !(i == r && j == r + 1); };
        auto lo_move = [&](int i, int j) { return (i >= 2 && i <= r + 1 && j < i) || (i >= r + 1 && i <= n - 1 && j > i); };
        bool has_upper = false, has_lower = false;
        for (auto [i, j, a] : A.entries()) {
            if (up_move(i, j)) has_upper = true;
            if (lo_move(i, j)) has_lower = true;
        }
        if (!has_upper && !has_lower) return std::make_pair(A, diag(A.co()));
        Mat A1 = Mat::finite(n), B = Mat::finite(n);
        std::vector<int> mv(r + 2, 0);
        for (auto [i, j, a] : A.entries()) {
            if (has_upper) {
                if (up_move(i, j)) {
                    A1.add(i + 1, j, a);
                    mv[i] += a;
                } else if (up_move(n + 1 - i, n + 1 - j)) {
                    A1.add(i - 1, j, a);
                } else {
                    A1.add(i, j, a);
                }
            } else {
                if (i >= 2 && i <= r + 1 && j < i) {
                    A1.add(i - 1, j, a);
                    mv[i - 1] += a;
                } else if (lo_move(i, j)) {
                    A1.add(i + 1, j, a);
                } else {
                    A1.add(i, j, a);
                }
            }
        }
        for (int i = 1; i <= r; ++i) {
            if (!mv[i]) continue;
            if (has_upper) {
                B.add(i, i + 1, mv[i]);
                B.add(n + 1 - i, n - i, mv[i]);
            } else {
                B.add(i + 1, i, mv[i]);
                B.add(n - i, n + 1 - i, mv[i]);
            }
        }
        Comp rb = B.ro();
        for (int k = 1; k <= n; ++k) B.add(k, k, ro[k - 1] - rb[k - 1]);
        if (B.co() != A1.ro()) throw ConsistencyFailure("jmath peel produced mismatched factor for " + A.str());
        return std::make_pair(B, A1);
    }

public:

    // -------------------------------------------------------------------
    // generators

    Element act(const Gen& g, const Element& x) const {
        Element out;
        const int r = this->r();
        switch (g.kind) {
            case Gen::Kind::e:
            case Gen::Kind::f: {
                const bool lower = g.kind == Gen::Kind::e;
                if (g.power < 1) throw ValidationError("divided powers start at 1");
                for (const auto& [A, c] : x) {
                    auto B = gen_matrix(lower, g.i, g.power, A.ro());
                    if (!B) continue;
                    add_into(out, mult_single(*B, single(A)), c);
                }
                return out;
            }
            case Gen::Kind::k:
            case Gen::Kind::kinv: {
                if (g.i < 1 || g.i > r) throw ValidationError("generator index out of range: " + g.str());
                const int s = g.kind == Gen::Kind::k ? 1 : -1;
                for (const auto& [A, c] : x) {
                    Comp a = A.ro();
                    add_term(out, A, c.shifted(s * (a[g.i] - a[g.i - 1])));
                }
                return out;
            }
            case Gen::Kind::H:
            case Gen::Kind::Hinv: {
                if (g.i < 1 || g.i > n_) throw ValidationError("generator index out of range: " + g.str());
                const int s = g.kind == Gen::Kind::H ? 1 : -1;
                for (const auto& [A, c] : x) add_term(out, A, c.shifted(s * A.ro()[g.i - 1]));
                return out;
            }
            case Gen::Kind::Idem: {
                if (static_cast<int>(g.weight.size()) != n_) throw ValidationError("idempotent has wrong length");
                for (const auto& [A, c] : x)
                    if (A.ro() == g.weight) add_term(out, A, c);
                return out;
            }
            case Gen::Kind::t: {
                if (r < 1) throw ValidationError("t needs n >= 3");
                Element y = truncate_i(x);
                Element fe = act(Gen::jf(r), act(Gen::je(r), y));
                for (const auto& [A, c] : y) {
                    Comp a = A.ro();
                    add_term(fe, A, c * qint(a[r] - a[r - 1]));
                }
                return truncate_i(fe);
            }
            default:
                throw ValidationError("generator " + g.str() + " does not belong to a jmath Schur algebra");
        }
    }

    Element apply_word(const Word& w, Element x) const {
        for (auto it = w.rbegin(); it != w.rend(); ++it) x = act(*it, x);
        return x;
    }
    Element word(const Word& w) const { return apply_word(w, unit()); }
    Element gen(const Gen& g) const { return act(g, unit()); }

    // -------------------------------------------------------------------
    // imath truncation

    /// Keeps the terms whose matrix has middle row and column equal to the unit vector.
    static Element truncate_i(const Element& x) {
        Element out;
        for (const auto& [A, c] : x)
            if (is_i_matrix(A)) add_term(out, A, c);
        return out;
    }

    std::vector<Comp> i_weights() const {
        std::vector<Comp> out;
        for (const auto& a : weights())
            if (a[r()] == 1) out.push_back(a);
        return out;
    }

    /// The idempotent j = sum of 1_lambda with lambda_{r+1} = 1.
    Element j_idem() const {
        Element u;
        for (const auto& a : i_weights()) add_term(u, diag(a), 1);
        return u;
    }

    std::vector<Mat> i_matrices() const {
        std::vector<Mat> out;
        for (const auto& A : all_matrices())
            if (is_i_matrix(A)) out.push_back(A);
        return out;
    }

    /// j g j for e, f, k (indices below r), and t.
    Element act_i(const Gen& g, const Element& x) const {
        if ((g.kind == Gen::Kind::e || g.kind == Gen::Kind::f || g.kind == Gen::Kind::k || g.kind == Gen::Kind::kinv) &&
            g.i >= r())
            throw ValidationError("imath generator index must be below r: " + g.str());
        return truncate_i(act(g, truncate_i(x)));
    }
    Element word_i(const Word& w) const {
        Element x = j_idem();
        for (auto it = w.rbegin(); it != w.rend(); ++it) x = act_i(*it, x);
        return x;
    }

    /// [B][A] for a single-index factor B. Counts are taken from whichever side
    /// has the smaller fiber.
    const Element& factor_row(const Mat& B, const Mat& A) const {
        auto key = std::make_pair(B, A);
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = rows_.find(key);
            if (it != rows_.end()) return it->second;
        }
        Element row;
        const auto t0 = std::chrono::steady_clock::now();
        // fibers are counted from the row side, so the dual enumeration costs q^{dj(A^t)}
        const long long dB = dj(B), dA = dj(A), dAt = dj(A.transpose());
        if (std::getenv("SCHURLAB_TRACE")) std::cerr << "start [" << B.str() << "][" << A.str() << "]" << std::endl;
        if (dAt >= dB) {
            row = factor_table(B, A.co()).at(A);
        } else {
            const int i = j_factor_shape(B)->mult[0].first;
            for (const auto& C : j_matrices_with(B.ro(), A.co())) {
                bool same = true;
                for (int k = 1; k <= n_ && same; ++k) {
                    if (k == i || k == i + 1 || k == n_ - i || k == n_ + 1 - i) continue;
                    for (int l = 1; l <= n_; ++l)
                        if (A(k, l) != C(k, l)) same = false;
                }
                if (!same) continue;
                const int bound = static_cast<int>(std::max(0LL, std::min(dAt, dB + dA - dj(C))));
                if (bound + 2 > static_cast<int>(sample_qs().size()))
                    throw ScaleExceeded("degree bound " + std::to_string(bound) + " needs more q samples than available");
                std::vector<std::pair<long long, BigInt>> samples;
                for (int t = 0; t < bound + 2; ++t) {
                    int q = sample_qs()[t];
                    guard_internal(q, D());
                    samples.emplace_back(q, BigInt(product_count_dual(GF::get(q), B, C, A, true)));
                }
                QPoly p;
                try {
                    p = interpolate(samples, bound);
                } catch (const ConsistencyFailure& e) {
                    throw ConsistencyFailure(std::string(e.what()) + " for [" + B.str() + "][" + A.str() + "] at " + C.str());
                }
                if (!p.is_zero()) add_term(row, C, p.to_v().shifted(static_cast<int>(dj(C) - dB - dA)));
            }
        }
        if (std::getenv("SCHURLAB_TRACE"))
            std::cerr << "row [" << B.str() << "][" << A.str() << "] dB=" << dB << " dAt=" << dAt << " "
                      << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() << "s" << std::endl;
        std::lock_guard<std::mutex> lock(mu_);
        return rows_.emplace(key, std::move(row)).first->second;
    }

private:
    Element mult_single(const Mat& B, const Element& x) const {
        Element out;
        for (const auto& [A, c] : x)
            if (A.ro() == B.co()) add_into(out, factor_row(B, A), c);
        return out;
    }

    int n_, d_;
    mutable std::map<Mat, long long> dmemo_;
    mutable std::map<std::pair<Mat, Comp>, std::map<Mat, Element>> tables_;
    mutable std::map<std::pair<Mat, Mat>, Element> rows_;
    mutable std::map<Mat, std::pair<std::vector<Mat>, int>> words_;
    mutable std::map<Mat, std::pair<Mat, Mat>> peels_;
};

}  // namespace schurlab
