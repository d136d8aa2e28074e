/**
 * @file comult_a.hpp
 * @brief Comultiplications of type A Schur algebras: the geometric coproduct
 *        (by generators or by point counting), its twisted forms, and the
 *        finite transfer map.
 */
#pragma once

#include <map>
#include <mutex>

#include "schurlab/flag_oracle.hpp"
#include "schurlab/schur_a.hpp"

namespace schurlab {

/// sum_{1<=i<=j<=n} b'_i b''_j - a'_i a''_j for a term [X] (x) [Y].
inline long long split_twist(const Mat& X, const Mat& Y) {
    Comp bp = X.ro(), ap = X.co(), bpp = Y.ro(), app = Y.co();
    const int n = static_cast<int>(bp.size());
    long long t = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) t += static_cast<long long>(bp[i]) * bpp[j] - static_cast<long long>(ap[i]) * app[j];
    return t;
}

/// Determinant of a small integer matrix (finite window).
inline long long mat_det(const Mat& M) {
    const int n = M.n();
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 1);
    long long det = 0;
    do {
        long long p = 1;
        for (int i = 1; i <= n && p; ++i) p *= M(i, perm[i - 1]);
        if (!p) continue;
        int inv = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inv;
        det += inv % 2 ? -p : p;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

class ComultA {
public:
    /// S has degree d = d' + d''; S1, S2 have degrees d', d''.
    ComultA(const SchurA& S, const SchurA& S1, const SchurA& S2) : S_(&S), S1_(&S1), S2_(&S2) {
        if (S.n() != S1.n() || S.n() != S2.n() || S.periodic() != S1.periodic() || S.periodic() != S2.periodic())
            throw ValidationError("comultiplication factors must share n and type");
        if (S1.d() + S2.d() != S.d()) throw CompositionMismatch("d' + d'' != d");
    }

    const SchurA& source() const { return *S_; }
    const SchurA& left() const { return *S1_; }
    const SchurA& right() const { return *S2_; }

    /// The image of 1_lambda (or of the unit) under the coproduct.
    Tensor unit(const Comp* lambda = nullptr) const {
        Tensor t;
        for (const auto& a1 : S1_->weights())
            for (const auto& a2 : S2_->weights()) {
                if (lambda) {
                    bool ok = true;
                    for (int i = 0; i < S_->n(); ++i)
                        if (a1[i] + a2[i] != (*lambda)[i]) ok = false;
                    if (!ok) continue;
                }
                add_term(t, std::make_pair(S1_->diag(a1), S2_->diag(a2)), LaurentPoly(1));
            }
        return t;
    }

    /// Untwisted coproduct of one generator acting on the left of a tensor.
    Tensor act_tilde(const Gen& g, const Tensor& t) const {
        if (g.kind == Gen::Kind::Idem) {
            Tensor out;
            for (const auto& [k, c] : t) {
                Comp a = k.first.ro(), b = k.second.ro();
                bool ok = true;
                for (int i = 0; i < S_->n(); ++i)
                    if (a[i] + b[i] != g.weight[i]) ok = false;
                if (ok) add_term(out, k, c);
            }
            return out;
        }
        if ((g.kind == Gen::Kind::E || g.kind == Gen::Kind::F) && g.power > 1) {
            Gen one = g;
            one.power = 1;
            Tensor cur = t;
            for (int m = 0; m < g.power; ++m) cur = act_tilde(one, cur);
            LaurentPoly f = qfactorial(g.power);
            Tensor out;
            for (const auto& [k, c] : cur) add_term(out, k, c.exact_div(f));
            return out;
        }
        Tensor out;
        auto put = [&](const Element& x, const Element& y, const LaurentPoly& c) {
            for (const auto& [X, cx] : x)
                for (const auto& [Y, cy] : y) add_term(out, std::make_pair(X, Y), c * cx * cy);
        };
        for (const auto& [k, c] : t) {
            Element X = single(k.first), Y = single(k.second);
            switch (g.kind) {
                case Gen::Kind::E:
                    put(S1_->act(g, X), S2_->act(Gen::H(g.i + 1), Y), c);
                    put(S1_->act(Gen::Hinv(g.i + 1), X), S2_->act(g, Y), c);
                    break;
                case Gen::Kind::F:
                    put(S1_->act(g, X), S2_->act(Gen::Hinv(g.i), Y), c);
                    put(S1_->act(Gen::H(g.i), X), S2_->act(g, Y), c);
                    break;
                case Gen::Kind::K:
                case Gen::Kind::Kinv:
                case Gen::Kind::H:
                case Gen::Kind::Hinv:
                    put(S1_->act(g, X), S2_->act(g, Y), c);
                    break;
                default:
                    throw ValidationError("generator " + g.str() + " is not a type A generator");
            }
        }
        return out;
    }

    Tensor apply_word_tilde(const Word& w, Tensor t) const {
        for (auto it = w.rbegin(); it != w.rend(); ++it) t = act_tilde(*it, t);
        return t;
    }

    Tensor tilde_word(const Word& w) const { return apply_word_tilde(w, unit()); }

    /// Untwisted coproduct of M_A.
    const Tensor& tilde_monomial(const Mat& A) const {
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = mono_.find(A);
            if (it != mono_.end()) return it->second;
        }
        Comp co = A.co();
        Tensor t = unit(&co);
        auto fs = S_->monomial_factors(A);
        for (auto it = fs.rbegin(); it != fs.rend(); ++it) {
            auto [w, k] = S_->semisimple_word(*it);
            t = apply_word_tilde(w, t);
            Tensor sh;
            for (const auto& [key, c] : t) add_term(sh, key, c.shifted(-k));
            t = std::move(sh);
        }
        std::lock_guard<std::mutex> lock(mu_);
        return mono_.emplace(A, std::move(t)).first->second;
    }

    /// Untwisted coproduct of a standard-basis element.
    Tensor tilde(const Element& x) const {
        Tensor out;
        for (const auto& [M, r] : S_->to_monomials(x)) add_into(out, tilde_monomial(M), r);
        return out;
    }

    Tensor twist(const Tensor& t) const {
        Tensor out;
        for (const auto& [k, c] : t) add_term(out, k, c.shifted(static_cast<int>(split_twist(k.first, k.second))));
        return out;
    }

    /// Affine only: xi_{d',n,d''} (x) xi_{d'',n,-d'}.
    Tensor xi_pair(const Tensor& t) const {
        const int n = S_->n(), d1 = S1_->d(), d2 = S2_->d();
        Tensor out;
        for (const auto& [k, c] : t)
            add_term(out, k, c.shifted(d2 * epsilon_stat(k.first, n) - d1 * epsilon_stat(k.second, n)));
        return out;
    }

    /// Delta_v (finite) or the twisted affine coproduct.
    Tensor delta(const Element& x) const { return finish(twist(tilde(x))); }
    Tensor delta_word(const Word& w) const { return finish(twist(tilde_word(w))); }
    /// Affine dagger coproduct (twist without the xi correction).
    Tensor dagger_word(const Word& w) const { return twist(tilde_word(w)); }

    Tensor finish(const Tensor& t) const { return S_->periodic() ? xi_pair(t) : t; }

    /// Coproduct of a word from the closed formulas for E, F, K
    /// (E (x) K + 1 (x) E etc.). Affine: these are the dagger formulas, with
    /// the extra powers of v on E_n, F_n; compare with dagger_word.
    Tensor delta_word_formula(const Word& w) const {
        Tensor t = unit();
        for (auto it = w.rbegin(); it != w.rend(); ++it) t = act_formula(*it, t);
        return t;
    }

    Tensor act_formula(const Gen& g, const Tensor& t) const {
        if (g.kind == Gen::Kind::Idem || g.kind == Gen::Kind::H || g.kind == Gen::Kind::Hinv) return act_tilde(g, t);
        if ((g.kind == Gen::Kind::E || g.kind == Gen::Kind::F) && g.power > 1) {
            Gen one = g;
            one.power = 1;
            Tensor cur = t;
            for (int m = 0; m < g.power; ++m) cur = act_formula(one, cur);
            LaurentPoly f = qfactorial(g.power);
            Tensor out;
            for (const auto& [k, c] : cur) add_term(out, k, c.exact_div(f));
            return out;
        }
        Tensor out;
        auto put = [&](const Element& x, const Element& y, const LaurentPoly& c) {
            for (const auto& [X, cx] : x)
                for (const auto& [Y, cy] : y) add_term(out, std::make_pair(X, Y), c * cx * cy);
        };
        int e = 0;
        if (S_->periodic() && ((g.i - 1) % S_->n() + S_->n()) % S_->n() == S_->n() - 1) e = 1;
        const int d1 = S1_->d() * e, d2 = S2_->d() * e;
        for (const auto& [k, c] : t) {
            Element X = single(k.first), Y = single(k.second);
            switch (g.kind) {
                case Gen::Kind::E:
                    put(S1_->act(g, X), S2_->act(Gen::K(g.i), Y), c.shifted(d2));
                    put(X, S2_->act(g, Y), c.shifted(-d1));
                    break;
                case Gen::Kind::F:
                    put(S1_->act(g, X), Y, c.shifted(-d2));
                    put(S1_->act(Gen::Kinv(g.i), X), S2_->act(g, Y), c.shifted(d1));
                    break;
                case Gen::Kind::K:
                case Gen::Kind::Kinv:
                    put(S1_->act(g, X), S2_->act(g, Y), c);
                    break;
                default:
                    throw ValidationError("generator " + g.str() + " is not a type A generator");
            }
        }
        return out;
    }

    /// Untwisted coproduct of [A] by point counting (finite type only).
    Tensor tilde_by_counting(const Mat& A) const {
        if (S_->periodic()) throw ValidationError("counting route is finite type only");
        const int n = S_->n();
        Tensor out;
        const long long dA = S_->dA(A);
        for (const auto& b1 : S1_->weights())
            for (const auto& b2 : S2_->weights()) {
                bool ok = true;
                for (int i = 0; i < n; ++i)
                    if (b1[i] + b2[i] != A.ro()[i]) ok = false;
                if (!ok) continue;
                using Key = std::pair<Mat, Mat>;
                std::function<std::map<Key, long long>(int)> at_q = [&](int q) {
                    guard_internal(q, A.sum());
                    return comult_counts(GF::get(q), A, b1, b2, false);
                };
                std::function<int(const Key&)> bound = [&](const Key& k) {
                    return static_cast<int>(dA - S1_->dA(k.first) - S2_->dA(k.second));
                };
                auto polys = interpolate_family<Key>(at_q, bound, A.sum(), static_cast<int>(dA));
                for (const auto& [k, p] : polys) {
                    int sh = static_cast<int>(-dA + S1_->dA(k.first) + S2_->dA(k.second));
                    add_term(out, k, p.to_v().shifted(sh));
                }
            }
        return out;
    }

    /// Restriction of a tensor to one block (b', a', b'', a'').
    static Tensor block(const Tensor& t, const Comp& b1, const Comp& a1, const Comp& b2, const Comp& a2) {
        Tensor out;
        for (const auto& [k, c] : t)
            if (k.first.ro() == b1 && k.first.co() == a1 && k.second.ro() == b2 && k.second.co() == a2) add_term(out, k, c);
        return out;
    }

private:
    const SchurA* S_;
    const SchurA* S1_;
    const SchurA* S2_;
    mutable std::mutex mu_;
    mutable std::map<Mat, Tensor> mono_;
};

/// Finite transfer S_d -> S_{d-n}: (xi (x) chi) o untwisted coproduct.
class TransferA {
public:
    TransferA(const SchurA& S, const SchurA& Sm, const SchurA& Sn) : co_(S, Sm, Sn), Sn_(&Sn) {
        if (S.periodic()) throw ValidationError("the affine transfer map is not available");
        if (Sn.d() != S.n()) throw ValidationError("transfer needs the second factor of degree n");
    }

    // Applied to the untwisted coproduct. On blocks with b'' = a'' = (1,..,1)
    // the twist is v^{sum_i (|V_i| - |V'_i|)}, so this equals (1 (x) chi) o Delta_v.
    Element apply(const Element& x) const { return collapse(co_.tilde(x)); }
    Element apply_word(const Word& w) const { return collapse(co_.tilde_word(w)); }

    Element collapse(const Tensor& t) const {
        Element out;
        const int n = Sn_->n();
        for (const auto& [k, c] : t) {
            long long det = mat_det(k.second);
            if (!det) continue;
            // xi on the first factor, exponent +sum_i (|V_i| - |V'_i|)
            Comp b = k.first.ro(), a = k.first.co();
            long long s = 0, cb = 0, ca = 0;
            for (int i = 0; i < n; ++i) {
                cb += b[i];
                ca += a[i];
                s += cb - ca;
            }
            int sh = static_cast<int>(s - Sn_->dA(k.second));
            add_term(out, k.first, c.shifted(sh) * LaurentPoly(det));
        }
        return out;
    }

    const ComultA& comult() const { return co_; }

private:
    ComultA co_;
    const SchurA* Sn_;
};

}  // namespace schurlab
