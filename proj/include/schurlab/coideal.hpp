/**
 * @file coideal.hpp
 * @brief Comultiplication of jmath-Schur algebras into jmath (x) type A, the
 *        embedding into type A, transfer maps, the imath versions, and checks
 *        of the coideal relations.
 */
#pragma once

#include <functional>
#include <optional>
#include <tuple>

#include "schurlab/canonical.hpp"
#include "schurlab/certificate.hpp"
#include "schurlab/comult_a.hpp"
#include "schurlab/schur_j.hpp"

namespace schurlab {

using Triple = std::map<std::tuple<Mat, Mat, Mat>, LaurentPoly>;

inline Comp reversed(Comp c) {
    std::reverse(c.begin(), c.end());
    return c;
}

/// b' + b'' + rev(b'').
inline Comp j_total(const Comp& bp, const Comp& bpp) {
    Comp b = bp;
    const int n = static_cast<int>(b.size());
    for (int i = 0; i < n; ++i) b[i] += bpp[i] + bpp[n - 1 - i];
    return b;
}

/// Keeps terms whose row sums have an empty middle step (left multiplication by J).
inline Element middle_empty(const Element& x) {
    Element out;
    for (const auto& [A, c] : x) {
        Comp b = A.ro();
        if (b[b.size() / 2] == 0) add_term(out, A, c);
    }
    return out;
}

/// Word for the checked generators of S_{d,l} = J S_d J (n = 2r+1 steps, middle empty).
/// kind is one of E, F, K, Kinv, H, Hinv; i is the l-index.
inline Word check_word(Gen::Kind kind, int i, int r) {
    using K = Gen::Kind;
    const int j = i > r ? i + 1 : i;
    switch (kind) {
        case K::E: return i == r ? Word{Gen::E(r + 1), Gen::E(r)} : Word{Gen::E(j)};
        case K::F: return i == r ? Word{Gen::F(r), Gen::F(r + 1)} : Word{Gen::F(j)};
        case K::K: return i == r ? Word{Gen::K(r), Gen::K(r + 1)} : Word{Gen::K(j)};
        case K::Kinv: return i == r ? Word{Gen::Kinv(r), Gen::Kinv(r + 1)} : Word{Gen::Kinv(j)};
        case K::H: return Word{Gen::H(j)};
        case K::Hinv: return Word{Gen::Hinv(j)};
        default: throw ValidationError("no checked generator of this kind");
    }
}

inline Element check_apply(const SchurA& S, const Word& w, const Element& x) {
    return middle_empty(S.apply_word(w, middle_empty(x)));
}

/// The comultiplication S^j_d -> S^j_{d'} (x) S_{d''} and its renormalization.
class ComultJ {
public:
    using Op = std::function<Element(const Element&)>;
    struct Term {
        LaurentPoly c;
        Op left, right;
    };

    ComultJ(const SchurJ& S, const SchurJ& S1, const SchurA& S2) : S_(&S), S1_(&S1), S2_(&S2) {
        if (S.n() != S1.n() || S.n() != S2.n() || S2.periodic())
            throw ValidationError("jmath comultiplication needs a common odd n and a finite type A factor");
        if (S1.d() + S2.d() != S.d()) throw CompositionMismatch("d' + d'' != d");
    }

    const SchurJ& source() const { return *S_; }
    const SchurJ& left() const { return *S1_; }
    const SchurA& right() const { return *S2_; }

    Tensor unit(const Comp* lambda = nullptr) const {
        Tensor t;
        for (const auto& a1 : S1_->weights())
            for (const auto& a2 : S2_->weights()) {
                if (lambda && j_total(a1, a2) != *lambda) continue;
                if (right_co_ && a2 != *right_co_) continue;
                add_term(t, std::make_pair(S1_->diag(a1), S2_->diag(a2)), LaurentPoly(1));
            }
        return t;
    }

    /// Only blocks whose second factor has column weight a are kept from now on.
    void restrict_right_co(const Comp& a) {
        std::lock_guard<std::mutex> lock(mu_);
        right_co_ = a;
        mono_.clear();
    }

    /// sum of c * left(X) (x) right(Y) over the terms of t.
    static Tensor act_terms(const std::vector<Term>& terms, const Tensor& t) {
        Tensor out;
        for (const auto& [k, c] : t) {
            Element X = single(k.first), Y = single(k.second);
            for (const auto& term : terms) {
                Element x = term.left(X);
                if (x.empty()) continue;
                Element y = term.right(Y);
                for (const auto& [A, ca] : x)
                    for (const auto& [B, cb] : y) add_term(out, std::make_pair(A, B), c * term.c * ca * cb);
            }
        }
        return out;
    }

    // operator builders
    Op L(Word w) const {
        return [this, w](const Element& x) { return S1_->apply_word(w, x); };
    }
    Op R(Word w) const {
        return [this, w](const Element& x) { return S2_->apply_word(w, x); };
    }
    Op Li(Word w) const {
        return [this, w](const Element& x) { return SchurJ::truncate_i(S1_->apply_word(w, SchurJ::truncate_i(x))); };
    }
    /// Product of checked generators, leftmost first.
    Op Rc(std::vector<std::pair<Gen::Kind, int>> gs) const {
        return [this, gs](const Element& x) {
            Element y = middle_empty(x);
            for (auto it = gs.rbegin(); it != gs.rend(); ++it) y = check_apply(*S2_, check_word(it->first, it->second, S_->r()), y);
            return y;
        };
    }
    static Op id() {
        return [](const Element& x) { return x; };
    }

    /// Restricts to the terms whose total weight is lambda.
    Tensor idem(const Comp& lambda, const Tensor& t) const {
        Tensor out;
        for (const auto& [k, c] : t)
            if (j_total(k.first.ro(), k.second.ro()) == lambda) add_term(out, k, c);
        return out;
    }

    /// Keeps terms with total weight in the imath range (middle part 1).
    Tensor truncate_i(const Tensor& t) const {
        Tensor out;
        const int r = S_->r();
        for (const auto& [k, c] : t)
            if (j_total(k.first.ro(), k.second.ro())[r] == 1 && j_total(k.first.co(), k.second.co())[r] == 1)
                add_term(out, k, c);
        return out;
    }

    /// Untwisted coproduct of one generator, from the generator formulas.
    Tensor act_tilde(const Gen& g, const Tensor& t) const {
        using K = Gen::Kind;
        const int n = S_->n(), r = S_->r();
        if (g.kind == K::Idem) return idem(g.weight, t);
        if ((g.kind == K::e || g.kind == K::f) && g.power > 1) return divided(g, t, [&](const Gen& h, const Tensor& s) { return act_tilde(h, s); });
        const int i = g.i;
        auto check = [&](int lo, int hi) {
            if (i < lo || i > hi) throw ValidationError("generator index out of range: " + g.str());
        };
        switch (g.kind) {
            case K::e:
                check(1, r);
                return act_terms({{1, L({g}), R({Gen::H(i + 1), Gen::Hinv(n - i)})},
                                  {1, L({Gen::Hinv(i + 1)}), R({Gen::E(i), Gen::Hinv(n - i)})},
                                  {1, L({Gen::H(i + 1)}), R({Gen::F(n - i), Gen::H(i + 1)})}},
                                 t);
            case K::f:
                check(1, r);
                return act_terms({{1, L({g}), R({Gen::Hinv(i), Gen::H(n + 1 - i)})},
                                  {1, L({Gen::H(i)}), R({Gen::F(i), Gen::H(n + 1 - i)})},
                                  {1, L({Gen::Hinv(i)}), R({Gen::E(n - i), Gen::Hinv(i)})}},
                                 t);
            case K::k:
                check(1, r);
                return act_terms({{1, L({g}), R({Gen::K(i), Gen::Kinv(n - i)})}}, t);
            case K::kinv:
                check(1, r);
                return act_terms({{1, L({g}), R({Gen::Kinv(i), Gen::K(n - i)})}}, t);
            case K::H:
                check(1, n);
                return act_terms({{1, L({g}), R({Gen::H(i), Gen::H(n + 1 - i)})}}, t);
            case K::Hinv:
                check(1, n);
                return act_terms({{1, L({g}), R({Gen::Hinv(i), Gen::Hinv(n + 1 - i)})}}, t);
            case K::t: {
                // j (f_r e_r + [lambda_{r+1} - lambda_r]) j on the total weight
                if (r < 1) throw ValidationError("t needs n >= 3");
                Tensor s = truncate_rows(t);
                Tensor out = act_tilde(Gen::jf(r), act_tilde(Gen::je(r), s));
                for (const auto& [k, c] : s) {
                    Comp lam = j_total(k.first.ro(), k.second.ro());
                    add_term(out, k, c * qint(lam[r] - lam[r - 1]));
                }
                return truncate_rows(out);
            }
            default:
                throw ValidationError("generator " + g.str() + " is not a jmath generator");
        }
    }

    Tensor apply_word_tilde(const Word& w, Tensor t) const {
        for (auto it = w.rbegin(); it != w.rend(); ++it) t = act_tilde(*it, t);
        return t;
    }
    Tensor tilde_word(const Word& w) const { return apply_word_tilde(w, unit()); }

    const Tensor& tilde_monomial(const Mat& A) const {
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = mono_.find(A);
            if (it != mono_.end()) return it->second;
        }
        auto [w, k] = S_->monomial_word(A);
        Tensor t = apply_word_tilde(w, unit());
        Tensor sh;
        for (const auto& [key, c] : t) add_term(sh, key, c.shifted(-k));
        std::lock_guard<std::mutex> lock(mu_);
        return mono_.emplace(A, std::move(sh)).first->second;
    }

    /// Untwisted coproduct of a standard-basis element (through monomials).
    Tensor tilde(const Element& x) const {
        Tensor out;
        for (const auto& [M, c] : S_->to_monomials(x)) add_into(out, tilde_monomial(M), c);
        return out;
    }

    /// v^{sum_{i<=j} b'_i b''_j - a'_i a''_j + u(b'', a'')} on each block.
    Tensor twist(const Tensor& t) const {
        Tensor out;
        for (const auto& [k, c] : t) {
            long long e = split_twist(k.first, k.second) + u_twist(k.second.ro(), k.second.co());
            add_term(out, k, c.shifted(static_cast<int>(e)));
        }
        return out;
    }

    Tensor delta(const Element& x) const { return twist(tilde(x)); }
    Tensor delta_word(const Word& w) const { return twist(tilde_word(w)); }

    /// Renormalized coproduct from its closed formulas (e, f, k, and t on the imath part).
    Tensor act_formula(const Gen& g, const Tensor& t) const {
        using K = Gen::Kind;
        const int n = S_->n(), r = S_->r();
        if (g.kind == K::Idem) return idem(g.weight, t);
        if ((g.kind == K::e || g.kind == K::f) && g.power > 1) return divided(g, t, [&](const Gen& h, const Tensor& s) { return act_formula(h, s); });
        const int i = g.i;
        switch (g.kind) {
            case K::e:
                return act_terms({{1, L({g}), R({Gen::K(i)})},
                                  {1, id(), R({Gen::E(i)})},
                                  {1, L({Gen::jk(i)}), R({Gen::F(n - i), Gen::K(i)})}},
                                 t);
            case K::f:
                return act_terms({{1, L({g}), R({Gen::K(n - i)})},
                                  {1, L({Gen::jkinv(i)}), R({Gen::K(n - i), Gen::F(i)})},
                                  {1, id(), R({Gen::E(n - i)})}},
                                 t);
            case K::k:
                return act_terms({{1, L({g}), R({Gen::K(i), Gen::Kinv(n - i)})}}, t);
            case K::kinv:
                return act_terms({{1, L({g}), R({Gen::Kinv(i), Gen::K(n - i)})}}, t);
            case K::t: {
                using GK = Gen::Kind;
                Tensor s = truncate_rows(t);
                return truncate_rows(act_terms({{1, Li({g}), Rc({{GK::K, r}})},
                                                {LaurentPoly::v(1), id(), Rc({{GK::K, r}, {GK::F, r}})},
                                                {1, id(), Rc({{GK::E, r}})}},
                                               s));
            }
            default:
                throw ValidationError("no closed formula for " + g.str());
        }
    }

    Tensor delta_word_formula(const Word& w) const {
        Tensor t = unit();
        for (auto it = w.rbegin(); it != w.rend(); ++it) t = act_formula(*it, t);
        return t;
    }

    /// Untwisted coproduct of an imath generator from the imath closed formulas.
    Tensor act_tilde_i_formula(const Gen& g, const Tensor& t) const {
        using K = Gen::Kind;
        const int r = S_->r(), l = S_->n() - 1;
        Tensor s = truncate_rows(t);
        const int i = g.i;
        std::vector<Term> terms;
        switch (g.kind) {
            case K::e:
                terms = {{1, Li({g}), Rc({{K::H, i + 1}, {K::Hinv, l - i}})},
                         {1, Li({Gen::Hinv(i + 1)}), Rc({{K::E, i}, {K::Hinv, l - i}})},
                         {1, Li({Gen::H(i + 1)}), Rc({{K::F, l - i}, {K::H, i + 1}})}};
                break;
            case K::f:
                terms = {{1, Li({g}), Rc({{K::Hinv, i}, {K::H, l + 1 - i}})},
                         {1, Li({Gen::H(i)}), Rc({{K::F, i}, {K::H, l + 1 - i}})},
                         {1, Li({Gen::Hinv(i)}), Rc({{K::E, l - i}, {K::Hinv, i}})}};
                break;
            case K::k:
                terms = {{1, Li({g}), Rc({{K::K, i}, {K::Kinv, l - i}})}};
                break;
            case K::t:
                terms = {{1, Li({g}), Rc({{K::K, r}})},
                         {LaurentPoly::v(2), Li({Gen::jkinv(r)}), Rc({{K::H, r + 1}, {K::F, r}})},
                         {LaurentPoly::v(-2), Li({Gen::jk(r)}), Rc({{K::Hinv, r}, {K::E, r}})}};
                break;
            default:
                throw ValidationError("no imath formula for " + g.str());
        }
        return truncate_rows(act_terms(terms, s));
    }

    /// Twisted coproduct of an imath generator from the imath closed formulas.
    Tensor act_formula_i(const Gen& g, const Tensor& t) const {
        using K = Gen::Kind;
        const int l = S_->n() - 1;
        Tensor s = truncate_rows(t);
        const int i = g.i;
        std::vector<Term> terms;
        switch (g.kind) {
            case K::e:
                terms = {{1, Li({g}), Rc({{K::K, i}})},
                         {1, id(), Rc({{K::E, i}})},
                         {1, Li({Gen::jk(i)}), Rc({{K::F, l - i}, {K::K, i}})}};
                break;
            case K::f:
                terms = {{1, Li({g}), Rc({{K::K, l - i}})},
                         {1, Li({Gen::jkinv(i)}), Rc({{K::K, l - i}, {K::F, i}})},
                         {1, id(), Rc({{K::E, l - i}})}};
                break;
            case K::k:
                terms = {{1, Li({g}), Rc({{K::K, i}, {K::Kinv, l - i}})}};
                break;
            case K::t:
                return act_formula(g, t);
            default:
                throw ValidationError("no imath formula for " + g.str());
        }
        return truncate_rows(act_terms(terms, s));
    }

    /// Imath unit j' (x) J''.
    Tensor unit_i() const { return truncate_i(unit()); }

    /// Untwisted coproduct of [A] by counting isotropic flags.
    Tensor tilde_by_counting(const Mat& A) const {
        Tensor out;
        const long long dA = S_->dj(A);
        for (const auto& b1 : S1_->weights())
            for (const auto& b2 : S2_->weights()) {
                if (j_total(b1, b2) != A.ro()) continue;
                using Key = std::pair<Mat, Mat>;
                std::function<std::map<Key, long long>(int)> at_q = [&](int q) {
                    guard_internal(q, S_->D());
                    return comult_counts(GF::get(q), A, b1, b2, true);
                };
                std::function<int(const Key&)> bound = [&](const Key& k) {
                    return static_cast<int>(dA - S1_->dj(k.first) - S2_->dA(k.second));
                };
                auto polys = interpolate_family<Key>(at_q, bound, S_->D(), static_cast<int>(dA));
                for (const auto& [k, p] : polys) {
                    int sh = static_cast<int>(-dA + S1_->dj(k.first) + S2_->dA(k.second));
                    add_term(out, k, p.to_v().shifted(sh));
                }
            }
        return out;
    }

private:
    template <class Step>
    Tensor divided(const Gen& g, const Tensor& t, Step step) const {
        Gen one = g;
        one.power = 1;
        Tensor cur = t;
        for (int m = 0; m < g.power; ++m) cur = step(one, cur);
        LaurentPoly f = qfactorial(g.power);
        Tensor out;
        for (const auto& [k, c] : cur) add_term(out, k, c.exact_div(f));
        return out;
    }

    /// Left multiplication by j on the total weight.
    Tensor truncate_rows(const Tensor& t) const {
        Tensor out;
        const int r = S_->r();
        for (const auto& [k, c] : t)
            if (j_total(k.first.ro(), k.second.ro())[r] == 1) add_term(out, k, c);
        return out;
    }

    const SchurJ* S_;
    const SchurJ* S1_;
    const SchurA* S2_;
    std::optional<Comp> right_co_;
    mutable std::mutex mu_;
    mutable std::map<Mat, Tensor> mono_;
};

/// The second factor of a tensor whose first factor lives in S^j_0.
inline Element drop_first(const Tensor& t) {
    Element out;
    for (const auto& [k, c] : t) add_term(out, k.second, c);
    return out;
}

/// The embedding S^j_d -> S_d (the renormalized coproduct with d' = 0).
class EmbedJ {
public:
    EmbedJ(const SchurJ& S, const SchurA& A) : S0_(S.n(), 0), co_(S, S0_, A) {}
    Element apply(const Element& x) const { return drop_first(co_.delta(x)); }
    Element apply_word(const Word& w) const { return drop_first(co_.delta_word(w)); }
    /// The closed formulas (E_i + K_i F_{n-i} etc.) evaluated on a word.
    Element apply_word_formula(const Word& w) const { return drop_first(co_.delta_word_formula(w)); }
    const ComultJ& comult() const { return co_; }

private:
    SchurJ S0_;
    ComultJ co_;
};

/// Transfer maps S^j_d -> S^j_{d-n} (chi on S_n) and S^i_d -> S^i_{d-l} (chi_l on S_{l,l}).
class TransferJ {
public:
    TransferJ(const SchurJ& S, bool imath)
        : imath_(imath), step_(imath ? S.n() - 1 : S.n()),
          Sm_(S.n(), S.d() - step_), Sn_(S.n(), step_, false), co_(S, Sm_, Sn_) {
        if (S.d() < step_) throw ValidationError("transfer needs d >= " + std::to_string(step_));
    }

    const SchurJ& target() const { return Sm_; }

    /// chi([M]) = v^{-d_M} det(M), with the middle row and column removed for imath.
    LaurentPoly chi(const Mat& M) const {
        Mat W = M;
        if (imath_) {
            const int n = M.n(), mid = (n + 1) / 2;
            for (int j = 1; j <= n; ++j)
                if (M(mid, j) || M(j, mid)) return LaurentPoly();
            W = Mat::finite(n - 1);
            for (auto [i, j, a] : M.entries()) W.add(i > mid ? i - 1 : i, j > mid ? j - 1 : j, a);
        }
        long long det = mat_det(W);
        if (!det) return LaurentPoly();
        return LaurentPoly::v(static_cast<int>(-Sn_.dA(M))) * LaurentPoly(det);
    }

    Element collapse(const Tensor& t) const {
        Element out;
        for (const auto& [k, c] : t) {
            LaurentPoly x = chi(k.second);
            if (!x.is_zero()) add_term(out, k.first, c * x);
        }
        return out;
    }

    Element apply(const Element& x) const { return collapse(co_.tilde(x)); }
    Element apply_word(const Word& w) const { return collapse(co_.tilde_word(w)); }
    const ComultJ& comult() const { return co_; }

private:
    bool imath_;
    int step_;
    SchurJ Sm_;
    SchurA Sn_;
    ComultJ co_;
};

// ---------------------------------------------------------------------------
// checks

/// Rank of a family of elements after evaluating v at an integer.
inline size_t rank_at(const std::vector<Element>& xs, int v) {
    std::map<Mat, size_t> col;
    for (const auto& x : xs)
        for (const auto& [A, c] : x) col.emplace(A, col.size());
    std::vector<std::vector<BigRat>> rows;
    for (const auto& x : xs) {
        std::vector<BigRat> row(col.size(), BigRat(0));
        for (const auto& [A, c] : x) {
            BigRat s = 0;
            for (const auto& [e, a] : c.terms()) {
                BigRat p = 1;
                for (int k = 0; k < std::abs(e); ++k) p *= v;
                s += e >= 0 ? BigRat(a) * p : BigRat(a) / p;
            }
            row[col[A]] = s;
        }
        rows.push_back(std::move(row));
    }
    size_t rank = 0;
    for (size_t c = 0; c < col.size() && rank < rows.size(); ++c) {
        size_t p = rank;
        while (p < rows.size() && rows[p][c] == 0) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[rank]);
        for (size_t k = rank + 1; k < rows.size(); ++k) {
            if (rows[k][c] == 0) continue;
            BigRat f = rows[k][c] / rows[rank][c];
            for (size_t j = c; j < col.size(); ++j) rows[k][j] -= f * rows[rank][j];
        }
        ++rank;
    }
    return rank;
}

/// A tensor in the standard bases rewritten in canonical (x) canonical.
inline Tensor tensor_to_canonical(const Tensor& t, const CanonicalBasis& c1, const CanonicalBasis& c2) {
    Tensor out;
    for (const auto& [k, c] : t) {
        const Element& x = c1.standard_in_canonical(k.first);
        const Element& y = c2.standard_in_canonical(k.second);
        for (const auto& [A, ca] : x)
            for (const auto& [B, cb] : y) add_term(out, std::make_pair(A, B), c * ca * cb);
    }
    return out;
}

template <class K>
bool all_positive(const std::map<K, LaurentPoly>& x) {
    for (const auto& [k, c] : x)
        if (!c.is_positive()) return false;
    return true;
}

inline nlohmann::json tensor_json(const Tensor& t) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& [k, c] : t) a.push_back({{"left", k.first.to_json()}, {"right", k.second.to_json()}, {"coeff", c.to_json()}});
    return a;
}

/// Generators of the jmath algebra (indices 1..r) and of the imath algebra.
inline std::vector<Gen> j_generators(int n) {
    std::vector<Gen> gs;
    for (int i = 1; i <= (n - 1) / 2; ++i) {
        gs.push_back(Gen::je(i));
        gs.push_back(Gen::jf(i));
        gs.push_back(Gen::jk(i));
        gs.push_back(Gen::jkinv(i));
    }
    return gs;
}

inline std::vector<Gen> i_generators(int n) {
    std::vector<Gen> gs;
    for (int i = 1; i < (n - 1) / 2; ++i) {
        gs.push_back(Gen::je(i));
        gs.push_back(Gen::jf(i));
        gs.push_back(Gen::jk(i));
    }
    gs.push_back(Gen::jt());
    return gs;
}

namespace detail {

inline bool positive_tensor(const Tensor& t) {
    for (const auto& [k, c] : t)
        if (!c.is_positive()) return false;
    return true;
}

inline bool positive_element(const Element& x) {
    for (const auto& [A, c] : x)
        if (!c.is_positive()) return false;
    return true;
}

}  // namespace detail

/// Delta~^j by flag counting against the generator formulas and the
/// renormalized formulas, for every split d' + d'' = d.
inline Certificate verify_comult_j_routes(const SchurJ& S) {
    Certificate cert;
    cert.theorem = "jmath comultiplication: counting = generator formulas = renormalized formulas";
    cert.parameters = {{"n", S.n()}, {"d", S.d()}};
    for (int d1 = 0; d1 <= S.d(); ++d1) {
        SchurJ S1(S.n(), d1);
        SchurA S2(S.n(), S.d() - d1, false);
        ComultJ C(S, S1, S2);
        for (const auto& g : j_generators(S.n())) {
            Tensor f = C.tilde_word({g});
            Tensor cnt;
            for (const auto& [A, c] : S.gen(g)) add_into(cnt, C.tilde_by_counting(A), c);
            cert.check(f == cnt, {{"split", d1}, {"generator", g.str()}, {"route", "counting"}});
            cert.check(C.twist(f) == C.delta_word_formula({g}), {{"split", d1}, {"generator", g.str()}, {"route", "renormalized"}});
        }
        for (const auto& A : S.all_matrices())
            cert.check(C.tilde(single(A)) == C.tilde_by_counting(A), {{"split", d1}, {"matrix", A.to_json()}});
    }
    return cert;
}

/// (Delta^j (x) 1) Delta^j = (1 (x) Delta) Delta^j on generators and the standard basis.
inline Certificate verify_mixed_coassociativity(const SchurJ& S) {
    Certificate cert;
    cert.theorem = "mixed coassociativity of the jmath comultiplication";
    cert.parameters = {{"n", S.n()}, {"d", S.d()}};
    const int n = S.n(), d = S.d();
    for (int a = 0; a <= d; ++a)
        for (int b = 0; a + b <= d; ++b) {
            const int c = d - a - b;
            SchurJ Sab(n, a + b), Sa(n, a);
            SchurA Sc(n, c, false), Sbc(n, b + c, false), Sb(n, b, false);
            ComultJ L1(S, Sab, Sc), L2(Sab, Sa, Sb), R1(S, Sa, Sbc);
            ComultA R2(Sbc, Sb, Sc);
            auto both = [&](const Element& x) {
                Triple lhs, rhs;
                for (const auto& [k, cf] : L1.delta(x))
                    for (const auto& [k2, c2] : L2.delta(single(k.first)))
                        add_term(lhs, std::make_tuple(k2.first, k2.second, k.second), cf * c2);
                for (const auto& [k, cf] : R1.delta(x))
                    for (const auto& [k2, c2] : R2.delta(single(k.second)))
                        add_term(rhs, std::make_tuple(k.first, k2.first, k2.second), cf * c2);
                return std::make_pair(lhs, rhs);
            };
            nlohmann::json split = {a, b, c};
            for (const auto& g : j_generators(n)) {
                auto [l, r] = both(S.gen(g));
                cert.check(l == r, {{"split", split}, {"generator", g.str()}});
            }
            for (const auto& A : S.all_matrices()) {
                auto [l, r] = both(single(A));
                cert.check(!l.empty() && l == r, {{"split", split}, {"matrix", A.to_json()}});
            }
        }
    return cert;
}

/// The embedding j_d: generator images, injectivity (rank of the images of
/// the standard basis at v = 3), and g_{B,A} >= 0.
inline Certificate verify_embedding_j(const SchurJ& S, const std::function<void(Element&)>& tamper = nullptr) {
    Certificate cert;
    cert.theorem = "jmath embedding into type A: formulas, injectivity, positivity";
    cert.parameters = {{"n", S.n()}, {"d", S.d()}};
    const int n = S.n();
    SchurA A(n, S.d(), false);
    EmbedJ J(S, A);
    for (const auto& g : j_generators(n)) {
        Element rhs;
        const int i = g.i;
        switch (g.kind) {
            case Gen::Kind::e: rhs = A.word({Gen::E(i)}) + A.word({Gen::K(i), Gen::F(n - i)}); break;
            case Gen::Kind::f: rhs = A.word({Gen::F(i), Gen::K(n - i)}) + A.word({Gen::E(n - i)}); break;
            case Gen::Kind::k: rhs = scaled(A.word({Gen::K(i), Gen::Kinv(n - i)}), LaurentPoly::v(i == S.r())); break;
            case Gen::Kind::kinv: rhs = scaled(A.word({Gen::Kinv(i), Gen::K(n - i)}), LaurentPoly::v(-(i == S.r()))); break;
            default: break;
        }
        cert.check(J.apply_word({g}) == rhs, {{"generator", g.str()}});
    }
    std::vector<Element> imgs;
    const auto all = S.all_matrices();
    for (const auto& M : all) imgs.push_back(J.apply(single(M)));
    size_t rk = rank_at(imgs, 3);
    cert.check(rk == imgs.size(), {{"reason", "images not independent"}, {"rank", rk}, {"size", imgs.size()}});
    CanonicalBasis cb(S), ca(A);
    for (const auto& M : all) {
        Element g = ca.to_canonical(J.apply(cb.canonical(M)));
        if (tamper) tamper(g);
        cert.check(!g.empty() && detail::positive_element(g), {{"matrix", M.to_json()}, {"g", element_str(g)}});
    }
    return cert;
}

/// Delta^j({M}) in canonical (x) canonical has coefficients in N[v, v^-1], every split.
inline Certificate verify_comult_j_positivity(const SchurJ& S, const std::function<void(Tensor&)>& tamper = nullptr) {
    Certificate cert;
    cert.theorem = "positivity of the jmath comultiplication on canonical bases";
    cert.parameters = {{"n", S.n()}, {"d", S.d()}};
    CanonicalBasis cb(S);
    for (int d1 = 0; d1 <= S.d(); ++d1) {
        SchurJ S1(S.n(), d1);
        SchurA S2(S.n(), S.d() - d1, false);
        ComultJ C(S, S1, S2);
        CanonicalBasis c1(S1), c2(S2);
        for (const auto& M : S.all_matrices()) {
            Tensor t = tensor_to_canonical(C.delta(cb.canonical(M)), c1, c2);
            if (tamper) tamper(t);
            cert.check(!t.empty() && detail::positive_tensor(t), {{"split", d1}, {"matrix", M.to_json()}});
        }
    }
    return cert;
}

/// The imath comultiplication: Delta~ preserves the imath part (closed formulas),
/// the renormalized formulas, the degenerate embedding i_d, and positivity of
/// Delta^i and of i_d on canonical bases.
inline Certificate verify_imath(const SchurJ& S, const std::function<void(Tensor&)>& tamper = nullptr) {
    Certificate cert;
    cert.theorem = "imath comultiplication, embedding and positivity";
    cert.parameters = {{"n", S.n()}, {"d", S.d()}};
    const int n = S.n(), r = S.r(), l = n - 1;
    if (n < 3) throw ValidationError("imath needs n >= 3");
    CanonicalBasis cb(S);
    for (int d1 = 0; d1 <= S.d(); ++d1) {
        SchurJ S1(n, d1);
        SchurA S2(n, S.d() - d1, false);
        ComultJ C(S, S1, S2);
        CanonicalBasis c1(S1), c2(S2);
        Tensor u = C.unit_i();
        for (const auto& g : i_generators(n)) {
            Tensor a = C.truncate_i(C.act_tilde(g, u));
            cert.check(a == C.act_tilde_i_formula(g, u), {{"split", d1}, {"generator", g.str()}, {"formula", "untwisted"}});
            cert.check(C.twist(a) == C.act_formula_i(g, u), {{"split", d1}, {"generator", g.str()}, {"formula", "renormalized"}});
        }
        for (const auto& M : S.i_matrices()) {
            Tensor t = tensor_to_canonical(C.truncate_i(C.delta(cb.canonical(M))), c1, c2);
            if (tamper) tamper(t);
            bool ok = !t.empty() && detail::positive_tensor(t);
            for (const auto& [k, c] : t) ok = ok && is_i_matrix(k.first) && middle_empty(single(k.second)).size() == 1;
            cert.check(ok, {{"split", d1}, {"matrix", M.to_json()}, {"expansion", tensor_str(t)}});
        }
    }
    // i_d = Delta^i with d' = 0
    SchurA A(n, S.d(), false);
    EmbedJ J(S, A);
    using K = Gen::Kind;
    auto chk = [&](std::vector<std::pair<K, int>> gs) {
        Element x = middle_empty(A.unit());
        for (auto it = gs.rbegin(); it != gs.rend(); ++it) x = check_apply(A, check_word(it->first, it->second, r), x);
        return x;
    };
    auto emb = [&](const Gen& g) { return middle_empty(J.apply(S.word_i({g}))); };
    for (int i = 1; i < r; ++i) {
        cert.check(emb(Gen::je(i)) == chk({{K::E, i}}) + chk({{K::K, i}, {K::F, l - i}}), {{"embedding", "e"}, {"i", i}});
        cert.check(emb(Gen::jf(i)) == chk({{K::E, l - i}}) + chk({{K::K, l - i}, {K::F, i}}), {{"embedding", "f"}, {"i", i}});
        cert.check(emb(Gen::jk(i)) == chk({{K::K, i}, {K::Kinv, l - i}}), {{"embedding", "k"}, {"i", i}});
    }
    cert.check(emb(Gen::jt()) == chk({{K::E, r}}) + scaled(chk({{K::K, r}, {K::F, r}}), LaurentPoly::v(1)) + chk({{K::K, r}}),
               {{"embedding", "t"}});
    CanonicalBasis ca(A);
    for (const auto& M : S.i_matrices()) {
        Element g = ca.to_canonical(middle_empty(J.apply(cb.canonical(M))));
        cert.check(!g.empty() && detail::positive_element(g), {{"embedding", "positivity"}, {"matrix", M.to_json()}});
    }
    return cert;
}

/// phi^j (d -> d-n) or phi^i (d -> d-l): generator images, unit, and canonical
/// basis to nonnegative combinations of canonical basis.
inline Certificate verify_transfer_j(const SchurJ& S, bool imath) {
    Certificate cert;
    cert.theorem = std::string(imath ? "imath" : "jmath") + " transfer map";
    cert.parameters = {{"n", S.n()}, {"d", S.d()}, {"imath", imath}};
    TransferJ T(S, imath);
    const SchurJ& Sm = T.target();
    if (!imath) {
        for (const auto& g : j_generators(S.n()))
            cert.check(T.apply_word({g}) == Sm.gen(g), {{"generator", g.str()}});
        cert.check(T.apply(S.unit()) == Sm.unit(), {{"reason", "unit"}});
    } else {
        for (const auto& g : i_generators(S.n()))
            cert.check(SchurJ::truncate_i(T.apply(S.word_i({g}))) == Sm.word_i({g}), {{"generator", g.str()}});
        cert.check(T.apply(S.j_idem()) == Sm.j_idem(), {{"reason", "unit"}});
    }
    CanonicalBasis cb(S), ct(Sm);
    for (const auto& A : imath ? S.i_matrices() : S.all_matrices()) {
        Element img = ct.to_canonical(T.apply(cb.canonical(A)));
        cert.check(detail::positive_element(img), {{"matrix", A.to_json()}, {"image", element_str(img)}});
    }
    return cert;
}

/// The coideal relations among e_i, f_i, k_i^{+-1} in S^j_d, evaluated on the unit.
inline Certificate verify_coideal_relations(const SchurJ& S) {
    Certificate cert;
    cert.theorem = "coideal relations";
    cert.parameters = {{"n", S.n()}, {"d", S.d()}};
    const int r = S.r();
    std::map<std::string, Element> memo;
    std::function<const Element&(const Word&)> w = [&](const Word& word) -> const Element& {
        const std::string key = word_str(word);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        Element x;
        if (word.empty()) x = S.unit();
        else x = S.act(word.front(), w(Word(word.begin() + 1, word.end())));
        return memo.emplace(key, std::move(x)).first->second;
    };
    auto E = [](int i) { return Gen::je(i); };
    auto F = [](int i) { return Gen::jf(i); };
    auto Kp = [](int i) { return Gen::jk(i); };
    auto Km = [](int i) { return Gen::jkinv(i); };
    auto report = [&](const std::string& name, const Element& lhs_minus_rhs) {
        cert.check(lhs_minus_rhs.empty(), {{"relation", name}, {"residue", element_to_json(lhs_minus_rhs, "standard", S.ambient_json())}});
    };
    const LaurentPoly vv = LaurentPoly::v(1) + LaurentPoly::v(-1);
    for (int i = 1; i <= r; ++i) {
        // (k_i - k_i^{-1})/(v - v^{-1}) acts on 1_lambda by [lambda_{i+1} - lambda_i]
        Element kq;
        for (const auto& a : S.weights()) add_term(kq, S.diag(a), qint(a[i] - a[i - 1]));
        report("k k^-1 = 1 (" + std::to_string(i) + ")", w({Kp(i), Km(i)}) - S.unit());
        for (int j = 1; j <= r; ++j) {
            const std::string ij = " (" + std::to_string(i) + "," + std::to_string(j) + ")";
            const int a = (i == j ? 2 : 0) - (std::abs(i - j) == 1 ? 1 : 0) + (i == r && j == r ? 1 : 0);
            report("k k commute" + ij, w({Kp(i), Kp(j)}) - w({Kp(j), Kp(i)}));
            report("k e" + ij, w({Kp(i), E(j)}) - scaled(w({E(j), Kp(i)}), LaurentPoly::v(a)));
            report("k f" + ij, w({Kp(i), F(j)}) - scaled(w({F(j), Kp(i)}), LaurentPoly::v(-a)));
            if (!(i == r && j == r)) {
                Element rhs = i == j ? kq : Element{};
                report("[e,f]" + ij, w({E(i), F(j)}) - w({F(j), E(i)}) - rhs);
            }
            if (std::abs(i - j) > 1) {
                report("e e commute" + ij, w({E(i), E(j)}) - w({E(j), E(i)}));
                report("f f commute" + ij, w({F(i), F(j)}) - w({F(j), F(i)}));
            }
            if (std::abs(i - j) == 1) {
                report("e Serre" + ij, w({E(i), E(i), E(j)}) + w({E(j), E(i), E(i)}) - scaled(w({E(i), E(j), E(i)}), vv));
                report("f Serre" + ij, w({F(i), F(i), F(j)}) + w({F(j), F(i), F(i)}) - scaled(w({F(i), F(j), F(i)}), vv));
            }
        }
    }
    // the two exceptional relations at (r, r)
    Element kk = scaled(w({Kp(r)}), LaurentPoly::v(1)) + scaled(w({Km(r)}), LaurentPoly::v(-1));
    Element kf = scaled(w({Kp(r), F(r)}), LaurentPoly::v(1)) + scaled(w({Km(r), F(r)}), LaurentPoly::v(-1));
    report("e_r^2 f_r relation", w({E(r), E(r), F(r)}) + w({F(r), E(r), E(r)}) -
                                     scaled(w({E(r), F(r), E(r)}) - S.act(E(r), kk), vv));
    report("f_r^2 e_r relation", w({F(r), F(r), E(r)}) + w({E(r), F(r), F(r)}) -
                                     scaled(w({F(r), E(r), F(r)}) - kf, vv));
    return cert;
}

}  // namespace schurlab
