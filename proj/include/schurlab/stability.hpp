/**
 * @file stability.hpp
 * @brief Transfer-map chains S_d -> S_{d-step}, detection of stable canonical
 *        elements {A + p*shift}_d, and the positivity checks that are run on
 *        those stable components.
 *
 * The idempotented algebras are never built.  A statement about them is
 * tested on the Schur quotients at degrees where the transfer maps already
 * send {A + shift} to {A}.
 */
#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "schurlab/canonical.hpp"
#include "schurlab/coideal.hpp"
#include "schurlab/comult_a.hpp"

namespace schurlab {

enum class ChainKind { FiniteA, JMath, IMath };

inline std::string kind_name(ChainKind k) {
    switch (k) {
        case ChainKind::FiniteA: return "finite-a";
        case ChainKind::JMath: return "jmath";
        case ChainKind::IMath: return "imath";
    }
    return "?";
}

inline ChainKind parse_chain_kind(const std::string& s) {
    if (s == "finite-a" || s == "a") return ChainKind::FiniteA;
    if (s == "jmath") return ChainKind::JMath;
    if (s == "imath") return ChainKind::IMath;
    throw ValidationError("unknown chain kind '" + s + "'");
}

/// The algebras S_d of one kind, their canonical bases and transfer maps, built on demand.
class TransferChain {
public:
    TransferChain(ChainKind kind, int n) : kind_(kind), n_(n) {
        if (n < 1) throw ValidationError("need n >= 1");
        if (kind != ChainKind::FiniteA && n % 2 == 0) throw ValidationError("jmath/imath chains need odd n");
        if (kind == ChainKind::IMath && n < 3) throw ValidationError("imath chains need n >= 3");
    }

    ChainKind kind() const { return kind_; }
    int n() const { return n_; }
    int step() const { return kind_ == ChainKind::IMath ? n_ - 1 : n_; }

    /// I, 2I, or 2I with the middle entry removed.
    Mat shift() const {
        Comp c(n_, kind_ == ChainKind::FiniteA ? 1 : 2);
        if (kind_ == ChainKind::IMath) c[n_ / 2] = 0;
        return Mat::diag(c);
    }

    /// Largest degree this chain can build: the jmath algebras need the flag oracle (dimension 2d+1).
    int max_degree() const { return kind_ == ChainKind::FiniteA ? 3 * n_ : (kAbsoluteMaxDim - 1) / 2; }

    int degree(const Mat& A) const { return kind_ == ChainKind::FiniteA ? A.sum() : (A.sum() - 1) / 2; }

    void validate(const Mat& A) const {
        if (A.n() != n_ || A.is_periodic()) throw ValidationError("seed must be a finite " + std::to_string(n_) + "x" + std::to_string(n_) + " matrix");
        if (kind_ != ChainKind::FiniteA && (!is_j_symmetric(A) || A.sum() % 2 == 0))
            throw ValidationError("seed is not a jmath matrix: " + A.str());
        if (kind_ == ChainKind::IMath && !is_i_matrix(A)) throw ValidationError("seed is not an imath matrix: " + A.str());
    }

    const BasedAlgebra& algebra(int d) const { return slot(d).alg(); }
    const CanonicalBasis& canonical(int d) const { return *slot(d).cb; }
    const SchurA* schur_a(int d) const { return slot(d).a.get(); }
    const SchurJ* schur_j(int d) const { return slot(d).j.get(); }

    /// S_d -> S_{d - step}.
    Element transfer(int d, const Element& x) const {
        if (d < step()) throw ValidationError("transfer needs d >= " + std::to_string(step()));
        Slot& s = slot(d);
        if (kind_ == ChainKind::FiniteA) {
            if (!s.ta) s.ta.reset(new TransferA(*s.a, *slot(d - n_).a, *slot_sn()));
            return s.ta->apply(x);
        }
        if (!s.tj) s.tj.reset(new TransferJ(*s.j, kind_ == ChainKind::IMath));
        return s.tj->apply(x);
    }

private:
    struct Slot {
        std::unique_ptr<SchurA> a;
        std::unique_ptr<SchurJ> j;
        std::unique_ptr<CanonicalBasis> cb;
        std::unique_ptr<TransferA> ta;
        std::unique_ptr<TransferJ> tj;
        const BasedAlgebra& alg() const { return a ? static_cast<const BasedAlgebra&>(*a) : *j; }
    };

    Slot& slot(int d) const {
        if (d < 0) throw ValidationError("negative degree");
        auto& s = slots_[d];
        if (!s.a && !s.j) {
            if (kind_ == ChainKind::FiniteA) s.a.reset(new SchurA(n_, d, false));
            else s.j.reset(new SchurJ(n_, d));
            s.cb.reset(new CanonicalBasis(s.alg()));
        }
        return s;
    }
    const SchurA* slot_sn() const {
        if (!sn_) sn_.reset(new SchurA(n_, n_, false));
        return sn_.get();
    }

    ChainKind kind_;
    int n_;
    mutable std::map<int, Slot> slots_;
    mutable std::unique_ptr<SchurA> sn_;
};

/// {A + p*shift}_{d_p} for p = 0, 1, ..., with the first stable degree.
struct StableElement {
    ChainKind kind = ChainKind::FiniteA;
    Mat seed, shift;
    int threshold_d = -1;
    int threshold_index = -1;
    std::vector<std::pair<int, Mat>> components;

    nlohmann::json to_json() const {
        nlohmann::json comps = nlohmann::json::array();
        for (const auto& [d, A] : components) comps.push_back({{"d", d}, {"matrix", A.to_json()}});
        return {{"kind", kind_name(kind)},
                {"seed", seed.to_json()},
                {"observed_shift", shift.to_json()},
                {"threshold_d", threshold_d},
                {"components", comps}};
    }
};

/// Transfers {A + p*shift} down the chain up to degree max_d (max_d <= 3n).
/// Stable from index p on means every transfer at index >= p lands on a
/// single canonical element {A + (q-1)*shift} with coefficient 1.
inline StableElement detect_stabilization(const TransferChain& ch, const Mat& seed, int max_d) {
    ch.validate(seed);
    if (max_d > 3 * ch.n()) throw ScaleExceeded("max_d > 3n is beyond desk scale");
    max_d = std::min(max_d, ch.max_degree());
    StableElement st;
    st.kind = ch.kind();
    st.seed = seed;
    const Mat sh = ch.shift();
    Mat A = seed;
    while (ch.degree(A) <= max_d) {
        st.components.emplace_back(ch.degree(A), A);
        A = A + sh;
    }
    if (st.components.size() < 2)
        throw NotStabilized("fewer than two degrees in range for seed " + seed.str() + " (max_d " + std::to_string(max_d) + ")");
    int last_bad = 0;
    Mat observed;
    for (size_t p = 1; p < st.components.size(); ++p) {
        const auto& [d, Ap] = st.components[p];
        const Mat& Aq = st.components[p - 1].second;
        Element img = ch.canonical(d - ch.step()).to_canonical(ch.transfer(d, ch.canonical(d).canonical(Ap)));
        bool ok = img.size() == 1 && img.begin()->second == LaurentPoly(1);
        if (ok) {
            const Mat& B = img.begin()->first;
            Mat diff = Mat::finite(ch.n());
            for (int i = 1; i <= ch.n(); ++i)
                for (int j = 1; j <= ch.n(); ++j) {
                    int x = Ap(i, j) - B(i, j);
                    if (i != j && x != 0) ok = false;
                    if (x > 0) diff.set(i, j, x);
                    if (x < 0) ok = false;
                }
            ok = ok && B == Aq;
            if (ok) observed = diff;
        }
        if (!ok) last_bad = static_cast<int>(p);
    }
    if (last_bad + 1 >= static_cast<int>(st.components.size()))
        throw NotStabilized("seed " + seed.str() + " not stable up to d = " + std::to_string(st.components.back().first));
    st.threshold_index = last_bad + 1;
    st.threshold_d = st.components[st.threshold_index].first;
    st.shift = observed;
    return st;
}

/// Components below the threshold that are still reached by stable transfers.
inline std::vector<std::pair<int, Mat>> stable_components(const StableElement& st) {
    return {st.components.begin() + std::max(0, st.threshold_index - 1), st.components.end()};
}

/// Index in st.components of the first entry of stable_components(st).
inline int first_stable_index(const StableElement& st) { return std::max(0, st.threshold_index - 1); }

namespace detail {

inline Tensor shift_first(const Tensor& t, const Mat& sh) {
    Tensor out;
    for (const auto& [k, c] : t) add_term(out, std::make_pair(k.first + sh, k.second), c);
    return out;
}

inline Element shift_all(const Element& x, const Mat& sh) {
    Element out;
    for (const auto& [A, c] : x) add_term(out, A + sh, c);
    return out;
}

/// Terms of x whose matrices keep every diagonal entry >= that of sh.
template <class K, class Fn>
std::map<K, LaurentPoly> above(const std::map<K, LaurentPoly>& x, Fn first, const Mat& sh) {
    std::map<K, LaurentPoly> out;
    for (const auto& [k, c] : x) {
        const Mat& M = first(k);
        bool ok = true;
        for (int i = 1; i <= M.n(); ++i)
            if (M(i, i) < sh(i, i)) ok = false;
        if (ok) out.emplace(k, c);
    }
    return out;
}

}  // namespace detail

/// Delta of the stable components, split off a second factor of degree d2,
/// expanded in canonical (x) canonical.  Checks nonnegativity, and that the
/// expansion at d + step is the one at d with the first factor shifted.
inline Certificate verify_idempotented_comult_positivity(const TransferChain& ch, const Mat& seed, int d2, int max_d,
                                                         const std::function<void(Tensor&)>& tamper = nullptr) {
    Certificate cert;
    cert.theorem = "positivity of the idempotented comultiplication (" + kind_name(ch.kind()) + ")";
    StableElement st = detect_stabilization(ch, seed, max_d);
    cert.parameters = {{"kind", kind_name(ch.kind())}, {"n", ch.n()}, {"seed", seed.to_json()},
                       {"d2", d2}, {"max_d", max_d}, {"threshold_d", st.threshold_d}};
    const int n = ch.n();
    // the second factor is n-step type A; for imath it is used with an empty middle step
    SchurA S2(n, d2, false);
    CanonicalBasis c2(S2);
    std::vector<std::pair<int, Tensor>> exps;
    const Mat sh1 = ch.shift();
    int idx = first_stable_index(st) - 1;
    for (const auto& [d, A] : stable_components(st)) {
        ++idx;
        const int d1 = d - d2;
        if (d1 < 0) continue;
        Tensor t;
        if (ch.kind() == ChainKind::FiniteA) {
            ComultA co(*ch.schur_a(d), *ch.schur_a(d1), S2);
            t = tensor_to_canonical(co.delta(ch.canonical(d).canonical(A)), ch.canonical(d1), c2);
        } else {
            ComultJ co(*ch.schur_j(d), *ch.schur_j(d1), S2);
            Tensor raw = co.delta(ch.canonical(d).canonical(A));
            if (ch.kind() == ChainKind::IMath) raw = co.truncate_i(raw);
            t = tensor_to_canonical(raw, ch.canonical(d1), c2);
        }
        if (tamper) tamper(t);
        bool ok = !t.empty();
        for (const auto& [k, c] : t) ok = ok && c.is_positive();
        cert.check(ok, {{"d", d}, {"component", A.to_json()}, {"expansion", tensor_str(t)}});
        exps.emplace_back(idx, std::move(t));
    }
    // d-independence only between components that are both past the threshold
    auto first = [](const std::pair<Mat, Mat>& k) -> const Mat& { return k.first; };
    for (size_t p = 1; p < exps.size(); ++p) {
        if (exps[p - 1].first < st.threshold_index) continue;
        Tensor hi = detail::above(exps[p].second, first, sh1);
        cert.check(hi == detail::shift_first(exps[p - 1].second, sh1),
                   {{"reason", "coefficients change between consecutive stable degrees"}, {"index", exps[p].first}});
    }
    return cert;
}

/// g_{B,A}: the embedding of stable jmath/imath canonical elements into type A,
/// in the type A canonical basis; nonnegative and unchanged under the shift.
inline Certificate verify_embedding_positivity(const TransferChain& ch, const Mat& seed, int max_d,
                                               const std::function<void(Element&)>& tamper = nullptr) {
    if (ch.kind() == ChainKind::FiniteA) throw ValidationError("embedding positivity needs a jmath or imath chain");
    Certificate cert;
    cert.theorem = "positivity of the embedding into type A (" + kind_name(ch.kind()) + ")";
    StableElement st = detect_stabilization(ch, seed, max_d);
    cert.parameters = {{"kind", kind_name(ch.kind())}, {"n", ch.n()}, {"seed", seed.to_json()},
                       {"max_d", max_d}, {"threshold_d", st.threshold_d}};
    const int n = ch.n();
    Comp half(n, 1);
    if (ch.kind() == ChainKind::IMath) half[n / 2] = 0;
    const Mat sha = Mat::diag(half);
    std::vector<std::pair<int, Element>> exps;
    int idx = first_stable_index(st) - 1;
    for (const auto& [d, A] : stable_components(st)) {
        ++idx;
        SchurA SA(n, d, false);
        CanonicalBasis ca(SA);
        EmbedJ emb(*ch.schur_j(d), SA);
        Element g = ca.to_canonical(emb.apply(ch.canonical(d).canonical(A)));
        if (tamper) tamper(g);
        bool ok = !g.empty();
        for (const auto& [B, c] : g) ok = ok && c.is_positive();
        cert.check(ok, {{"d", d}, {"component", A.to_json()}, {"expansion", element_str(g)}});
        exps.emplace_back(idx, std::move(g));
    }
    auto self = [](const Mat& k) -> const Mat& { return k; };
    for (size_t p = 1; p < exps.size(); ++p) {
        if (exps[p - 1].first < st.threshold_index) continue;
        cert.check(detail::above(exps[p].second, self, sha) == detail::shift_all(exps[p - 1].second, sha),
                   {{"reason", "coefficients change between consecutive stable degrees"}, {"index", exps[p].first}});
    }
    return cert;
}

}  // namespace schurlab
