/**
 * @file canonical.hpp
 * @brief Canonical bases {A} = [A] + sum P_{A,A'} [A'] by induction down the
 *        Bruhat order, and checks on the resulting tables.
 */
#pragma once

#include <functional>
#include <map>
#include <mutex>
#include <string>

#include "schurlab/based_algebra.hpp"
#include "schurlab/certificate.hpp"

namespace schurlab {

/// P_{A,.} for each A of a slice.
using KLTable = std::map<Mat, Element>;

/// Negative-degree part of s, after checking bar(s) = -s.
inline LaurentPoly kl_negative_part(const LaurentPoly& s) {
    if (s.bar() != -s) throw NoSolution("bar-invariance system is inconsistent: " + s.str());
    LaurentPoly p;
    for (const auto& [e, c] : s.terms())
        if (e < 0) p.add_term(e, c);
    return p;
}

class CanonicalBasis {
public:
    explicit CanonicalBasis(const BasedAlgebra& alg) : alg_(&alg) {}

    const BasedAlgebra& algebra() const { return *alg_; }

    /// {A} in the standard basis.
    const Element& canonical(const Mat& A) const {
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = memo_.find(A);
            if (it != memo_.end()) return it->second;
        }
        auto order = alg_->down_set(A);
        Element P = solve(A, order);
        std::lock_guard<std::mutex> lock(mu_);
        return memo_.emplace(A, std::move(P)).first->second;
    }

    /// Same solve along a different linear extension (ties broken in reverse).
    Element canonical_alt_order(const Mat& A) const {
        auto order = alg_->down_set(A);
        std::stable_sort(order.begin(), order.end(), [&](const Mat& a, const Mat& b) {
            long long ra = alg_->rank(a), rb = alg_->rank(b);
            if (ra != rb) return ra > rb;
            return b < a;
        });
        return solve(A, order);
    }

    /// [A] in the canonical basis.
    const Element& standard_in_canonical(const Mat& A) const {
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = inv_.find(A);
            if (it != inv_.end()) return it->second;
        }
        Element q = single(A);
        for (const auto& [C, p] : canonical(A)) {
            if (C == A) continue;
            add_into(q, standard_in_canonical(C), -p);
        }
        std::lock_guard<std::mutex> lock(mu_);
        return inv_.emplace(A, std::move(q)).first->second;
    }

    Element to_canonical(const Element& x) const {
        Element out;
        for (const auto& [A, c] : x) add_into(out, standard_in_canonical(A), c);
        return out;
    }

    Element from_canonical(const Element& x) const {
        Element out;
        for (const auto& [A, c] : x) add_into(out, canonical(A), c);
        return out;
    }

    KLTable table(const std::vector<Mat>& slice) const {
        KLTable t;
        for (const auto& A : slice) t.emplace(A, canonical(A));
        return t;
    }

private:
    Element solve(const Mat& A, const std::vector<Mat>& order) const {
        if (order.empty() || order.front() != A) throw NoSolution("down-set of " + A.str() + " does not start at A");
        Element P = single(A);
        std::vector<std::pair<Mat, LaurentPoly>> done{{A, LaurentPoly(1)}};
        for (size_t k = 1; k < order.size(); ++k) {
            const Mat& Ap = order[k];
            LaurentPoly s;
            for (const auto& [B, pb] : done) {
                const Element& row = alg_->bar_row(B);
                auto it = row.find(Ap);
                if (it != row.end()) s += pb.bar() * it->second;
            }
            LaurentPoly p = kl_negative_part(s);
            if (!p.is_zero()) {
                add_term(P, Ap, p);
                done.emplace_back(Ap, p);
            }
        }
        return P;
    }

    const BasedAlgebra* alg_;
    mutable std::mutex mu_;
    mutable std::map<Mat, Element> memo_, inv_;
};

/// Bar-invariance and the degree condition for every entry of a table.
inline Certificate verify_kl_table(const BasedAlgebra& alg, const KLTable& tbl, const std::string& name) {
    Certificate cert;
    cert.theorem = name;
    for (const auto& [A, P] : tbl) {
        Element b = alg.bar(P);
        cert.check(b == P, {{"matrix", A.to_json()}, {"reason", "not bar invariant"}});
        for (const auto& [C, p] : P) {
            if (C == A) cert.check(p == LaurentPoly(1), {{"matrix", A.to_json()}, {"reason", "leading coefficient"}});
            else
                cert.check(p.in_vinv_Zvinv() && alg.leq(C, A),
                           {{"matrix", A.to_json()}, {"lower", C.to_json()}, {"P", p.to_json()}, {"reason", "degree or order"}});
        }
    }
    return cert;
}

/// P_{A,A'} != 0 forces eps_i(A) = eps_i(A') for all i.
inline Certificate verify_epsilon_rigidity(const KLTable& tbl) {
    Certificate cert;
    cert.theorem = "epsilon-rigidity of canonical basis expansions";
    for (const auto& [A, P] : tbl)
        for (const auto& [C, p] : P) {
            if (p.is_zero()) continue;
            bool ok = true;
            for (int i = 1; i <= A.n(); ++i)
                if (epsilon_stat(A, i) != epsilon_stat(C, i)) ok = false;
            cert.check(ok, {{"A", A.to_json()}, {"A'", C.to_json()}, {"P", p.to_json()}});
        }
    return cert;
}

}  // namespace schurlab
