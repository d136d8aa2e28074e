/**
 * @file based_algebra.hpp
 * @brief Shared machinery for matrix-indexed algebras with a standard basis:
 *        monomials built from peel factors, their expansions S, the inverse R,
 *        the bar involution and general products.
 *
 * A concrete algebra supplies [B] * x for its peel factors B and the peel
 * itself; everything else is derived here.
 */
#pragma once

#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "schurlab/combinatorics.hpp"
#include "schurlab/element.hpp"

namespace schurlab {

class BasedAlgebra {
public:
    virtual ~BasedAlgebra() = default;

    /// [B] * x in the standard basis. Terms of x with ro != co(B) contribute zero.
    virtual Element mult_factor(const Mat& B, const Element& x) const = 0;

    /// (B, A1) with M_A = [B] M_{A1}; nullopt when A is diagonal.
    virtual std::optional<std::pair<Mat, Mat>> peel(const Mat& A) const = 0;

    /// Matrices with the same (ro, co) as A that may lie below A; a superset is fine.
    virtual std::vector<Mat> block_below(const Mat& A) const = 0;

    virtual bool leq(const Mat& a, const Mat& b) const { return bruhat_leq(a, b); }

    /// Strictly increasing along leq.
    virtual long long rank(const Mat& A) const { return bruhat_rank(A, std::max(1, A.spread())); }

    /// Factors of M_A, leftmost first.
    std::vector<Mat> monomial_factors(const Mat& A) const {
        std::vector<Mat> out;
        Mat cur = A;
        while (auto p = peel(cur)) {
            out.push_back(p->first);
            cur = p->second;
        }
        return out;
    }

    /// M_A in the standard basis: [A] + sum_{A' < A} S_{A,A'} [A'].
    const Element& monomial(const Mat& A) const {
        if (auto* hit = lookup(mono_, A)) return *hit;
        Element e;
        auto p = peel(A);
        if (!p) {
            e = single(A);
        } else {
            e = mult_factor(p->first, monomial(p->second));
            auto it = e.find(A);
            if (it == e.end() || it->second != LaurentPoly(1))
                throw TriangularityFailure("monomial for " + A.str() + " does not lead with [A]");
            for (const auto& [C, c] : e)
                if (C != A && !leq(C, A))
                    throw TriangularityFailure("monomial for " + A.str() + " has term " + C.str() + " not below A");
        }
        return store(mono_, A, std::move(e));
    }

    /// [A] = sum_{A'} R_{A,A'} M_{A'}.
    const Element& inverse_row(const Mat& A) const {
        if (auto* hit = lookup(inv_, A)) return *hit;
        Element r = single(A);
        for (const auto& [C, c] : monomial(A)) {
            if (C == A) continue;
            add_into(r, inverse_row(C), -c);
        }
        return store(inv_, A, std::move(r));
    }

    /// bar([A]) = sum_{A'} C_{A,A'} [A'].
    const Element& bar_row(const Mat& A) const {
        if (auto* hit = lookup(bar_, A)) return *hit;
        Element out;
        for (const auto& [C, r] : inverse_row(A)) add_into(out, monomial(C), r.bar());
        auto it = out.find(A);
        if (it == out.end() || it->second != LaurentPoly(1))
            throw TriangularityFailure("bar of " + A.str() + " is not unitriangular");
        return store(bar_, A, std::move(out));
    }

    Element bar(const Element& x) const {
        Element out;
        for (const auto& [A, c] : x) add_into(out, bar_row(A), c.bar());
        return out;
    }

    /// Expansion of x in the monomial basis.
    Element to_monomials(const Element& x) const {
        Element out;
        for (const auto& [A, c] : x) add_into(out, inverse_row(A), c);
        return out;
    }

    /// M_A * y.
    Element apply_monomial(const Mat& A, Element y) const {
        auto fs = monomial_factors(A);
        for (auto it = fs.rbegin(); it != fs.rend(); ++it) {
            if (y.empty()) break;
            y = mult_factor(*it, y);
        }
        // length-zero monomial acts as the idempotent [A]
        if (fs.empty()) {
            Element z;
            for (const auto& [C, c] : y)
                if (C.ro() == A.co()) add_term(z, C, c);
            return z;
        }
        return y;
    }

    Element multiply(const Element& x, const Element& y) const {
        Element out;
        if (x.empty() || y.empty()) return out;
        for (const auto& [M, r] : to_monomials(x)) {
            Element part;
            for (const auto& [C, c] : y)
                if (C.ro() == M.co()) add_term(part, C, c);
            if (part.empty()) continue;
            add_into(out, apply_monomial(M, part), r);
        }
        return out;
    }

    /// All matrices A' <= A in A's block, sorted by rank (descending), A first.
    std::vector<Mat> down_set(const Mat& A) const {
        std::vector<Mat> out;
        for (const auto& C : block_below(A))
            if (C == A || leq(C, A)) out.push_back(C);
        std::stable_sort(out.begin(), out.end(), [&](const Mat& a, const Mat& b) { return rank(a) > rank(b); });
        return out;
    }

protected:
    using Memo = std::map<Mat, Element>;

    const Element* lookup(const Memo& m, const Mat& A) const {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = m.find(A);
        return it == m.end() ? nullptr : &it->second;
    }
    const Element& store(Memo& m, const Mat& A, Element e) const {
        std::lock_guard<std::mutex> lock(mu_);
        return m.emplace(A, std::move(e)).first->second;
    }

    mutable std::mutex mu_;
    mutable Memo mono_, inv_, bar_;
};

}  // namespace schurlab
