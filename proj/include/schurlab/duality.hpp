/**
 * @file duality.hpp
 * @brief Tensor spaces as column slices of the Schur algebras, the map zeta
 *        from the jmath tensor space to the type A one, and parabolic KL
 *        comparisons.
 *
 * Both tensor spaces are realized inside square Schur algebras with
 * N = max(n, 2d+1) steps.  Rows and columns of the rectangular matrices are
 * spread symmetrically into the N x N window (zero rows and columns in the
 * middle), which changes neither orbit dimensions nor KL polynomials.
 */
#pragma once

#include <map>
#include <memory>
#include <vector>

#include "schurlab/canonical.hpp"
#include "schurlab/coideal.hpp"
#include "schurlab/combinatorics.hpp"

namespace schurlab {

/// Tensor vectors indexed by 0/1 column matrices.
using TensorVec = std::map<ColMatrix, LaurentPoly>;

inline std::string tensorvec_str(const TensorVec& x) {
    if (x.empty()) return "0";
    std::string s;
    for (const auto& [A, c] : x) s += (s.empty() ? "" : " + ") + ("(" + c.str() + ")" + A.str());
    return s;
}

class Duality {
public:
    Duality(int n, int d)
        : n_(n), d_(d), N_(std::max(n, 2 * d + 1)), SJ_(N_, d), SA_(N_, d, false), S0_(N_, 0), cbj_(SJ_), cba_(SA_) {
        if (n < 1 || n % 2 == 0) throw ValidationError("tensor duality needs odd n");
        if (d < 1) throw ValidationError("tensor duality needs d >= 1");
        co_.reset(new ComultJ(SJ_, S0_, SA_));
        co_->restrict_right_co(a_column_weight());
    }

    int n() const { return n_; }
    int d() const { return d_; }
    int N() const { return N_; }
    const SchurJ& jside() const { return SJ_; }
    const SchurA& aside() const { return SA_; }
    const CanonicalBasis& jcanonical() const { return cbj_; }
    const CanonicalBasis& acanonical() const { return cba_; }

    /// Positions of the n rows, and of the 2d+1 columns, inside the window.
    int row_pos(int i) const { return spread_pos(i, n_); }
    int col_pos(int j) const { return spread_pos(j, 2 * d_ + 1); }

    Comp a_column_weight() const {
        Comp c(N_, 0);
        for (int j = 1; j <= d_; ++j) c[col_pos(j) - 1] = 1;
        return c;
    }
    Comp j_column_weight() const {
        Comp c(N_, 0);
        for (int j = 1; j <= 2 * d_ + 1; ++j) c[col_pos(j) - 1] = 1;
        return c;
    }

    Mat pad_a(const ColMatrix& A) const {
        check_shape(A, d_);
        Mat M = Mat::finite(N_);
        for (int j = 1; j <= d_; ++j) M.set(row_pos(A.rows[j - 1]), col_pos(j), 1);
        return M;
    }
    Mat pad_j(const ColMatrix& A) const {
        check_shape(A, 2 * d_ + 1);
        if (!is_pi_j(A)) throw ValidationError("matrix is not in Pi^j: " + A.str());
        Mat M = Mat::finite(N_);
        for (int j = 1; j <= 2 * d_ + 1; ++j) M.set(row_pos(A.rows[j - 1]), col_pos(j), 1);
        return M;
    }
    ColMatrix unpad_a(const Mat& M) const { return unpad(M, d_); }
    ColMatrix unpad_j(const Mat& M) const { return unpad(M, 2 * d_ + 1); }

    std::vector<ColMatrix> pi() const { return all_col_matrices(d_, n_); }
    std::vector<ColMatrix> pi_j() const {
        std::vector<ColMatrix> out;
        for (const auto& A : pi()) out.push_back(a_to_AJ(A));
        std::sort(out.begin(), out.end());
        return out;
    }

    /// zeta on the window: the jmath-to-type-A embedding cut down to the tensor columns.
    Element zeta_window(const Element& x) const {
        Element out;
        for (const auto& [k, c] : co_->delta(x))
            if (k.second.co() == a_column_weight()) add_term(out, k.second, c);
        return out;
    }

    TensorVec zeta(const TensorVec& x) const {
        Element y;
        for (const auto& [A, c] : x) add_term(y, pad_j(A), c);
        return to_vec_a(zeta_window(y));
    }

    /// Canonical elements of the two tensor spaces, in their standard bases.
    TensorVec canonical_j(const ColMatrix& AJ) const { return to_vec_j(cbj_.canonical(pad_j(AJ))); }
    TensorVec canonical_a(const ColMatrix& A) const { return to_vec_a(cba_.canonical(pad_a(A))); }

    /// x in the type A canonical basis.
    TensorVec to_canonical_a(const TensorVec& x) const {
        Element y;
        for (const auto& [A, c] : x) add_term(y, pad_a(A), c);
        return to_vec_a(cba_.to_canonical(y));
    }

    TensorVec to_vec_a(const Element& x) const {
        TensorVec out;
        for (const auto& [M, c] : x) add_term(out, unpad_a(M), c);
        return out;
    }
    TensorVec to_vec_j(const Element& x) const {
        TensorVec out;
        for (const auto& [M, c] : x) add_term(out, unpad_j(M), c);
        return out;
    }

    const ComultJ& comult() const { return *co_; }

private:
    // index i of m slots -> position in 1..N, symmetric about the middle
    int spread_pos(int i, int m) const {
        const int half = (m - 1) / 2, R = (N_ - 1) / 2;
        if (i <= half) return i;
        if (i == half + 1) return R + 1;
        return N_ - (m - i);
    }
    void check_shape(const ColMatrix& A, int cols) const {
        if (A.n != n_ || A.d() != cols) throw ValidationError("column matrix has the wrong shape: " + A.str());
    }
    ColMatrix unpad(const Mat& M, int cols) const {
        ColMatrix A{n_, std::vector<int>(cols, 0)};
        std::vector<int> rowof(N_ + 1, 0);
        for (int i = 1; i <= n_; ++i) rowof[row_pos(i)] = i;
        for (auto [i, j, a] : M.entries()) {
            int c = 0;
            for (int t = 1; t <= cols; ++t)
                if (col_pos(t) == j) c = t;
            if (a != 1 || c == 0 || rowof[i] == 0 || A.rows[c - 1] != 0)
                throw ConsistencyFailure("matrix leaves the tensor window: " + M.str());
            A.rows[c - 1] = rowof[i];
        }
        for (int x : A.rows)
            if (x == 0) throw ConsistencyFailure("matrix leaves the tensor window: " + M.str());
        return A;
    }

    int n_, d_, N_;
    SchurJ SJ_;
    SchurA SA_;
    SchurJ S0_;
    CanonicalBasis cbj_, cba_;
    std::unique_ptr<ComultJ> co_;
};

inline nlohmann::json col_json(const ColMatrix& A) { return A.rows; }

/// zeta([A^J]) = [A] for every A.
inline Certificate verify_zeta_standard(const Duality& D) {
    Certificate cert;
    cert.theorem = "zeta maps [A^J] to [A]";
    cert.parameters = {{"n", D.n()}, {"d", D.d()}};
    for (const auto& A : D.pi()) {
        TensorVec img = D.zeta({{a_to_AJ(A), LaurentPoly(1)}});
        TensorVec want{{A, LaurentPoly(1)}};
        cert.check(img == want, {{"A", col_json(A)}, {"image", tensorvec_str(img)}});
    }
    return cert;
}

/// zeta({A^J}) = {A} + sum c_{B,A} {B}, c_{B,A} >= 0, ro(B) != ro(A), B^J below A^J.
/// `tamper` may rewrite each expansion before it is checked.
inline Certificate verify_tensor_positivity(const Duality& D,
                                            const std::function<void(TensorVec&)>& tamper = nullptr) {
    Certificate cert;
    cert.theorem = "tensor positivity of zeta on canonical bases";
    cert.parameters = {{"n", D.n()}, {"d", D.d()}};
    for (const auto& A : D.pi()) {
        const ColMatrix AJ = a_to_AJ(A);
        TensorVec x = D.to_canonical_a(D.zeta(D.canonical_j(AJ)));
        if (tamper) tamper(x);
        bool ok = x.count(A) && x.at(A) == LaurentPoly(1);
        for (const auto& [B, c] : x) {
            if (B == A) continue;
            ok = ok && c.is_positive() && B.ro() != A.ro() &&
                 D.jside().leq(D.pad_j(a_to_AJ(B)), D.pad_j(AJ));
        }
        cert.check(ok, {{"A", col_json(A)}, {"expansion", tensorvec_str(x)}});
    }
    return cert;
}

/// One row per pair (B, A) with ro(B) = ro(A) and B <= A on either side.
struct KLComparison {
    ColMatrix A, B;
    LaurentPoly typeA, typeB;
};

inline std::vector<KLComparison> parabolic_kl_comparison(const Duality& D) {
    std::vector<KLComparison> out;
    for (const auto& A : D.pi()) {
        TensorVec pa = D.canonical_a(A);
        TensorVec pj = D.canonical_j(a_to_AJ(A));
        for (const auto& B : D.pi()) {
            if (B.ro() != A.ro()) continue;
            LaurentPoly x = pa.count(B) ? pa.at(B) : LaurentPoly();
            ColMatrix BJ = a_to_AJ(B);
            LaurentPoly y = pj.count(BJ) ? pj.at(BJ) : LaurentPoly();
            if (x.is_zero() && y.is_zero()) continue;
            out.push_back({A, B, x, y});
        }
    }
    return out;
}

inline Certificate verify_parabolic_kl_equality(const Duality& D) {
    Certificate cert;
    cert.theorem = "parabolic KL polynomials of type B and A agree when ro(B) = ro(A)";
    cert.parameters = {{"n", D.n()}, {"d", D.d()}};
    for (const auto& row : parabolic_kl_comparison(D))
        cert.check(row.typeA == row.typeB, {{"A", col_json(row.A)},
                                            {"B", col_json(row.B)},
                                            {"P_typeA", row.typeA.str()},
                                            {"P_typeB", row.typeB.str()}});
    return cert;
}

/// zeta(g . t) = j(g) . zeta(t) for jmath generators g and standard vectors t.
inline Certificate verify_zeta_intertwines(const Duality& D) {
    Certificate cert;
    cert.theorem = "zeta intertwines the jmath action with the type A action";
    cert.parameters = {{"n", D.n()}, {"d", D.d()}};
    const SchurJ& SJ = D.jside();
    EmbedJ emb(SJ, D.aside());
    for (const auto& g : j_generators(SJ.n())) {
        Element jg = emb.apply_word({g});
        for (const auto& AJ : D.pi_j()) {
            Element t = single(D.pad_j(AJ));
            Element lhs = D.zeta_window(SJ.act(g, t));
            Element rhs = D.aside().multiply(jg, D.zeta_window(t));
            cert.check(lhs == rhs, {{"generator", g.str()}, {"AJ", col_json(AJ)}});
        }
    }
    return cert;
}

}  // namespace schurlab
