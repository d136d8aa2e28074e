// Tensor spaces, zeta, parabolic KL polynomials.

#include <gtest/gtest.h>

#include <set>

#include "schurlab/suites.hpp"

using namespace schurlab;

TEST(Duality, ZetaOnStandardBasis) {
    for (int d = 1; d <= 2; ++d) EXPECT_TRUE(verify_zeta_standard(Duality(3, d)).pass) << d;
    Duality D(3, 1);
    // linear on sums
    TensorVec x{{a_to_AJ(ColMatrix{3, {1}}), LaurentPoly::v(1)}, {a_to_AJ(ColMatrix{3, {3}}), LaurentPoly(2)}};
    TensorVec want{{ColMatrix{3, {1}}, LaurentPoly::v(1)}, {ColMatrix{3, {3}}, LaurentPoly(2)}};
    EXPECT_EQ(D.zeta(x), want);
}

TEST(Duality, BijectionOfStandardBases) {
    for (int d = 1; d <= 3; ++d) {
        Duality D(3, d);
        auto pj = D.pi_j();
        EXPECT_EQ(pj.size(), D.pi().size());
        EXPECT_EQ(std::set<ColMatrix>(pj.begin(), pj.end()).size(), pj.size());
    }
}

TEST(Duality, PaddingKeepsStatistics) {
    Duality D(3, 2);  // window N = 5
    for (const auto& A : D.pi()) {
        ColMatrix AJ = a_to_AJ(A);
        EXPECT_EQ(D.jside().dj(D.pad_j(AJ)), ell_stat(AJ));
        EXPECT_EQ(D.unpad_a(D.pad_a(A)), A);
        EXPECT_EQ(D.unpad_j(D.pad_j(AJ)), AJ);
    }
    // type A side: same canonical elements as in the unpadded 3 x 3 algebra
    SchurA S(3, 2, false);
    CanonicalBasis cb(S);
    auto square = [](const ColMatrix& A) {
        Mat M = Mat::finite(3);
        for (int c = 1; c <= A.d(); ++c) M.set(A.rows[c - 1], c, 1);
        return M;
    };
    for (const auto& A : D.pi()) {
        TensorVec want;
        for (const auto& [M, c] : cb.canonical(square(A))) {
            ColMatrix B{3, {}};
            for (int col = 1; col <= 2; ++col)
                for (int i = 1; i <= 3; ++i)
                    if (M(i, col)) B.rows.push_back(i);
            add_term(want, B, c);
        }
        EXPECT_EQ(D.canonical_a(A), want);
    }
}

TEST(Duality, TensorPositivity) {
    for (int d = 1; d <= 2; ++d) EXPECT_TRUE(verify_tensor_positivity(Duality(3, d)).pass) << d;
    auto c = verify_tensor_positivity(Duality(3, 2), [](TensorVec& x) {
        if (x.size() > 1) std::prev(x.end())->second = -std::prev(x.end())->second;
        else x.begin()->second = -x.begin()->second;
    });
    EXPECT_FALSE(c.pass);
}

TEST(Duality, ParabolicKL) {
    for (int d = 1; d <= 2; ++d) EXPECT_TRUE(verify_parabolic_kl_equality(Duality(3, d)).pass) << d;
    Duality D(3, 2);
    auto rows = parabolic_kl_comparison(D);
    EXPECT_EQ(rows.size(), 12u);
    int nontrivial = 0;
    for (const auto& r : rows) {
        EXPECT_EQ(r.A.ro(), r.B.ro());
        if (r.typeA != LaurentPoly(1)) {
            ++nontrivial;
            EXPECT_EQ(r.typeA, LaurentPoly::v(-1));
        }
    }
    EXPECT_EQ(nontrivial, 3);
    Duality D1(3, 1);
    for (const auto& r : parabolic_kl_comparison(D1)) EXPECT_EQ(r.A, r.B);
}

TEST(Duality, Intertwining) {
    EXPECT_TRUE(verify_zeta_intertwines(Duality(3, 1)).pass);
    EXPECT_TRUE(verify_zeta_intertwines(Duality(3, 2)).pass);
}

TEST(Duality, Validation) {
    EXPECT_THROW(Duality(4, 1), ValidationError);
    EXPECT_THROW(Duality(3, 0), ValidationError);
    EXPECT_THROW(Duality(3, 4), ScaleExceeded);
    Duality D(3, 1);
    EXPECT_THROW(D.pad_a(ColMatrix{3, {1, 2}}), ValidationError);
}
