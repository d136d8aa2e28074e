// jmath / imath Schur algebras: multiplication, comultiplication, embedding,
// transfer, the coideal relations.

#include <gtest/gtest.h>

#include <random>

#include "schurlab/suites.hpp"

using namespace schurlab;

namespace {

LaurentPoly v(int e) { return LaurentPoly::v(e); }

Mat mat3(std::initializer_list<int> xs) {
    Mat M = Mat::finite(3);
    int k = 0;
    for (int x : xs) {
        M.set(k / 3 + 1, k % 3 + 1, x);
        ++k;
    }
    return M;
}

}  // namespace

TEST(SchurJ, UnitGradingAssociativity) {
    SchurJ S(3, 2);
    const auto all = S.all_matrices();
    for (const auto& A : all) {
        EXPECT_EQ(S.multiply(S.unit(), single(A)), single(A));
        EXPECT_EQ(S.multiply(single(A), S.unit()), single(A));
    }
    std::mt19937 rng(17);
    std::uniform_int_distribution<size_t> pick(0, all.size() - 1);
    int tried = 0, zero = 0;
    while (tried < 40) {
        Mat X = all[pick(rng)], Y = all[pick(rng)], Z = all[pick(rng)];
        if (X.co() != Y.ro()) {
            EXPECT_TRUE(S.multiply(single(X), single(Y)).empty());
            ++zero;
            continue;
        }
        if (Y.co() != Z.ro()) continue;
        ++tried;
        EXPECT_EQ(S.multiply(S.multiply(single(X), single(Y)), single(Z)),
                  S.multiply(single(X), S.multiply(single(Y), single(Z))));
    }
    EXPECT_GT(zero, 0);
}

TEST(SchurJ, BarAndFrozenCanonicalTable) {
    SchurJ S(3, 1);
    EXPECT_EQ(S.all_matrices().size(), 5u);
    for (const auto& A : S.all_matrices()) EXPECT_EQ(S.bar(S.bar_row(A)), single(A));
    CanonicalBasis cb(S);
    int nontrivial = 0;
    for (const auto& A : S.all_matrices())
        if (cb.canonical(A).size() > 1) ++nontrivial;
    EXPECT_EQ(nontrivial, 1);
    Element want = single(mat3({0, 0, 1, 0, 1, 0, 1, 0, 0}));
    add_term(want, Mat::diag({1, 1, 1}), v(-1));
    EXPECT_EQ(cb.canonical(mat3({0, 0, 1, 0, 1, 0, 1, 0, 0})), want);
    SchurJ S2(3, 2);
    CanonicalBasis cb2(S2);
    EXPECT_TRUE(verify_kl_table(S2, cb2.table(S2.all_matrices()), "jmath n=3 d=2").pass);
}

TEST(ComultJ, RenormalizedKDisplay) {
    const int n = 3;
    SchurJ S(n, 2), S1(n, 1);
    SchurA S2(n, 1, false);
    ComultJ C(S, S1, S2);
    for (int i = 1; i <= S.r(); ++i)
        EXPECT_EQ(C.delta_word({Gen::jk(i)}), tensor(S1.gen(Gen::jk(i)), S2.word({Gen::K(i), Gen::Kinv(n - i)})));
}

TEST(ComultJ, RoutesAgree) {
    EXPECT_TRUE(verify_comult_j_routes(SchurJ(3, 1)).pass);
    EXPECT_TRUE(verify_comult_j_routes(SchurJ(3, 2)).pass);
}

TEST(ComultJ, Coassociativity) {
    EXPECT_TRUE(verify_mixed_coassociativity(SchurJ(3, 2)).pass);
}

TEST(ComultJ, Positivity) {
    EXPECT_TRUE(verify_comult_j_positivity(SchurJ(3, 2)).pass);
    auto c = verify_comult_j_positivity(SchurJ(3, 1), [](Tensor& t) {
        if (!t.empty()) t.begin()->second = -t.begin()->second;
    });
    EXPECT_FALSE(c.pass);
}

TEST(EmbedJ, DisplaysRankPositivity) {
    EXPECT_TRUE(verify_embedding_j(SchurJ(3, 1)).pass);
    EXPECT_TRUE(verify_embedding_j(SchurJ(3, 2)).pass);
    auto c = verify_embedding_j(SchurJ(3, 1), [](Element& g) {
        if (!g.empty()) g.begin()->second = -g.begin()->second;
    });
    EXPECT_FALSE(c.pass);
    // the unit goes to a sum of idempotents
    SchurJ S(3, 2);
    SchurA A(3, 2, false);
    EmbedJ J(S, A);
    for (const auto& [M, c] : J.apply(S.unit())) {
        EXPECT_TRUE(M.is_diagonal());
        EXPECT_EQ(c, LaurentPoly(1));
    }
}

TEST(TransferJ, GeneratorsUnitPositivity) {
    EXPECT_TRUE(verify_transfer_j(SchurJ(3, 3), false).pass);
    EXPECT_TRUE(verify_transfer_j(SchurJ(3, 2), true).pass);
    EXPECT_TRUE(verify_transfer_j(SchurJ(3, 3), true).pass);
}

TEST(IMath, Truncation) {
    SchurJ S(3, 2);
    for (const auto& M : S.i_matrices()) EXPECT_EQ(SchurJ::truncate_i(single(M)), single(M));
    const int r = S.r();
    // t = j (f_r e_r + (k_r - k_r^-1)/(v - v^-1)) j
    Element kk = S.gen(Gen::jk(r)) + scaled(S.gen(Gen::jkinv(r)), -1);
    Element div;
    for (const auto& [M, c] : kk) add_term(div, M, c.exact_div(v(1) - v(-1)));
    Element t = SchurJ::truncate_i(S.multiply(S.j_idem(), S.multiply(S.word({Gen::jf(r), Gen::je(r)}) + div, S.j_idem())));
    EXPECT_EQ(S.word_i({Gen::jt()}), t);
    // e_i-type generators below r at n = 5
    SchurJ S5(5, 1);
    EXPECT_EQ(S5.word_i({Gen::je(1)}), SchurJ::truncate_i(S5.multiply(S5.j_idem(), S5.multiply(S5.gen(Gen::je(1)), S5.j_idem()))));
    EXPECT_THROW(S5.word_i({Gen::je(2)}), ValidationError);
}

TEST(IMath, ComultEmbeddingPositivity) {
    EXPECT_TRUE(verify_imath(SchurJ(3, 1)).pass);
    EXPECT_TRUE(verify_imath(SchurJ(3, 2)).pass);
    EXPECT_TRUE(verify_imath(SchurJ(5, 1)).pass);
    auto c = verify_imath(SchurJ(3, 2), [](Tensor& t) {
        if (!t.empty()) t.begin()->second = -t.begin()->second;
    });
    EXPECT_FALSE(c.pass);
}

TEST(Relations, CoidealPresentation) {
    for (int d = 1; d <= 2; ++d) EXPECT_TRUE(verify_coideal_relations(SchurJ(3, d)).pass) << d;
    EXPECT_TRUE(verify_coideal_relations(SchurJ(5, 1)).pass);
}

TEST(SchurJ, Validation) {
    EXPECT_THROW(SchurJ(4, 1), ValidationError);
    EXPECT_THROW(SchurJ(3, -1), ValidationError);
    EXPECT_THROW(run_suite("relations", SuiteParams{"jmath", 2, 1}), ValidationError);
}
