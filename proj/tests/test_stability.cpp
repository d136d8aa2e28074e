// Transfer chains and stabilization.

#include <gtest/gtest.h>

#include "schurlab/stability.hpp"

using namespace schurlab;

namespace {

Mat from_rows(std::vector<std::vector<int>> rows) {
    const int n = static_cast<int>(rows.size());
    Mat M = Mat::finite(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) M.set(i + 1, j + 1, rows[i][j]);
    return M;
}

}  // namespace

TEST(Stability, DiagonalSeedsAreStableAtOnce) {
    TransferChain ch(ChainKind::FiniteA, 2);
    StableElement st = detect_stabilization(ch, Mat::diag({1, 0}), 6);
    EXPECT_EQ(st.threshold_index, 1);
    EXPECT_EQ(st.shift, Mat::diag({1, 1}));
}

TEST(Stability, FrozenThresholds) {
    TransferChain a2(ChainKind::FiniteA, 2);
    StableElement st = detect_stabilization(a2, from_rows({{0, 1}, {0, 0}}), 6);
    EXPECT_EQ(st.threshold_d, 3);
    EXPECT_EQ(st.shift, Mat::diag({1, 1}));
    EXPECT_EQ(detect_stabilization(a2, from_rows({{0, 0}, {2, 0}}), 6).threshold_d, 4);
    TransferChain a3(ChainKind::FiniteA, 3);
    EXPECT_EQ(detect_stabilization(a3, from_rows({{0, 1, 0}, {0, 0, 0}, {0, 0, 0}}), 9).threshold_d, 4);

    TransferChain j3(ChainKind::JMath, 3);
    st = detect_stabilization(j3, Mat::diag({0, 1, 0}), 9);
    EXPECT_EQ(st.threshold_d, 3);
    EXPECT_EQ(st.shift, Mat::diag({2, 2, 2}));

    TransferChain i3(ChainKind::IMath, 3);
    for (const Mat& seed : {from_rows({{0, 0, 1}, {0, 1, 0}, {1, 0, 0}}), Mat::diag({1, 1, 1})}) {
        st = detect_stabilization(i3, seed, 9);
        EXPECT_EQ(st.threshold_d, 3);
        EXPECT_EQ(st.shift, Mat::diag({2, 0, 2}));
    }
}

TEST(Stability, TransferIsMultiplicative) {
    TransferChain ch(ChainKind::FiniteA, 2);
    const SchurA& S = *ch.schur_a(3);
    const SchurA& T = *ch.schur_a(1);
    for (const Gen& g : {Gen::E(1), Gen::F(1)})
        for (const Gen& h : {Gen::E(1), Gen::F(1), Gen::K(1)})
            EXPECT_EQ(ch.transfer(3, S.word({g, h})), T.multiply(ch.transfer(3, S.gen(g)), ch.transfer(3, S.gen(h))));
}

TEST(Stability, Errors) {
    TransferChain a2(ChainKind::FiniteA, 2);
    EXPECT_THROW(detect_stabilization(a2, from_rows({{0, 1}, {0, 0}}), 7), ScaleExceeded);
    EXPECT_THROW(detect_stabilization(a2, from_rows({{0, 1}, {0, 0}}), 2), NotStabilized);
    EXPECT_THROW(detect_stabilization(a2, from_rows({{0, 0}, {2, 0}}), 3), NotStabilized);
    TransferChain j3(ChainKind::JMath, 3);
    EXPECT_THROW(detect_stabilization(j3, from_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 0}}), 3), ValidationError);
    EXPECT_EQ(parse_chain_kind("imath"), ChainKind::IMath);
    EXPECT_THROW(parse_chain_kind("affine-a"), ValidationError);
}

TEST(Stability, ComultPositivity) {
    TransferChain a2(ChainKind::FiniteA, 2);
    EXPECT_TRUE(verify_idempotented_comult_positivity(a2, from_rows({{0, 1}, {0, 0}}), 1, 6).pass);
    TransferChain a3(ChainKind::FiniteA, 3);
    EXPECT_TRUE(verify_idempotented_comult_positivity(a3, from_rows({{0, 1, 0}, {0, 0, 0}, {0, 0, 0}}), 1, 7).pass);
    TransferChain j3(ChainKind::JMath, 3);
    EXPECT_TRUE(verify_idempotented_comult_positivity(j3, Mat::diag({0, 1, 0}), 1, 3).pass);
    TransferChain i3(ChainKind::IMath, 3);
    EXPECT_TRUE(verify_idempotented_comult_positivity(i3, from_rows({{0, 0, 1}, {0, 1, 0}, {1, 0, 0}}), 1, 3).pass);
    auto bad = verify_idempotented_comult_positivity(a2, from_rows({{0, 1}, {0, 0}}), 1, 6, [](Tensor& t) {
        if (!t.empty()) t.begin()->second = -t.begin()->second;
    });
    EXPECT_FALSE(bad.pass);
}

TEST(Stability, IdempotentsSplitIntoIdempotents) {
    TransferChain a2(ChainKind::FiniteA, 2);
    const SchurA& S = *a2.schur_a(3);
    SchurA S1(2, 2, false), S2(2, 1, false);
    ComultA co(S, S1, S2);
    for (const auto& [k, c] : co.delta(single(Mat::diag({2, 1})))) {
        EXPECT_EQ(c, LaurentPoly(1));
        EXPECT_TRUE(k.first.is_diagonal() && k.second.is_diagonal());
    }
}

TEST(Stability, EmbeddingPositivity) {
    TransferChain j3(ChainKind::JMath, 3);
    EXPECT_TRUE(verify_embedding_positivity(j3, Mat::diag({0, 1, 0}), 3).pass);
    TransferChain i3(ChainKind::IMath, 3);
    EXPECT_TRUE(verify_embedding_positivity(i3, from_rows({{0, 0, 1}, {0, 1, 0}, {1, 0, 0}}), 3).pass);
    auto bad = verify_embedding_positivity(j3, Mat::diag({0, 1, 0}), 3, [](Element& g) {
        if (!g.empty()) g.begin()->second = -g.begin()->second;
    });
    EXPECT_FALSE(bad.pass);
    TransferChain a2(ChainKind::FiniteA, 2);
    EXPECT_THROW(verify_embedding_positivity(a2, Mat::diag({1, 0}), 3), ValidationError);
}
