// Type A Schur algebras: multiplication, bar involution, canonical bases,
// xi twists, comultiplication and transfer.

#include <gtest/gtest.h>

#include <random>

#include "schurlab/suites.hpp"

using namespace schurlab;

namespace {

LaurentPoly v(int e) { return LaurentPoly::v(e); }

// coefficient in the e-basis is a polynomial in q = v^2
BigInt at_q(const LaurentPoly& p, int q) {
    BigInt s = 0;
    for (const auto& [e, c] : p.terms()) {
        if (e < 0 || e % 2) throw std::runtime_error("not a polynomial in q: " + p.str());
        BigInt t = c;
        for (int k = 0; k < e / 2; ++k) t *= q;
        s += t;
    }
    return s;
}

Element e_product(const SchurA& S, const Mat& X, const Mat& Y) {
    return S.to_e_basis(S.multiply(S.from_e_basis(single(X)), S.from_e_basis(single(Y))));
}

Mat mat2(int a, int b, int c, int d) {
    Mat M = Mat::finite(2);
    M.set(1, 1, a);
    M.set(1, 2, b);
    M.set(2, 1, c);
    M.set(2, 2, d);
    return M;
}

}  // namespace

TEST(SchurA, DiagonalFactorIsIdentity) {
    SchurA S(3, 2, false);
    for (const auto& A : S.all_matrices()) EXPECT_EQ(S.mult_factor(Mat::diag(A.ro()), single(A)), single(A));
}

TEST(SchurA, SemisimpleExampleAgainstCounting) {
    Mat B = mat2(0, 1, 0, 1);
    Mat A = Mat::diag({0, 2});
    auto df = dufu_e(B, A);
    for (int q : {3, 5, 7}) {
        auto cnt = convolve(B, A, q);
        ASSERT_EQ(cnt.size(), df.size());
        for (const auto& [C, p] : df) EXPECT_EQ(p.eval(q), BigInt(cnt[C]));
    }
}

TEST(SchurA, FullTableAgainstCounting) {
    SchurA S(2, 2, false);
    const auto all = S.all_matrices();
    for (const auto& X : all)
        for (const auto& Y : all) {
            if (X.co() != Y.ro()) continue;
            Element e = e_product(S, X, Y);
            for (int q : {3, 5}) {
                auto cnt = convolve(X, Y, q);
                std::map<Mat, BigInt> got, want;
                for (const auto& [C, c] : e)
                    if (BigInt z = at_q(c, q); z != 0) got[C] = z;
                for (const auto& [C, k] : cnt) want[C] = k;
                EXPECT_EQ(got, want) << X.str() << " * " << Y.str() << " q=" << q;
            }
        }
}

TEST(SchurA, RankOneIsCommutative) {
    SchurA S(1, 3, true, 2);
    const auto all = S.all_matrices();
    for (const auto& X : all)
        for (const auto& Y : all) EXPECT_EQ(e_product(S, X, Y), e_product(S, Y, X));
}

TEST(SchurA, TransposeReversesProducts) {
    SchurA S(2, 2, false);
    const auto all = S.all_matrices();
    for (const auto& X : all)
        for (const auto& Y : all) {
            if (X.co() != Y.ro()) continue;
            Element lhs;
            for (const auto& [C, c] : e_product(S, X, Y)) add_term(lhs, C.transpose(), c);
            EXPECT_EQ(lhs, e_product(S, Y.transpose(), X.transpose()));
        }
}

TEST(SchurA, UnitAndAssociativity) {
    std::mt19937 rng(5);
    for (bool per : {false, true}) {
        SchurA S(2, 2, per, 2);
        const auto all = S.all_matrices();
        std::uniform_int_distribution<size_t> pick(0, all.size() - 1);
        for (const auto& A : all) {
            EXPECT_EQ(S.multiply(single(A), S.unit()), single(A));
            EXPECT_EQ(S.multiply(S.unit(), single(A)), single(A));
        }
        int tried = 0;
        while (tried < 60) {
            Mat X = all[pick(rng)], Y = all[pick(rng)], Z = all[pick(rng)];
            if (X.co() != Y.ro() || Y.co() != Z.ro()) continue;
            ++tried;
            Element x = single(X), y = single(Y), z = single(Z);
            EXPECT_EQ(S.multiply(S.multiply(x, y), z), S.multiply(x, S.multiply(y, z)));
        }
    }
}

TEST(SchurA, Monomials) {
    SchurA S(2, 3, false);
    for (const auto& A : S.all_matrices()) {
        auto fs = S.monomial_factors(A);
        if (A.is_diagonal()) {
            EXPECT_TRUE(fs.empty());
            EXPECT_EQ(S.monomial(A), single(A));
        }
        // deg_i of the monomial is eps_i(A)
        for (int i = 1; i <= 2; ++i) {
            int deg = 0;
            for (const auto& B : fs) deg += epsilon_stat(B, i);
            EXPECT_EQ(deg, epsilon_stat(A, i));
        }
    }
    EXPECT_EQ(S.monomial_factors(mat2(1, 1, 0, 1)).size(), 1u);
}

TEST(SchurA, BarInvolution) {
    std::mt19937 rng(3);
    for (bool per : {false, true}) {
        SchurA S(2, 2, per, 2);
        const auto all = S.all_matrices();
        for (const auto& A : all) EXPECT_EQ(S.bar(S.bar_row(A)), single(A));
        std::uniform_int_distribution<size_t> pick(0, all.size() - 1);
        for (int t = 0; t < 40; ++t) {
            Mat X = all[pick(rng)], Y = all[pick(rng)];
            if (X.co() != Y.ro()) continue;
            EXPECT_EQ(S.bar(S.multiply(single(X), single(Y))), S.multiply(S.bar(single(X)), S.bar(single(Y))));
        }
        // C_{A,A'} != 0 forces equal eps
        for (const auto& A : all)
            for (const auto& [C, c] : S.bar_row(A))
                for (int i = 1; i <= 2; ++i) EXPECT_EQ(epsilon_stat(A, i), epsilon_stat(C, i));
    }
}

// ------------------------------------------------------------ canonical

TEST(Canonical, FrozenTableTwoTwo) {
    SchurA S(2, 2, false);
    CanonicalBasis cb(S);
    int nontrivial = 0;
    for (const auto& A : S.all_matrices()) {
        const Element& b = cb.canonical(A);
        if (b.size() > 1) ++nontrivial;
        if (A.is_diagonal()) EXPECT_EQ(b, single(A));
        // independent solve in another order
        EXPECT_EQ(cb.canonical_alt_order(A), b);
    }
    EXPECT_EQ(nontrivial, 1);
    Element want = single(mat2(0, 1, 1, 0));
    add_term(want, Mat::diag({1, 1}), v(-1));
    EXPECT_EQ(cb.canonical(mat2(0, 1, 1, 0)), want);
}

TEST(Canonical, SoundnessSmallSlices) {
    for (bool per : {false, true})
        for (int n = 1; n <= 3; ++n)
            for (int d = 1; d <= 2; ++d) {
                if (!per && n == 1) continue;
                SchurA S(n, d, per, 2);
                EXPECT_TRUE(verify_canonical_soundness(S).pass) << n << " " << d << " " << per;
            }
}

TEST(Canonical, BrokenEpsilonClassIsCaught) {
    // affine n = 1, d = 2: 2I and the band matrix share a block but not eps
    SchurA S(1, 2, true, 2);
    Mat twice = Mat::periodic(1), band = Mat::periodic(1);
    twice.set(1, 1, 2);
    band.set(1, 1, 1);
    band.set(1, 2, 1);
    ASSERT_EQ(twice.ro(), band.ro());
    ASSERT_NE(epsilon_stat(twice, 1), epsilon_stat(band, 1));
    CanonicalBasis cb(S);
    KLTable t = cb.table(S.all_matrices());
    EXPECT_TRUE(verify_epsilon_rigidity(t).pass);
    add_term(t[band], twice, v(-1));
    EXPECT_FALSE(verify_epsilon_rigidity(t).pass);
    EXPECT_FALSE(verify_canonical_soundness(S, [&](KLTable& u) { add_term(u[band], twice, v(-1)); }).pass);
}

TEST(Canonical, XiTwists) {
    for (bool per : {false, true}) {
        SchurA S(2, 2, per, 2);
        EXPECT_TRUE(verify_xi(S).pass);
        CanonicalBasis cb(S);
        for (const auto& A : S.all_matrices()) EXPECT_EQ(S.xi_twist(cb.canonical(A), 1, 0), cb.canonical(A));
    }
    // full twist on the affine generators
    for (int n : {2, 3}) {
        SchurA S(n, 2, true, 2);
        for (int i = 1; i <= n; ++i)
            for (int c = -2; c <= 2; ++c) {
                Element e = S.gen(Gen::E(i));
                EXPECT_EQ(S.xi_twist(e, n, c), scaled(e, v(i == n ? -c : 0)));
            }
    }
}

// ------------------------------------------------------ comultiplication

TEST(ComultA, GeneratorDisplay) {
    const int n = 3;
    SchurA S(n, 2, false), S1(n, 1, false), S2(n, 1, false);
    ComultA co(S, S1, S2);
    for (int i = 1; i < n; ++i) {
        Tensor e = tensor(S1.gen(Gen::E(i)), S2.gen(Gen::K(i))) + tensor(S1.unit(), S2.gen(Gen::E(i)));
        EXPECT_EQ(co.delta_word({Gen::E(i)}), e);
        Tensor f = tensor(S1.gen(Gen::F(i)), S2.unit()) + tensor(S1.gen(Gen::Kinv(i)), S2.gen(Gen::F(i)));
        EXPECT_EQ(co.delta_word({Gen::F(i)}), f);
        EXPECT_EQ(co.delta_word({Gen::K(i)}), tensor(S1.gen(Gen::K(i)), S2.gen(Gen::K(i))));
    }
    EXPECT_EQ(co.delta(S.unit()), tensor(S1.unit(), S2.unit()));
}

TEST(ComultA, CountingAndPositivity) {
    EXPECT_TRUE(verify_comult_a_positivity(2, 2).pass);
    EXPECT_TRUE(verify_comult_a_positivity(3, 2).pass);
}

TEST(ComultA, FlippedSignIsCaught) {
    auto c = verify_comult_a_positivity(2, 2, [](Tensor& t) {
        if (!t.empty()) t.begin()->second = -t.begin()->second;
    });
    EXPECT_FALSE(c.pass);
}

TEST(ComultA, IdempotentsSplitWithUnitCoefficients) {
    SchurA S(3, 3, false), S1(3, 2, false), S2(3, 1, false);
    ComultA co(S, S1, S2);
    for (const auto& lam : S.weights())
        for (const auto& [k, c] : co.delta(single(Mat::diag(lam)))) {
            EXPECT_EQ(c, LaurentPoly(1));
            EXPECT_TRUE(k.first.is_diagonal() && k.second.is_diagonal());
        }
}

TEST(ComultA, AffineFormulasAndWindow) {
    for (int n = 1; n <= 3; ++n) EXPECT_TRUE(verify_affine_comult(n, 1, 1).pass) << n;
    EXPECT_TRUE(verify_affine_comult(2, 1, 2).pass);
    // F_i display
    SchurA S(2, 2, true, 2), S1(2, 1, true, 2), S2(2, 1, true, 2);
    ComultA co(S, S1, S2);
    Tensor f = tensor(S1.gen(Gen::F(1)), S2.unit()) + tensor(S1.gen(Gen::Kinv(1)), S2.gen(Gen::F(1)));
    EXPECT_EQ(co.delta_word({Gen::F(1)}), f);
}

TEST(TransferA, GeneratorsAndUnit) {
    for (int n : {2, 3}) EXPECT_TRUE(verify_transfer_a(n, n + 1).pass) << n;
    EXPECT_THROW(verify_transfer_a(3, 2), ValidationError);
}
