// Laurent polynomials, matrix statistics, flags over F_q.

#include <gtest/gtest.h>

#include <random>

#include "schurlab/flag_oracle.hpp"
#include "schurlab/suites.hpp"

using namespace schurlab;

namespace {

LaurentPoly v(int e) { return LaurentPoly::v(e); }

LaurentPoly random_poly(std::mt19937& rng) {
    std::uniform_int_distribution<int> ex(-4, 4), cf(-5, 5), len(0, 4);
    LaurentPoly p;
    for (int k = len(rng); k > 0; --k) p.add_term(ex(rng), cf(rng));
    return p;
}

// weight of the jmath algebra: symmetric, odd middle entry, total 2d+1
Comp random_j_weight(std::mt19937& rng, int d, int n) {
    const int r = (n - 1) / 2;
    auto all = compositions(d, r + 1);
    Comp mu = all[std::uniform_int_distribution<size_t>(0, all.size() - 1)(rng)];
    Comp lam(n);
    for (int i = 0; i < r; ++i) lam[i] = lam[n - 1 - i] = mu[i];
    lam[r] = 2 * mu[r] + 1;
    return lam;
}

}  // namespace

// ---------------------------------------------------------------- ring

TEST(Ring, Arithmetic) {
    EXPECT_EQ((v(1) + 1) + LaurentPoly(-1), v(1));
    EXPECT_EQ((v(1) + v(-1)) * (v(1) - v(-1)), v(2) - v(-2));
    EXPECT_EQ((v(2) + 1) * v(1), v(3) + v(1));
    EXPECT_EQ((v(2) + 2 * v(-1)).bar(), v(-2) + 2 * v(1));
    EXPECT_EQ(LaurentPoly(7).bar(), LaurentPoly(7));
}

TEST(Ring, Positivity) {
    EXPECT_TRUE((v(1) + 3).is_positive());
    EXPECT_FALSE((v(1) - v(-1)).is_positive());
    EXPECT_TRUE(LaurentPoly().is_positive());
}

TEST(Ring, BarIsMultiplicative) {
    std::mt19937 rng(7);
    for (int t = 0; t < 200; ++t) {
        LaurentPoly a = random_poly(rng), b = random_poly(rng);
        EXPECT_EQ((a * b).bar(), a.bar() * b.bar());
        EXPECT_EQ(a.bar().bar(), a);
    }
}

TEST(Ring, GaussianBinomials) {
    EXPECT_EQ(qbinom(5, 0), QPoly(1));
    EXPECT_EQ(qbinom(2, 1), QPoly::mono(1) + QPoly(1));
    QPoly want = QPoly::mono(4) + QPoly::mono(3) + QPoly::mono(2, 2) + QPoly::mono(1) + QPoly(1);
    EXPECT_EQ(qbinom(4, 2), want);
    // 2-dimensional subspaces of F_3^4
    EXPECT_EQ(BigInt(enumerate_flags({2, 2}, 3).size()), qbinom(4, 2).eval(3));
}

TEST(Ring, Interpolation) {
    EXPECT_EQ(interpolate({{3, 1}, {5, 1}, {7, 1}}, 1), QPoly(1));
    EXPECT_EQ(interpolate({{3, 4}, {5, 6}, {7, 8}}, 1), QPoly::mono(1) + QPoly(1));
    std::vector<std::pair<long long, BigInt>> s;
    for (int q : {3, 5, 7, 9}) s.push_back({q, BigInt(enumerate_flags({1, 2}, q).size())});
    EXPECT_EQ(interpolate(s, 2), QPoly::mono(2) + QPoly::mono(1) + QPoly(1));
    // inconsistent samples are caught by the extra point
    EXPECT_THROW(interpolate({{3, 1}, {5, 2}, {7, 9}}, 1), ConsistencyFailure);
}

TEST(Ring, QuantumIntegers) {
    EXPECT_EQ(qint(2), v(1) + v(-1));
    EXPECT_EQ(qfactorial(3), qint(2) * qint(3));
    EXPECT_EQ((v(3) - v(-3)).exact_div(v(1) - v(-1)), v(2) + 1 + v(-2));
}

// -------------------------------------------------------- combinatorics

TEST(Combinatorics, RowAndColumnSums) {
    Mat D = Mat::diag({2, 1});
    EXPECT_EQ(D.ro(), (Comp{2, 1}));
    EXPECT_EQ(D.co(), (Comp{2, 1}));
    Mat A = Mat::diag({1, 1});
    A.add(1, 2, 1);
    EXPECT_EQ(A.ro(), (Comp{2, 1}));
    EXPECT_EQ(A.co(), (Comp{1, 2}));
    Mat P = Mat::periodic(2);
    P.set(1, 3, 1);  // column 3 folds onto column 1
    EXPECT_EQ(P.ro(), (Comp{1, 0}));
    EXPECT_EQ(P.co(), (Comp{1, 0}));
}

TEST(Combinatorics, DimensionStatistic) {
    EXPECT_EQ(d_stat(Mat::diag({2, 0, 1})), 0);
    Mat A = Mat::diag({1, 1});
    A.add(1, 2, 1);
    EXPECT_EQ(d_stat(A), 1);
    for (int n : {2, 3})
        for (int d = 1; d <= 2; ++d)
            for (const auto& M : SchurA(n, d, false).all_matrices()) EXPECT_EQ(fiber_degree(M, false), d_stat(M)) << M.str();
}

TEST(Combinatorics, Epsilon) {
    for (int n : {2, 3}) {
        Mat twice = Mat::periodic(n), band = Mat::periodic(n);
        for (int i = 1; i <= n; ++i) {
            twice.set(i, i, 2);
            band.set(i, i, 1);
            band.set(i, i + 1, 1);
        }
        for (int i = 1; i <= n; ++i) {
            EXPECT_EQ(epsilon_stat(twice, i), 0);
            EXPECT_EQ(epsilon_stat(band, i), 1);
        }
    }
    Mat A = Mat::diag({1, 1});
    A.add(2, 1, 1);
    EXPECT_EQ(epsilon_stat(A, 1), -1);
}

TEST(Combinatorics, BruhatOrder) {
    for (int n : {2, 3})
        for (int d = 1; d <= 3; ++d)
            for (const auto& b : compositions(d, n))
                for (const auto& a : compositions(d, n)) {
                    auto cls = matrices_with(b, a, false);
                    for (const auto& X : cls) {
                        EXPECT_TRUE(bruhat_leq(X, X));
                        for (const auto& Y : cls) {
                            if (X != Y && bruhat_leq(X, Y)) EXPECT_FALSE(bruhat_leq(Y, X));
                            for (const auto& Z : cls)
                                if (bruhat_leq(X, Y) && bruhat_leq(Y, Z)) EXPECT_TRUE(bruhat_leq(X, Z));
                        }
                    }
                    if (b == a)
                        for (const auto& X : cls) EXPECT_TRUE(bruhat_leq(Mat::diag(a), X));
                }
}

TEST(Combinatorics, TwistCocycle) {
    EXPECT_EQ(u_twist({1, 2, 0}, {1, 2, 0}), 0);
    EXPECT_EQ(u_twist({1, 1, 1}, {0, 3, 0}), -1);
    EXPECT_THROW(u_twist({1, 1}, {1, 1}), ValidationError);
    std::mt19937 rng(11);
    for (int t = 0; t < 200; ++t) {
        int n = t % 2 ? 3 : 5, d = 1 + t % 4;
        Comp a = random_j_weight(rng, d, n), b = random_j_weight(rng, d, n), c = random_j_weight(rng, d, n);
        EXPECT_EQ(u_twist(c, a), u_twist(c, b) + u_twist(b, a));
    }
}

TEST(Combinatorics, ColumnMatrices) {
    ColMatrix A{3, {1}};
    ColMatrix AJ = a_to_AJ(A);
    EXPECT_EQ(AJ.rows, (std::vector<int>{1, 2, 3}));
    EXPECT_EQ(ell_stat(AJ), 0);
    EXPECT_EQ(ell_stat(a_to_AJ(ColMatrix{3, {2}})), 1);
    EXPECT_EQ(ell_stat(a_to_AJ(ColMatrix{3, {3}})), 1);
    for (int n : {3, 5})
        for (int d = 1; d <= 3; ++d)
            for (const auto& B : all_col_matrices(d, n)) {
                ColMatrix BJ = a_to_AJ(B);
                EXPECT_EQ(BJ.rows[d], (n + 1) / 2);
                EXPECT_EQ(AJ_to_a(BJ), B);
                EXPECT_TRUE(is_pi_j(BJ));
            }
}

// ---------------------------------------------------------- flag oracle

TEST(FlagOracle, FlagCounts) {
    EXPECT_EQ(enumerate_flags({2}, 3).size(), 1u);
    EXPECT_EQ(enumerate_flags({1, 1}, 3).size(), 4u);
    EXPECT_EQ(enumerate_flags({1, 1, 1}, 3).size(), 52u);
    EXPECT_EQ(enumerate_isotropic_flags({0, 1, 0}, 3).size(), 1u);
    // isotropic lines of a conic: q + 1
    for (int q : {3, 5, 7}) EXPECT_EQ(enumerate_isotropic_flags({1, 1, 1}, q).size(), static_cast<size_t>(q + 1));
}

TEST(FlagOracle, IsotropicFlags) {
    const GF& F = GF::get(5);
    for (const Comp& dims : {Comp{1, 1, 1}, Comp{2, 1, 2}, Comp{1, 3, 1}})
        for (const auto& x : enumerate_isotropic_flags(dims, 5)) EXPECT_TRUE(is_isotropic_flag(F, x));
    // orbit decomposition of {x} x X for an isotropic line x
    const GF& F3 = GF::get(3);
    const auto lines = enumerate_isotropic_flags({1, 1, 1}, 3);
    for (const Comp& co : {Comp{1, 1, 1}, Comp{0, 3, 0}}) {
        long long total = 0;
        for (const auto& B : j_matrices_with({1, 1, 1}, co)) total += fiber_size(F3, lines[0], B, true);
        EXPECT_EQ(total, static_cast<long long>(enumerate_isotropic_flags(co, 3).size()));
    }
}

TEST(FlagOracle, Classification) {
    const GF& F = GF::get(3);
    for (const auto& a : compositions(2, 2))
        for (const auto& x : enumerate_flags(a, 3)) {
            EXPECT_EQ(classify(F, x, x), Mat::diag(a));
            for (const auto& b : compositions(2, 2))
                for (const auto& y : enumerate_flags(b, 3)) {
                    Mat C = classify(F, x, y);
                    EXPECT_EQ(C.sum(), 2);
                    EXPECT_EQ(classify(F, y, x), C.transpose());
                }
        }
}

TEST(FlagOracle, Convolution) {
    for (const auto& A : SchurA(2, 2, false).all_matrices()) {
        auto c = convolve(Mat::diag(A.ro()), A, 3);
        EXPECT_EQ(c.size(), 1u);
        EXPECT_EQ(c[A], 1);
    }
    // whole n = 2, d = 2 table at q = 3
    SchurA S(2, 2, false);
    long long entries = 0, total = 0;
    for (const auto& X : S.all_matrices())
        for (const auto& Y : S.all_matrices())
            if (X.co() == Y.ro())
                for (const auto& [C, k] : convolve(X, Y, 3)) {
                    ++entries;
                    total += k;
                }
    EXPECT_EQ(entries, 37);
    EXPECT_EQ(total, 60);
}

TEST(FlagOracle, FiberDegrees) {
    EXPECT_EQ(fiber_degree(Mat::diag({1, 2}), false), 0);
    SchurJ S(3, 1);
    Mat M = Mat::finite(3);
    M.set(2, 1, 1);
    M.set(2, 2, 1);
    M.set(2, 3, 1);
    EXPECT_EQ(fiber_degree(M, true), 1);
    for (const auto& A : S.all_matrices()) EXPECT_EQ(fiber_degree(A, true), S.dj(A)) << A.str();
}

TEST(FlagOracle, ScaleGuards) {
    EXPECT_THROW(enumerate_flags({1, 1}, 4), ValidationError);
    EXPECT_THROW(enumerate_flags({1, 1}, 37), ScaleExceeded);
    EXPECT_THROW(SchurJ(3, 4), ScaleExceeded);
}

TEST(FlagOracle, CrossCheckSmall) {
    EXPECT_TRUE(verify_oracle_xcheck(2, 2, {3, 5, 7}).pass);
    EXPECT_TRUE(verify_oracle_xcheck(3, 1, {3, 5, 7}).pass);
}
