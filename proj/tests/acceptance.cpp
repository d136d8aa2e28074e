// Acceptance runner: one line per criterion, nonzero exit if any fails.
// All comparisons are exact (tolerance 0); each criterion has a wall-clock budget.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "schurlab/stability.hpp"
#include "schurlab/suites.hpp"

using namespace schurlab;

namespace {

struct Criterion {
    int id;
    std::string name;
    double budget_s;
    std::function<Certificate()> run;
};

Mat rows3(std::vector<int> xs) {
    Mat M = Mat::finite(3);
    for (int k = 0; k < 9; ++k) M.set(k / 3 + 1, k % 3 + 1, xs[k]);
    return M;
}

Mat rows2(std::vector<int> xs) {
    Mat M = Mat::finite(2);
    for (int k = 0; k < 4; ++k) M.set(k / 2 + 1, k % 2 + 1, xs[k]);
    return M;
}

template <class K>
void flip_first(std::map<K, LaurentPoly>& x) {
    if (!x.empty()) x.begin()->second = -x.begin()->second;
}

Certificate oracle() {
    Certificate c;
    for (int n : {2, 3})
        for (int d = 1; d <= 3; ++d) c.merge(verify_oracle_xcheck(n, d, {3, 5, 7, 9, 11}));
    return c;
}

// finite and affine slices, n <= 3, d <= 3, spread <= 2
template <class F>
void for_slices(F f) {
    for (int n = 1; n <= 3; ++n)
        for (int d = 1; d <= 3; ++d) {
            f(SchurA(n, d, false));
            for (int spread = 1; spread <= 2; ++spread) f(SchurA(n, d, true, spread));
        }
}

Certificate canonical() {
    Certificate c;
    for_slices([&](const SchurA& S) { c.merge(verify_canonical_soundness(S)); });
    return c;
}

Certificate xi() {
    Certificate c;
    for_slices([&](const SchurA& S) { c.merge(verify_xi(S)); });
    return c;
}

Certificate finite_delta() {
    Certificate c;
    for (int d = 1; d <= 3; ++d) c.merge(verify_comult_a_positivity(3, d));
    return c;
}

Certificate affine_delta() {
    Certificate c;
    for (int n = 1; n <= 3; ++n)
        for (int a = 1; a <= 2; ++a)
            for (int b = 1; b <= 2; ++b) c.merge(verify_affine_comult(n, a, b));
    return c;
}

Certificate jcomult() {
    Certificate c;
    for (int d = 1; d <= 2; ++d) {
        SchurJ S(3, d);
        c.merge(verify_comult_j_routes(S));
        c.merge(verify_mixed_coassociativity(S));
    }
    return c;
}

Certificate embedding() {
    Certificate c;
    for (int d = 1; d <= 2; ++d) c.merge(verify_embedding_j(SchurJ(3, d)));
    return c;
}

Certificate transfer() {
    Certificate c;
    for (int n : {2, 3})
        for (int d = n; d <= n + 2; ++d) c.merge(verify_transfer_a(n, d));
    c.merge(verify_transfer_j(SchurJ(3, 3), false));
    for (int d = 2; d <= 3; ++d) c.merge(verify_transfer_j(SchurJ(3, d), true));
    // stabilization with the diagonal shift, and the idempotented positivity it feeds
    TransferChain a2(ChainKind::FiniteA, 2), a3(ChainKind::FiniteA, 3);
    TransferChain j3(ChainKind::JMath, 3), i3(ChainKind::IMath, 3);
    auto stable = [&](const TransferChain& ch, const Mat& seed, int max_d, const Mat& shift) {
        StableElement st = detect_stabilization(ch, seed, max_d);
        c.check(st.shift == shift, {{"seed", seed.to_json()}, {"shift", st.shift.to_json()}});
    };
    stable(a2, rows2({0, 1, 0, 0}), 6, Mat::diag({1, 1}));
    stable(a2, rows2({0, 0, 2, 0}), 6, Mat::diag({1, 1}));
    stable(a3, rows3({0, 1, 0, 0, 0, 0, 0, 0, 0}), 9, Mat::diag({1, 1, 1}));
    stable(j3, Mat::diag({0, 1, 0}), 9, Mat::diag({2, 2, 2}));
    stable(i3, rows3({0, 0, 1, 0, 1, 0, 1, 0, 0}), 9, Mat::diag({2, 0, 2}));
    stable(i3, Mat::diag({1, 1, 1}), 9, Mat::diag({2, 0, 2}));
    c.merge(verify_idempotented_comult_positivity(a2, rows2({0, 1, 0, 0}), 1, 6));
    c.merge(verify_idempotented_comult_positivity(a3, rows3({0, 1, 0, 0, 0, 0, 0, 0, 0}), 1, 7));
    c.merge(verify_idempotented_comult_positivity(j3, Mat::diag({0, 1, 0}), 1, 3));
    c.merge(verify_idempotented_comult_positivity(i3, rows3({0, 0, 1, 0, 1, 0, 1, 0, 0}), 1, 3));
    c.merge(verify_embedding_positivity(j3, Mat::diag({0, 1, 0}), 3));
    c.merge(verify_embedding_positivity(i3, rows3({0, 0, 1, 0, 1, 0, 1, 0, 0}), 3));
    return c;
}

Certificate duality() {
    Certificate c;
    for (int n : {3, 5})
        for (int d = 1; d <= 3; ++d) {
            Duality D(n, d);
            c.merge(verify_zeta_standard(D));
            c.merge(verify_tensor_positivity(D));
            c.merge(verify_parabolic_kl_equality(D));
            if (d <= 2) c.merge(verify_zeta_intertwines(D));
        }
    return c;
}

Certificate imath() {
    Certificate c;
    for (int d = 1; d <= 2; ++d) c.merge(verify_imath(SchurJ(3, d)));
    return c;
}

Certificate relations() {
    Certificate c;
    for (int n : {3, 5})
        for (int d = 1; d <= 3; ++d) c.merge(verify_coideal_relations(SchurJ(n, d)));
    return c;
}

// Each corrupted run must fail; the criterion passes when all of them do.
Certificate negative_controls() {
    Certificate c;
    auto expect_fail = [&](const std::string& what, const Certificate& bad) {
        c.check(!bad.pass, {{"control", what}, {"reason", "corrupted input was accepted"}});
    };
    expect_fail("flipped sign, type A comultiplication",
                verify_comult_a_positivity(2, 2, [](Tensor& t) { flip_first(t); }));
    expect_fail("flipped sign, jmath comultiplication",
                verify_comult_j_positivity(SchurJ(3, 1), [](Tensor& t) { flip_first(t); }));
    expect_fail("flipped sign, embedding", verify_embedding_j(SchurJ(3, 1), [](Element& g) { flip_first(g); }));
    expect_fail("flipped sign, imath", verify_imath(SchurJ(3, 1), [](Tensor& t) { flip_first(t); }));
    expect_fail("flipped sign, tensor space",
                verify_tensor_positivity(Duality(3, 1), [](TensorVec& x) { flip_first(x); }));
    TransferChain a2(ChainKind::FiniteA, 2);
    expect_fail("flipped sign, idempotented comultiplication",
                verify_idempotented_comult_positivity(a2, rows2({0, 1, 0, 0}), 1, 6, [](Tensor& t) { flip_first(t); }));
    // broken eps-class: 2I and the band matrix share a block of the affine n = 1 algebra
    SchurA S(1, 2, true, 2);
    Mat twice = Mat::periodic(1), band = Mat::periodic(1);
    twice.set(1, 1, 2);
    band.set(1, 1, 1);
    band.set(1, 2, 1);
    KLTable t = CanonicalBasis(S).table(S.all_matrices());
    add_term(t[band], twice, LaurentPoly::v(-1));
    expect_fail("broken epsilon class", verify_epsilon_rigidity(t));
    expect_fail("broken epsilon class, full soundness",
                verify_canonical_soundness(S, [&](KLTable& u) { add_term(u[band], twice, LaurentPoly::v(-1)); }));
    return c;
}

}  // namespace

int main() {
    const std::vector<Criterion> all{
        {1, "oracle equivalence (type A, n<=3, d<=3, q in 3..11)", 600, oracle},
        {2, "canonical-basis soundness (finite and affine slices)", 600, canonical},
        {3, "xi-compatibility", 120, xi},
        {4, "finite comultiplication positivity (n=3, d<=3)", 900, finite_delta},
        {5, "affine comultiplication on the Chevalley image", 120, affine_delta},
        {6, "jmath comultiplication and mixed coassociativity (n=3, d<=2)", 1200, jcomult},
        {7, "embedding: formulas, injectivity, positivity (n=3, d<=2)", 600, embedding},
        {8, "transfer maps and stabilization", 600, transfer},
        {9, "tensor duality (n in {3,5}, d<=3)", 600, duality},
        {10, "imath comultiplication, embedding, positivity (n=3, d<=2)", 600, imath},
        {11, "coideal relations (n in {3,5}, d<=3)", 300, relations},
        {12, "negative controls", 60, negative_controls},
    };
    int failed = 0;
    for (const auto& cr : all) {
        auto t0 = std::chrono::steady_clock::now();
        Certificate c;
        std::string err;
        try {
            c = cr.run();
        } catch (const std::exception& e) {
            c.pass = false;
            err = e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool ok = c.pass && c.checked > 0 && secs <= cr.budget_s;
        if (!ok) ++failed;
        std::printf("[%s] criterion %2d: %s  checked=%lld time=%.1fs budget=%.0fs%s%s\n", ok ? "PASS" : "FAIL", cr.id,
                    cr.name.c_str(), c.checked, secs, cr.budget_s, err.empty() ? "" : " error: ", err.c_str());
        if (!c.pass && !c.witnesses.empty()) std::printf("    first witness: %s\n", c.witnesses[0].dump().c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(all.size()) - failed, all.size());
    return failed ? 1 : 0;
}
