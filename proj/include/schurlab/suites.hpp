/**
 * @file suites.hpp
 * @brief Type A verification suites (oracle cross-check, canonical bases, xi,
 *        comultiplication, transfer) and the suite dispatcher shared by the
 *        CLI and the acceptance runner.
 */
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "schurlab/canonical.hpp"
#include "schurlab/coideal.hpp"
#include "schurlab/comult_a.hpp"
#include "schurlab/duality.hpp"
#include "schurlab/flag_oracle.hpp"
#include "schurlab/schur_a.hpp"
#include "schurlab/schur_j.hpp"

namespace schurlab {

/// Du-Fu products of semisimple generators against the standard basis, against
/// point counts over F_q.
inline Certificate verify_oracle_xcheck(int n, int d, const std::vector<int>& qs) {
    Certificate cert;
    cert.theorem = "multiplication formulas agree with flag counting";
    cert.parameters = {{"n", n}, {"d", d}, {"q", qs}};
    SchurA S(n, d, false);
    const auto all = S.all_matrices();
    for (const auto& B : all) {
        if (B.is_diagonal() || !(is_upper_semisimple(B) || is_lower_semisimple(B))) continue;
        for (const auto& A : all) {
            if (A.ro() != B.co()) continue;
            auto df = dufu_e(B, A);
            for (int q : qs) {
                std::map<Mat, BigInt> want, got;
                for (const auto& [C, p] : df) {
                    BigInt v = p.eval(q);
                    if (v != 0) want[C] = v;
                }
                for (const auto& [C, k] : convolve(B, A, q)) got[C] = k;
                cert.check(want == got, {{"B", B.to_json()}, {"A", A.to_json()}, {"q", q}});
            }
        }
    }
    return cert;
}

/// Bar invariance, the degree condition, and eps-rigidity of the canonical
/// basis of S. `tamper` may corrupt the table first.
inline Certificate verify_canonical_soundness(const SchurA& S, const std::function<void(KLTable&)>& tamper = nullptr) {
    Certificate cert;
    cert.theorem = "canonical basis: bar invariance, degree bound, epsilon-rigidity";
    cert.parameters = S.ambient_json();
    CanonicalBasis cb(S);
    KLTable t = cb.table(S.all_matrices());
    if (tamper) tamper(t);
    cert.merge(verify_kl_table(S, t, cert.theorem));
    cert.merge(verify_epsilon_rigidity(t));
    return cert;
}

/// xi_{d,i,c}({A}) = v^{c eps_i(A)} {A}, and xi is multiplicative on generator pairs.
inline Certificate verify_xi(const SchurA& S) {
    Certificate cert;
    cert.theorem = "xi twists act diagonally on the canonical basis";
    cert.parameters = S.ambient_json();
    CanonicalBasis cb(S);
    const int n = S.n();
    const auto all = S.all_matrices();
    for (int i = 1; i <= n; ++i)
        for (int c = -2; c <= 2; ++c)
            for (const auto& A : all) {
                const Element& b = cb.canonical(A);
                cert.check(S.xi_twist(b, i, c) == scaled(b, LaurentPoly::v(c * epsilon_stat(A, i))),
                           {{"matrix", A.to_json()}, {"i", i}, {"c", c}});
            }
    std::vector<Gen> gens;
    for (int i = 1; i <= (S.periodic() ? n : n - 1); ++i) {
        gens.push_back(Gen::E(i));
        gens.push_back(Gen::F(i));
    }
    for (int i = 1; i <= n; ++i)
        for (const auto& g : gens)
            for (const auto& h : gens) {
                Element x = S.gen(g), y = S.gen(h);
                cert.check(S.xi_twist(S.multiply(x, y), i, 1) == S.multiply(S.xi_twist(x, i, 1), S.xi_twist(y, i, 1)),
                           {{"i", i}, {"word", g.str() + " " + h.str()}});
            }
    return cert;
}

/// Delta({B}) in canonical (x) canonical for every split d' + d'' = d, plus the
/// generator formulas against flag counting. `tamper` sees every expansion.
inline Certificate verify_comult_a_positivity(int n, int d, const std::function<void(Tensor&)>& tamper = nullptr) {
    Certificate cert;
    cert.theorem = "positivity of the type A comultiplication on canonical bases";
    cert.parameters = {{"n", n}, {"d", d}};
    SchurA S(n, d, false);
    CanonicalBasis cb(S);
    for (int d1 = 0; d1 <= d; ++d1) {
        SchurA S1(n, d1, false), S2(n, d - d1, false);
        ComultA co(S, S1, S2);
        CanonicalBasis c1(S1), c2(S2);
        for (int i = 1; i < n; ++i)
            for (const Gen& g : {Gen::E(i), Gen::F(i)}) {
                Tensor cnt;
                for (const auto& [A, c] : S.gen(g)) add_into(cnt, co.tilde_by_counting(A), c);
                cert.check(co.tilde_word({g}) == cnt, {{"split", d1}, {"generator", g.str()}, {"route", "counting"}});
                cert.check(co.delta_word({g}) == co.delta_word_formula({g}), {{"split", d1}, {"generator", g.str()}});
            }
        for (const auto& B : S.all_matrices()) {
            Tensor t = tensor_to_canonical(co.delta(cb.canonical(B)), c1, c2);
            if (tamper) tamper(t);
            cert.check(!t.empty() && detail::positive_tensor(t), {{"split", d1}, {"matrix", B.to_json()}});
        }
    }
    return cert;
}

/// Affine comultiplication: generator formulas (with the v^{+-d} corrections at
/// i = n), and agreement with the finite pipeline on window-supported matrices.
inline Certificate verify_affine_comult(int n, int d1, int d2, int spread = 2) {
    Certificate cert;
    cert.theorem = "affine comultiplication on the Chevalley image";
    cert.parameters = {{"n", n}, {"split", {d1, d2}}, {"spread", spread}};
    SchurA S(n, d1 + d2, true, spread), S1(n, d1, true, spread), S2(n, d2, true, spread);
    ComultA co(S, S1, S2);
    for (int i = 1; i <= n; ++i)
        for (int m = 1; m <= (n > 1 ? 2 : 1); ++m)
            for (const Gen& g : {Gen::E(i, m), Gen::F(i, m)})
                cert.check(co.dagger_word({g}) == co.delta_word_formula({g}), {{"generator", g.str()}});
    SchurA F(n, d1 + d2, false), F1(n, d1, false), F2(n, d2, false);
    ComultA cf(F, F1, F2);
    for (const auto& A : F.all_matrices()) {
        Tensor a, b;
        for (const auto& [k, c] : co.delta(single(to_periodic(A))))
            if (window_supported(k.first) && window_supported(k.second)) add_term(a, k, c);
        for (const auto& [k, c] : cf.delta(single(A)))
            add_term(b, std::make_pair(to_periodic(k.first), to_periodic(k.second)), c);
        cert.check(a == b, {{"matrix", A.to_json()}, {"reason", "window disagreement"}});
    }
    return cert;
}

/// phi_{d,d-n}: generator images and the unit.
inline Certificate verify_transfer_a(int n, int d) {
    Certificate cert;
    cert.theorem = "type A transfer map on generators";
    cert.parameters = {{"n", n}, {"d", d}};
    if (d < n) throw ValidationError("transfer needs d >= n");
    SchurA S(n, d, false), Sm(n, d - n, false), Sn(n, n, false);
    TransferA T(S, Sm, Sn);
    for (int i = 1; i < n; ++i)
        for (const Gen& g : {Gen::E(i), Gen::F(i), Gen::K(i), Gen::Kinv(i)})
            cert.check(T.apply_word({g}) == Sm.word({g}), {{"generator", g.str()}});
    cert.check(T.apply(S.unit()) == Sm.unit(), {{"reason", "unit"}});
    return cert;
}

// ---------------------------------------------------------------------------
// dispatcher

struct SuiteParams {
    std::string type = "a";  // a | affine-a | jmath | imath
    int n = 2;
    int d = 2;
    int d1 = -1;  // split, -1 = all
    int spread = 2;
    std::vector<int> qs{3, 5, 7};
};

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> s{"epsilon", "xi", "positivity-a", "positivity-affine", "positivity-j",
                                            "positivity-i", "tensor", "relations", "oracle-xcheck"};
    return s;
}

inline Certificate run_suite(const std::string& name, const SuiteParams& p) {
    auto schur_a = [&]() { return SchurA(p.n, p.d, p.type == "affine-a", p.spread); };
    auto need_odd = [&]() {
        if (p.n < 3 || p.n % 2 == 0) throw ValidationError("suite " + name + " needs odd n >= 3");
    };
    Certificate c;
    if (name == "epsilon") {
        c = verify_canonical_soundness(schur_a());
    } else if (name == "xi") {
        c = verify_xi(schur_a());
    } else if (name == "positivity-a") {
        c = verify_comult_a_positivity(p.n, p.d);
    } else if (name == "positivity-affine") {
        c.theorem = "affine comultiplication on the Chevalley image";
        c.parameters = {{"n", p.n}, {"d", p.d}, {"spread", p.spread}};
        for (int a = 1; a < p.d; ++a)
            if (p.d1 < 0 || p.d1 == a) c.merge(verify_affine_comult(p.n, a, p.d - a, p.spread));
    } else if (name == "positivity-j") {
        need_odd();
        SchurJ S(p.n, p.d);
        c = verify_comult_j_positivity(S);
        c.merge(verify_embedding_j(S));
    } else if (name == "positivity-i") {
        need_odd();
        c = verify_imath(SchurJ(p.n, p.d));
    } else if (name == "tensor") {
        need_odd();
        Duality D(p.n, p.d);
        c = verify_zeta_standard(D);
        c.theorem = "tensor duality: zeta, positivity, parabolic KL equality";
        c.merge(verify_tensor_positivity(D));
        c.merge(verify_parabolic_kl_equality(D));
        c.merge(verify_zeta_intertwines(D));
    } else if (name == "relations") {
        need_odd();
        c = verify_coideal_relations(SchurJ(p.n, p.d));
    } else if (name == "oracle-xcheck") {
        c = verify_oracle_xcheck(p.n, p.d, p.qs);
    } else {
        throw ValidationError("unknown suite: " + name);
    }
    if (c.parameters.is_object()) c.parameters["suite"] = name;
    return c;
}

}  // namespace schurlab
