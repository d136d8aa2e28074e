// schurlab command line: multiply, comult, transfer, embed, zeta, cb, verify.
//
// Exit codes: 0 ok, 1 verification failed, 2 bad input, 3 scale guard, 4 internal.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "schurlab/stability.hpp"
#include "schurlab/suites.hpp"

using namespace schurlab;
using nlohmann::json;

namespace {

struct Job {
    std::string type = "a";
    int n = 2, d = 2, spread = 2;
    std::string split;
    std::string qlist = "3,5,7";
    std::vector<std::string> words;
    std::vector<std::string> inputs;
    std::string out, format = "json";
    std::string suite, seed;
    int max_d = -1;
    bool tensor = false;
};

bool is_j(const Job& j) { return j.type == "jmath" || j.type == "imath"; }

void validate(const Job& j) {
    if (j.type != "a" && j.type != "affine-a" && j.type != "jmath" && j.type != "imath")
        throw ValidationError("unknown --type " + j.type);
    if (j.n < 1 || j.d < 0) throw ValidationError("need n >= 1 and d >= 0");
    if (is_j(j) && (j.n % 2 == 0 || j.n < 3)) throw ValidationError(j.type + " needs odd n >= 3");
    if (j.format != "json" && j.format != "csv") throw ValidationError("--format is json or csv");
    if (j.spread < 0) throw ValidationError("--spread must be nonnegative");
}

std::vector<int> parse_ints(const std::string& s) {
    std::vector<int> out;
    for (int x : parse_comp(s)) out.push_back(x);
    return out;
}

std::pair<int, int> parse_split(const Job& j) {
    if (j.split.empty()) throw ValidationError("--split d1,d2 is required");
    auto v = parse_ints(j.split);
    if (v.size() != 2 || v[0] + v[1] != j.d) throw ValidationError("--split must be d1,d2 with d1 + d2 = d");
    return {v[0], v[1]};
}

// rows separated by ';', entries by ','
Mat parse_matrix(const std::string& s) {
    std::vector<std::vector<int>> rows;
    std::stringstream ss(s);
    std::string row;
    while (std::getline(ss, row, ';')) rows.push_back(parse_ints(row));
    const int n = static_cast<int>(rows.size());
    if (n == 0) throw ParseError("empty matrix");
    Mat M = Mat::finite(n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows[i].size()) != n) throw ParseError("matrix must be square: " + s);
        for (int k = 0; k < n; ++k) M.set(i + 1, k + 1, rows[i][k]);
    }
    return M;
}

json read_json(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ValidationError("cannot open " + path);
    try {
        return json::parse(f);
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void emit(const Job& j, const std::string& text) {
    if (j.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(j.out);
    if (!f) throw ValidationError("cannot write " + j.out);
    f << text;
}

std::string csv_quote(const std::string& s) { return "\"" + s + "\""; }

std::string element_out(const Job& j, const Element& x, const json& ambient, const std::string& basis = "standard") {
    if (j.format == "csv") {
        std::string s = "matrix,coeff\n";
        for (const auto& [A, c] : x) s += csv_quote(A.to_json()["entries"].dump()) + "," + csv_quote(c.str()) + "\n";
        return s;
    }
    json o = element_to_json(x, basis, ambient);
    o["version"] = kVersion;
    return o.dump(2) + "\n";
}

std::string tensor_out(const Job& j, const Tensor& t, const json& ambient) {
    if (j.format == "csv") {
        std::string s = "left,right,coeff\n";
        for (const auto& [k, c] : t)
            s += csv_quote(k.first.to_json()["entries"].dump()) + "," + csv_quote(k.second.to_json()["entries"].dump()) +
                 "," + csv_quote(c.str()) + "\n";
        return s;
    }
    json o = tensor_to_json(t, ambient);
    o["version"] = kVersion;
    return o.dump(2) + "\n";
}

// Operands from --word and --in, in the order given (words first).
template <class WordFn>
std::vector<Element> operands(const Job& j, WordFn word) {
    std::vector<Element> xs;
    for (const auto& w : j.words) xs.push_back(word(parse_word(w)));
    for (const auto& p : j.inputs) xs.push_back(element_from_json(read_json(p)));
    if (xs.empty()) throw ValidationError("no input: give --word or --in");
    return xs;
}

// ---------------------------------------------------------------------------

int cmd_multiply(const Job& j) {
    if (is_j(j)) {
        SchurJ S(j.n, j.d);
        bool im = j.type == "imath";
        auto xs = operands(j, [&](const Word& w) { return im ? S.word_i(w) : S.word(w); });
        Element x = xs[0];
        for (size_t k = 1; k < xs.size(); ++k) x = S.multiply(x, xs[k]);
        if (im) x = SchurJ::truncate_i(x);
        json amb = S.ambient_json();
        amb["type"] = j.type;
        emit(j, element_out(j, x, amb));
        return 0;
    }
    SchurA S(j.n, j.d, j.type == "affine-a", j.spread);
    auto xs = operands(j, [&](const Word& w) { return S.word(w); });
    Element x = xs[0];
    for (size_t k = 1; k < xs.size(); ++k) x = S.multiply(x, xs[k]);
    emit(j, element_out(j, x, S.ambient_json()));
    return 0;
}

int cmd_comult(const Job& j) {
    auto [d1, d2] = parse_split(j);
    json amb = {{"type", j.type}, {"n", j.n}, {"d", j.d}, {"split", {d1, d2}}};
    if (is_j(j)) {
        SchurJ S(j.n, j.d), S1(j.n, d1);
        SchurA S2(j.n, d2, false);
        ComultJ C(S, S1, S2);
        bool im = j.type == "imath";
        auto xs = operands(j, [&](const Word& w) { return im ? S.word_i(w) : S.word(w); });
        Tensor t = C.delta(xs[0]);
        if (im) t = C.truncate_i(t);
        emit(j, tensor_out(j, t, amb));
        return 0;
    }
    bool per = j.type == "affine-a";
    SchurA S(j.n, j.d, per, j.spread), S1(j.n, d1, per, j.spread), S2(j.n, d2, per, j.spread);
    ComultA C(S, S1, S2);
    auto xs = operands(j, [&](const Word& w) { return S.word(w); });
    if (per) amb["spread"] = j.spread;
    emit(j, tensor_out(j, C.delta(xs[0]), amb));
    return 0;
}

int cmd_transfer(const Job& j) {
    if (!j.seed.empty()) {
        ChainKind k = parse_chain_kind(j.type);
        TransferChain ch(k, j.n);
        StableElement st = detect_stabilization(ch, parse_matrix(j.seed), j.max_d < 0 ? 3 * j.n : j.max_d);
        json o = st.to_json();
        o["version"] = kVersion;
        emit(j, o.dump(2) + "\n");
        return 0;
    }
    if (is_j(j)) {
        SchurJ S(j.n, j.d);
        bool im = j.type == "imath";
        TransferJ T(S, im);
        auto xs = operands(j, [&](const Word& w) { return im ? S.word_i(w) : S.word(w); });
        Element y = T.apply(xs[0]);
        if (im) y = SchurJ::truncate_i(y);
        json amb = T.target().ambient_json();
        amb["type"] = j.type;
        emit(j, element_out(j, y, amb));
        return 0;
    }
    if (j.type == "affine-a") throw ValidationError("transfer is implemented for finite type A, jmath and imath");
    if (j.d < j.n) throw ValidationError("transfer needs d >= n");
    SchurA S(j.n, j.d, false), Sm(j.n, j.d - j.n, false), Sn(j.n, j.n, false);
    TransferA T(S, Sm, Sn);
    auto xs = operands(j, [&](const Word& w) { return S.word(w); });
    emit(j, element_out(j, T.apply(xs[0]), Sm.ambient_json()));
    return 0;
}

int cmd_embed(const Job& j) {
    if (!is_j(j)) throw ValidationError("embed needs --type jmath or imath");
    SchurJ S(j.n, j.d);
    SchurA A(j.n, j.d, false);
    EmbedJ J(S, A);
    bool im = j.type == "imath";
    auto xs = operands(j, [&](const Word& w) { return im ? S.word_i(w) : S.word(w); });
    Element y = J.apply(xs[0]);
    if (im) y = middle_empty(y);
    emit(j, element_out(j, y, A.ambient_json()));
    return 0;
}

int cmd_zeta(const Job& j) {
    if (j.d < 1) throw ValidationError("zeta needs d >= 1");
    Duality D(j.n, j.d);
    if (j.format == "csv") {
        std::string s = "AJ,image\n";
        for (const auto& AJ : D.pi_j()) s += csv_quote(AJ.str()) + "," + csv_quote(tensorvec_str(D.zeta({{AJ, 1}}))) + "\n";
        emit(j, s);
        return 0;
    }
    json rows = json::array();
    for (const auto& AJ : D.pi_j()) {
        json img = json::array();
        for (const auto& [A, c] : D.zeta({{AJ, 1}})) img.push_back({{"A", col_json(A)}, {"coeff", c.to_json()}});
        rows.push_back({{"AJ", col_json(AJ)}, {"image", img}});
    }
    json o = {{"n", j.n}, {"d", j.d}, {"zeta", rows}, {"version", kVersion}};
    emit(j, o.dump(2) + "\n");
    return 0;
}

int cmd_cb(const Job& j) {
    if (j.tensor) {
        Duality D(j.n, j.d);
        auto rows = parabolic_kl_comparison(D);
        if (j.format == "csv") {
            std::string s = "A,B,P_typeA,P_typeB,equal\n";
            for (const auto& r : rows)
                s += csv_quote(r.A.str()) + "," + csv_quote(r.B.str()) + "," + csv_quote(r.typeA.str()) + "," +
                     csv_quote(r.typeB.str()) + "," + (r.typeA == r.typeB ? "true" : "false") + "\n";
            emit(j, s);
            return 0;
        }
        json arr = json::array();
        for (const auto& r : rows)
            arr.push_back({{"A", col_json(r.A)}, {"B", col_json(r.B)}, {"P_typeA", r.typeA.to_json()},
                           {"P_typeB", r.typeB.to_json()}, {"equal", r.typeA == r.typeB}});
        emit(j, json({{"n", j.n}, {"d", j.d}, {"comparisons", arr}, {"version", kVersion}}).dump(2) + "\n");
        return 0;
    }
    std::unique_ptr<BasedAlgebra> alg;
    std::vector<Mat> slice;
    json amb;
    if (is_j(j)) {
        auto S = std::make_unique<SchurJ>(j.n, j.d);
        slice = j.type == "imath" ? S->i_matrices() : S->all_matrices();
        amb = S->ambient_json();
        amb["type"] = j.type;
        alg = std::move(S);
    } else {
        auto S = std::make_unique<SchurA>(j.n, j.d, j.type == "affine-a", j.spread);
        slice = S->all_matrices();
        amb = S->ambient_json();
        alg = std::move(S);
    }
    CanonicalBasis cb(*alg);
    if (!j.seed.empty()) slice = {parse_matrix(j.seed)};
    std::sort(slice.begin(), slice.end());
    if (j.format == "csv") {
        std::string s = "A,B,P\n";
        for (const auto& A : slice)
            for (const auto& [B, p] : cb.canonical(A))
                s += csv_quote(A.to_json()["entries"].dump()) + "," + csv_quote(B.to_json()["entries"].dump()) + "," +
                     csv_quote(p.str()) + "\n";
        emit(j, s);
        return 0;
    }
    json arr = json::array();
    for (const auto& A : slice) arr.push_back({{"matrix", A.to_json()}, {"canonical", element_to_json(cb.canonical(A), "standard", amb)["terms"]}});
    emit(j, json({{"ambient", amb}, {"canonical_basis", arr}, {"version", kVersion}}).dump(2) + "\n");
    return 0;
}

int cmd_verify(const Job& j) {
    SuiteParams p;
    p.type = j.type;
    p.n = j.n;
    p.d = j.d;
    p.spread = j.spread;
    p.qs = parse_ints(j.qlist);
    if (!j.split.empty()) p.d1 = parse_split(j).first;
    Certificate c = run_suite(j.suite, p);
    if (j.format == "csv") {
        std::string s = "suite,status,checked,witnesses\n";
        s += j.suite + "," + (c.pass ? "pass" : "fail") + "," + std::to_string(c.checked) + "," +
             std::to_string(c.witnesses.size()) + "\n";
        emit(j, s);
    } else {
        emit(j, c.to_json().dump(2) + "\n");
    }
    return c.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"schurlab: Schur algebras of type A and B, canonical bases, comultiplication"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    Job job;

    auto common = [&](CLI::App* s) {
        s->add_option("--type", job.type, "a | affine-a | jmath | imath")->capture_default_str();
        s->add_option("--n", job.n, "number of steps")->capture_default_str();
        s->add_option("--d", job.d, "degree")->capture_default_str();
        s->add_option("--split", job.split, "d1,d2");
        s->add_option("--spread", job.spread, "affine band width")->capture_default_str();
        s->add_option("--q-list", job.qlist, "comma separated field sizes")->capture_default_str();
        s->add_option("--word", job.words, "generator word, e.g. \"E 1 F 2\" or \"t e 1\"");
        s->add_option("--in", job.inputs, "element JSON file");
        s->add_option("--out", job.out, "output file (default stdout)");
        s->add_option("--format", job.format, "json | csv")->capture_default_str();
    };

    std::vector<std::pair<CLI::App*, int (*)(const Job&)>> cmds;
    auto add = [&](const char* name, const char* help, int (*fn)(const Job&)) {
        CLI::App* s = app.add_subcommand(name, help);
        common(s);
        cmds.push_back({s, fn});
        return s;
    };
    add("multiply", "product of the given elements, left to right", cmd_multiply);
    add("comult", "comultiplication of an element (needs --split)", cmd_comult);
    auto* tr = add("transfer", "transfer map d -> d-n (d-n+1 for imath); with --seed, detect stabilization", cmd_transfer);
    tr->add_option("--seed", job.seed, "seed matrix, rows ';' entries ','");
    tr->add_option("--max-d", job.max_d, "largest degree to try (default 3n)");
    add("embed", "embedding of a jmath/imath element into type A", cmd_embed);
    add("zeta", "zeta on the standard basis of the jmath tensor space", cmd_zeta);
    auto* cb = add("cb", "canonical basis table", cmd_cb);
    cb->add_flag("--tensor", job.tensor, "parabolic KL comparison of the two tensor spaces");
    cb->add_option("--seed", job.seed, "single matrix, rows ';' entries ','");
    auto* vf = add("verify", "run a verification suite and print its certificate", cmd_verify);
    vf->add_option("suite", job.suite, "suite name")->required()->check(CLI::IsMember(suite_names()));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        validate(job);
        for (auto& [s, fn] : cmds)
            if (s->parsed()) return fn(job);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.error_class()) {
            case ErrorClass::Validation: return 2;
            case ErrorClass::Scale: return 3;
            case ErrorClass::Internal: return 4;
        }
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
    return 4;
}
