/**
 * @file words.hpp
 * @brief Generator words: "E i", "F i", "K i", "Ki- i", "H a", "Ha- a", "e i",
 *        "f i", "k i", "ki- i", "t", "idem a1,a2,...". A product reads left to
 *        right; a trailing idempotent restricts the word to one weight.
 */
#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "schurlab/combinatorics.hpp"
#include "schurlab/errors.hpp"

namespace schurlab {

struct Gen {
    enum class Kind { E, F, K, Kinv, H, Hinv, Idem, e, f, k, kinv, t };
    Kind kind = Kind::Idem;
    int i = 0;
    int power = 1;  // divided power for E, F, e, f
    Comp weight;    // Idem only

    static Gen E(int i, int m = 1) { return {Kind::E, i, m, {}}; }
    static Gen F(int i, int m = 1) { return {Kind::F, i, m, {}}; }
    static Gen K(int i) { return {Kind::K, i, 1, {}}; }
    static Gen Kinv(int i) { return {Kind::Kinv, i, 1, {}}; }
    static Gen H(int a) { return {Kind::H, a, 1, {}}; }
    static Gen Hinv(int a) { return {Kind::Hinv, a, 1, {}}; }
    static Gen idem(const Comp& w) { return {Kind::Idem, 0, 1, w}; }
    static Gen je(int i, int m = 1) { return {Kind::e, i, m, {}}; }
    static Gen jf(int i, int m = 1) { return {Kind::f, i, m, {}}; }
    static Gen jk(int i) { return {Kind::k, i, 1, {}}; }
    static Gen jkinv(int i) { return {Kind::kinv, i, 1, {}}; }
    static Gen jt() { return {Kind::t, 0, 1, {}}; }

    std::string str() const {
        auto pw = [&](const std::string& s) { return power == 1 ? s : s + "^(" + std::to_string(power) + ")"; };
        switch (kind) {
            case Kind::E: return pw("E" + std::to_string(i));
            case Kind::F: return pw("F" + std::to_string(i));
            case Kind::K: return "K" + std::to_string(i);
            case Kind::Kinv: return "K" + std::to_string(i) + "^-1";
            case Kind::H: return "H" + std::to_string(i);
            case Kind::Hinv: return "H" + std::to_string(i) + "^-1";
            case Kind::e: return pw("e" + std::to_string(i));
            case Kind::f: return pw("f" + std::to_string(i));
            case Kind::k: return "k" + std::to_string(i);
            case Kind::kinv: return "k" + std::to_string(i) + "^-1";
            case Kind::t: return "t";
            case Kind::Idem: return "1_" + comp_str(weight);
        }
        return "?";
    }
};

using Word = std::vector<Gen>;

inline std::string word_str(const Word& w) {
    std::string s;
    for (const auto& g : w) s += (s.empty() ? "" : " ") + g.str();
    return s.empty() ? "1" : s;
}

inline Comp parse_comp(const std::string& s) {
    Comp c;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            size_t pos = 0;
            int v = std::stoi(tok, &pos);
            if (pos != tok.size() || v < 0) throw ParseError("bad composition part '" + tok + "'");
            c.push_back(v);
        } catch (const std::logic_error&) {
            throw ParseError("bad composition part '" + tok + "'");
        }
    }
    if (c.empty()) throw ParseError("empty composition");
    return c;
}

inline Word parse_word(const std::string& text) {
    std::stringstream ss(text);
    std::vector<std::string> toks;
    std::string t;
    while (ss >> t) toks.push_back(t);
    Word w;
    auto index = [&](size_t& p, const std::string& what) {
        if (p + 1 >= toks.size()) throw ParseError(what + " needs an index");
        try {
            size_t pos = 0;
            int v = std::stoi(toks[p + 1], &pos);
            if (pos != toks[p + 1].size()) throw ParseError("bad index '" + toks[p + 1] + "'");
            ++p;
            return v;
        } catch (const std::logic_error&) {
            throw ParseError("bad index '" + toks[p + 1] + "'");
        }
    };
    for (size_t p = 0; p < toks.size(); ++p) {
        const std::string& s = toks[p];
        if (s == "E") w.push_back(Gen::E(index(p, s)));
        else if (s == "F") w.push_back(Gen::F(index(p, s)));
        else if (s == "K") w.push_back(Gen::K(index(p, s)));
        else if (s == "Ki-") w.push_back(Gen::Kinv(index(p, s)));
        else if (s == "H") w.push_back(Gen::H(index(p, s)));
        else if (s == "Ha-") w.push_back(Gen::Hinv(index(p, s)));
        else if (s == "e") w.push_back(Gen::je(index(p, s)));
        else if (s == "f") w.push_back(Gen::jf(index(p, s)));
        else if (s == "k") w.push_back(Gen::jk(index(p, s)));
        else if (s == "ki-") w.push_back(Gen::jkinv(index(p, s)));
        else if (s == "t") w.push_back(Gen::jt());
        else if (s == "idem") {
            if (p + 1 >= toks.size()) throw ParseError("idem needs a composition");
            w.push_back(Gen::idem(parse_comp(toks[++p])));
        } else {
            throw ParseError("unknown generator token '" + s + "'");
        }
    }
    return w;
}

}  // namespace schurlab
