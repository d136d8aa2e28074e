/**
 * @file element.hpp
 * @brief Finite LaurentPoly combinations of matrices, tensors of two such, and
 *        their JSON encodings.
 */
#pragma once

#include <map>
#include <string>
#include <utility>

#include "schurlab/combinatorics.hpp"
#include "schurlab/ring.hpp"

namespace schurlab {

using Element = std::map<Mat, LaurentPoly>;
using Tensor = std::map<std::pair<Mat, Mat>, LaurentPoly>;

template <class K>
void add_term(std::map<K, LaurentPoly>& x, const K& k, const LaurentPoly& c) {
    if (c.is_zero()) return;
    auto it = x.find(k);
    if (it == x.end()) {
        x.emplace(k, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) x.erase(it);
}

template <class K>
void add_into(std::map<K, LaurentPoly>& x, const std::map<K, LaurentPoly>& y, const LaurentPoly& c = 1) {
    for (const auto& [k, v] : y) add_term(x, k, c * v);
}

template <class K>
std::map<K, LaurentPoly> scaled(const std::map<K, LaurentPoly>& x, const LaurentPoly& c) {
    std::map<K, LaurentPoly> out;
    if (c.is_zero()) return out;
    for (const auto& [k, v] : x) add_term(out, k, c * v);
    return out;
}

template <class K>
std::map<K, LaurentPoly> operator+(std::map<K, LaurentPoly> a, const std::map<K, LaurentPoly>& b) {
    add_into(a, b);
    return a;
}

template <class K>
std::map<K, LaurentPoly> operator-(std::map<K, LaurentPoly> a, const std::map<K, LaurentPoly>& b) {
    add_into(a, b, LaurentPoly(-1));
    return a;
}

template <class K>
std::map<K, LaurentPoly> bar_coeffs(const std::map<K, LaurentPoly>& x) {
    std::map<K, LaurentPoly> out;
    for (const auto& [k, v] : x) out.emplace(k, v.bar());
    return out;
}

inline Element single(const Mat& A, const LaurentPoly& c = 1) {
    Element e;
    add_term(e, A, c);
    return e;
}

/// Simple tensors x (x) y.
inline Tensor tensor(const Element& x, const Element& y) {
    Tensor t;
    for (const auto& [a, ca] : x)
        for (const auto& [b, cb] : y) add_term(t, std::make_pair(a, b), ca * cb);
    return t;
}

/// Componentwise product of tensors given a product on each factor.
template <class M1, class M2>
Tensor tensor_product(const Tensor& x, const Tensor& y, M1&& mul1, M2&& mul2) {
    Tensor out;
    // group by factor to limit the number of products
    for (const auto& [k1, c1] : x)
        for (const auto& [k2, c2] : y) {
            if (k1.first.co() != k2.first.ro() || k1.second.co() != k2.second.ro()) continue;
            Element a = mul1(single(k1.first), single(k2.first));
            if (a.empty()) continue;
            Element b = mul2(single(k1.second), single(k2.second));
            for (const auto& [ma, ca] : a)
                for (const auto& [mb, cb] : b) add_term(out, std::make_pair(ma, mb), c1 * c2 * ca * cb);
        }
    return out;
}

inline std::string element_str(const Element& x) {
    if (x.empty()) return "0";
    std::string s;
    for (const auto& [A, c] : x) {
        if (!s.empty()) s += " + ";
        s += "(" + c.str() + ")" + A.str();
    }
    return s;
}

inline std::string tensor_str(const Tensor& x) {
    if (x.empty()) return "0";
    std::string s;
    for (const auto& [k, c] : x) {
        if (!s.empty()) s += " + ";
        s += "(" + c.str() + ")" + k.first.str() + "#" + k.second.str();
    }
    return s;
}

inline nlohmann::json element_to_json(const Element& x, const std::string& basis, const nlohmann::json& ambient) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [A, c] : x) terms.push_back({{"matrix", A.to_json()}, {"coeff", c.to_json()}});
    return {{"basis", basis}, {"ambient", ambient}, {"terms", terms}};
}

inline Element element_from_json(const nlohmann::json& j) {
    Element x;
    try {
        for (const auto& t : j.at("terms")) add_term(x, Mat::from_json(t.at("matrix")), LaurentPoly::from_json(t.at("coeff")));
    } catch (const nlohmann::json::exception& ex) {
        throw ParseError(std::string("element JSON: ") + ex.what());
    }
    return x;
}

inline nlohmann::json tensor_to_json(const Tensor& x, const nlohmann::json& ambient) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [k, c] : x)
        terms.push_back({{"left", k.first.to_json()}, {"right", k.second.to_json()}, {"coeff", c.to_json()}});
    return {{"ambient", ambient}, {"terms", terms}};
}

}  // namespace schurlab
