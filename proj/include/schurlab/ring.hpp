/**
 * @file ring.hpp
 * @brief Laurent polynomials in v over the integers, counting polynomials in q,
 *        Gaussian binomials and interpolation from point counts.
 */
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <nlohmann/json.hpp>

#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "schurlab/errors.hpp"

namespace schurlab {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

class LaurentPoly {
public:
    LaurentPoly() = default;
    LaurentPoly(long long c) { if (c != 0) c_[0] = c; }  // NOLINT: constants convert implicitly
    LaurentPoly(const BigInt& c) { if (c != 0) c_[0] = c; }  // NOLINT

    static LaurentPoly mono(int e, const BigInt& c = 1) {
        LaurentPoly p;
        if (c != 0) p.c_[e] = c;
        return p;
    }
    static LaurentPoly v(int e = 1) { return mono(e, 1); }

    bool is_zero() const { return c_.empty(); }
    const std::map<int, BigInt>& terms() const { return c_; }
    BigInt coeff(int e) const {
        auto it = c_.find(e);
        return it == c_.end() ? BigInt(0) : it->second;
    }
    int min_exp() const { return c_.empty() ? 0 : c_.begin()->first; }
    int max_exp() const { return c_.empty() ? 0 : c_.rbegin()->first; }

    void add_term(int e, const BigInt& c) {
        if (c == 0) return;
        auto [it, fresh] = c_.try_emplace(e, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) c_.erase(it);
        }
    }

    LaurentPoly& operator+=(const LaurentPoly& o) {
        for (const auto& [e, c] : o.c_) add_term(e, c);
        return *this;
    }
    LaurentPoly& operator-=(const LaurentPoly& o) {
        for (const auto& [e, c] : o.c_) add_term(e, -c);
        return *this;
    }
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    LaurentPoly operator-() const {
        LaurentPoly r;
        for (const auto& [e, c] : c_) r.c_[e] = -c;
        return r;
    }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r;
        for (const auto& [e1, c1] : a.c_)
            for (const auto& [e2, c2] : b.c_) r.add_term(e1 + e2, c1 * c2);
        return r;
    }
    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

    // multiplication by v^k
    LaurentPoly shifted(int k) const {
        if (k == 0) return *this;
        LaurentPoly r;
        for (const auto& [e, c] : c_) r.c_.emplace_hint(r.c_.end(), e + k, c);
        return r;
    }

    LaurentPoly bar() const {
        LaurentPoly r;
        for (const auto& [e, c] : c_) r.c_[-e] = c;
        return r;
    }

    bool is_positive() const {
        for (const auto& [e, c] : c_)
            if (c < 0) return false;
        return true;
    }
    bool is_bar_invariant() const { return *this == bar(); }
    // v^{-1} Z[v^{-1}]
    bool in_vinv_Zvinv() const { return c_.empty() || c_.rbegin()->first < 0; }

    // Exact division; throws InexactDivision on a nonzero remainder.
    LaurentPoly exact_div(const LaurentPoly& d) const {
        if (d.is_zero()) throw InexactDivision("division by zero");
        LaurentPoly rem = *this, quo;
        const int dtop = d.max_exp();
        const BigInt& lead = d.c_.rbegin()->second;
        const int floor_exp = min_exp() - d.min_exp();
        while (!rem.is_zero()) {
            int e = rem.max_exp();
            const BigInt& c = rem.c_.rbegin()->second;
            if (e - dtop < floor_exp || c % lead != 0) throw InexactDivision(str() + " / " + d.str());
            LaurentPoly t = mono(e - dtop, c / lead);
            quo += t;
            rem -= t * d;
        }
        return quo;
    }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }
    friend bool operator<(const LaurentPoly& a, const LaurentPoly& b) { return a.c_ < b.c_; }

    // Canonical text: ascending exponents, e.g. "-v^-1 + 2 + 3v^2".
    std::string str() const {
        if (c_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : c_) {
            BigInt a = c < 0 ? BigInt(-c) : c;
            if (first) {
                if (c < 0) os << "-";
            } else {
                os << (c < 0 ? " - " : " + ");
            }
            first = false;
            if (e == 0) {
                os << a;
                continue;
            }
            if (a != 1) os << a;
            os << "v";
            if (e != 1) os << "^" << e;
        }
        return os.str();
    }

    nlohmann::json to_json() const {
        nlohmann::json m = nlohmann::json::object();
        for (const auto& [e, c] : c_) m[std::to_string(e)] = c.str();
        return nlohmann::json{{"v", m}};
    }
    static LaurentPoly from_json(const nlohmann::json& j) {
        if (!j.is_object() || !j.contains("v") || !j["v"].is_object())
            throw ParseError("LaurentPoly JSON must be {\"v\": {...}}");
        LaurentPoly p;
        for (const auto& [k, val] : j["v"].items()) {
            int e = 0;
            try {
                size_t pos = 0;
                e = std::stoi(k, &pos);
                if (pos != k.size()) throw std::invalid_argument(k);
            } catch (const std::exception&) {
                throw ParseError("bad exponent '" + k + "'");
            }
            std::string s = val.is_string() ? val.get<std::string>() : val.dump();
            try {
                p.add_term(e, BigInt(s));
            } catch (const std::exception&) {
                throw ParseError("bad coefficient '" + s + "'");
            }
        }
        return p;
    }

private:
    std::map<int, BigInt> c_;
};

inline std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) { return os << p.str(); }

// Quantum integer [m] = (v^m - v^-m)/(v - v^-1).
inline LaurentPoly qint(int m) {
    LaurentPoly r;
    int s = m < 0 ? -1 : 1;
    int a = m < 0 ? -m : m;
    for (int k = 0; k < a; ++k) r.add_term(a - 1 - 2 * k, s);
    return r;
}

inline LaurentPoly qfactorial(int m) {
    LaurentPoly r = 1;
    for (int k = 2; k <= m; ++k) r *= qint(k);
    return r;
}

/// Polynomial in q with nonnegative exponents (point counts).
class QPoly {
public:
    QPoly() = default;
    QPoly(long long c) { if (c != 0) c_[0] = c; }  // NOLINT
    static QPoly mono(int e, const BigInt& c = 1) {
        QPoly p;
        if (c != 0) p.c_[e] = c;
        return p;
    }
    const std::map<int, BigInt>& terms() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return c_.empty() ? -1 : c_.rbegin()->first; }
    void add_term(int e, const BigInt& c) {
        if (c == 0) return;
        auto [it, fresh] = c_.try_emplace(e, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) c_.erase(it);
        }
    }
    QPoly& operator+=(const QPoly& o) {
        for (const auto& [e, c] : o.c_) add_term(e, c);
        return *this;
    }
    friend QPoly operator+(QPoly a, const QPoly& b) { return a += b; }
    friend QPoly operator*(const QPoly& a, const QPoly& b) {
        QPoly r;
        for (const auto& [e1, c1] : a.c_)
            for (const auto& [e2, c2] : b.c_) r.add_term(e1 + e2, c1 * c2);
        return r;
    }
    BigInt eval(const BigInt& q) const {
        BigInt r = 0;
        int cur = degree();
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
            while (cur > it->first) { r *= q; --cur; }
            r += it->second;
        }
        while (cur > 0) { r *= q; --cur; }
        return r;
    }
    LaurentPoly to_v() const {
        LaurentPoly r;
        for (const auto& [e, c] : c_) r.add_term(2 * e, c);
        return r;
    }
    friend bool operator==(const QPoly& a, const QPoly& b) { return a.c_ == b.c_; }
    std::string str() const {
        if (c_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
            const auto& [e, c] = *it;
            BigInt a = c < 0 ? BigInt(-c) : c;
            if (!first) os << (c < 0 ? " - " : " + ");
            else if (c < 0) os << "-";
            first = false;
            if (e == 0) { os << a; continue; }
            if (a != 1) os << a;
            os << "q";
            if (e != 1) os << "^" << e;
        }
        return os.str();
    }

private:
    std::map<int, BigInt> c_;
};

/// Gaussian binomial prod_{j=1..a} (q^{l-j+1}-1)/(q^j-1); zero outside 0 <= a <= l.
inline QPoly qbinom(int l, int a) {
    if (a < 0 || l < 0 || a > l) return QPoly();
    if (a > l - a) a = l - a;
    // Pascal rule [l,a] = [l-1,a-1] + q^a [l-1,a]
    std::vector<std::vector<QPoly>> t(l + 1, std::vector<QPoly>(a + 1));
    for (int m = 0; m <= l; ++m) {
        t[m][0] = QPoly(1);
        for (int k = 1; k <= std::min(m, a); ++k) {
            QPoly r = t[m - 1][k - 1];
            if (k <= m - 1) r += QPoly::mono(k) * t[m - 1][k];
            t[m][k] = r;
        }
    }
    return t[l][a];
}

/// Interpolate a polynomial of degree <= bound through samples (q_k, y_k); the sample
/// at index bound+1 is held back as a reserve check.
inline QPoly interpolate(const std::vector<std::pair<long long, BigInt>>& samples, int degree_bound) {
    if (degree_bound < 0) degree_bound = 0;
    if (static_cast<int>(samples.size()) < degree_bound + 2)
        throw ConsistencyFailure("interpolation needs " + std::to_string(degree_bound + 2) + " samples, got " +
                                 std::to_string(samples.size()));
    const int m = degree_bound + 1;
    // Newton divided differences over the rationals
    std::vector<BigRat> dd(m);
    for (int k = 0; k < m; ++k) dd[k] = BigRat(samples[k].second);
    for (int lvl = 1; lvl < m; ++lvl)
        for (int k = m - 1; k >= lvl; --k)
            dd[k] = (dd[k] - dd[k - 1]) / BigRat(samples[k].first - samples[k - lvl].first);
    // expand Newton form into monomial coefficients
    std::vector<BigRat> coef(m, BigRat(0));
    std::vector<BigRat> basis(1, BigRat(1));
    for (int k = 0; k < m; ++k) {
        for (size_t e = 0; e < basis.size(); ++e) coef[e] += dd[k] * basis[e];
        std::vector<BigRat> nb(basis.size() + 1, BigRat(0));
        for (size_t e = 0; e < basis.size(); ++e) {
            nb[e + 1] += basis[e];
            nb[e] -= basis[e] * BigRat(samples[k].first);
        }
        basis.swap(nb);
    }
    QPoly p;
    for (int e = 0; e < m; ++e) {
        if (denominator(coef[e]) != 1)
            throw ConsistencyFailure("non-integral interpolated coefficient at q^" + std::to_string(e));
        p.add_term(e, numerator(coef[e]));
    }
    for (size_t k = m; k < samples.size(); ++k)
        if (p.eval(samples[k].first) != samples[k].second)
            throw ConsistencyFailure("reserve sample at q=" + std::to_string(samples[k].first) + " mismatches " +
                                     p.str());
    return p;
}

}  // namespace schurlab
