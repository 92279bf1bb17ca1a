#pragma once

/**
 * @file laurent.hpp
 * @brief Exact Laurent polynomials in one variable q over arbitrary-precision
 *        integers, plus the quantum combinatorics built on them:
 *        [k]_q, [k]_q! and Gaussian binomials.
 *
 * All values are immutable after construction and all operations are pure,
 * so everything here is safe to use from multiple threads.
 */

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

namespace moyweb {

using Int = boost::multiprecision::cpp_int;

/// Sparse Laurent polynomial sum_e c_e * q^e with integer coefficients.
/// Invariant: no stored coefficient is zero, so equality is map equality.
class LaurentPoly {
public:
    using Coeffs = std::map<long long, Int>;

    LaurentPoly() = default;

    static LaurentPoly constant(Int c) {
        LaurentPoly p;
        if (c != 0) p.coeffs_.emplace(0, std::move(c));
        return p;
    }

    static LaurentPoly one() { return constant(1); }

    static LaurentPoly monomial(long long exp, Int c = 1) {
        LaurentPoly p;
        if (c != 0) p.coeffs_.emplace(exp, std::move(c));
        return p;
    }

    bool is_zero() const { return coeffs_.empty(); }
    const Coeffs& coeffs() const { return coeffs_; }

    Int coeff(long long exp) const {
        auto it = coeffs_.find(exp);
        return it == coeffs_.end() ? Int(0) : it->second;
    }

    long long min_exp() const {
        if (is_zero()) throw std::domain_error("min_exp of zero polynomial");
        return coeffs_.begin()->first;
    }

    long long max_exp() const {
        if (is_zero()) throw std::domain_error("max_exp of zero polynomial");
        return coeffs_.rbegin()->first;
    }

    void add_term(long long exp, const Int& c) {
        if (c == 0) return;
        auto [it, inserted] = coeffs_.try_emplace(exp, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) coeffs_.erase(it);
        }
    }

    LaurentPoly& operator+=(const LaurentPoly& o) {
        for (const auto& [e, c] : o.coeffs_) add_term(e, c);
        return *this;
    }

    LaurentPoly& operator-=(const LaurentPoly& o) {
        for (const auto& [e, c] : o.coeffs_) add_term(e, -c);
        return *this;
    }

    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }

    LaurentPoly operator-() const {
        LaurentPoly r;
        for (const auto& [e, c] : coeffs_) r.coeffs_.emplace(e, -c);
        return r;
    }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r;
        for (const auto& [ea, ca] : a.coeffs_)
            for (const auto& [eb, cb] : b.coeffs_)
                r.add_term(ea + eb, ca * cb);
        return r;
    }

    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

    friend LaurentPoly operator*(const LaurentPoly& a, const Int& s) {
        LaurentPoly r;
        if (s == 0) return r;
        for (const auto& [e, c] : a.coeffs_) r.coeffs_.emplace(e, c * s);
        return r;
    }

    /// Multiply by q^k.
    LaurentPoly shifted(long long k) const {
        LaurentPoly r;
        for (const auto& [e, c] : coeffs_) r.coeffs_.emplace(e + k, c);
        return r;
    }

    /// Substitute q -> q^-1.
    LaurentPoly reciprocal() const {
        LaurentPoly r;
        for (const auto& [e, c] : coeffs_) r.coeffs_.emplace(-e, c);
        return r;
    }

    /// Specialize q = 1 (sum of coefficients).
    Int at_one() const {
        Int s = 0;
        for (const auto& [e, c] : coeffs_) s += c;
        return s;
    }

    bool operator==(const LaurentPoly& o) const { return coeffs_ == o.coeffs_; }

    /// Canonical rendering, terms in decreasing exponent order,
    /// e.g. "q^2 + 1 + q^-2", "q^3 + 2q + 2q^-1 + q^-3", "0".
    std::string to_string() const {
        if (is_zero()) return "0";
        std::ostringstream out;
        bool first = true;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
            const auto& [e, c] = *it;
            Int mag = c < 0 ? Int(-c) : c;
            if (first) {
                if (c < 0) out << "-";
                first = false;
            } else {
                out << (c < 0 ? " - " : " + ");
            }
            if (mag != 1 || e == 0) out << mag.str();
            if (e == 1) out << "q";
            else if (e != 0) out << "q^" << e;
        }
        return out.str();
    }

private:
    Coeffs coeffs_;
};

/// p(q) == p(q^-1) as coefficient maps.
inline bool is_palindromic(const LaurentPoly& p) {
    for (const auto& [e, c] : p.coeffs())
        if (p.coeff(-e) != c) return false;
    return true;
}

/// Quantum integer [k]_q = (q^k - q^-k)/(q - q^-1) = q^{k-1} + q^{k-3} + ... + q^{1-k}.
inline LaurentPoly qint(int k) {
    if (k < 0) throw std::domain_error("qint: negative argument");
    LaurentPoly p;
    for (int e = k - 1; e >= 1 - k; e -= 2) p.add_term(e, 1);
    return p;
}

/// Quantum factorial [k]_q! = prod_{j=1..k} [j]_q, with [0]_q! = 1.
inline LaurentPoly qfact(int k) {
    if (k < 0) throw std::domain_error("qfact: negative argument");
    LaurentPoly p = LaurentPoly::one();
    for (int j = 1; j <= k; ++j) p *= qint(j);
    return p;
}

namespace detail {

inline const LaurentPoly& qbinom_memo(int total, int part,
                                      std::map<std::pair<int, int>, LaurentPoly>& memo) {
    auto key = std::make_pair(total, part);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    LaurentPoly value;
    if (part == 0 || part == total) {
        value = LaurentPoly::one();
    } else {
        // [m+n choose m] = q^m [m+n-1 choose m] + q^-n [m+n-1 choose m-1]
        const int m = part, n = total - part;
        value = qbinom_memo(total - 1, m, memo).shifted(m) +
                qbinom_memo(total - 1, m - 1, memo).shifted(-n);
    }
    return memo.emplace(key, std::move(value)).first->second;
}

}  // namespace detail

/// Gaussian binomial (total choose part)_q. Zero when total < 0, part < 0 or
/// part > total; otherwise computed by the Pascal-type recursion above.
inline LaurentPoly qbinom(int total, int part) {
    if (total < 0 || part < 0 || part > total) return LaurentPoly();
    std::map<std::pair<int, int>, LaurentPoly> memo;
    return detail::qbinom_memo(total, part, memo);
}

}  // namespace moyweb
