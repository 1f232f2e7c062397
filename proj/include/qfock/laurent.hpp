#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qfock {

using BigInt = boost::multiprecision::cpp_int;

class ExactDivisionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An element of Z[q, q^-1], stored sparsely as exponent -> coefficient.
/// Terms are kept sorted by exponent with no zero coefficients, so equal
/// polynomials have equal representations.
class LaurentPoly {
public:
    LaurentPoly() = default;
    LaurentPoly(long long c) { if (c != 0) terms_.emplace_back(0, c); }
    LaurentPoly(const BigInt& c) { if (c != 0) terms_.emplace_back(0, c); }

    static LaurentPoly monomial(BigInt c, long long exp) {
        LaurentPoly p;
        if (c != 0) p.terms_.emplace_back(exp, std::move(c));
        return p;
    }
    static LaurentPoly q(long long exp = 1) { return monomial(1, exp); }

    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }

    /// Sorted (exponent, coefficient) pairs; coefficients are never zero.
    const std::vector<std::pair<long long, BigInt>>& terms() const { return terms_; }

    BigInt coeff(long long exp) const {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), exp,
                                   [](const auto& t, long long e) { return t.first < e; });
        if (it != terms_.end() && it->first == exp) return it->second;
        return 0;
    }

    long long min_exp() const {
        if (is_zero()) throw std::logic_error("min_exp of zero polynomial");
        return terms_.front().first;
    }
    long long max_exp() const {
        if (is_zero()) throw std::logic_error("max_exp of zero polynomial");
        return terms_.back().first;
    }

    LaurentPoly& operator+=(const LaurentPoly& o) {
        *this = merged(*this, o, 1);
        return *this;
    }
    LaurentPoly& operator-=(const LaurentPoly& o) {
        *this = merged(*this, o, -1);
        return *this;
    }
    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) { return merged(a, b, 1); }
    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return merged(a, b, -1); }

    LaurentPoly operator-() const {
        LaurentPoly r = *this;
        for (auto& t : r.terms_) t.second = -t.second;
        return r;
    }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r;
        if (a.is_zero() || b.is_zero()) return r;
        // dense accumulation over the combined exponent range
        long long lo = a.min_exp() + b.min_exp();
        long long hi = a.max_exp() + b.max_exp();
        std::vector<BigInt> acc(static_cast<size_t>(hi - lo + 1));
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_)
                acc[static_cast<size_t>(ea + eb - lo)] += ca * cb;
        for (long long e = lo; e <= hi; ++e) {
            BigInt& c = acc[static_cast<size_t>(e - lo)];
            if (c != 0) r.terms_.emplace_back(e, std::move(c));
        }
        return r;
    }
    LaurentPoly& operator*=(const LaurentPoly& o) {
        *this = *this * o;
        return *this;
    }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

    /// The bar involution q -> q^-1.
    LaurentPoly bar() const {
        LaurentPoly r;
        r.terms_.reserve(terms_.size());
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it)
            r.terms_.emplace_back(-it->first, it->second);
        return r;
    }

    bool is_bar_symmetric() const { return *this == bar(); }

    /// True iff the polynomial lies in qZ[q], i.e. every exponent is >= 1.
    bool in_qZq() const { return is_zero() || min_exp() >= 1; }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            BigInt a = c < 0 ? BigInt(-c) : c;
            if (first) {
                if (c < 0) out += "-";
                first = false;
            } else {
                out += c < 0 ? " - " : " + ";
            }
            const bool unit = (a == 1);
            if (!unit || e == 0) out += a.str();
            if (e != 0) {
                out += "q";
                if (e != 1) out += "^" + std::to_string(e);
            }
        }
        return out;
    }

private:
    static LaurentPoly merged(const LaurentPoly& a, const LaurentPoly& b, int sign) {
        LaurentPoly r;
        r.terms_.reserve(a.terms_.size() + b.terms_.size());
        auto ia = a.terms_.begin(), ib = b.terms_.begin();
        while (ia != a.terms_.end() || ib != b.terms_.end()) {
            if (ib == b.terms_.end() || (ia != a.terms_.end() && ia->first < ib->first)) {
                r.terms_.push_back(*ia++);
            } else if (ia == a.terms_.end() || ib->first < ia->first) {
                r.terms_.emplace_back(ib->first, sign < 0 ? BigInt(-ib->second) : ib->second);
                ++ib;
            } else {
                BigInt c = sign < 0 ? BigInt(ia->second - ib->second) : BigInt(ia->second + ib->second);
                if (c != 0) r.terms_.emplace_back(ia->first, std::move(c));
                ++ia;
                ++ib;
            }
        }
        return r;
    }

    std::vector<std::pair<long long, BigInt>> terms_;
};

/// The quantum integer [m] = q^{m-1} + q^{m-3} + ... + q^{1-m}, m >= 0.
inline LaurentPoly quantum_int(long long m) {
    if (m < 0) throw std::invalid_argument("quantum_int: negative argument");
    LaurentPoly r;
    for (long long j = 0; j < m; ++j) r += LaurentPoly::q(m - 1 - 2 * j);
    return r;
}

/// [m]! = [m][m-1]...[1], with [0]! = 1.
inline LaurentPoly quantum_factorial(long long m) {
    if (m < 0) throw std::invalid_argument("quantum_factorial: negative argument");
    LaurentPoly r(1);
    for (long long k = 2; k <= m; ++k) r *= quantum_int(k);
    return r;
}

/// Exact division in Z[q, q^-1]; throws ExactDivisionError if d does not
/// divide p exactly.
inline LaurentPoly exact_div(const LaurentPoly& p, const LaurentPoly& d) {
    if (d.is_zero()) throw ExactDivisionError("division by zero");
    if (p.is_zero()) return {};
    LaurentPoly rem = p;
    LaurentPoly quot;
    const long long dmax = d.max_exp();
    const BigInt& dlead = d.terms().back().second;
    // any exact quotient has exponents in [pmin - dmin, pmax - dmax]
    const long long min_quot_exp = p.min_exp() - d.min_exp();
    while (!rem.is_zero()) {
        const long long e = rem.max_exp() - dmax;
        if (e < min_quot_exp)
            throw ExactDivisionError("non-exact division: nonzero remainder");
        BigInt c = rem.terms().back().second / dlead;
        if (c == 0 || c * dlead != rem.terms().back().second)
            throw ExactDivisionError("non-exact division: leading coefficient " +
                                     rem.terms().back().second.str() + " vs " + dlead.str());
        LaurentPoly t = LaurentPoly::monomial(std::move(c), e);
        quot += t;
        rem -= t * d;
        if (!rem.is_zero() && rem.max_exp() - dmax >= e)
            throw ExactDivisionError("non-exact division: degree did not decrease");
    }
    return quot;
}

/// A Laurent polynomial known to be fixed by the bar involution.
class BarSymmetric {
public:
    explicit BarSymmetric(LaurentPoly p) : poly_(std::move(p)) {
        if (!poly_.is_bar_symmetric())
            throw std::invalid_argument("BarSymmetric: polynomial is not bar-symmetric");
    }
    const LaurentPoly& poly() const { return poly_; }

private:
    LaurentPoly poly_;
};

/// The unique element a of Z[q + q^-1] built from the exponent <= 0 part of p:
/// a = p_0 + sum_{d>=1} p_{-d} (q^d + q^{-d}).  Then p - a has zero coefficient
/// at every exponent <= 0.
inline BarSymmetric bar_symmetric_part(const LaurentPoly& p) {
    LaurentPoly a(p.coeff(0));
    for (const auto& [e, c] : p.terms()) {
        if (e >= 0) break;
        a += LaurentPoly::monomial(c, e) + LaurentPoly::monomial(c, -e);
    }
    return BarSymmetric(std::move(a));
}

}  // namespace qfock
