#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <utility>

#include "inertial/errors.hpp"

namespace inertial {

using Integer = mpz_class;
using Rational = mpq_class;

inline Integer floor_div(const Integer& a, const Integer& b) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Integer floor_mod(const Integer& a, const Integer& b) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline bool divides(const Integer& d, const Integer& a) {
    if (d == 0) return a == 0;
    return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0;
}

inline Integer integer_pow(const Integer& base, unsigned long exp) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

// Inverse of a modulo m (m >= 1); false when gcd(a, m) != 1.
inline bool mod_inverse(const Integer& a, const Integer& m, Integer& out) {
    if (m == 1) {
        out = 0;
        return true;
    }
    return mpz_invert(out.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) != 0;
}

inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) fail(Errc::invalid_input, "zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline std::string to_string(const Integer& v) { return v.get_str(); }

inline std::string to_string(const Rational& v) {
    if (v.get_den() == 1) return v.get_num().get_str();
    return v.get_num().get_str() + "/" + v.get_den().get_str();
}

inline double to_double(const Integer& v) { return v.get_d(); }
inline double to_double(const Rational& v) { return v.get_d(); }

// log|v| computed without overflowing double for large magnitudes.
inline double log_abs(const Integer& v) {
    if (v == 0) return -std::numeric_limits<double>::infinity();
    long exp = 0;
    double mant = mpz_get_d_2exp(&exp, v.get_mpz_t());
    return std::log(std::abs(mant)) + static_cast<double>(exp) * std::log(2.0);
}

inline double log_abs(const Rational& v) { return log_abs(v.get_num()) - log_abs(v.get_den()); }

inline std::uint64_t to_u64_checked(const Integer& v, std::string_view what) {
    if (v < 0 || !v.fits_ulong_p()) fail(Errc::cap_exceeded, std::string(what) + " does not fit in 64 bits");
    return v.get_ui();
}

inline Integer parse_integer(std::string_view text) {
    std::string s(text);
    std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (start == s.size()) fail(Errc::invalid_input, "expected an integer, got '" + s + "'");
    for (std::size_t i = start; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') fail(Errc::invalid_input, "expected an integer, got '" + s + "'");
    }
    if (s[0] == '+') s.erase(0, 1);
    return Integer(s, 10);
}

// Accepts "p", "p/q" and finite decimals such as "-1.25".
inline Rational parse_rational(std::string_view text) {
    auto slash = text.find('/');
    if (slash != std::string_view::npos) {
        return make_rational(parse_integer(text.substr(0, slash)), parse_integer(text.substr(slash + 1)));
    }
    auto dot = text.find('.');
    if (dot != std::string_view::npos) {
        std::string whole(text.substr(0, dot));
        std::string frac(text.substr(dot + 1));
        bool neg = !whole.empty() && whole[0] == '-';
        std::string digits = (whole == "-" || whole == "+" || whole.empty()) ? "0" : whole;
        Integer num = parse_integer(digits + frac);
        if (neg && num > 0) num = -num;
        return make_rational(num, integer_pow(10, frac.size()));
    }
    return Rational(parse_integer(text));
}

// Finite(n) | Infinite; used for indices, group orders and Ulm-Kaplansky invariants.
class Cardinal {
public:
    Cardinal() = default;

    static Cardinal finite(Integer n) {
        if (n < 0) fail(Errc::invalid_input, "negative cardinal");
        return Cardinal(std::move(n), true);
    }
    static Cardinal infinite() { return Cardinal(Integer(0), false); }

    bool is_finite() const noexcept { return finite_; }
    bool is_infinite() const noexcept { return !finite_; }

    const Integer& value() const {
        if (!finite_) fail(Errc::infinite_index, "cardinal is infinite");
        return value_;
    }

    bool operator==(const Cardinal& other) const {
        return finite_ == other.finite_ && (!finite_ || value_ == other.value_);
    }

    std::string to_string() const { return finite_ ? value_.get_str() : std::string("infinite"); }

private:
    Cardinal(Integer v, bool f) : value_(std::move(v)), finite_(f) {}

    Integer value_ = 0;
    bool finite_ = true;
};

using Index = Cardinal;

}  // namespace inertial
