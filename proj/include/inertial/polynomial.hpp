#pragma once

#include <algorithm>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "inertial/integer.hpp"
#include "inertial/matrix.hpp"

namespace inertial {

// Dense integer polynomial in t, coefficients stored in ascending degree.
// The zero polynomial has no coefficients.
class IntPolynomial {
public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<Integer> coeffs) : c_(std::move(coeffs)) { trim(); }
    IntPolynomial(std::initializer_list<long> coeffs) {
        for (long v : coeffs) c_.emplace_back(v);
        trim();
    }

    static IntPolynomial monomial(const Integer& a, std::size_t k) {
        std::vector<Integer> c(k + 1, Integer(0));
        c[k] = a;
        return IntPolynomial(std::move(c));
    }

    bool is_zero() const noexcept { return c_.empty(); }
    // Degree of the zero polynomial is reported as -1.
    long degree() const noexcept { return static_cast<long>(c_.size()) - 1; }
    const std::vector<Integer>& coeffs() const noexcept { return c_; }

    Integer coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Integer(0); }
    const Integer& leading() const {
        if (c_.empty()) fail(Errc::zero_polynomial, "leading coefficient of zero");
        return c_.back();
    }
    const Integer& constant_term() const {
        if (c_.empty()) fail(Errc::zero_polynomial, "constant term of zero");
        return c_.front();
    }

    Integer content() const {
        Integer g = 0;
        for (const auto& v : c_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        return g;
    }

    // Multiplicity of t as a factor.
    std::size_t low_order() const {
        std::size_t k = 0;
        while (k < c_.size() && c_[k] == 0) ++k;
        return k;
    }

    IntPolynomial shift_down(std::size_t k) const {
        if (k > c_.size()) k = c_.size();
        return IntPolynomial(std::vector<Integer>(c_.begin() + static_cast<long>(k), c_.end()));
    }

    IntPolynomial derivative() const {
        std::vector<Integer> d;
        for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<unsigned long>(i));
        return IntPolynomial(std::move(d));
    }

    // t^deg f(1/t)
    IntPolynomial reciprocal() const {
        std::vector<Integer> r(c_.rbegin(), c_.rend());
        return IntPolynomial(std::move(r));
    }

    IntPolynomial operator-() const {
        IntPolynomial r = *this;
        for (auto& v : r.c_) v = -v;
        return r;
    }

    friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
        std::vector<Integer> c(std::max(a.c_.size(), b.c_.size()), Integer(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
        return IntPolynomial(std::move(c));
    }

    friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) { return a + (-b); }

    friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Integer> c(a.c_.size() + b.c_.size() - 1, Integer(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        }
        return IntPolynomial(std::move(c));
    }

    friend IntPolynomial operator*(const Integer& s, const IntPolynomial& a) {
        std::vector<Integer> c = a.c_;
        for (auto& v : c) v *= s;
        return IntPolynomial(std::move(c));
    }

    bool operator==(const IntPolynomial& other) const = default;
    bool operator<(const IntPolynomial& other) const {
        if (c_.size() != other.c_.size()) return c_.size() < other.c_.size();
        for (std::size_t i = c_.size(); i-- > 0;)
            if (c_[i] != other.c_[i]) return c_[i] < other.c_[i];
        return false;
    }

    Integer evaluate(const Integer& x) const {
        Integer r = 0;
        for (std::size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
        return r;
    }

    std::string to_string() const {
        if (c_.empty()) return "0";
        std::string s;
        for (std::size_t i = c_.size(); i-- > 0;) {
            const Integer& a = c_[i];
            if (a == 0) continue;
            Integer mag = abs(a);
            if (s.empty()) {
                if (a < 0) s += "-";
            } else {
                s += a < 0 ? " - " : " + ";
            }
            if (mag != 1 || i == 0) s += mag.get_str();
            if (i >= 1) s += "t";
            if (i >= 2) s += "^" + std::to_string(i);
        }
        return s;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<Integer> c_;
};

// Content removed and leading coefficient made positive.
inline IntPolynomial primitive_part(const IntPolynomial& f) {
    if (f.is_zero()) fail(Errc::zero_polynomial, "primitive part of the zero polynomial");
    Integer g = f.content();
    if (f.leading() < 0) g = -g;
    std::vector<Integer> c = f.coeffs();
    for (auto& v : c) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
    return IntPolynomial(std::move(c));
}

// Quotient when g divides f exactly in Z[t].
inline std::optional<IntPolynomial> exact_divide(const IntPolynomial& f, const IntPolynomial& g) {
    if (g.is_zero()) fail(Errc::zero_polynomial, "division by the zero polynomial");
    if (f.is_zero()) return IntPolynomial();
    if (f.degree() < g.degree()) return std::nullopt;
    std::vector<Integer> r = f.coeffs();
    const auto& gc = g.coeffs();
    const std::size_t dg = gc.size() - 1;
    std::vector<Integer> q(r.size() - dg, Integer(0));
    for (std::size_t k = q.size(); k-- > 0;) {
        const Integer& top = r[k + dg];
        if (top == 0) continue;
        if (!divides(gc[dg], top)) return std::nullopt;
        Integer a = top / gc[dg];
        for (std::size_t j = 0; j <= dg; ++j) r[k + j] -= a * gc[j];
        q[k] = a;
    }
    for (const auto& v : r)
        if (v != 0) return std::nullopt;
    return IntPolynomial(std::move(q));
}

// Pseudo-remainder of f by g: lc(g)^(deg f - deg g + 1) f mod g.
inline IntPolynomial pseudo_remainder(const IntPolynomial& f, const IntPolynomial& g) {
    if (g.is_zero()) fail(Errc::zero_polynomial, "pseudo-division by zero");
    std::vector<Integer> r = f.coeffs();
    const auto& gc = g.coeffs();
    const std::size_t dg = gc.size() - 1;
    const Integer& lc = gc[dg];
    while (r.size() > dg && !r.empty()) {
        if (r.back() == 0) {
            r.pop_back();
            continue;
        }
        Integer top = r.back();
        std::size_t shift = r.size() - 1 - dg;
        for (auto& v : r) v *= lc;
        for (std::size_t j = 0; j <= dg; ++j) r[shift + j] -= top * gc[j];
        r.pop_back();
    }
    return IntPolynomial(std::move(r));
}

// Primitive gcd in Z[t] with positive leading coefficient.
inline IntPolynomial polynomial_gcd(IntPolynomial a, IntPolynomial b) {
    if (a.is_zero() && b.is_zero()) fail(Errc::zero_polynomial, "gcd of two zero polynomials");
    if (a.is_zero()) return primitive_part(b);
    if (b.is_zero()) return primitive_part(a);
    Integer ca = a.content(), cb = b.content();
    a = primitive_part(a);
    b = primitive_part(b);
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
        IntPolynomial r = pseudo_remainder(a, b);
        a = std::move(b);
        b = r.is_zero() ? r : primitive_part(r);
    }
    return primitive_part(a);
}

// det(tI - A) of an integer matrix by the division-free Berkowitz recurrence.
inline IntPolynomial charpoly_integer(const IntMatrix& a) {
    if (!a.is_square()) fail(Errc::dimension_mismatch, "characteristic polynomial of a non-square matrix");
    const std::size_t n = a.rows();
    if (n == 0) return IntPolynomial{1};
    // Descending coefficients of the characteristic polynomial of the leading k x k block.
    std::vector<Integer> v{Integer(1), Integer(-a(0, 0))};
    for (std::size_t k = 1; k < n; ++k) {
        std::vector<Integer> col(k + 2, Integer(0));
        col[0] = 1;
        col[1] = -a(k, k);
        std::vector<Integer> w(k);
        for (std::size_t i = 0; i < k; ++i) w[i] = a(i, k);
        for (std::size_t p = 2; p < k + 2; ++p) {
            Integer s = 0;
            for (std::size_t j = 0; j < k; ++j) s += a(k, j) * w[j];
            col[p] = -s;
            if (p + 1 < k + 2) {
                std::vector<Integer> nw(k, Integer(0));
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t j = 0; j < k; ++j) nw[i] += a(i, j) * w[j];
                w = std::move(nw);
            }
        }
        std::vector<Integer> nv(k + 2, Integer(0));
        for (std::size_t i = 0; i < k + 2; ++i)
            for (std::size_t j = 0; j <= std::min(i, k); ++j) nv[i] += col[i - j] * v[j];
        v = std::move(nv);
    }
    std::reverse(v.begin(), v.end());
    return IntPolynomial(std::move(v));
}

// Characteristic polynomial of a rational matrix with denominators cleared and content removed.
inline IntPolynomial charpoly_primitive(const RatMatrix& m) {
    if (!m.is_square()) fail(Errc::dimension_mismatch, "characteristic polynomial of a non-square matrix");
    Integer d = 1;
    for (const auto& v : m.data()) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), v.get_den_mpz_t());
    IntMatrix a(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            Rational x = m(i, j) * d;
            a(i, j) = x.get_num();
        }
    std::vector<Integer> c = charpoly_integer(a).coeffs();
    Integer scale = 1;
    for (auto& v : c) {
        v *= scale;
        scale *= d;
    }
    return primitive_part(IntPolynomial(std::move(c)));
}

inline IntPolynomial charpoly_primitive(const IntMatrix& m) { return primitive_part(charpoly_integer(m)); }

}  // namespace inertial
