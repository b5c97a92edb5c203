#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "inertial/integer.hpp"
#include "inertial/matrix.hpp"
#include "inertial/normal_form.hpp"
#include "inertial/polynomial.hpp"

namespace inertial {

// Reduced row echelon form over Q; returns the rank.
inline std::size_t rational_rref(RatMatrix& a) {
    std::size_t row = 0;
    for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
        std::size_t p = row;
        while (p < a.rows() && a(p, col) == 0) ++p;
        if (p == a.rows()) continue;
        a.swap_rows(row, p);
        Rational inv = 1 / a(row, col);
        for (std::size_t j = col; j < a.cols(); ++j) a(row, j) *= inv;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == row || a(i, col) == 0) continue;
            Rational f = a(i, col);
            for (std::size_t j = col; j < a.cols(); ++j) a(i, j) -= f * a(row, j);
        }
        ++row;
    }
    return row;
}

inline std::size_t rational_rank(RatMatrix a) { return rational_rref(a); }
inline std::size_t rational_rank(const IntMatrix& a) { return rational_rank(to_rational(a)); }

inline std::optional<RatMatrix> rational_inverse(const RatMatrix& m) {
    if (!m.is_square()) fail(Errc::dimension_mismatch, "inverse of a non-square matrix");
    const std::size_t n = m.rows();
    RatMatrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    if (rational_rref(aug) < n) return std::nullopt;
    for (std::size_t i = 0; i < n; ++i)
        if (aug(i, i) != 1) return std::nullopt;
    return aug.block(0, n, n, n);
}

inline Integer common_denominator(const RatMatrix& m) {
    Integer d = 1;
    for (const auto& v : m.data()) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), v.get_den_mpz_t());
    return d;
}

inline IntMatrix scale_to_integer(const RatMatrix& m, const Integer& d) {
    IntMatrix a(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            Rational x = m(i, j) * d;
            if (x.get_den() != 1) fail(Errc::invalid_input, "denominator does not clear");
            a(i, j) = x.get_num();
        }
    return a;
}

// Finitely generated subgroup of Q^n, stored as (D, B) with L = B / D,
// D the least positive integer with D L inside Z^n and B in Hermite form.
class RationalLattice {
public:
    static RationalLattice from_rows(const RatMatrix& rows, std::size_t dim) {
        if (rows.rows() && rows.cols() != dim) fail(Errc::dimension_mismatch, "lattice generator length");
        if (rows.rows() == 0) return RationalLattice(dim, Integer(1), IntMatrix(0, dim));
        Integer d = common_denominator(rows);
        return from_scaled(dim, d, hermite_form(scale_to_integer(rows, d)));
    }

    static RationalLattice from_integer_rows(const IntMatrix& rows, std::size_t dim) {
        if (rows.rows() && rows.cols() != dim) fail(Errc::dimension_mismatch, "lattice generator length");
        return from_scaled(dim, Integer(1), rows.rows() ? hermite_form(rows) : IntMatrix(0, dim));
    }

    // (1/d) * span(rows) for integer rows.
    static RationalLattice from_scaled(std::size_t dim, Integer d, IntMatrix rows) {
        if (d <= 0) fail(Errc::invalid_input, "lattice denominator must be positive");
        IntMatrix b = rows.rows() ? hermite_form(std::move(rows)) : IntMatrix(0, dim);
        Integer c = d;
        for (const auto& v : b.data()) mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), v.get_mpz_t());
        if (c != 1) {
            for (std::size_t i = 0; i < b.rows(); ++i)
                for (std::size_t j = 0; j < b.cols(); ++j) mpz_divexact(b(i, j).get_mpz_t(), b(i, j).get_mpz_t(), c.get_mpz_t());
            mpz_divexact(d.get_mpz_t(), d.get_mpz_t(), c.get_mpz_t());
        }
        if (b.rows() == 0) d = 1;
        return RationalLattice(dim, std::move(d), std::move(b));
    }

    static RationalLattice zero(std::size_t dim) { return RationalLattice(dim, Integer(1), IntMatrix(0, dim)); }
    static RationalLattice standard(std::size_t dim) {
        return RationalLattice(dim, Integer(1), IntMatrix::identity(dim));
    }

    std::size_t ambient_dim() const noexcept { return dim_; }
    std::size_t rank() const noexcept { return int_basis_.rows(); }
    bool is_zero() const noexcept { return rank() == 0; }
    const Integer& denominator() const noexcept { return den_; }
    const IntMatrix& integer_basis() const noexcept { return int_basis_; }

    RatMatrix basis() const {
        RatMatrix r = to_rational(int_basis_);
        for (std::size_t i = 0; i < r.rows(); ++i)
            for (std::size_t j = 0; j < r.cols(); ++j) r(i, j) /= den_;
        return r;
    }

    // Integer basis of d * L; d must be a multiple of the denominator.
    IntMatrix scaled_basis(const Integer& d) const {
        Integer f = d / den_;
        if (f * den_ != d) fail(Errc::invalid_input, "scale is not a multiple of the lattice denominator");
        return f * int_basis_;
    }

    bool contains(const std::vector<Rational>& v) const {
        if (v.size() != dim_) fail(Errc::dimension_mismatch, "vector length differs from ambient");
        std::vector<Integer> w(dim_);
        for (std::size_t i = 0; i < dim_; ++i) {
            Rational x = v[i] * den_;
            if (x.get_den() != 1) return false;
            w[i] = x.get_num();
        }
        return lattice::contains(int_basis_, w);
    }

    bool operator==(const RationalLattice& other) const = default;

    std::string to_string() const {
        std::string s = "(1/" + den_.get_str() + ")" + inertial::to_string(int_basis_);
        return s;
    }

private:
    RationalLattice(std::size_t dim, Integer den, IntMatrix basis)
        : dim_(dim), den_(std::move(den)), int_basis_(std::move(basis)) {}

    std::size_t dim_ = 0;
    Integer den_ = 1;
    IntMatrix int_basis_;
};

namespace detail {

inline void require_same_dim(const RationalLattice& a, const RationalLattice& b) {
    if (a.ambient_dim() != b.ambient_dim())
        fail(Errc::ambient_mismatch, "Q^" + std::to_string(a.ambient_dim()) + " vs Q^" + std::to_string(b.ambient_dim()));
}

inline Integer lcm(const Integer& a, const Integer& b) {
    Integer r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

}  // namespace detail

inline RationalLattice lattice_sum(const RationalLattice& a, const RationalLattice& b) {
    detail::require_same_dim(a, b);
    Integer d = detail::lcm(a.denominator(), b.denominator());
    return RationalLattice::from_scaled(a.ambient_dim(), d, lattice::sum(a.scaled_basis(d), b.scaled_basis(d)));
}

inline RationalLattice lattice_intersect(const RationalLattice& a, const RationalLattice& b) {
    detail::require_same_dim(a, b);
    Integer d = detail::lcm(a.denominator(), b.denominator());
    return RationalLattice::from_scaled(a.ambient_dim(), d,
                                        lattice::intersect(a.scaled_basis(d), b.scaled_basis(d)));
}

// [a : a ∩ b]
inline Cardinal lattice_index(const RationalLattice& a, const RationalLattice& b) {
    detail::require_same_dim(a, b);
    Integer d = detail::lcm(a.denominator(), b.denominator());
    IntMatrix ha = a.scaled_basis(d);
    return lattice::index_of_sublattice(ha, lattice::intersect(ha, b.scaled_basis(d)));
}

inline bool lattice_contains(const RationalLattice& big, const RationalLattice& small) {
    return lattice_index(small, big) == Cardinal::finite(1);
}

// x -> M x on coordinate columns of Q^n.
class RationalEndo {
public:
    explicit RationalEndo(RatMatrix m) : m_(std::move(m)) {
        if (!m_.is_square()) fail(Errc::dimension_mismatch, "endomorphism matrix must be square");
    }
    explicit RationalEndo(const IntMatrix& m) : RationalEndo(to_rational(m)) {}

    static RationalEndo scalar(std::size_t n, const Rational& q) { return RationalEndo(RatMatrix::scalar(n, q)); }
    static RationalEndo identity(std::size_t n) { return scalar(n, Rational(1)); }

    std::size_t dim() const noexcept { return m_.rows(); }
    const RatMatrix& matrix() const noexcept { return m_; }

    std::vector<Rational> apply(const std::vector<Rational>& v) const { return times_column<Rational>(m_, v); }

    RationalEndo power(unsigned long k) const { return RationalEndo(m_.pow(k)); }
    RationalEndo compose(const RationalEndo& other) const { return RationalEndo(m_ * other.m_); }

    std::optional<RationalEndo> inverse() const {
        auto inv = rational_inverse(m_);
        if (!inv) return std::nullopt;
        return RationalEndo(std::move(*inv));
    }

    // Some q with M == q I.
    std::optional<Rational> scalar_value() const {
        const std::size_t n = dim();
        if (n == 0) return Rational(0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j ? m_(i, j) != 0 : m_(i, j) != m_(0, 0)) return std::nullopt;
        return m_(0, 0);
    }

    friend RationalEndo operator+(const RationalEndo& a, const RationalEndo& b) { return RationalEndo(a.m_ + b.m_); }
    bool operator==(const RationalEndo& other) const = default;

private:
    RatMatrix m_;
};

inline IntPolynomial charpoly_primitive(const RationalEndo& phi) { return charpoly_primitive(phi.matrix()); }

inline RationalLattice endo_apply_lattice(const RationalEndo& phi, const RationalLattice& l) {
    if (phi.dim() != l.ambient_dim()) fail(Errc::ambient_mismatch, "endomorphism and lattice dimensions differ");
    if (l.is_zero()) return l;
    return RationalLattice::from_rows(l.basis() * phi.matrix().transpose(), l.ambient_dim());
}

// {x in h : phi(x) in k}
inline RationalLattice preimage_within(const RationalEndo& phi, const RationalLattice& h, const RationalLattice& k) {
    detail::require_same_dim(h, k);
    if (phi.dim() != h.ambient_dim()) fail(Errc::ambient_mismatch, "endomorphism and lattice dimensions differ");
    const std::size_t n = h.ambient_dim();
    if (h.is_zero()) return h;
    RatMatrix image = h.basis() * phi.matrix().transpose();
    Integer d = detail::lcm(common_denominator(image), k.denominator());
    IntMatrix coeffs = lattice::coefficient_preimage(scale_to_integer(image, d), k.scaled_basis(d));
    if (coeffs.rows() == 0) return RationalLattice::zero(n);
    return RationalLattice::from_scaled(n, h.denominator(), coeffs * h.integer_basis());
}

}  // namespace inertial
