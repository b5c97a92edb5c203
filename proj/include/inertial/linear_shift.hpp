#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "inertial/integer.hpp"

namespace inertial {

class PrimeField {
public:
    using value_type = std::uint64_t;

    explicit PrimeField(std::uint64_t p) : p_(p) {
        if (p > (1ULL << 32)) fail(Errc::invalid_input, "prime too large for the word-size field");
        if (p < 2 || mpz_probab_prime_p(Integer(static_cast<unsigned long>(p)).get_mpz_t(), 30) == 0)
            fail(Errc::invalid_input, std::to_string(p) + " is not prime");
    }

    std::uint64_t characteristic() const noexcept { return p_; }
    value_type zero() const noexcept { return 0; }
    value_type one() const noexcept { return 1; }
    value_type from_int(long v) const {
        long r = v % static_cast<long>(p_);
        return static_cast<value_type>(r < 0 ? r + static_cast<long>(p_) : r);
    }
    value_type add(value_type a, value_type b) const { return (a + b) % p_; }
    value_type sub(value_type a, value_type b) const { return (a + p_ - b) % p_; }
    value_type mul(value_type a, value_type b) const { return (a * b) % p_; }
    value_type inv(value_type a) const {
        if (a == 0) fail(Errc::not_invertible, "zero has no inverse");
        value_type r = 1, base = a, e = p_ - 2;
        while (e) {
            if (e & 1) r = mul(r, base);
            base = mul(base, base);
            e >>= 1;
        }
        return r;
    }
    static bool is_zero(value_type a) { return a == 0; }
    std::string name() const { return "F_" + std::to_string(p_); }

private:
    std::uint64_t p_;
};

class RationalField {
public:
    using value_type = Rational;

    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    value_type from_int(long v) const { return v; }
    value_type add(const value_type& a, const value_type& b) const { return a + b; }
    value_type sub(const value_type& a, const value_type& b) const { return a - b; }
    value_type mul(const value_type& a, const value_type& b) const { return a * b; }
    value_type inv(const value_type& a) const {
        if (a == 0) fail(Errc::not_invertible, "zero has no inverse");
        return 1 / a;
    }
    static bool is_zero(const value_type& a) { return a == 0; }
    std::string name() const { return "Q"; }
};

// Space of finitely supported sequences over a field, coordinates 0, 1, 2, ...
template <class Field>
class LinearShiftSpace {
public:
    using value_type = typename Field::value_type;
    using Vector = std::vector<value_type>;

    // Subspace held by a reduced row echelon basis (rows are trimmed sequences).
    struct Subspace {
        std::vector<Vector> basis;
        std::size_t dim() const noexcept { return basis.size(); }
        bool operator==(const Subspace&) const = default;
    };

    // Endomorphism a_0 + a_1 beta + a_2 beta^2 + ... in the right shift beta.
    struct ShiftPolynomial {
        Vector coeffs;
    };

    explicit LinearShiftSpace(Field field) : field_(std::move(field)) {}

    const Field& field() const noexcept { return field_; }

    Vector unit(std::size_t i) const {
        Vector v(i + 1, field_.zero());
        v[i] = field_.one();
        return v;
    }

    Vector trim(Vector v) const {
        while (!v.empty() && Field::is_zero(v.back())) v.pop_back();
        return v;
    }

    Vector shift(const Vector& v, std::size_t k = 1) const {
        if (v.empty()) return v;
        Vector out(k, field_.zero());
        out.insert(out.end(), v.begin(), v.end());
        return out;
    }

    Vector apply(const ShiftPolynomial& p, const Vector& v) const {
        Vector out;
        for (std::size_t k = 0; k < p.coeffs.size(); ++k) {
            if (Field::is_zero(p.coeffs[k])) continue;
            Vector s = shift(v, k);
            if (out.size() < s.size()) out.resize(s.size(), field_.zero());
            for (std::size_t i = 0; i < s.size(); ++i) out[i] = field_.add(out[i], field_.mul(p.coeffs[k], s[i]));
        }
        return trim(std::move(out));
    }

    Subspace span(std::vector<Vector> rows) const {
        std::size_t width = 0;
        for (auto& r : rows) {
            r = trim(std::move(r));
            width = std::max(width, r.size());
        }
        for (auto& r : rows) r.resize(width, field_.zero());
        std::size_t rank = 0;
        for (std::size_t col = 0; col < width && rank < rows.size(); ++col) {
            std::size_t p = rank;
            while (p < rows.size() && Field::is_zero(rows[p][col])) ++p;
            if (p == rows.size()) continue;
            std::swap(rows[rank], rows[p]);
            value_type inv = field_.inv(rows[rank][col]);
            for (auto& x : rows[rank]) x = field_.mul(x, inv);
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (i == rank || Field::is_zero(rows[i][col])) continue;
                value_type f = rows[i][col];
                for (std::size_t j = col; j < width; ++j)
                    rows[i][j] = field_.sub(rows[i][j], field_.mul(f, rows[rank][j]));
            }
            ++rank;
        }
        rows.resize(rank);
        for (auto& r : rows) r = trim(std::move(r));
        return Subspace{std::move(rows)};
    }

    Subspace sum(const Subspace& a, const Subspace& b) const {
        std::vector<Vector> rows = a.basis;
        rows.insert(rows.end(), b.basis.begin(), b.basis.end());
        return span(std::move(rows));
    }

    std::size_t intersection_dim(const Subspace& a, const Subspace& b) const {
        return a.dim() + b.dim() - sum(a, b).dim();
    }

    Subspace image(const ShiftPolynomial& p, const Subspace& s) const {
        std::vector<Vector> rows;
        for (const auto& v : s.basis) rows.push_back(apply(p, v));
        return span(std::move(rows));
    }

    // dim (H + pH) / H
    std::size_t dim_inert_index(const Subspace& h, const ShiftPolynomial& p) const {
        return sum(h, image(p, h)).dim() - h.dim();
    }

    // dim pH / (pH ∩ H)
    std::size_t dim_image_index(const Subspace& h, const ShiftPolynomial& p) const {
        Subspace img = image(p, h);
        return img.dim() - intersection_dim(img, h);
    }

    // dim T_n(p, N) for n = 1..steps
    std::vector<std::size_t> trajectory_dims(const ShiftPolynomial& p, const Subspace& n_sub, std::size_t steps) const {
        std::vector<std::size_t> out;
        Subspace t = n_sub, power = n_sub;
        for (std::size_t k = 1; k <= steps; ++k) {
            out.push_back(t.dim());
            power = image(p, power);
            t = sum(t, power);
        }
        return out;
    }

private:
    Field field_;
};

// Verdict for beta = c id + s shift on the infinite-dimensional sequence space.
struct LinearInertiality {
    bool finite_codim_in_sum = false;         // every H has finite codimension in H + beta H
    bool finite_codim_of_intersection = false;  // every H has H ∩ beta H of finite codimension in H
    // dim (H_N + beta H_N) / H_N for H_N spanned by e_0, e_2, ..., e_{2N-2}, N = 1..K.
    std::vector<std::size_t> witness_growth;
};

template <class Field>
LinearInertiality linear_inertiality(const LinearShiftSpace<Field>& space, const typename Field::value_type& c,
                                     const typename Field::value_type& s, std::size_t witness_steps = 6) {
    using Space = LinearShiftSpace<Field>;
    LinearInertiality out;
    // A pencil is scalar on a finite-codimension subspace exactly when the shift part vanishes.
    out.finite_codim_in_sum = Field::is_zero(s);
    out.finite_codim_of_intersection = Field::is_zero(s) && !Field::is_zero(c);
    typename Space::ShiftPolynomial p{{c, s}};
    std::vector<typename Space::Vector> evens;
    for (std::size_t n = 1; n <= witness_steps; ++n) {
        evens.push_back(space.unit(2 * (n - 1)));
        out.witness_growth.push_back(space.dim_inert_index(space.span(evens), p));
    }
    return out;
}

}  // namespace inertial
