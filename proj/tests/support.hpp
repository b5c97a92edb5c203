#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "inertial.hpp"

namespace testing_support {

using namespace inertial;

using Rng = std::mt19937_64;

inline long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

inline IntMatrix random_int_matrix(Rng& rng, std::size_t r, std::size_t c, long lo, long hi) {
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = uniform(rng, lo, hi);
    return m;
}

inline Rational random_rational(Rng& rng, long height) {
    return make_rational(Integer(uniform(rng, -height, height)), Integer(uniform(rng, 1, height)));
}

inline RatMatrix random_rational_matrix(Rng& rng, std::size_t n, long height) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = random_rational(rng, height);
    return m;
}

// Random invariant factor chain with small torsion order.
inline FgAbGroup random_group(Rng& rng, std::size_t max_torsion, std::size_t max_free) {
    std::vector<Integer> f;
    std::size_t k = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(max_torsion)));
    Integer prev = 1;
    for (std::size_t i = 0; i < k; ++i) {
        prev *= uniform(rng, i == 0 ? 2 : 1, 3);
        if (prev == 1) prev = 2;
        f.push_back(prev);
    }
    return FgAbGroup(f, static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(max_free))));
}

inline Endo random_endo(Rng& rng, const FgAbGroup& g, long lo, long hi) {
    std::size_t n = g.dimension();
    while (true) {
        IntMatrix m = random_int_matrix(rng, n, n, lo, hi);
        // Columns into torsion coordinates from a free coordinate are unrestricted; a torsion
        // column must be killed by its modulus. Clear violating free rows in torsion columns.
        for (std::size_t i = g.torsion_rank(); i < n; ++i)
            for (std::size_t j = 0; j < g.torsion_rank(); ++j) m(i, j) = 0;
        for (std::size_t j = 0; j < g.torsion_rank(); ++j)
            for (std::size_t i = 0; i < g.torsion_rank(); ++i) {
                Integer q = g.modulus(i) / gcd(g.modulus(i), g.modulus(j));
                m(i, j) = m(i, j) * q;
            }
        try {
            return Endo(g, m);
        } catch (const Error&) {
        }
    }
}

inline Subgroup random_subgroup(Rng& rng, const FgAbGroup& g, std::size_t max_gens, long height) {
    std::size_t k = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(max_gens)));
    return Subgroup::from_lattice(g, random_int_matrix(rng, k, g.dimension(), -height, height));
}

inline RationalLattice random_lattice(Rng& rng, std::size_t dim, std::size_t max_gens, long height) {
    std::size_t k = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(max_gens)));
    RatMatrix rows(k, dim);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < dim; ++j) rows(i, j) = random_rational(rng, height);
    return RationalLattice::from_rows(rows, dim);
}

// Element enumeration of a finite group given by invariant factors.
class Enumerated {
public:
    explicit Enumerated(FgAbGroup g) : g_(std::move(g)) {
        std::vector<Integer> x(g_.dimension(), Integer(0));
        while (true) {
            all_.push_back(x);
            std::size_t i = 0;
            for (; i < x.size(); ++i) {
                x[i] += 1;
                if (x[i] < g_.modulus(i)) break;
                x[i] = 0;
            }
            if (i == x.size()) break;
        }
    }

    const std::vector<std::vector<Integer>>& all() const { return all_; }

    std::vector<Integer> add(const std::vector<Integer>& a, const std::vector<Integer>& b) const {
        std::vector<Integer> c(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
        return g_.reduce(c);
    }

    std::set<std::vector<Integer>> closure(const std::vector<std::vector<Integer>>& gens) const {
        std::set<std::vector<Integer>> s{std::vector<Integer>(g_.dimension(), Integer(0))};
        std::vector<std::vector<Integer>> frontier(s.begin(), s.end());
        while (!frontier.empty()) {
            std::vector<std::vector<Integer>> next;
            for (const auto& x : frontier)
                for (const auto& gen : gens) {
                    auto y = add(x, g_.reduce(gen));
                    if (s.insert(y).second) next.push_back(y);
                }
            frontier = std::move(next);
        }
        return s;
    }

    std::set<std::vector<Integer>> members(const Subgroup& h) const {
        std::set<std::vector<Integer>> s;
        for (const auto& x : all_)
            if (h.contains(GroupElement(g_, x))) s.insert(x);
        return s;
    }

    std::set<std::vector<Integer>> apply(const Endo& phi, const std::set<std::vector<Integer>>& s) const {
        std::set<std::vector<Integer>> out;
        for (const auto& x : s) out.insert(phi.apply(GroupElement(g_, x)).coords());
        return out;
    }

private:
    FgAbGroup g_;
    std::vector<std::vector<Integer>> all_;
};

inline std::vector<std::vector<Integer>> rows_of(const IntMatrix& m) {
    std::vector<std::vector<Integer>> r;
    for (std::size_t i = 0; i < m.rows(); ++i) r.push_back(m.row_vector(i));
    return r;
}

// det(xI - A) at integer points by rational elimination, then Lagrange interpolation.
inline std::vector<Rational> charpoly_by_interpolation(const RatMatrix& a) {
    std::size_t n = a.rows();
    auto det_at = [&](long x) {
        RatMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m(i, j) = (i == j ? Rational(x) : Rational(0)) - a(i, j);
        Rational det = 1;
        for (std::size_t c = 0; c < n; ++c) {
            std::size_t p = c;
            while (p < n && m(p, c) == 0) ++p;
            if (p == n) return Rational(0);
            if (p != c) {
                m.swap_rows(p, c);
                det = -det;
            }
            det *= m(c, c);
            for (std::size_t r = c + 1; r < n; ++r) {
                Rational f = m(r, c) / m(c, c);
                for (std::size_t j = c; j < n; ++j) m(r, j) -= f * m(c, j);
            }
        }
        return det;
    };
    std::vector<Rational> coeffs(n + 1, Rational(0));
    for (std::size_t i = 0; i <= n; ++i) {
        // basis polynomial prod_{j != i} (x - j) / (i - j)
        std::vector<Rational> basis{Rational(1)};
        Rational denom = 1;
        for (std::size_t j = 0; j <= n; ++j) {
            if (j == i) continue;
            std::vector<Rational> next(basis.size() + 1, Rational(0));
            for (std::size_t k = 0; k < basis.size(); ++k) {
                next[k + 1] += basis[k];
                next[k] -= basis[k] * Rational(static_cast<long>(j));
            }
            basis = std::move(next);
            denom *= Rational(static_cast<long>(i) - static_cast<long>(j));
        }
        Rational yi = det_at(static_cast<long>(i)) / denom;
        for (std::size_t k = 0; k <= n; ++k) coeffs[k] += yi * basis[k];
    }
    return coeffs;
}

inline IntPolynomial poly(std::initializer_list<long> c) { return IntPolynomial(c); }

}  // namespace testing_support
