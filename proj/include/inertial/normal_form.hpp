#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <vector>

#include "inertial/integer.hpp"
#include "inertial/matrix.hpp"

namespace inertial {

namespace detail {

// row[dst] -= q * row[src], mirrored on the transform when present.
inline void row_axpy(IntMatrix& a, std::size_t dst, std::size_t src, const Integer& q) {
    if (q == 0) return;
    for (std::size_t j = 0; j < a.cols(); ++j) {
        if (a(src, j) != 0) a(dst, j) -= q * a(src, j);
    }
}

inline void negate_row(IntMatrix& a, std::size_t r) {
    for (std::size_t j = 0; j < a.cols(); ++j) a(r, j) = -a(r, j);
}

// Echelon reduction shared by the plain and transform-tracking variants.
// Pivot choice: smallest absolute nonzero entry in the column, first on ties.
inline std::size_t echelonize(IntMatrix& a, IntMatrix* u) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < m; ++col) {
        bool found = false;
        while (true) {
            std::size_t best = m;
            for (std::size_t i = row; i < m; ++i) {
                if (a(i, col) == 0) continue;
                if (best == m || abs(a(i, col)) < abs(a(best, col))) best = i;
            }
            if (best == m) break;
            found = true;
            a.swap_rows(row, best);
            if (u) u->swap_rows(row, best);
            bool clean = true;
            for (std::size_t i = row + 1; i < m; ++i) {
                if (a(i, col) == 0) continue;
                Integer q = floor_div(a(i, col), a(row, col));
                row_axpy(a, i, row, q);
                if (u) row_axpy(*u, i, row, q);
                if (a(i, col) != 0) clean = false;
            }
            if (clean) break;
        }
        if (!found) continue;
        if (a(row, col) < 0) {
            negate_row(a, row);
            if (u) negate_row(*u, row);
        }
        for (std::size_t i = 0; i < row; ++i) {
            Integer q = floor_div(a(i, col), a(row, col));
            row_axpy(a, i, row, q);
            if (u) row_axpy(*u, i, row, q);
        }
        ++row;
    }
    return row;
}

}  // namespace detail

// Row Hermite normal form: upper echelon, positive pivots, entries above each pivot in [0, pivot).
// Zero rows are dropped, so the result has exactly rank-many rows.
inline IntMatrix hermite_form(IntMatrix a) {
    std::size_t r = detail::echelonize(a, nullptr);
    a.truncate_rows(r);
    if (r == 0) return IntMatrix(0, a.cols());
    return a;
}

struct HermiteDecomposition {
    IntMatrix form;       // m x n, zero rows at the bottom
    IntMatrix transform;  // m x m unimodular with transform * input == form
    std::size_t rank = 0;
};

inline HermiteDecomposition hermite_with_transform(IntMatrix a) {
    IntMatrix u = IntMatrix::identity(a.rows());
    std::size_t r = detail::echelonize(a, &u);
    return {std::move(a), std::move(u), r};
}

// Basis (in Hermite form) of {x in Z^m : x * a == 0}.
inline IntMatrix left_kernel(const IntMatrix& a) {
    auto dec = hermite_with_transform(a);
    IntMatrix k(0, a.rows());
    for (std::size_t i = dec.rank; i < a.rows(); ++i) k.append_row(dec.transform.row(i));
    if (k.rows() == 0) return IntMatrix(0, a.rows());
    return hermite_form(std::move(k));
}

// Some integer x with x * a == b, when one exists.
inline std::optional<std::vector<Integer>> solve_left(const IntMatrix& a, std::span<const Integer> b) {
    if (b.size() != a.cols()) fail(Errc::dimension_mismatch, "right-hand side length");
    auto dec = hermite_with_transform(a);
    std::vector<Integer> rest(b.begin(), b.end());
    std::vector<Integer> coeff(dec.rank, Integer(0));
    std::size_t col = 0;
    for (std::size_t r = 0; r < dec.rank; ++r) {
        while (dec.form(r, col) == 0) {
            if (rest[col] != 0) return std::nullopt;
            ++col;
        }
        const Integer& pivot = dec.form(r, col);
        if (!divides(pivot, rest[col])) return std::nullopt;
        Integer q = rest[col] / pivot;
        coeff[r] = q;
        for (std::size_t j = col; j < a.cols(); ++j) rest[j] -= q * dec.form(r, j);
        ++col;
    }
    for (const auto& v : rest)
        if (v != 0) return std::nullopt;
    std::vector<Integer> x(a.rows(), Integer(0));
    for (std::size_t r = 0; r < dec.rank; ++r) {
        if (coeff[r] == 0) continue;
        for (std::size_t j = 0; j < a.rows(); ++j) x[j] += coeff[r] * dec.transform(r, j);
    }
    return x;
}

// Nonzero Smith invariants d_1 | d_2 | ... (positive, units kept).
inline std::vector<Integer> smith_diagonal(IntMatrix a) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    std::vector<Integer> diag;
    std::size_t t = 0;
    while (t < m && t < n) {
        // Smallest absolute nonzero entry of the trailing block, row-major first on ties.
        auto select_pivot = [&]() -> bool {
            std::size_t bi = m, bj = n;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j) {
                    if (a(i, j) == 0) continue;
                    if (bi == m || abs(a(i, j)) < abs(a(bi, bj))) {
                        bi = i;
                        bj = j;
                    }
                }
            if (bi == m) return false;
            a.swap_rows(t, bi);
            if (bj != t)
                for (std::size_t i = 0; i < m; ++i) std::swap(a(i, t), a(i, bj));
            return true;
        };
        if (!select_pivot()) break;
        while (true) {
            bool dirty = false;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (a(i, t) == 0) continue;
                Integer q = floor_div(a(i, t), a(t, t));
                detail::row_axpy(a, i, t, q);
                if (a(i, t) != 0) dirty = true;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (a(t, j) == 0) continue;
                Integer q = floor_div(a(t, j), a(t, t));
                for (std::size_t i = t; i < m; ++i) a(i, j) -= q * a(i, t);
                if (a(t, j) != 0) dirty = true;
            }
            if (!dirty) {
                // Divisibility fix-up: fold an offending row into the pivot row.
                std::size_t bad = m;
                for (std::size_t i = t + 1; i < m && bad == m; ++i)
                    for (std::size_t j = t + 1; j < n; ++j)
                        if (!divides(a(t, t), a(i, j))) {
                            bad = i;
                            break;
                        }
                if (bad == m) break;
                for (std::size_t j = t; j < n; ++j) a(t, j) += a(bad, j);
            }
            select_pivot();
        }
        diag.push_back(abs(a(t, t)));
        ++t;
    }
    return diag;
}

// Integer lattices in Z^n given by row bases.
namespace lattice {

inline IntMatrix canonical(const IntMatrix& rows) { return hermite_form(rows); }

inline IntMatrix sum(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.cols()) fail(Errc::dimension_mismatch, "lattice ambient dimension");
    return hermite_form(IntMatrix::vstack(a, b));
}

inline IntMatrix intersect(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.cols()) fail(Errc::dimension_mismatch, "lattice ambient dimension");
    if (a.rows() == 0 || b.rows() == 0) return IntMatrix(0, a.cols());
    IntMatrix kernel = left_kernel(IntMatrix::vstack(a, b));
    IntMatrix gens(0, a.cols());
    for (std::size_t i = 0; i < kernel.rows(); ++i) {
        std::vector<Integer> x(kernel.row(i).begin(), kernel.row(i).begin() + a.rows());
        gens.append_row(row_times<Integer>(x, a));
    }
    if (gens.rows() == 0) return IntMatrix(0, a.cols());
    return hermite_form(std::move(gens));
}

inline bool contains(const IntMatrix& basis, std::span<const Integer> v) {
    if (basis.rows() == 0) {
        return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
    }
    return solve_left(basis, v).has_value();
}

inline bool contains_lattice(const IntMatrix& big, const IntMatrix& small) {
    for (std::size_t i = 0; i < small.rows(); ++i)
        if (!contains(big, small.row(i))) return false;
    return true;
}

// Pivot product of a Hermite basis.
inline Integer pivot_product(const IntMatrix& hnf) {
    Integer p = 1;
    std::size_t col = 0;
    for (std::size_t r = 0; r < hnf.rows(); ++r) {
        while (hnf(r, col) == 0) ++col;
        p *= hnf(r, col);
        ++col;
    }
    return p;
}

// [a : sub] for canonical bases with sub contained in a.
inline Cardinal index_of_sublattice(const IntMatrix& a, const IntMatrix& sub) {
    if (sub.rows() < a.rows()) return Cardinal::infinite();
    return Cardinal::finite(pivot_product(sub) / pivot_product(a));
}

// [a : a ∩ b].
inline Cardinal index(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix ha = hermite_form(a);
    return index_of_sublattice(ha, intersect(ha, b));
}

// {c in Z^m : c * p lies in the row lattice of l}; p is m x n, l is k x n.
inline IntMatrix coefficient_preimage(const IntMatrix& p, const IntMatrix& l) {
    if (p.cols() != l.cols()) fail(Errc::dimension_mismatch, "preimage shapes");
    if (p.rows() == 0) return IntMatrix(0, 0);
    IntMatrix stacked = IntMatrix::vstack(p, l);
    IntMatrix kernel = left_kernel(stacked);
    IntMatrix gens(0, p.rows());
    for (std::size_t i = 0; i < kernel.rows(); ++i) {
        std::vector<Integer> c(kernel.row(i).begin(), kernel.row(i).begin() + p.rows());
        gens.append_row(c);
    }
    if (gens.rows() == 0) return IntMatrix(0, p.rows());
    return hermite_form(std::move(gens));
}

}  // namespace lattice

}  // namespace inertial
