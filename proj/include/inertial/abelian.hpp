#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "inertial/integer.hpp"
#include "inertial/matrix.hpp"
#include "inertial/normal_form.hpp"

namespace inertial {

// Z/d_1 + ... + Z/d_k + Z^r with d_1 | d_2 | ... | d_k and every d_i >= 2.
// Coordinates are ordered torsion first, then free.
class FgAbGroup {
public:
    FgAbGroup() = default;

    FgAbGroup(std::vector<Integer> invariant_factors, std::size_t free_rank)
        : factors_(std::move(invariant_factors)), free_rank_(free_rank) {
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            if (factors_[i] < 2) fail(Errc::invalid_input, "invariant factor below 2: " + factors_[i].get_str());
            if (i && !divides(factors_[i - 1], factors_[i]))
                fail(Errc::invalid_input, "invariant factors must form a divisibility chain");
        }
    }

    static FgAbGroup free(std::size_t rank) { return FgAbGroup({}, rank); }
    static FgAbGroup cyclic(const Integer& n) {
        if (n == 0) return free(1);
        if (abs(n) == 1) return FgAbGroup();
        return FgAbGroup({Integer(abs(n))}, 0);
    }

    const std::vector<Integer>& invariant_factors() const noexcept { return factors_; }
    std::size_t free_rank() const noexcept { return free_rank_; }
    std::size_t torsion_rank() const noexcept { return factors_.size(); }
    std::size_t dimension() const noexcept { return factors_.size() + free_rank_; }

    bool is_finite() const noexcept { return free_rank_ == 0; }
    bool is_free() const noexcept { return factors_.empty(); }
    bool is_trivial() const noexcept { return dimension() == 0; }

    // Modulus of coordinate i: d_i on torsion coordinates, 0 on free ones.
    Integer modulus(std::size_t i) const { return i < factors_.size() ? factors_[i] : Integer(0); }

    Integer torsion_order() const {
        Integer n = 1;
        for (const auto& d : factors_) n *= d;
        return n;
    }

    Cardinal order() const { return is_finite() ? Cardinal::finite(torsion_order()) : Cardinal::infinite(); }

    Integer exponent() const { return factors_.empty() ? Integer(1) : factors_.back(); }

    // Rows d_i e_i spanning the relation lattice.
    IntMatrix relation_lattice() const {
        IntMatrix r(factors_.size(), dimension());
        for (std::size_t i = 0; i < factors_.size(); ++i) r(i, i) = factors_[i];
        return r;
    }

    std::vector<Integer> reduce(std::vector<Integer> coords) const {
        if (coords.size() != dimension()) fail(Errc::dimension_mismatch, "element has wrong number of coordinates");
        for (std::size_t i = 0; i < factors_.size(); ++i) coords[i] = floor_mod(coords[i], factors_[i]);
        return coords;
    }

    bool operator==(const FgAbGroup& other) const = default;

    std::string to_string() const {
        std::string s;
        for (const auto& d : factors_) {
            if (!s.empty()) s += " + ";
            s += "Z/" + d.get_str();
        }
        if (free_rank_) {
            if (!s.empty()) s += " + ";
            s += free_rank_ == 1 ? std::string("Z") : "Z^" + std::to_string(free_rank_);
        }
        return s.empty() ? std::string("0") : s;
    }

private:
    std::vector<Integer> factors_;
    std::size_t free_rank_ = 0;
};

// Invariant factors and free rank of Z^n / rowspan(relations).
inline FgAbGroup canonicalize_presentation(const IntMatrix& relations) {
    std::vector<Integer> diag = smith_diagonal(relations);
    std::vector<Integer> factors;
    for (const auto& d : diag)
        if (d != 1) factors.push_back(d);
    return FgAbGroup(std::move(factors), relations.cols() - diag.size());
}

class GroupElement {
public:
    GroupElement() = default;
    GroupElement(const FgAbGroup& group, std::vector<Integer> coords) : coords_(group.reduce(std::move(coords))) {}

    const std::vector<Integer>& coords() const noexcept { return coords_; }
    std::size_t size() const noexcept { return coords_.size(); }
    bool is_zero() const {
        for (const auto& c : coords_)
            if (c != 0) return false;
        return true;
    }

    bool operator==(const GroupElement& other) const = default;
    bool operator<(const GroupElement& other) const { return coords_ < other.coords_; }

private:
    std::vector<Integer> coords_;
};

inline GroupElement add(const FgAbGroup& g, const GroupElement& a, const GroupElement& b) {
    std::vector<Integer> c = a.coords();
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.coords()[i];
    return GroupElement(g, std::move(c));
}

class Subgroup {
public:
    // Lattice spanned by the given rows together with the relation lattice.
    static Subgroup from_lattice(const FgAbGroup& ambient, const IntMatrix& rows) {
        if (rows.rows() && rows.cols() != ambient.dimension())
            fail(Errc::dimension_mismatch, "generator length differs from ambient dimension");
        IntMatrix all = IntMatrix::vstack(ambient.relation_lattice(), rows);
        if (all.cols() != ambient.dimension()) all = IntMatrix(0, ambient.dimension());
        return Subgroup(ambient, hermite_form(std::move(all)));
    }

    static Subgroup zero(const FgAbGroup& ambient) { return from_lattice(ambient, IntMatrix(0, ambient.dimension())); }
    static Subgroup whole(const FgAbGroup& ambient) {
        return from_lattice(ambient, IntMatrix::identity(ambient.dimension()));
    }
    static Subgroup torsion(const FgAbGroup& ambient) {
        IntMatrix rows(ambient.torsion_rank(), ambient.dimension());
        for (std::size_t i = 0; i < ambient.torsion_rank(); ++i) rows(i, i) = 1;
        return from_lattice(ambient, rows);
    }
    // nA
    static Subgroup multiples(const FgAbGroup& ambient, const Integer& n) {
        return from_lattice(ambient, IntMatrix::scalar(ambient.dimension(), n));
    }

    const FgAbGroup& ambient() const noexcept { return ambient_; }
    const IntMatrix& basis() const noexcept { return basis_; }

    // Torsion-free rank of the subgroup.
    std::size_t rank() const { return basis_.rows() - ambient_.torsion_rank(); }
    bool is_finite() const { return rank() == 0; }
    bool is_zero() const { return basis_ == hermite_form(ambient_.relation_lattice()); }

    Cardinal order() const {
        if (!is_finite()) return Cardinal::infinite();
        return Cardinal::finite(ambient_.torsion_order() / lattice::pivot_product(basis_));
    }

    bool contains(const GroupElement& x) const { return lattice::contains(basis_, x.coords()); }

    // Basis rows as elements, skipping rows that vanish in the ambient group.
    std::vector<GroupElement> generators() const {
        std::vector<GroupElement> out;
        for (std::size_t i = 0; i < basis_.rows(); ++i) {
            GroupElement g(ambient_, basis_.row_vector(i));
            if (!g.is_zero()) out.push_back(std::move(g));
        }
        return out;
    }

    bool operator==(const Subgroup& other) const = default;

private:
    Subgroup(FgAbGroup ambient, IntMatrix basis) : ambient_(std::move(ambient)), basis_(std::move(basis)) {}

    FgAbGroup ambient_;
    IntMatrix basis_;
};

inline void require_same_ambient(const FgAbGroup& a, const FgAbGroup& b) {
    if (!(a == b)) fail(Errc::ambient_mismatch, a.to_string() + " vs " + b.to_string());
}

inline Subgroup subgroup_from_generators(const FgAbGroup& ambient, std::span<const GroupElement> gens) {
    IntMatrix rows(0, ambient.dimension());
    for (const auto& g : gens) {
        if (g.size() != ambient.dimension()) fail(Errc::dimension_mismatch, "generator length differs from ambient");
        rows.append_row(g.coords());
    }
    return Subgroup::from_lattice(ambient, rows);
}

inline Subgroup subgroup_sum(const Subgroup& h, const Subgroup& k) {
    require_same_ambient(h.ambient(), k.ambient());
    return Subgroup::from_lattice(h.ambient(), lattice::sum(h.basis(), k.basis()));
}

inline Subgroup subgroup_intersect(const Subgroup& h, const Subgroup& k) {
    require_same_ambient(h.ambient(), k.ambient());
    return Subgroup::from_lattice(h.ambient(), lattice::intersect(h.basis(), k.basis()));
}

// [H : H ∩ K]
inline Cardinal subgroup_index(const Subgroup& h, const Subgroup& k) {
    require_same_ambient(h.ambient(), k.ambient());
    return lattice::index_of_sublattice(h.basis(), lattice::intersect(h.basis(), k.basis()));
}

// Endomorphism x -> M x on coordinate columns; torsion rows are kept reduced mod d_j.
class Endo {
public:
    Endo(FgAbGroup ambient, IntMatrix matrix) : ambient_(std::move(ambient)), matrix_(std::move(matrix)) {
        const std::size_t n = ambient_.dimension();
        if (matrix_.rows() != n || matrix_.cols() != n)
            fail(Errc::dimension_mismatch, "endomorphism matrix must be " + std::to_string(n) + "x" + std::to_string(n));
        const std::size_t k = ambient_.torsion_rank();
        for (std::size_t j = 0; j < k; ++j)
            for (std::size_t i = 0; i < n; ++i) matrix_(j, i) = floor_mod(matrix_(j, i), ambient_.modulus(j));
        for (std::size_t i = 0; i < k; ++i) {
            const Integer& di = ambient_.modulus(i);
            for (std::size_t j = 0; j < n; ++j) {
                bool ok = j < k ? divides(ambient_.modulus(j), di * matrix_(j, i)) : matrix_(j, i) == 0;
                if (!ok)
                    fail(Errc::incompatible_endomorphism,
                         "column " + std::to_string(i) + " does not map the relation lattice into itself");
            }
        }
    }

    static Endo identity(const FgAbGroup& a) { return Endo(a, IntMatrix::identity(a.dimension())); }
    static Endo scalar(const FgAbGroup& a, const Integer& m) { return Endo(a, IntMatrix::scalar(a.dimension(), m)); }

    const FgAbGroup& ambient() const noexcept { return ambient_; }
    const IntMatrix& matrix() const noexcept { return matrix_; }

    // Action on the torsion-free quotient A / t(A).
    IntMatrix free_block() const {
        const std::size_t k = ambient_.torsion_rank();
        return matrix_.block(k, k, ambient_.free_rank(), ambient_.free_rank());
    }

    GroupElement apply(const GroupElement& x) const {
        return GroupElement(ambient_, times_column<Integer>(matrix_, x.coords()));
    }

    Endo power(unsigned long k) const { return Endo(ambient_, matrix_.pow(k)); }

    // (this ∘ other)(x) = this(other(x))
    Endo compose(const Endo& other) const {
        require_same_ambient(ambient_, other.ambient_);
        return Endo(ambient_, matrix_ * other.matrix_);
    }

    friend Endo operator+(const Endo& a, const Endo& b) {
        require_same_ambient(a.ambient_, b.ambient_);
        return Endo(a.ambient_, a.matrix_ + b.matrix_);
    }
    friend Endo operator-(const Endo& a, const Endo& b) {
        require_same_ambient(a.ambient_, b.ambient_);
        return Endo(a.ambient_, a.matrix_ - b.matrix_);
    }

    bool operator==(const Endo& other) const = default;

private:
    FgAbGroup ambient_;
    IntMatrix matrix_;
};

inline Subgroup endo_apply_subgroup(const Endo& phi, const Subgroup& h) {
    require_same_ambient(phi.ambient(), h.ambient());
    return Subgroup::from_lattice(h.ambient(), h.basis() * phi.matrix().transpose());
}

// {x : phi(x) in H}
inline Subgroup endo_preimage(const Endo& phi, const Subgroup& h) {
    require_same_ambient(phi.ambient(), h.ambient());
    const std::size_t n = phi.ambient().dimension();
    IntMatrix pre = lattice::coefficient_preimage(phi.matrix().transpose(), h.basis());
    if (pre.cols() != n) pre = IntMatrix(0, n);
    return Subgroup::from_lattice(h.ambient(), pre);
}

inline Subgroup endo_kernel(const Endo& phi) { return endo_preimage(phi, Subgroup::zero(phi.ambient())); }

inline Subgroup endo_image(const Endo& phi) { return endo_apply_subgroup(phi, Subgroup::whole(phi.ambient())); }

// [A : im phi]
inline Cardinal endo_cokernel_order(const Endo& phi) {
    return subgroup_index(Subgroup::whole(phi.ambient()), endo_image(phi));
}

inline std::optional<Endo> endo_inverse(const Endo& phi) {
    const FgAbGroup& a = phi.ambient();
    const std::size_t n = a.dimension();
    if (!endo_kernel(phi).is_zero()) return std::nullopt;
    if (!(endo_cokernel_order(phi) == Cardinal::finite(1))) return std::nullopt;
    // Preimage of each e_i: solve x * M^T + y * Lambda = e_i.
    IntMatrix system = IntMatrix::vstack(phi.matrix().transpose(), a.relation_lattice());
    IntMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Integer> e(n, Integer(0));
        e[i] = 1;
        auto sol = solve_left(system, e);
        if (!sol) return std::nullopt;
        for (std::size_t j = 0; j < n; ++j) inv(j, i) = (*sol)[j];
    }
    return Endo(a, inv);
}

}  // namespace inertial
