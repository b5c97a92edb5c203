#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "inertial/abelian.hpp"
#include "inertial/integer.hpp"

namespace inertial {

inline constexpr std::uint64_t default_element_cap = 1000000;

// Finitely supported element of the direct sum of copies of a finite cell F indexed by
// positions 0, 1, 2, ...; each entry is (position, mixed-radix code of a nonzero cell element).
using ShiftElement = std::vector<std::pair<std::uint64_t, std::uint64_t>>;

// Direct sum of copies of a finite abelian group F with the right Bernoulli shift.
class ShiftGroup {
public:
    explicit ShiftGroup(FgAbGroup cell) : cell_(std::move(cell)) {
        if (!cell_.is_finite()) fail(Errc::unsupported_ambient, "shift cell must be finite");
        for (const auto& d : cell_.invariant_factors()) radix_.push_back(to_u64_checked(d, "cell factor"));
        cell_order_ = to_u64_checked(cell_.torsion_order(), "cell order");
    }

    const FgAbGroup& cell() const noexcept { return cell_; }
    std::uint64_t cell_order() const noexcept { return cell_order_; }

    std::uint64_t encode(const GroupElement& x) const {
        if (x.size() != cell_.dimension()) fail(Errc::dimension_mismatch, "cell element has wrong length");
        std::uint64_t code = 0;
        for (std::size_t i = radix_.size(); i-- > 0;) code = code * radix_[i] + x.coords()[i].get_ui();
        return code;
    }

    GroupElement decode(std::uint64_t code) const {
        std::vector<Integer> c(radix_.size());
        for (std::size_t i = 0; i < radix_.size(); ++i) {
            c[i] = static_cast<unsigned long>(code % radix_[i]);
            code /= radix_[i];
        }
        return GroupElement(cell_, std::move(c));
    }

    std::uint64_t add_codes(std::uint64_t a, std::uint64_t b) const {
        std::uint64_t out = 0, scale = 1;
        for (std::size_t i = 0; i < radix_.size(); ++i) {
            std::uint64_t d = radix_[i];
            std::uint64_t s = (a % d + b % d) % d;
            a /= d;
            b /= d;
            out += s * scale;
            scale *= d;
        }
        return out;
    }

    std::uint64_t negate_code(std::uint64_t a) const {
        std::uint64_t out = 0, scale = 1;
        for (std::size_t i = 0; i < radix_.size(); ++i) {
            std::uint64_t d = radix_[i];
            out += ((d - a % d) % d) * scale;
            a /= d;
            scale *= d;
        }
        return out;
    }

    ShiftElement make(const std::vector<std::pair<std::uint64_t, GroupElement>>& entries) const {
        ShiftElement e;
        for (const auto& [pos, x] : entries) {
            std::uint64_t code = encode(x);
            if (code) e = add(e, ShiftElement{{pos, code}});
        }
        return e;
    }

    ShiftElement add(const ShiftElement& a, const ShiftElement& b) const {
        ShiftElement out;
        out.reserve(a.size() + b.size());
        std::size_t i = 0, j = 0;
        while (i < a.size() || j < b.size()) {
            if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
                out.push_back(a[i++]);
            } else if (i == a.size() || b[j].first < a[i].first) {
                out.push_back(b[j++]);
            } else {
                std::uint64_t s = add_codes(a[i].second, b[j].second);
                if (s) out.emplace_back(a[i].first, s);
                ++i;
                ++j;
            }
        }
        return out;
    }

    ShiftElement negate(const ShiftElement& a) const {
        ShiftElement out = a;
        for (auto& [pos, code] : out) code = negate_code(code);
        return out;
    }

    // Right Bernoulli shift applied k times.
    static ShiftElement shift(ShiftElement a, std::uint64_t k = 1) {
        for (auto& entry : a) entry.first += k;
        return a;
    }

    // Copy of F sitting at one position, as cell-generator elements.
    std::vector<ShiftElement> coordinate_copy(std::uint64_t position = 0) const {
        std::vector<ShiftElement> gens;
        for (std::size_t i = 0; i < cell_.dimension(); ++i) {
            std::vector<Integer> c(cell_.dimension(), Integer(0));
            c[i] = 1;
            gens.push_back(ShiftElement{{position, encode(GroupElement(cell_, c))}});
        }
        return gens;
    }

    bool operator==(const ShiftGroup& other) const { return cell_ == other.cell_; }

private:
    FgAbGroup cell_;
    std::vector<std::uint64_t> radix_;
    std::uint64_t cell_order_ = 1;
};

// Finite subgroup of a ShiftGroup held as its sorted element list.
class ShiftSubgroup {
public:
    static ShiftSubgroup generate(const ShiftGroup& g, const std::vector<ShiftElement>& gens,
                                  std::uint64_t cap = default_element_cap) {
        std::set<ShiftElement> s{ShiftElement{}};
        saturate(g, s, gens, cap);
        return ShiftSubgroup(g, std::vector<ShiftElement>(s.begin(), s.end()));
    }

    static ShiftSubgroup zero(const ShiftGroup& g) { return ShiftSubgroup(g, {ShiftElement{}}); }

    const ShiftGroup& group() const noexcept { return group_; }
    const std::vector<ShiftElement>& elements() const noexcept { return elements_; }
    std::uint64_t order() const noexcept { return elements_.size(); }

    bool contains(const ShiftElement& x) const { return std::binary_search(elements_.begin(), elements_.end(), x); }

    bool contains(const ShiftSubgroup& other) const {
        return std::includes(elements_.begin(), elements_.end(), other.elements_.begin(), other.elements_.end());
    }

    ShiftSubgroup shifted(std::uint64_t k = 1) const {
        std::vector<ShiftElement> e;
        e.reserve(elements_.size());
        for (const auto& x : elements_) e.push_back(ShiftGroup::shift(x, k));
        std::sort(e.begin(), e.end());
        return ShiftSubgroup(group_, std::move(e));
    }

    ShiftSubgroup intersect(const ShiftSubgroup& other) const {
        std::vector<ShiftElement> e;
        std::set_intersection(elements_.begin(), elements_.end(), other.elements_.begin(), other.elements_.end(),
                              std::back_inserter(e));
        return ShiftSubgroup(group_, std::move(e));
    }

    ShiftSubgroup sum(const ShiftSubgroup& other, std::uint64_t cap = default_element_cap) const {
        std::set<ShiftElement> s(elements_.begin(), elements_.end());
        saturate(group_, s, other.elements_, cap);
        return ShiftSubgroup(group_, std::vector<ShiftElement>(s.begin(), s.end()));
    }

    bool operator==(const ShiftSubgroup& other) const { return elements_ == other.elements_; }

private:
    // Coset extension: for each generator x, S <- S + <x> until a multiple of x lands in S.
    static void saturate(const ShiftGroup& g, std::set<ShiftElement>& s, const std::vector<ShiftElement>& gens,
                         std::uint64_t cap) {
        for (const auto& x : gens) {
            if (s.count(x)) continue;
            std::vector<ShiftElement> base(s.begin(), s.end());
            ShiftElement multiple = x;
            while (!s.count(multiple)) {
                if (s.size() + base.size() > cap)
                    fail(Errc::cap_exceeded, "subgroup closure exceeds " + std::to_string(cap) + " elements");
                for (const auto& b : base) s.insert(g.add(b, multiple));
                multiple = g.add(multiple, x);
            }
        }
    }

    ShiftSubgroup(const ShiftGroup& g, std::vector<ShiftElement> e) : group_(g), elements_(std::move(e)) {}

    ShiftGroup group_;
    std::vector<ShiftElement> elements_;
};

// |F_sub + beta F_sub + ... + beta^(n-1) F_sub|
inline Integer shift_trajectory_order(const ShiftGroup& g, const std::vector<ShiftElement>& f_sub, long n,
                                      std::uint64_t cap = default_element_cap) {
    if (n <= 0) fail(Errc::invalid_input, "step count must be positive");
    std::vector<ShiftElement> gens;
    for (long k = 0; k < n; ++k)
        for (const auto& x : f_sub) gens.push_back(ShiftGroup::shift(x, static_cast<std::uint64_t>(k)));
    return Integer(static_cast<unsigned long>(ShiftSubgroup::generate(g, gens, cap).order()));
}

// Symbolic family of cylinder subgroups U_k of the full product of copies of F.
// One-sided: U_k vanishes on the first k coordinates. Two-sided: U_k vanishes on [-k, k].
class CylinderFamily {
public:
    CylinderFamily(FgAbGroup cell, bool two_sided) : cell_(std::move(cell)), two_sided_(two_sided) {
        if (!cell_.is_finite()) fail(Errc::unsupported_ambient, "cylinder cell must be finite");
    }

    const FgAbGroup& cell() const noexcept { return cell_; }
    bool two_sided() const noexcept { return two_sided_; }
    Integer cell_order() const { return cell_.torsion_order(); }

    // [U_j : U_k] for k >= j.
    Integer index(long j, long k) const {
        if (j < 0 || k < j) fail(Errc::invalid_input, "cylinder indices must satisfy 0 <= j <= k");
        unsigned long width = static_cast<unsigned long>(k - j);
        return integer_pow(cell_order(), two_sided_ ? 2 * width : width);
    }

private:
    FgAbGroup cell_;
    bool two_sided_;
};

// [U_k : C_n(psi, U_k)] for the left shift psi on the one-sided family.
inline Integer cylinder_cotrajectory_index(const CylinderFamily& fam, long k, long n) {
    if (fam.two_sided()) fail(Errc::invalid_input, "cotrajectory index needs a one-sided family");
    if (k < 0) fail(Errc::invalid_input, "cylinder index must be non-negative");
    if (n < 1) fail(Errc::invalid_input, "step count must be positive");
    // psi^{-1}(U_0) is everything, so U_0 is psi-invariant; otherwise C_n = U_{k+n-1}.
    if (k == 0) return 1;
    return fam.index(k, k + n - 1);
}

// [sigma U_k : sigma U_k ∩ U_k] for the two-sided shift automorphism sigma.
inline Integer two_sided_shift_inert_index(const CylinderFamily& fam, long k) {
    if (!fam.two_sided()) fail(Errc::invalid_input, "inert index needs a two-sided family");
    if (k < 0) fail(Errc::invalid_input, "cylinder index must be non-negative");
    return fam.cell_order();
}

}  // namespace inertial
