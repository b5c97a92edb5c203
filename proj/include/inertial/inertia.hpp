#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "inertial/abelian.hpp"
#include "inertial/finite_group.hpp"
#include "inertial/models.hpp"
#include "inertial/rational_space.hpp"

namespace inertial {

struct InertVerdict {
    bool inert = false;
    Cardinal index;  // [H^phi : H^phi ∩ H]
};

inline InertVerdict make_verdict(Cardinal index) { return {index.is_finite(), std::move(index)}; }

// H <=_a K  iff  [H : H ∩ K] finite.
inline bool almost_contained(const Subgroup& h, const Subgroup& k) { return subgroup_index(h, k).is_finite(); }
inline bool almost_contained(const RationalLattice& h, const RationalLattice& k) {
    return lattice_index(h, k).is_finite();
}

template <class S>
bool commensurable(const S& h, const S& k) {
    return almost_contained(h, k) && almost_contained(k, h);
}

inline InertVerdict inert_index(const Subgroup& h, const Endo& phi) {
    return make_verdict(subgroup_index(endo_apply_subgroup(phi, h), h));
}

inline InertVerdict inert_index(const RationalLattice& h, const RationalEndo& phi) {
    return make_verdict(lattice_index(endo_apply_lattice(phi, h), h));
}

// Right Bernoulli shift on a finite subgroup of the shift group.
inline InertVerdict inert_index(const ShiftSubgroup& h) {
    ShiftSubgroup img = h.shifted();
    return make_verdict(Cardinal::finite(Integer(static_cast<unsigned long>(img.order() / img.intersect(h).order()))));
}

inline InertVerdict inert_index(const FiniteGroup& g, const ElementSet& h, const std::vector<std::uint32_t>& phi) {
    return make_verdict(Cardinal::finite(Integer(static_cast<unsigned long>(finite_group_inert_index(g, phi, h)))));
}

// Cylinder U_k under the two-sided shift.
inline InertVerdict inert_index(const CylinderFamily& fam, long k) {
    return make_verdict(Cardinal::finite(two_sided_shift_inert_index(fam, k)));
}

// |(H + phi H) / H|
inline Cardinal strict_inert_index(const Subgroup& h, const Endo& phi) {
    return subgroup_index(subgroup_sum(h, endo_apply_subgroup(phi, h)), h);
}

inline Cardinal strict_inert_index(const RationalLattice& h, const RationalEndo& phi) {
    return lattice_index(lattice_sum(h, endo_apply_lattice(phi, h)), h);
}

// strict_inert_index(H, phi^k); negative k uses the inverse.
inline Cardinal iterated_inert_index(const Subgroup& h, const Endo& phi, long k) {
    if (k == 0) return Cardinal::finite(1);
    if (k > 0) return strict_inert_index(h, phi.power(static_cast<unsigned long>(k)));
    auto inv = endo_inverse(phi);
    if (!inv) fail(Errc::not_invertible, "negative power of a non-invertible endomorphism");
    return strict_inert_index(h, inv->power(static_cast<unsigned long>(-k)));
}

inline Cardinal iterated_inert_index(const RationalLattice& h, const RationalEndo& phi, long k) {
    if (k == 0) return Cardinal::finite(1);
    if (k > 0) return strict_inert_index(h, phi.power(static_cast<unsigned long>(k)));
    auto inv = phi.inverse();
    if (!inv) fail(Errc::not_invertible, "negative power of a non-invertible endomorphism");
    return strict_inert_index(h, inv->power(static_cast<unsigned long>(-k)));
}

inline Endo make_multiplication(const FgAbGroup& a, const Integer& m) { return Endo::scalar(a, m); }

// x -> (m/n) x, defined when n is invertible on A: A finite with gcd(n, exp A) = 1.
inline Endo make_multiplication(const FgAbGroup& a, const Rational& q) {
    if (q.get_den() == 1) return Endo::scalar(a, q.get_num());
    if (!a.is_finite()) fail(Errc::not_divisible, "group is not " + q.get_den().get_str() + "-divisible");
    Integer e = a.exponent(), inv;
    if (!mod_inverse(q.get_den(), e, inv))
        fail(Errc::not_divisible, "multiplication by " + q.get_den().get_str() + " is not invertible on the group");
    return Endo::scalar(a, floor_mod(q.get_num() * inv, e));
}

inline RationalEndo make_multiplication(std::size_t dim, const Rational& q) { return RationalEndo::scalar(dim, q); }

// Some integer m with phi(x) = m x for all x.
inline std::optional<Integer> is_multiplication(const Endo& phi) {
    const FgAbGroup& a = phi.ambient();
    const IntMatrix& m = phi.matrix();
    const std::size_t n = a.dimension(), k = a.torsion_rank();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && m(i, j) != 0) return std::nullopt;
    if (n == 0) return Integer(0);
    Integer value = k < n ? m(n - 1, n - 1) : m(k - 1, k - 1);
    for (std::size_t i = 0; i < n; ++i) {
        bool ok = i < k ? floor_mod(value, a.modulus(i)) == m(i, i) : m(i, i) == value;
        if (!ok) return std::nullopt;
    }
    return value;
}

inline std::optional<Rational> is_multiplication(const RationalEndo& phi) { return phi.scalar_value(); }

// C(phi) = ker(phi - id) has finite index.
inline bool is_finitary(const Endo& phi) {
    Subgroup c = endo_kernel(phi - Endo::identity(phi.ambient()));
    return c.rank() == phi.ambient().free_rank();
}

struct InertialCertificate {
    enum class Kind { multiplication_integer, non_inertial_witness };
    Kind kind = Kind::multiplication_integer;
    std::optional<Integer> m;
    std::optional<Subgroup> invariant_subgroup;  // A_0 on which phi acts as m
    std::optional<Subgroup> witness;
    std::optional<Cardinal> witness_index;  // strict index of the witness
};

inline constexpr long default_witness_height = 8;

// Cyclic <v> with v supported on free coordinates, height <= bound, and v, phi(v)
// independent on the free quotient. Within a height, sparser vectors come first, then
// lexicographically larger ones; v and -v give the same subgroup, so the first nonzero entry is positive.
inline std::optional<Subgroup> find_non_inert_witness(const Endo& phi, long height = default_witness_height) {
    const FgAbGroup& a = phi.ambient();
    const std::size_t k = a.torsion_rank(), r = a.free_rank();
    if (r < 2) return std::nullopt;
    IntMatrix f = phi.free_block();
    for (long h = 1; h <= height; ++h) {
        std::vector<std::vector<long>> layer;
        std::vector<long> v(r, -h);
        while (true) {
            long top = 0;
            for (long x : v) top = std::max(top, std::labs(x));
            auto lead = std::find_if(v.begin(), v.end(), [](long x) { return x != 0; });
            if (top == h && lead != v.end() && *lead > 0) layer.push_back(v);
            std::size_t i = 0;
            while (i < r && v[i] == h) v[i++] = -h;
            if (i == r) break;
            ++v[i];
        }
        auto support = [](const std::vector<long>& x) { return std::count_if(x.begin(), x.end(), [](long y) { return y != 0; }); };
        std::sort(layer.begin(), layer.end(), [&](const std::vector<long>& x, const std::vector<long>& y) {
            if (support(x) != support(y)) return support(x) < support(y);
            return x > y;
        });
        for (const auto& cand : layer) {
            std::vector<Integer> vf(cand.begin(), cand.end());
            std::vector<Integer> fv = times_column<Integer>(f, vf);
            IntMatrix pair(0, r);
            pair.append_row(vf);
            pair.append_row(fv);
            if (rational_rank(pair) == 2) {
                std::vector<Integer> full(k, Integer(0));
                full.insert(full.end(), vf.begin(), vf.end());
                std::vector<GroupElement> gens{GroupElement(a, full)};
                return subgroup_from_generators(a, gens);
            }
        }
    }
    return std::nullopt;
}

// Every subgroup of A is phi-inert iff phi acts on A / t(A) as a scalar m; then phi = m on eA.
inline InertialCertificate is_inertial_endomorphism(const Endo& phi, long witness_height = default_witness_height) {
    const FgAbGroup& a = phi.ambient();
    IntMatrix f = phi.free_block();
    const std::size_t r = a.free_rank();
    InertialCertificate cert;
    bool scalar = true;
    for (std::size_t i = 0; i < r && scalar; ++i)
        for (std::size_t j = 0; j < r && scalar; ++j)
            scalar = i == j ? f(i, j) == f(0, 0) : f(i, j) == 0;
    if (scalar) {
        cert.kind = InertialCertificate::Kind::multiplication_integer;
        cert.m = r ? f(0, 0) : Integer(0);
        cert.invariant_subgroup = r ? Subgroup::multiples(a, a.exponent()) : Subgroup::zero(a);
        return cert;
    }
    cert.kind = InertialCertificate::Kind::non_inertial_witness;
    auto w = find_non_inert_witness(phi, witness_height);
    if (!w) fail(Errc::budget_exceeded, "no witness found within height " + std::to_string(witness_height));
    cert.witness_index = strict_inert_index(*w, phi);
    cert.witness = std::move(w);
    return cert;
}

}  // namespace inertial
