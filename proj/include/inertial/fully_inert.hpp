#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "inertial/abelian.hpp"
#include "inertial/inertia.hpp"
#include "inertial/rational_space.hpp"

namespace inertial {

// phi H ⊆ H for every endomorphism; checked on the additive generators e_j -> c e_i of End(A).
inline bool is_fully_invariant(const Subgroup& h) {
    const FgAbGroup& a = h.ambient();
    const std::size_t n = a.dimension(), k = a.torsion_rank();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Integer c;
            if (j < k && i >= k) continue;  // torsion cannot map onto free coordinates
            if (j < k && i < k) c = a.modulus(i) / gcd(a.modulus(i), a.modulus(j));
            else c = 1;
            IntMatrix m(n, n);
            m(i, j) = c;
            Endo e(a, m);
            if (!lattice::contains_lattice(h.basis(), endo_apply_subgroup(e, h).basis())) return false;
        }
    return true;
}

// Fully inert: phi-inert for every endomorphism.
// Finite A: always. Z^n: H = 0 or finite index. Mixed ambients are not decided here.
inline bool is_fully_inert(const Subgroup& h) {
    const FgAbGroup& a = h.ambient();
    if (a.is_finite()) return true;
    if (!a.is_free()) fail(Errc::unsupported_ambient, "fully inert test covers finite and free ambients");
    return h.rank() == 0 || h.rank() == a.free_rank();
}

// Finitely generated H in Q^n: rank 0 or n.
inline bool is_fully_inert(const RationalLattice& h) { return h.rank() == 0 || h.rank() == h.ambient_dim(); }

// n with H ~ n Z^r when H is fully inert in Z^r: 0 for H = 0, n when H = n Z^r, 1 otherwise.
inline std::optional<Integer> commensurable_fully_invariant(const Subgroup& h) {
    const FgAbGroup& a = h.ambient();
    if (!a.is_free()) fail(Errc::unsupported_ambient, "ambient must be free abelian");
    const std::size_t r = a.free_rank();
    if (h.rank() == 0) return Integer(0);
    if (h.rank() != r) return std::nullopt;
    const IntMatrix& b = h.basis();
    Integer n = b(0, 0);
    if (b == IntMatrix::scalar(r, n)) return n;
    return Integer(1);
}

// Endomorphism x -> x_j e_i of Z^r with H not phi-inert, when H has intermediate rank.
inline std::optional<Endo> fully_inert_refutation(const Subgroup& h) {
    const FgAbGroup& a = h.ambient();
    if (!a.is_free()) fail(Errc::unsupported_ambient, "ambient must be free abelian");
    const std::size_t r = a.free_rank();
    if (h.rank() == 0 || h.rank() == r) return std::nullopt;
    const IntMatrix& b = h.basis();
    std::size_t j = 0;
    while (j < r && b(0, j) == 0) ++j;
    for (std::size_t i = 0; i < r; ++i) {
        IntMatrix test = b;
        std::vector<Integer> e(r, Integer(0));
        e[i] = 1;
        test.append_row(e);
        if (rational_rank(test) == h.rank()) continue;
        IntMatrix m(r, r);
        m(i, j) = 1;
        return Endo(a, m);
    }
    return std::nullopt;
}

struct UniformVerdict {
    bool uniform = false;
    std::optional<Rational> witness_scalar;  // phi = q I
    std::optional<long> power;               // first k with index > threshold
    std::optional<Cardinal> index;
};

inline constexpr long default_uniform_threshold = 1000000;

// Finitely generated H in Q^n is uniformly fully inert only when H = 0;
// otherwise phi = (1/2) I has |phi^k(H) + H / H| >= 2^k.
inline UniformVerdict is_uniformly_fully_inert(const RationalLattice& h, long threshold = default_uniform_threshold) {
    UniformVerdict v;
    if (h.is_zero()) {
        v.uniform = true;
        return v;
    }
    RationalEndo half = RationalEndo::scalar(h.ambient_dim(), Rational(1, 2));
    for (long k = 1;; ++k) {
        Cardinal idx = iterated_inert_index(h, half, k);
        if (idx.is_infinite() || idx.value() > threshold) {
            v.witness_scalar = Rational(1, 2);
            v.power = k;
            v.index = idx;
            return v;
        }
    }
}

// Finite A: bounded by |A|. Z^n: the bound [Z^n : H] works for finite-index H.
inline bool is_uniformly_fully_inert(const Subgroup& h) { return is_fully_inert(h); }

// The four nested classes, decided on finite and free ambients.
struct InertChain {
    bool fully_invariant = false;
    bool commensurable_with_fully_invariant = false;
    bool uniformly_fully_inert = false;
    bool fully_inert = false;
};

inline InertChain inert_chain(const Subgroup& h) {
    InertChain c;
    c.fully_invariant = is_fully_invariant(h);
    if (h.ambient().is_finite()) c.commensurable_with_fully_invariant = true;
    else c.commensurable_with_fully_invariant = commensurable_fully_invariant(h).has_value();
    c.uniformly_fully_inert = is_uniformly_fully_inert(h);
    c.fully_inert = is_fully_inert(h);
    return c;
}

inline InertChain inert_chain(const RationalLattice& h) {
    InertChain c;
    c.fully_invariant = h.is_zero();
    c.commensurable_with_fully_invariant = h.is_zero();
    c.uniformly_fully_inert = is_uniformly_fully_inert(h).uniform;
    c.fully_inert = is_fully_inert(h);
    return c;
}

// Symbolic description of a group D_tf ⊕ ⊕_p (D_p ⊕ ⊕_n Z(p^n)^(uk_n)).
struct PrimeComponent {
    Integer prime;
    Cardinal divisible_rank = Cardinal::finite(0);
    std::map<unsigned long, Cardinal> uk;  // exponent -> Ulm-Kaplansky invariant, zero beyond support
};

enum class TorsionFreeShape { zero, divisible, homogeneous_completely_decomposable, other };
enum class CofiniteDefault { zero, divisible, single_nonzero_uk, neither };

struct GroupDescriptor {
    std::vector<PrimeComponent> primes;
    TorsionFreeShape torsion_free = TorsionFreeShape::zero;
    Cardinal torsion_free_rank = Cardinal::finite(0);
    CofiniteDefault cofinite = CofiniteDefault::zero;
};

enum class SelfInert { self_inert, not_self_inert, undecided };

struct SelfInertVerdict {
    SelfInert verdict = SelfInert::undecided;
    std::string reason;
};

namespace detail {

inline bool is_nonzero(const Cardinal& c) { return c.is_infinite() || c.value() != 0; }

inline bool component_is_zero(const PrimeComponent& p) {
    if (is_nonzero(p.divisible_rank)) return false;
    for (const auto& [e, c] : p.uk)
        if (is_nonzero(c)) return false;
    return true;
}

// Self-inert p-group: divisible, or bounded with at most one infinite UK invariant.
inline SelfInertVerdict classify_component(const PrimeComponent& p) {
    std::size_t nonzero = 0, infinite = 0;
    for (const auto& [e, c] : p.uk) {
        if (e == 0) fail(Errc::invalid_input, "Ulm-Kaplansky exponents start at 1");
        if (is_nonzero(c)) ++nonzero;
        if (c.is_infinite()) ++infinite;
    }
    std::string tag = "p=" + p.prime.get_str() + ": ";
    if (nonzero == 0) return {SelfInert::self_inert, tag + "divisible"};
    if (is_nonzero(p.divisible_rank))
        return {SelfInert::not_self_inert, tag + "neither divisible nor bounded"};
    if (infinite > 1) return {SelfInert::not_self_inert, tag + "bounded with more than one infinite Ulm-Kaplansky invariant"};
    return {SelfInert::self_inert, tag + "bounded with at most one infinite Ulm-Kaplansky invariant"};
}

}  // namespace detail

inline SelfInertVerdict classify_self_inert(const GroupDescriptor& d) {
    // Torsion-free part: divisible, or homogeneous completely decomposable of finite rank.
    bool tf_present = d.torsion_free != TorsionFreeShape::zero && detail::is_nonzero(d.torsion_free_rank);
    SelfInertVerdict tf{SelfInert::self_inert, "torsion-free part is zero"};
    if (tf_present) {
        switch (d.torsion_free) {
            case TorsionFreeShape::divisible:
                tf = {SelfInert::self_inert, "torsion-free part divisible"};
                break;
            case TorsionFreeShape::homogeneous_completely_decomposable:
                tf = d.torsion_free_rank.is_finite()
                         ? SelfInertVerdict{SelfInert::self_inert,
                                            "torsion-free part completely decomposable homogeneous of finite rank"}
                         : SelfInertVerdict{SelfInert::not_self_inert,
                                            "torsion-free part completely decomposable homogeneous of infinite rank"};
                break;
            default:
                tf = {SelfInert::undecided, "torsion-free part outside the classified shapes"};
        }
    }
    // Torsion part: every p-component self-inert, cofinitely many divisible or single nonzero UK.
    bool torsion_present = d.cofinite != CofiniteDefault::zero;
    SelfInertVerdict tor{SelfInert::self_inert, "torsion part is zero"};
    for (const auto& p : d.primes) {
        if (detail::component_is_zero(p)) continue;
        torsion_present = true;
        SelfInertVerdict c = detail::classify_component(p);
        if (c.verdict != SelfInert::self_inert) {
            tor = c;
            break;
        }
    }
    if (tor.verdict == SelfInert::self_inert && d.cofinite == CofiniteDefault::neither)
        tor = {SelfInert::not_self_inert,
               "infinitely many p-components are neither divisible nor have a single nonzero Ulm-Kaplansky invariant"};
    else if (tor.verdict == SelfInert::self_inert && torsion_present)
        tor.reason = "every p-component self-inert and cofinitely many divisible or with a single nonzero Ulm-Kaplansky invariant";

    if (!torsion_present) return tf;
    if (!tf_present) return tor;
    // A divisible group is its own divisible hull.
    bool divisible = d.torsion_free == TorsionFreeShape::divisible &&
                     (d.cofinite == CofiniteDefault::zero || d.cofinite == CofiniteDefault::divisible);
    for (const auto& p : d.primes)
        for (const auto& [e, c] : p.uk)
            if (detail::is_nonzero(c)) divisible = false;
    if (divisible) return {SelfInert::self_inert, "divisible"};
    // Mixed: a self-inert group splits with both summands self-inert; sufficiency is not covered.
    if (tor.verdict == SelfInert::not_self_inert) return {SelfInert::not_self_inert, "mixed: torsion part fails (" + tor.reason + ")"};
    if (tf.verdict == SelfInert::not_self_inert) return {SelfInert::not_self_inert, "mixed: torsion-free part fails (" + tf.reason + ")"};
    return {SelfInert::undecided, "mixed group passing the necessary splitting conditions"};
}

// Direct decomposition of the ambient along coordinate blocks.
struct BoxDecomposition {
    std::vector<Subgroup> parts;                   // H_i = H ∩ A_i, inside A_i
    std::vector<std::optional<bool>> part_verdicts;  // fully inert in A_i; empty when undecided
    Subgroup product;                              // H_* = sum of the H_i, inside A
    Cardinal defect;                               // [H : H_*]
    std::optional<bool> fully_inert;               // verdict on the whole ambient
};

inline BoxDecomposition box_decompose(const Subgroup& h, const std::vector<std::vector<std::size_t>>& blocks) {
    const FgAbGroup& a = h.ambient();
    const std::size_t n = a.dimension();
    std::vector<bool> seen(n, false);
    for (const auto& b : blocks)
        for (auto c : b) {
            if (c >= n || seen[c]) fail(Errc::invalid_input, "blocks must partition the coordinates");
            seen[c] = true;
        }
    for (bool s : seen)
        if (!s) fail(Errc::invalid_input, "blocks must partition the coordinates");
    BoxDecomposition out{{}, {}, Subgroup::zero(a), Cardinal::finite(1), std::nullopt};
    for (auto b : blocks) {
        std::sort(b.begin(), b.end());
        IntMatrix rows(0, n);
        for (auto c : b) {
            std::vector<Integer> e(n, Integer(0));
            e[c] = 1;
            rows.append_row(e);
        }
        Subgroup factor = Subgroup::from_lattice(a, rows);
        Subgroup part = subgroup_intersect(h, factor);
        out.product = subgroup_sum(out.product, part);
        std::vector<Integer> factors;
        std::size_t free_rank = 0;
        for (auto c : b) {
            if (c < a.torsion_rank()) factors.push_back(a.modulus(c));
            else ++free_rank;
        }
        FgAbGroup local(factors, free_rank);
        IntMatrix local_rows(0, b.size());
        for (std::size_t i = 0; i < part.basis().rows(); ++i) {
            std::vector<Integer> r;
            for (auto c : b) r.push_back(part.basis()(i, c));
            local_rows.append_row(r);
        }
        Subgroup local_part = Subgroup::from_lattice(local, local_rows);
        std::optional<bool> verdict;
        try {
            verdict = is_fully_inert(local_part);
        } catch (const Error& e) {
            if (e.code() != Errc::unsupported_ambient) throw;
        }
        out.parts.push_back(std::move(local_part));
        out.part_verdicts.push_back(verdict);
    }
    out.defect = subgroup_index(h, out.product);
    try {
        out.fully_inert = is_fully_inert(h);
    } catch (const Error& e) {
        if (e.code() != Errc::unsupported_ambient) throw;
    }
    return out;
}

}  // namespace inertial
