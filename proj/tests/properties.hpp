#pragma once

#include <functional>
#include <sstream>
#include <string>

#include "support.hpp"

// Randomized property suites shared by the unit tests and the acceptance run.
// Each suite draws instances until `target` non-vacuous cases were checked.
namespace testing_support {

struct PropertyOutcome {
    long cases = 0;
    long failures = 0;
    std::string first_failure;

    void check(bool ok, const std::function<std::string()>& describe) {
        if (ok) return;
        if (failures++ == 0) first_failure = describe();
    }
    PropertyOutcome& operator+=(const PropertyOutcome& o) {
        if (failures == 0 && o.failures) first_failure = o.first_failure;
        cases += o.cases;
        failures += o.failures;
        return *this;
    }
};

namespace detail {

inline std::string describe(const inertial::Endo& phi, const inertial::Subgroup& h) {
    std::ostringstream s;
    s << "phi=" << inertial::to_string(phi.matrix()) << " H=" << inertial::to_string(h.basis());
    return s.str();
}

}  // namespace detail

// phi-inert subgroups with finite strict index are closed under + and ∩.
inline PropertyOutcome lattice_closure_property(std::uint64_t seed, long target) {
    using namespace inertial;
    Rng rng(seed);
    PropertyOutcome out;
    for (long attempt = 0; out.cases < target && attempt < 20 * target; ++attempt) {
        FgAbGroup g = random_group(rng, 2, 2);
        Endo phi = random_endo(rng, g, -2, 2);
        Subgroup h = random_subgroup(rng, g, 2, 4), k = random_subgroup(rng, g, 2, 4);
        if (strict_inert_index(h, phi).is_infinite() || strict_inert_index(k, phi).is_infinite()) continue;
        ++out.cases;
        out.check(strict_inert_index(subgroup_sum(h, k), phi).is_finite(), [&] { return "sum: " + detail::describe(phi, h); });
        out.check(strict_inert_index(subgroup_intersect(h, k), phi).is_finite(),
                  [&] { return "meet: " + detail::describe(phi, h); });
    }
    return out;
}

// Endomorphisms for which H is inert form a subring.
inline PropertyOutcome ring_closure_property(std::uint64_t seed, long target) {
    using namespace inertial;
    Rng rng(seed);
    PropertyOutcome out;
    for (long attempt = 0; out.cases < target && attempt < 20 * target; ++attempt) {
        FgAbGroup g = random_group(rng, 2, 2);
        Endo phi = random_endo(rng, g, -2, 2), psi = random_endo(rng, g, -2, 2);
        Subgroup h = random_subgroup(rng, g, 2, 4);
        if (strict_inert_index(h, phi).is_infinite() || strict_inert_index(h, psi).is_infinite()) continue;
        ++out.cases;
        out.check(strict_inert_index(h, phi + psi).is_finite(), [&] { return "sum: " + detail::describe(phi, h); });
        out.check(strict_inert_index(h, phi.compose(psi)).is_finite(), [&] { return "product: " + detail::describe(phi, h); });
    }
    return out;
}

// Commensurability is an equivalence and inertness only depends on the class.
inline PropertyOutcome commensurability_property(std::uint64_t seed, long target) {
    using namespace inertial;
    Rng rng(seed);
    PropertyOutcome out;
    for (long c = 0; c < target; ++c) {
        FgAbGroup g = random_group(rng, 2, 2);
        Endo phi = random_endo(rng, g, -2, 2);
        Subgroup a = random_subgroup(rng, g, 2, 3), b = random_subgroup(rng, g, 2, 3);
        Subgroup a1 = subgroup_intersect(a, Subgroup::multiples(g, uniform(rng, 1, 4)));
        Subgroup a2 = subgroup_sum(a, Subgroup::torsion(g));
        ++out.cases;
        auto d = [&] { return detail::describe(phi, a); };
        out.check(commensurable(a, a), d);
        out.check(commensurable(a, b) == commensurable(b, a), d);
        out.check(commensurable(a, a1) && commensurable(a1, a2), d);
        out.check(commensurable(a1, b) == commensurable(a, b), d);
        out.check(inert_index(a, phi).inert == inert_index(a1, phi).inert, d);
        out.check(inert_index(a, phi).inert == inert_index(a2, phi).inert, d);
    }
    return out;
}

// ent(phi) <= intrinsic(phi) <= h_alg(phi) on rational matrices, and the two intrinsic paths agree.
inline PropertyOutcome entropy_chain_property(std::uint64_t seed, long target) {
    using namespace inertial;
    Rng rng(seed);
    PropertyOutcome out;
    for (long c = 0; c < target; ++c) {
        RationalEndo phi(random_rational_matrix(rng, uniform(rng, 1, 3), 5));
        EntropyReport in = intrinsic_entropy(phi, c % 4 == 0);
        EntropyReport h;
        try {
            h = h_alg_yuzvinski(phi);
        } catch (const Error& e) {
            if (e.code() != Errc::indeterminate_near_unit_circle) throw;
            continue;
        }
        ++out.cases;
        auto d = [&] { return "phi=" + to_string(phi.matrix()); };
        out.check(0.0 <= in.value.approx(), d);
        out.check(in.value.approx() <= h.value.approx() + h.value.error_bound() + 1e-12, d);
        if (in.cross_check) out.check(in.cross_check->agree, d);
    }
    return out;
}

// t_n(phi, H) <= t^n for every subgroup of every group of order <= 24, with sampled endomorphisms.
inline PropertyOutcome transversal_growth_property(std::uint64_t seed, std::size_t endos_per_subgroup, int max_n) {
    using namespace inertial;
    Rng rng(seed);
    PropertyOutcome out;
    for (const auto& g : groups::small_groups(24)) {
        auto ends = g.endomorphisms();
        for (const auto& h : g.subgroups()) {
            for (std::size_t s = 0; s < std::min(endos_per_subgroup, ends.size()); ++s) {
                const auto& phi = ends[endos_per_subgroup >= ends.size() ? s : uniform(rng, 0, ends.size() - 1)];
                std::size_t t = finite_group_inert_index(g, phi, h), tn = t;
                for (int n = 1; n <= max_n; ++n, tn *= t) {
                    ++out.cases;
                    std::size_t count = minimal_transversal_count(g, h, finite_group_trajectory(g, phi, h, n));
                    out.check(count <= tn, [&] {
                        return g.name() + " |H|=" + std::to_string(h.size()) + " n=" + std::to_string(n);
                    });
                }
            }
        }
    }
    return out;
}

}  // namespace testing_support
