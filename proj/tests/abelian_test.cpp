#include <gtest/gtest.h>

#include "support.hpp"

using namespace inertial;
using namespace testing_support;

namespace {

FgAbGroup Z(std::size_t r) { return FgAbGroup::free(r); }

Subgroup sub(const FgAbGroup& g, const IntMatrix& rows) { return Subgroup::from_lattice(g, rows); }

}  // namespace

TEST(Canonicalize, DiagonalTwoThree) {
    FgAbGroup g = canonicalize_presentation(IntMatrix{{2, 0}, {0, 3}});
    ASSERT_EQ(g.invariant_factors().size(), 1u);
    EXPECT_EQ(g.invariant_factors()[0], 6);
    EXPECT_EQ(g.free_rank(), 0u);
}

TEST(Canonicalize, ZeroRelations) {
    FgAbGroup g = canonicalize_presentation(IntMatrix(2, 2));
    EXPECT_TRUE(g.invariant_factors().empty());
    EXPECT_EQ(g.free_rank(), 2u);
}

TEST(Canonicalize, UnitFactorDropped) {
    FgAbGroup g = canonicalize_presentation(IntMatrix{{1, 0}, {0, 4}});
    ASSERT_EQ(g.invariant_factors().size(), 1u);
    EXPECT_EQ(g.invariant_factors()[0], 4);
}

TEST(Canonicalize, OrderMatchesDeterminant) {
    Rng rng(21);
    for (int trial = 0; trial < 200; ++trial) {
        IntMatrix r = random_int_matrix(rng, 2, 2, -6, 6);
        Integer det = abs(r(0, 0) * r(1, 1) - r(0, 1) * r(1, 0));
        FgAbGroup g = canonicalize_presentation(r);
        if (det == 0) {
            EXPECT_GE(g.free_rank(), 1u);
        } else {
            EXPECT_EQ(g.order(), Cardinal::finite(det));
        }
    }
}

TEST(Group, RejectsBrokenChain) {
    EXPECT_THROW(FgAbGroup({Integer(2), Integer(3)}, 0), Error);
    EXPECT_THROW(FgAbGroup({Integer(1)}, 0), Error);
}

TEST(Group, Description) {
    EXPECT_EQ(FgAbGroup({Integer(2)}, 2).to_string(), "Z/2 + Z^2");
    EXPECT_EQ(FgAbGroup({}, 0).to_string(), "0");
}

TEST(Generators, Examples) {
    FgAbGroup z2 = Z(2);
    std::vector<GroupElement> g1{GroupElement(z2, {2, 0}), GroupElement(z2, {0, 2})};
    Subgroup h = subgroup_from_generators(z2, g1);
    EXPECT_EQ(h.basis(), (IntMatrix{{2, 0}, {0, 2}}));

    FgAbGroup c4 = FgAbGroup::cyclic(4);
    std::vector<GroupElement> g2{GroupElement(c4, {2})};
    EXPECT_EQ(subgroup_from_generators(c4, g2).order(), Cardinal::finite(2));

    std::vector<GroupElement> g3{GroupElement(z2, {2, 0}), GroupElement(z2, {3, 0})};
    EXPECT_TRUE(subgroup_from_generators(z2, g3).contains(GroupElement(z2, {1, 0})));
}

TEST(Generators, DimensionMismatch) {
    EXPECT_THROW(GroupElement(Z(2), {1, 2, 3}), Error);
}

TEST(Lattice, SumAndIntersection) {
    FgAbGroup z = Z(1);
    Subgroup two = sub(z, IntMatrix{{2}}), three = sub(z, IntMatrix{{3}});
    EXPECT_EQ(subgroup_sum(two, three), Subgroup::whole(z));
    EXPECT_EQ(subgroup_intersect(two, three), sub(z, IntMatrix{{6}}));
    FgAbGroup z2 = Z(2);
    EXPECT_TRUE(subgroup_intersect(sub(z2, IntMatrix{{1, 0}}), sub(z2, IntMatrix{{0, 1}})).is_zero());
}

TEST(Lattice, AmbientMismatch) {
    EXPECT_THROW(subgroup_sum(Subgroup::whole(Z(1)), Subgroup::whole(Z(2))), Error);
}

TEST(Index, Examples) {
    FgAbGroup z2 = Z(2);
    EXPECT_EQ(subgroup_index(Subgroup::whole(z2), Subgroup::multiples(z2, 2)), Cardinal::finite(4));
    EXPECT_TRUE(subgroup_index(Subgroup::whole(Z(1)), Subgroup::zero(Z(1))).is_infinite());
    EXPECT_EQ(subgroup_index(sub(z2, IntMatrix{{2, 0}, {0, 3}}), sub(z2, IntMatrix{{4, 0}, {0, 3}})), Cardinal::finite(2));
}

TEST(Index, MatchesEnumerationInFiniteGroups) {
    Rng rng(22);
    for (int trial = 0; trial < 150; ++trial) {
        FgAbGroup g = random_group(rng, 3, 0);
        if (g.is_trivial()) continue;
        Enumerated e(g);
        Subgroup h = random_subgroup(rng, g, 2, 9), k = random_subgroup(rng, g, 2, 9);
        auto hs = e.members(h), ks = e.members(k);
        EXPECT_EQ(h.order(), Cardinal::finite(static_cast<unsigned long>(hs.size())));
        EXPECT_EQ(hs, e.closure(rows_of(h.basis())));
        std::set<std::vector<Integer>> meet;
        for (const auto& x : hs)
            if (ks.count(x)) meet.insert(x);
        EXPECT_EQ(subgroup_index(h, k), Cardinal::finite(static_cast<unsigned long>(hs.size() / meet.size())));
        EXPECT_EQ(e.members(subgroup_intersect(h, k)), meet);
        std::vector<std::vector<Integer>> gens = rows_of(h.basis());
        for (const auto& r : rows_of(k.basis())) gens.push_back(r);
        EXPECT_EQ(e.members(subgroup_sum(h, k)), e.closure(gens));
    }
}

TEST(Endo, ImageExamples) {
    FgAbGroup z2 = Z(2);
    EXPECT_EQ(endo_apply_subgroup(Endo::scalar(z2, 2), Subgroup::whole(z2)), Subgroup::multiples(z2, 2));
    Endo shear(z2, IntMatrix{{1, 1}, {0, 1}});
    EXPECT_EQ(endo_apply_subgroup(shear, sub(z2, IntMatrix{{0, 1}})), sub(z2, IntMatrix{{1, 1}}));
    EXPECT_TRUE(endo_apply_subgroup(Endo::scalar(z2, 0), Subgroup::whole(z2)).is_zero());
}

TEST(Endo, IncompatibleMatrixRejected) {
    FgAbGroup g({Integer(2)}, 1);
    EXPECT_THROW(Endo(g, IntMatrix{{1, 0}, {1, 1}}), Error);
    FgAbGroup h({Integer(2), Integer(4)}, 0);
    EXPECT_THROW(Endo(h, IntMatrix{{1, 0}, {1, 1}}), Error);
    EXPECT_NO_THROW(Endo(h, IntMatrix{{1, 0}, {2, 1}}));
}

TEST(Endo, KernelAndCokernel) {
    FgAbGroup z = Z(1);
    EXPECT_TRUE(endo_kernel(Endo::scalar(z, 3)).is_zero());
    EXPECT_EQ(endo_cokernel_order(Endo::scalar(z, 3)), Cardinal::finite(3));

    FgAbGroup c4 = FgAbGroup::cyclic(4);
    Subgroup k = endo_kernel(Endo::scalar(c4, 2));
    EXPECT_EQ(k.order(), Cardinal::finite(2));
    EXPECT_TRUE(k.contains(GroupElement(c4, {2})));
    EXPECT_EQ(endo_cokernel_order(Endo::scalar(c4, 2)), Cardinal::finite(2));

    Endo d(Z(2), IntMatrix{{2, 0}, {0, 1}});
    EXPECT_TRUE(endo_kernel(d).is_zero());
    EXPECT_EQ(endo_cokernel_order(d), Cardinal::finite(2));
}

TEST(Endo, KernelCokernelBalanceOnFiniteGroups) {
    Rng rng(23);
    for (int trial = 0; trial < 200; ++trial) {
        FgAbGroup g = random_group(rng, 3, 0);
        if (g.is_trivial()) continue;
        Endo phi = random_endo(rng, g, -4, 4);
        EXPECT_EQ(endo_kernel(phi).order(), endo_cokernel_order(phi));
        Enumerated e(g);
        std::set<std::vector<Integer>> ker;
        for (const auto& x : e.all())
            if (phi.apply(GroupElement(g, x)).is_zero()) ker.insert(x);
        EXPECT_EQ(e.members(endo_kernel(phi)), ker);
        Subgroup h = random_subgroup(rng, g, 2, 9);
        EXPECT_EQ(e.members(endo_apply_subgroup(phi, h)), e.apply(phi, e.members(h)));
        std::set<std::vector<Integer>> pre;
        auto hs = e.members(h);
        for (const auto& x : e.all())
            if (hs.count(phi.apply(GroupElement(g, x)).coords())) pre.insert(x);
        EXPECT_EQ(e.members(endo_preimage(phi, h)), pre);
    }
}

TEST(Endo, InverseOfUnimodular) {
    FgAbGroup z2 = Z(2);
    Endo shear(z2, IntMatrix{{1, 1}, {0, 1}});
    auto inv = endo_inverse(shear);
    ASSERT_TRUE(inv.has_value());
    EXPECT_EQ(shear.compose(*inv).matrix(), IntMatrix::identity(2));
    EXPECT_FALSE(endo_inverse(Endo::scalar(z2, 2)).has_value());
}

TEST(Properties, IndexMultiplicativeAlongChains) {
    Rng rng(24);
    for (int trial = 0; trial < 200; ++trial) {
        FgAbGroup g = random_group(rng, 2, 2);
        Subgroup h = random_subgroup(rng, g, 3, 6);
        Subgroup k = subgroup_intersect(h, random_subgroup(rng, g, 3, 6));
        Subgroup a = Subgroup::whole(g);
        Cardinal ah = subgroup_index(a, h), hk = subgroup_index(h, k), ak = subgroup_index(a, k);
        if (ah.is_finite() && hk.is_finite()) {
            EXPECT_EQ(ak, Cardinal::finite(ah.value() * hk.value()));
        } else {
            EXPECT_TRUE(ak.is_infinite());
        }
        EXPECT_EQ(subgroup_index(h, k), subgroup_index(h, subgroup_intersect(h, k)));
    }
}

TEST(Properties, LatticeLaws) {
    Rng rng(25);
    for (int trial = 0; trial < 200; ++trial) {
        FgAbGroup g = random_group(rng, 2, 2);
        Subgroup a = random_subgroup(rng, g, 2, 5), b = random_subgroup(rng, g, 2, 5), c = random_subgroup(rng, g, 2, 5);
        EXPECT_EQ(subgroup_sum(a, b), subgroup_sum(b, a));
        EXPECT_EQ(subgroup_intersect(a, b), subgroup_intersect(b, a));
        EXPECT_EQ(subgroup_sum(subgroup_sum(a, b), c), subgroup_sum(a, subgroup_sum(b, c)));
        EXPECT_EQ(subgroup_intersect(subgroup_intersect(a, b), c), subgroup_intersect(a, subgroup_intersect(b, c)));
        EXPECT_EQ(subgroup_sum(a, a), a);
        EXPECT_EQ(subgroup_intersect(a, a), a);
        EXPECT_EQ(subgroup_sum(a, subgroup_intersect(a, b)), a);
        EXPECT_EQ(Subgroup::from_lattice(g, a.basis()), a);
    }
}
