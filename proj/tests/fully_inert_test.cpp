#include <gtest/gtest.h>

#include "support.hpp"

using namespace inertial;
using namespace testing_support;

namespace {

Subgroup sub(const FgAbGroup& g, const IntMatrix& rows) { return Subgroup::from_lattice(g, rows); }

// All endomorphisms of a finite group, by filtering integer matrices with entries below the row modulus.
std::vector<Endo> all_endomorphisms(const FgAbGroup& g) {
    const std::size_t n = g.dimension();
    std::vector<Endo> out;
    std::vector<long> e(n * n, 0);
    while (true) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m(i, j) = e[i * n + j];
        try {
            out.emplace_back(g, m);
        } catch (const Error&) {
        }
        std::size_t p = 0;
        for (; p < e.size(); ++p) {
            if (++e[p] < g.modulus(p / n)) break;
            e[p] = 0;
        }
        if (p == e.size()) break;
    }
    return out;
}

std::vector<Endo> box_endomorphisms(const FgAbGroup& g, long bound) {
    std::vector<Endo> out;
    for (long a = -bound; a <= bound; ++a)
        for (long b = -bound; b <= bound; ++b)
            for (long c = -bound; c <= bound; ++c)
                for (long d = -bound; d <= bound; ++d) out.emplace_back(g, IntMatrix{{a, b}, {c, d}});
    return out;
}

GroupDescriptor free_descriptor(long rank) {
    GroupDescriptor d;
    d.torsion_free = TorsionFreeShape::homogeneous_completely_decomposable;
    d.torsion_free_rank = Cardinal::finite(rank);
    return d;
}

}  // namespace

TEST(FullyInert, Examples) {
    EXPECT_TRUE(is_fully_inert(RationalLattice::standard(3)));
    FgAbGroup z2 = FgAbGroup::free(2);
    EXPECT_FALSE(is_fully_inert(sub(z2, IntMatrix{{1, 0}})));
    FgAbGroup fin({Integer(2), Integer(4)}, 0);
    Rng rng(71);
    for (int i = 0; i < 20; ++i) EXPECT_TRUE(is_fully_inert(random_subgroup(rng, fin, 2, 3)));
    EXPECT_THROW(is_fully_inert(Subgroup::whole(FgAbGroup({Integer(2)}, 1))), Error);
}

TEST(FullyInert, CommensurableFullyInvariantExamples) {
    FgAbGroup z2 = FgAbGroup::free(2);
    EXPECT_EQ(*commensurable_fully_invariant(sub(z2, IntMatrix{{6, 0}, {0, 6}})), 6);
    EXPECT_EQ(*commensurable_fully_invariant(sub(z2, IntMatrix{{2, 0}, {0, 3}})), 1);
    EXPECT_FALSE(commensurable_fully_invariant(sub(z2, IntMatrix{{1, 0}})).has_value());
    EXPECT_EQ(*commensurable_fully_invariant(Subgroup::zero(z2)), 0);
}

TEST(FullyInert, ReturnedMultipleIsCommensurable) {
    Rng rng(72);
    for (int trial = 0; trial < 300; ++trial) {
        FgAbGroup g = FgAbGroup::free(uniform(rng, 1, 3));
        Subgroup h = random_subgroup(rng, g, 3, 4);
        auto n = commensurable_fully_invariant(h);
        EXPECT_EQ(n.has_value(), is_fully_inert(h));
        if (!n) continue;
        Subgroup target = *n == 0 ? Subgroup::zero(g) : Subgroup::multiples(g, n->get_si());
        EXPECT_TRUE(commensurable(h, target));
        EXPECT_TRUE(is_fully_invariant(target));
    }
}

TEST(FullyInert, UniformExamples) {
    EXPECT_TRUE(is_uniformly_fully_inert(RationalLattice::from_rows(RatMatrix(0, 2), 2)).uniform);
    UniformVerdict z = is_uniformly_fully_inert(RationalLattice::standard(1));
    EXPECT_FALSE(z.uniform);
    EXPECT_EQ(*z.witness_scalar, Rational(1, 2));
    EXPECT_EQ(*z.power, 20);  // 2^20 is the first power of two above 10^6
    EXPECT_EQ(*z.index, Cardinal::finite(Integer(1) << 20));
    UniformVerdict z2 = is_uniformly_fully_inert(RationalLattice::standard(2));
    EXPECT_FALSE(z2.uniform);
    EXPECT_EQ(*z2.power, 10);  // 4^10 > 10^6
    EXPECT_EQ(*is_uniformly_fully_inert(RationalLattice::standard(1), 100).power, 7);
}

TEST(FullyInert, FullyInvariantMatchesBruteForce) {
    std::vector<FgAbGroup> groups{FgAbGroup({Integer(2), Integer(4)}, 0), FgAbGroup({Integer(3), Integer(3)}, 0),
                                  FgAbGroup({Integer(2), Integer(2), Integer(2)}, 0), FgAbGroup({Integer(12)}, 0)};
    Rng rng(73);
    for (const auto& g : groups) {
        Enumerated en(g);
        std::vector<Endo> ends = all_endomorphisms(g);
        for (int trial = 0; trial < 25; ++trial) {
            Subgroup h = random_subgroup(rng, g, 2, 3);
            auto members = en.members(h);
            bool oracle = true;
            for (const auto& phi : ends) {
                for (const auto& y : en.apply(phi, members))
                    if (!members.count(y)) oracle = false;
                if (!oracle) break;
            }
            EXPECT_EQ(is_fully_invariant(h), oracle) << to_string(h.basis());
        }
    }
}

TEST(FullyInert, FreeVerdictMatchesBruteForce) {
    FgAbGroup z2 = FgAbGroup::free(2);
    std::vector<Endo> ends = box_endomorphisms(z2, 2);
    Rng rng(74);
    for (int trial = 0; trial < 40; ++trial) {
        Subgroup h = random_subgroup(rng, z2, 2, 3);
        bool verdict = is_fully_inert(h);
        bool refuted = false;
        for (const auto& phi : ends)
            if (!inert_index(h, phi).inert) {
                refuted = true;
                break;
            }
        EXPECT_EQ(verdict, !refuted) << to_string(h.basis());
        auto w = fully_inert_refutation(h);
        EXPECT_EQ(w.has_value(), !verdict);
        if (w) EXPECT_FALSE(inert_index(h, *w).inert);
    }
}

TEST(FullyInert, ChainImplications) {
    Rng rng(75);
    auto check = [](const InertChain& c) {
        if (c.fully_invariant) EXPECT_TRUE(c.commensurable_with_fully_invariant);
        if (c.commensurable_with_fully_invariant) EXPECT_TRUE(c.uniformly_fully_inert);
        if (c.uniformly_fully_inert) EXPECT_TRUE(c.fully_inert);
    };
    for (int trial = 0; trial < 300; ++trial) {
        FgAbGroup g = uniform(rng, 0, 1) ? random_group(rng, 2, 0) : FgAbGroup::free(uniform(rng, 1, 3));
        check(inert_chain(random_subgroup(rng, g, 3, 4)));
        check(inert_chain(random_lattice(rng, uniform(rng, 1, 3), 3, 4)));
    }
}

TEST(FullyInert, StableUnderCommensurability) {
    Rng rng(76);
    for (int trial = 0; trial < 300; ++trial) {
        FgAbGroup g = FgAbGroup::free(uniform(rng, 1, 3));
        Subgroup h = random_subgroup(rng, g, 3, 4);
        Subgroup k = subgroup_intersect(h, Subgroup::multiples(g, uniform(rng, 1, 5)));
        EXPECT_EQ(is_fully_inert(h), is_fully_inert(k));
        EXPECT_EQ(commensurable_fully_invariant(h).has_value(), commensurable_fully_invariant(k).has_value());
        RationalLattice l = random_lattice(rng, 2, 2, 4);
        RationalLattice l2 = endo_apply_lattice(RationalEndo::scalar(2, Rational(1, uniform(rng, 1, 4))), l);
        EXPECT_EQ(is_fully_inert(l), is_fully_inert(lattice_sum(l, l2)));
    }
}

TEST(SelfInert, Examples) {
    EXPECT_EQ(classify_self_inert(free_descriptor(3)).verdict, SelfInert::self_inert);

    GroupDescriptor two_infinite;
    PrimeComponent p{Integer(2)};
    p.uk[1] = Cardinal::infinite();
    p.uk[2] = Cardinal::infinite();
    two_infinite.primes.push_back(p);
    EXPECT_EQ(classify_self_inert(two_infinite).verdict, SelfInert::not_self_inert);

    GroupDescriptor divisible;
    divisible.torsion_free = TorsionFreeShape::divisible;
    divisible.torsion_free_rank = Cardinal::infinite();
    PrimeComponent q{Integer(3)};
    q.divisible_rank = Cardinal::finite(2);
    divisible.primes.push_back(q);
    divisible.cofinite = CofiniteDefault::divisible;
    EXPECT_EQ(classify_self_inert(divisible).verdict, SelfInert::self_inert);
}

TEST(SelfInert, ClauseCoverage) {
    GroupDescriptor other;
    other.torsion_free = TorsionFreeShape::other;
    other.torsion_free_rank = Cardinal::finite(2);
    SelfInertVerdict v = classify_self_inert(other);
    EXPECT_EQ(v.verdict, SelfInert::undecided);
    EXPECT_FALSE(v.reason.empty());

    EXPECT_EQ(classify_self_inert(GroupDescriptor{}).verdict, SelfInert::self_inert);

    GroupDescriptor infinite_rank = free_descriptor(0);
    infinite_rank.torsion_free_rank = Cardinal::infinite();
    EXPECT_EQ(classify_self_inert(infinite_rank).verdict, SelfInert::not_self_inert);

    GroupDescriptor neither;
    neither.cofinite = CofiniteDefault::neither;
    EXPECT_EQ(classify_self_inert(neither).verdict, SelfInert::not_self_inert);

    GroupDescriptor unbounded;
    PrimeComponent p{Integer(5)};
    p.divisible_rank = Cardinal::finite(1);
    p.uk[3] = Cardinal::finite(1);
    unbounded.primes.push_back(p);
    EXPECT_EQ(classify_self_inert(unbounded).verdict, SelfInert::not_self_inert);

    GroupDescriptor bad;
    PrimeComponent z{Integer(2)};
    z.uk[0] = Cardinal::finite(1);
    bad.primes.push_back(z);
    EXPECT_THROW(classify_self_inert(bad), Error);
}

TEST(SelfInert, FiniteDescriptorsAreSelfInert) {
    Rng rng(77);
    for (int trial = 0; trial < 200; ++trial) {
        GroupDescriptor d;
        for (long prime : {2L, 3L, 5L}) {
            PrimeComponent p{Integer(prime)};
            for (unsigned long e = 1; e <= 3; ++e) p.uk[e] = Cardinal::finite(uniform(rng, 0, 3));
            d.primes.push_back(p);
        }
        EXPECT_EQ(classify_self_inert(d).verdict, SelfInert::self_inert);
        for (auto& p : d.primes) {
            p.uk.clear();
            p.divisible_rank = uniform(rng, 0, 1) ? Cardinal::infinite() : Cardinal::finite(uniform(rng, 0, 4));
        }
        d.cofinite = CofiniteDefault::divisible;
        EXPECT_EQ(classify_self_inert(d).verdict, SelfInert::self_inert);
    }
}

TEST(BoxDecompose, Examples) {
    FgAbGroup z2 = FgAbGroup::free(2);
    std::vector<std::vector<std::size_t>> blocks{{0}, {1}};
    BoxDecomposition diag = box_decompose(sub(z2, IntMatrix{{1, 1}}), blocks);
    EXPECT_TRUE(diag.product.is_zero());
    EXPECT_TRUE(diag.defect.is_infinite());
    EXPECT_FALSE(*diag.fully_inert);

    BoxDecomposition full = box_decompose(sub(z2, IntMatrix{{2, 0}, {0, 3}}), blocks);
    EXPECT_EQ(full.defect, Cardinal::finite(1));
    EXPECT_TRUE(*full.part_verdicts[0]);
    EXPECT_TRUE(*full.part_verdicts[1]);
    EXPECT_TRUE(*full.fully_inert);

    Subgroup line = sub(z2, IntMatrix{{1, 0}});
    BoxDecomposition axis = box_decompose(line, blocks);
    EXPECT_EQ(axis.product, line);
    EXPECT_EQ(axis.defect, Cardinal::finite(1));
    EXPECT_TRUE(*axis.part_verdicts[0]);
    EXPECT_TRUE(*axis.part_verdicts[1]);
    EXPECT_FALSE(*axis.fully_inert);
    Endo swap(z2, IntMatrix{{0, 1}, {1, 0}});
    EXPECT_FALSE(inert_index(line, swap).inert);

    EXPECT_THROW(box_decompose(line, {{0}}), Error);
    EXPECT_THROW(box_decompose(line, {{0, 1}, {1}}), Error);
}

TEST(BoxDecompose, ProductHasFiniteDefectOnFiniteIndex) {
    Rng rng(78);
    for (int trial = 0; trial < 200; ++trial) {
        FgAbGroup g = FgAbGroup::free(3);
        Subgroup h = random_subgroup(rng, g, 3, 4);
        BoxDecomposition b = box_decompose(h, {{0, 2}, {1}});
        EXPECT_TRUE(lattice::contains_lattice(h.basis(), b.product.basis()));
        if (h.rank() == 3) {
            EXPECT_TRUE(b.defect.is_finite());
            for (const auto& v : b.part_verdicts) EXPECT_TRUE(*v);
        }
        if (b.defect.is_finite()) {
            bool parts = true;
            for (const auto& v : b.part_verdicts) parts = parts && *v;
            if (!parts) EXPECT_FALSE(*b.fully_inert);
        }
    }
}
