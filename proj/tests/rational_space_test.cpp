#include <gtest/gtest.h>

#include "support.hpp"

using namespace inertial;
using namespace testing_support;

namespace {

RationalLattice q_lattice(std::initializer_list<std::initializer_list<Rational>> rows, std::size_t dim) {
    return RationalLattice::from_rows(RatMatrix(rows), dim);
}

// Primitive polynomial must be the positive rational multiple of the monic oracle polynomial.
void expect_matches_oracle(const RatMatrix& m) {
    IntPolynomial f = charpoly_primitive(m);
    std::vector<Rational> oracle = charpoly_by_interpolation(m);
    ASSERT_EQ(f.degree(), static_cast<long>(m.rows()));
    EXPECT_GT(f.leading(), 0);
    EXPECT_EQ(f.content(), 1);
    Rational lc(f.leading());
    for (std::size_t i = 0; i <= m.rows(); ++i) EXPECT_EQ(Rational(f.coeff(i)), lc * oracle[i]) << to_string(m);
}

}  // namespace

TEST(LatticeOps, Examples) {
    RationalLattice z = RationalLattice::standard(1);
    RationalLattice half = q_lattice({{Rational(1, 2)}}, 1);
    RationalLattice third = q_lattice({{Rational(1, 3)}}, 1);
    EXPECT_EQ(lattice_index(half, z), Cardinal::finite(2));
    EXPECT_EQ(lattice_intersect(z, third), z);
    EXPECT_EQ(lattice_index(z, q_lattice({{Rational(3, 2)}}, 1)), Cardinal::finite(3));
}

TEST(LatticeOps, RankDeficientIndexIsInfinite) {
    RationalLattice z2 = RationalLattice::standard(2);
    RationalLattice line = q_lattice({{Rational(1), Rational(0)}}, 2);
    EXPECT_TRUE(lattice_index(z2, line).is_infinite());
    EXPECT_EQ(lattice_index(line, z2), Cardinal::finite(1));
}

TEST(LatticeOps, DimensionMismatch) {
    EXPECT_THROW(lattice_sum(RationalLattice::standard(1), RationalLattice::standard(2)), Error);
}

TEST(LatticeOps, CanonicalFormIsUnique) {
    RationalLattice a = q_lattice({{Rational(1, 2), Rational(1)}, {Rational(0), Rational(3)}}, 2);
    RationalLattice b = q_lattice({{Rational(1, 2), Rational(4)}, {Rational(1, 2), Rational(1)}}, 2);
    EXPECT_EQ(a, b);
}

TEST(LatticeOps, SelfIndexIsOne) {
    Rng rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        RationalLattice l = random_lattice(rng, 3, 3, 5);
        EXPECT_EQ(lattice_index(l, l), Cardinal::finite(1));
    }
}

TEST(LatticeOps, FullRankIndexIsDeterminantRatio) {
    Rng rng(32);
    for (int trial = 0; trial < 200; ++trial) {
        RatMatrix b1(2, 2);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) b1(i, j) = random_rational(rng, 4);
        Rational d1 = b1(0, 0) * b1(1, 1) - b1(0, 1) * b1(1, 0);
        if (d1 == 0) continue;
        IntMatrix c = random_int_matrix(rng, 2, 2, -3, 3);
        Integer dc = c(0, 0) * c(1, 1) - c(0, 1) * c(1, 0);
        if (dc == 0) continue;
        RatMatrix b2 = to_rational(c) * b1;
        RationalLattice l1 = RationalLattice::from_rows(b1, 2), l2 = RationalLattice::from_rows(b2, 2);
        EXPECT_EQ(lattice_index(l1, l2), Cardinal::finite(abs(dc)));
        Rational d2 = b2(0, 0) * b2(1, 1) - b2(0, 1) * b2(1, 0);
        EXPECT_EQ(Rational(abs(dc)), abs(d2 / d1));
    }
}

TEST(LatticeOps, IndexMatchesCosetCountingInOneDimension) {
    // [a Z : a Z ∩ b Z] counted by walking multiples of a until they land in b Z.
    Rng rng(33);
    for (int trial = 0; trial < 300; ++trial) {
        Rational a = random_rational(rng, 9), b = random_rational(rng, 9);
        if (a == 0 || b == 0) continue;
        long count = 1;
        while (true) {
            Rational q = Rational(count) * a / b;
            if (q.get_den() == 1) break;
            ++count;
        }
        EXPECT_EQ(lattice_index(q_lattice({{a}}, 1), q_lattice({{b}}, 1)), Cardinal::finite(count));
    }
}

TEST(Charpoly, Examples) {
    EXPECT_EQ(charpoly_primitive(RationalEndo::scalar(1, Rational(3, 2))), poly({-3, 2}));
    EXPECT_EQ(charpoly_primitive(RationalEndo::identity(2)), poly({1, -2, 1}));
    EXPECT_EQ(charpoly_primitive(RationalEndo(RatMatrix{{0, 1}, {1, 1}})), poly({-1, -1, 1}));
}

TEST(Charpoly, MatchesInterpolationOracle) {
    Rng rng(34);
    for (int trial = 0; trial < 150; ++trial) {
        std::size_t n = uniform(rng, 1, 4);
        expect_matches_oracle(random_rational_matrix(rng, n, 6));
    }
}

TEST(Charpoly, ConjugationInvariant) {
    Rng rng(35);
    for (int trial = 0; trial < 100; ++trial) {
        RatMatrix m = random_rational_matrix(rng, 3, 5);
        RatMatrix p = random_rational_matrix(rng, 3, 3);
        auto pinv = rational_inverse(p);
        if (!pinv) continue;
        EXPECT_EQ(charpoly_primitive(m), charpoly_primitive(p * m * *pinv));
    }
}

TEST(Apply, Examples) {
    RationalLattice z = RationalLattice::standard(1);
    EXPECT_EQ(endo_apply_lattice(RationalEndo::scalar(1, Rational(1, 2)), z), q_lattice({{Rational(1, 2)}}, 1));
    EXPECT_TRUE(endo_apply_lattice(RationalEndo::scalar(2, Rational(0)), RationalLattice::standard(2)).is_zero());
    RationalEndo shear(RatMatrix{{1, 1}, {0, 1}});
    EXPECT_EQ(endo_apply_lattice(shear, RationalLattice::standard(2)), RationalLattice::standard(2));
}

TEST(Apply, PreimageWithin) {
    // {x in Z : 2x in Z} = Z and {x in Z : x/2 in Z} = 2Z
    RationalLattice z = RationalLattice::standard(1);
    EXPECT_EQ(preimage_within(RationalEndo::scalar(1, Rational(2)), z, z), z);
    EXPECT_EQ(preimage_within(RationalEndo::scalar(1, Rational(1, 2)), z, z), q_lattice({{Rational(2)}}, 1));
}

TEST(Apply, ImageContainsImagesOfGenerators) {
    Rng rng(36);
    for (int trial = 0; trial < 100; ++trial) {
        RationalEndo phi(random_rational_matrix(rng, 2, 4));
        RationalLattice l = random_lattice(rng, 2, 2, 4);
        RationalLattice img = endo_apply_lattice(phi, l);
        RatMatrix b = l.basis();
        for (std::size_t i = 0; i < b.rows(); ++i) EXPECT_TRUE(img.contains(phi.apply(b.row_vector(i))));
        EXPECT_LE(img.rank(), l.rank());
    }
}
