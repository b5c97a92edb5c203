#include <gtest/gtest.h>

#include "support.hpp"

using namespace inertial;
using namespace testing_support;

namespace {

Integer det2(const IntMatrix& m) { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); }

bool is_hermite(const IntMatrix& h) {
    std::size_t last = 0;
    for (std::size_t r = 0; r < h.rows(); ++r) {
        std::size_t p = 0;
        while (p < h.cols() && h(r, p) == 0) ++p;
        if (p == h.cols()) return false;
        if (r > 0 && p <= last) return false;
        if (h(r, p) <= 0) return false;
        for (std::size_t above = 0; above < r; ++above)
            if (h(above, p) < 0 || h(above, p) >= h(r, p)) return false;
        last = p;
    }
    return true;
}

}  // namespace

TEST(Hermite, KnownExample) {
    IntMatrix a{{2, 4}, {3, 1}};
    IntMatrix h = hermite_form(a);
    ASSERT_EQ(h.rows(), 2u);
    EXPECT_EQ(h(0, 0), 1);
    EXPECT_EQ(h(1, 1), 10);
    EXPECT_TRUE(is_hermite(h));
}

TEST(Hermite, RandomMatricesSpanSameLattice) {
    Rng rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        std::size_t r = uniform(rng, 0, 4), c = uniform(rng, 1, 4);
        IntMatrix a = random_int_matrix(rng, r, c, -9, 9);
        IntMatrix h = hermite_form(a);
        EXPECT_TRUE(is_hermite(h));
        EXPECT_EQ(h.rows(), rational_rank(a));
        for (std::size_t i = 0; i < a.rows(); ++i) EXPECT_TRUE(lattice::contains(h, a.row(i)));
        for (std::size_t i = 0; i < h.rows(); ++i) EXPECT_TRUE(solve_left(a, h.row(i)).has_value());
        EXPECT_EQ(hermite_form(h), h);
    }
}

TEST(Hermite, TransformReproducesForm) {
    Rng rng(12);
    for (int trial = 0; trial < 100; ++trial) {
        IntMatrix a = random_int_matrix(rng, 3, 3, -5, 5);
        auto dec = hermite_with_transform(a);
        IntMatrix prod = dec.transform * a;
        for (std::size_t i = 0; i < dec.rank; ++i)
            for (std::size_t j = 0; j < a.cols(); ++j) EXPECT_EQ(prod(i, j), dec.form(i, j));
    }
}

TEST(Smith, DiagonalOfTwoByTwo) {
    auto d = smith_diagonal(IntMatrix{{2, 0}, {0, 3}});
    ASSERT_EQ(d.size(), 2u);
    EXPECT_EQ(d[0], 1);
    EXPECT_EQ(d[1], 6);
}

TEST(Smith, ChainAndDeterminant) {
    Rng rng(13);
    for (int trial = 0; trial < 300; ++trial) {
        IntMatrix a = random_int_matrix(rng, 2, 2, -12, 12);
        auto d = smith_diagonal(a);
        Integer det = abs(det2(a));
        if (det == 0) {
            EXPECT_LT(d.size(), 2u);
            continue;
        }
        ASSERT_EQ(d.size(), 2u);
        EXPECT_TRUE(divides(d[0], d[1]));
        EXPECT_EQ(d[0] * d[1], det);
        Integer g = gcd(gcd(a(0, 0), a(0, 1)), gcd(a(1, 0), a(1, 1)));
        EXPECT_EQ(d[0], g);
    }
}

TEST(Kernel, LeftKernelAnnihilates) {
    Rng rng(14);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t r = uniform(rng, 1, 5), c = uniform(rng, 1, 4);
        IntMatrix a = random_int_matrix(rng, r, c, -4, 4);
        IntMatrix k = left_kernel(a);
        EXPECT_EQ(k.rows(), r - rational_rank(a));
        if (k.rows()) {
            EXPECT_TRUE((k * a).is_zero());
        }
    }
}

TEST(Lattice, IntersectionMatchesPointEnumeration) {
    Rng rng(15);
    for (int trial = 0; trial < 60; ++trial) {
        IntMatrix a = random_int_matrix(rng, 2, 2, -4, 4), b = random_int_matrix(rng, 2, 2, -4, 4);
        IntMatrix meet = lattice::intersect(hermite_form(a), hermite_form(b));
        IntMatrix ha = hermite_form(a), hb = hermite_form(b);
        for (long x = -12; x <= 12; ++x)
            for (long y = -12; y <= 12; ++y) {
                std::vector<Integer> v{Integer(x), Integer(y)};
                bool both = lattice::contains(ha, v) && lattice::contains(hb, v);
                EXPECT_EQ(lattice::contains(meet, v), both) << to_string(a) << " " << to_string(b) << " " << x << "," << y;
            }
    }
}

TEST(Lattice, IndexOfSublattice) {
    IntMatrix z2 = IntMatrix::identity(2);
    IntMatrix sub{{2, 0}, {0, 3}};
    EXPECT_EQ(lattice::index(z2, hermite_form(sub)), Cardinal::finite(6));
    EXPECT_TRUE(lattice::index(z2, hermite_form(IntMatrix{{1, 0}})).is_infinite());
}
