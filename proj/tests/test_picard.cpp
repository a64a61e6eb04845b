#include "ellsol/errors.hpp"
#include "ellsol/picard.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace ellsol;
using namespace ellsol::picard;

namespace
{

// Gram matrix of the basis (C, F, s0..s3, r0..r3), written out independently.
Int gram_pairing(const DivisorClass &x, const DivisorClass &y)
{
    int g[10][10] = {};
    g[0][1] = g[1][0] = 1;
    for (int i = 2; i < 10; ++i) {
        g[i][i] = -1;
    }
    const auto u = x.to_array();
    const auto v = y.to_array();
    Int total = 0;
    for (int i = 0; i < 10; ++i) {
        for (int j = 0; j < 10; ++j) {
            total += u[i] * g[i][j] * v[j];
        }
    }
    return total;
}

DivisorClass random_class(std::mt19937_64 &rng)
{
    std::uniform_int_distribution<Int> u(-9, 9);
    std::array<Int, 10> v{};
    for (Int &x : v) {
        x = u(rng);
    }
    return DivisorClass::from_array(v);
}

Int sum(const Quad &q) { return q[0] + q[1] + q[2] + q[3]; }
Int sum_squares(const Quad &q) { return q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3]; }

} // namespace

TEST(Intersect, BasisPairings)
{
    EXPECT_EQ(intersect(DivisorClass::section(), DivisorClass::fiber()), 1);
    EXPECT_EQ(intersect(DivisorClass::section(), DivisorClass::section()), 0);
    EXPECT_EQ(intersect(DivisorClass::fiber(), DivisorClass::fiber()), 0);
    EXPECT_EQ(intersect(DivisorClass::s_exceptional(0), DivisorClass::s_exceptional(0)), -1);
    EXPECT_EQ(intersect(DivisorClass::s_exceptional(1), DivisorClass::r_exceptional(1)), 0);
    EXPECT_EQ(intersect(DivisorClass::r_exceptional(2), DivisorClass::r_exceptional(3)), 0);
}

TEST(Intersect, CoverClassRecoversDegree)
{
    EXPECT_EQ(intersect(cover_class(3, 1, 1, {2, 1, 1, 1}), DivisorClass::fiber()), 3);
}

TEST(Intersect, SymmetricBilinearAndMatchesGram)
{
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<Int> k(-5, 5);
    for (int trial = 0; trial < 500; ++trial) {
        const DivisorClass x = random_class(rng), y = random_class(rng), z = random_class(rng);
        const Int a = k(rng), b = k(rng);
        EXPECT_EQ(intersect(x, y), intersect(y, x));
        EXPECT_EQ(intersect(x, y), gram_pairing(x, y));
        EXPECT_EQ(intersect(a * x + b * y, z), a * intersect(x, z) + b * intersect(y, z));
        EXPECT_EQ(intersect(x - y, z), intersect(x, z) - intersect(y, z));
    }
}

TEST(IndexValidation, ExceptionalIndexOutOfRange)
{
    EXPECT_THROW(DivisorClass::s_exceptional(4), InvalidInvariants);
    EXPECT_THROW(DivisorClass::r_exceptional(-1), InvalidInvariants);
}

TEST(CanonicalClass, Pairings)
{
    const DivisorClass k = canonical_class();
    EXPECT_EQ(intersect(k, DivisorClass::fiber()), -2);
    for (int i = 0; i < 4; ++i) {
        EXPECT_EQ(intersect(k, DivisorClass::s_exceptional(i)), -1);
        EXPECT_EQ(intersect(k, DivisorClass::r_exceptional(i)), -1);
    }
}

TEST(CanonicalClass, SquareIsMinusEight)
{
    // (-2C)^2 = 0 and each of the eight exceptional curves contributes -1
    EXPECT_EQ(intersect(canonical_class(), canonical_class()), -8);
    EXPECT_EQ(gram_pairing(canonical_class(), canonical_class()), -8);
}

TEST(AdjunctionGenus, Examples)
{
    EXPECT_EQ(adjunction_genus(DivisorClass::section()), Rational(1));
    EXPECT_EQ(adjunction_genus(DivisorClass::s_exceptional(0)), Rational(0));
    EXPECT_EQ(adjunction_genus(DivisorClass::r_exceptional(3)), Rational(0));
    EXPECT_EQ(adjunction_genus(cover_class(3, 1, 1, {2, 1, 1, 1})), Rational(2));
}

TEST(CoverClass, SelfIntersectionExamples)
{
    const DivisorClass a = cover_class(3, 1, 1, {2, 1, 1, 1});
    EXPECT_EQ(intersect(a, a), -2);
    const DivisorClass b = cover_class(1, 1, 1, {0, 1, 1, 1});
    EXPECT_EQ(intersect(b, b), -2);
}

TEST(CoverClass, RejectsBadInput)
{
    EXPECT_THROW(cover_class(0, 1, 1, {0, 1, 1, 1}), InvalidInvariants);
    EXPECT_THROW(cover_class(3, 0, 1, {0, 1, 1, 1}), InvalidInvariants);
    EXPECT_THROW(cover_class(3, 2, 2, {0, 1, 1, 1}), InvalidInvariants);
    EXPECT_THROW(cover_class(3, 2, 5, {0, 1, 1, 1}), InvalidInvariants);
    EXPECT_THROW(cover_class(3, 1, 1, {0, -1, 1, 1}), InvalidInvariants);
}

TEST(TildeGenus, Examples)
{
    EXPECT_EQ(tilde_genus(cover_class(3, 1, 1, {2, 1, 1, 1})), Rational(0));
    EXPECT_EQ(tilde_genus(cover_class(13, 2, 1, {0, 5, 5, 5})), Rational(0));
}

TEST(TildeGenus, NlsClassAtBoundaryIsZero)
{
    // e*(nC + 2F) - sum gamma_i r_i with gamma^(2) = 4n
    DivisorClass c;
    c.a = 4;
    c.b = 2;
    c.r = {-2, -2, -2, -2};
    EXPECT_EQ(tilde_genus(c), Rational(0));
}

TEST(TildeGenus, ParityOfPullbackIsRequired)
{
    EXPECT_THROW(TauInvariantClass(DivisorClass::s_exceptional(0)), ParityViolation);
    // D.e*(-2C) = -2b is always even, so parity fails only through D^2
    DivisorClass c;
    c.s = {1, 1, 1, 0};
    EXPECT_THROW(tilde_genus(c), ParityViolation);
    EXPECT_NO_THROW(TauInvariantClass(cover_class(3, 1, 1, {2, 1, 1, 1})));
}

TEST(TildeGenus, CoverClassClosedForm)
{
    // g~ = ((2d-1)(2n-2) + 4 - rho^2 - gamma^(2)) / 4 whenever the parity of
    // the pullback allows it
    std::mt19937_64 rng(22);
    std::uniform_int_distribution<Int> nd(1, 12), dd(1, 5), gd(0, 9);
    int checked = 0;
    for (int trial = 0; trial < 4000; ++trial) {
        const Int n = nd(rng), d = dd(rng);
        const Int rho = 2 * std::uniform_int_distribution<Int>(0, d - 1)(rng) + 1;
        const Quad gamma{gd(rng), gd(rng), gd(rng), gd(rng)};
        const DivisorClass c = cover_class(n, d, rho, gamma);
        if ((intersect(c, c) % 2) != 0) {
            continue;
        }
        ++checked;
        EXPECT_EQ(tilde_genus(c), Rational((2 * d - 1) * (2 * n - 2) + 4 - rho * rho - sum_squares(gamma), 4));
    }
    EXPECT_GT(checked, 1000);
}

TEST(AdjunctionGenus, CoverClassOnTargetSurface)
{
    // rho = 1 and gamma^(2) = (2d-1)(2n-2) + 3 give genus (gamma^(1) - 1)/2
    for (Int d = 1; d <= 3; ++d) {
        for (Int n = 1; n <= 8; ++n) {
            const Int target = (2 * d - 1) * (2 * n - 2) + 3;
            for (Int a = 0; a * a <= target; ++a) {
                for (Int b = 0; a * a + b * b <= target; ++b) {
                    for (Int c = 0; a * a + b * b + c * c <= target; ++c) {
                        const Int rest = target - a * a - b * b - c * c;
                        Int e = 0;
                        while (e * e < rest) {
                            ++e;
                        }
                        if (e * e != rest) {
                            continue;
                        }
                        const Quad gamma{a, b, c, e};
                        EXPECT_EQ(adjunction_genus(cover_class(n, d, 1, gamma)), Rational(sum(gamma) - 1, 2));
                    }
                }
            }
        }
    }
}

TEST(ImageClass, DividesCoverClass)
{
    const DivisorClass c = image_class(6, 2, 3, 3, {3, 0, 6, 3});
    EXPECT_EQ(3 * c, cover_class(6, 2, 3, {3, 0, 6, 3}));
    EXPECT_THROW(image_class(6, 2, 3, 2, {3, 0, 6, 3}), InvalidInvariants);
    EXPECT_THROW(image_class(6, 2, 3, 0, {3, 0, 6, 3}), InvalidInvariants);
}

TEST(ImageClass, TildeGenusDependsOnM)
{
    // g~(image) = ((2d-1)(2n-2m)/m^2 + 4 - (rho^2 + gamma^(2))/m^2) / 4
    std::mt19937_64 rng(23);
    int checked = 0;
    for (int trial = 0; trial < 5000; ++trial) {
        const Int m = std::uniform_int_distribution<Int>(1, 4)(rng);
        const Int d = std::uniform_int_distribution<Int>(1, 4)(rng);
        const Int w = 2 * d - 1;
        if (w % m != 0) {
            continue;
        }
        const Int n = m * std::uniform_int_distribution<Int>(1, 6)(rng);
        const Int rho = m * (2 * std::uniform_int_distribution<Int>(0, 2)(rng) + 1);
        if (rho > w) {
            continue;
        }
        std::uniform_int_distribution<Int> gd(0, 5);
        const Quad gamma{m * gd(rng), m * gd(rng), m * gd(rng), m * gd(rng)};
        const DivisorClass c = image_class(n, d, rho, m, gamma);
        if (intersect(c, c) % 2 != 0) {
            continue;
        }
        ++checked;
        const Rational expected =
            (Rational(w * (2 * n - 2 * m), m * m) + 4 - Rational(rho * rho + sum_squares(gamma), m * m)) / 4;
        EXPECT_EQ(tilde_genus(c), expected);
    }
    EXPECT_GT(checked, 100);
}

TEST(NlsSgClass, Examples)
{
    const DivisorClass generic = nls_sg_class(4, Placement::distinct_generic(), {2, 2, 2, 2});
    EXPECT_EQ(intersect(generic, generic), 0);
    EXPECT_EQ(tilde_genus(generic), Rational(0));

    const DivisorClass same = nls_sg_class(4, Placement::same_projection(0), {2, 2, 2, 2});
    EXPECT_EQ(tilde_genus(same), Rational(-1));

    EXPECT_TRUE(placement_parity_holds(3, Placement::distinct_half_periods(0, 1), {2, 2, 3, 3}));
    EXPECT_NO_THROW(nls_sg_class(3, Placement::distinct_half_periods(0, 1), {2, 2, 3, 3}));
}

TEST(NlsSgClass, ParityAndPlacementErrors)
{
    EXPECT_THROW(nls_sg_class(3, Placement::distinct_half_periods(0, 1), {2, 2, 2, 3}), ParityViolation);
    EXPECT_THROW(nls_sg_class(4, Placement::distinct_generic(), {2, 2, 2, 1}), ParityViolation);
    EXPECT_THROW(nls_sg_class(4, Placement::distinct_half_periods(1, 1), {2, 2, 2, 2}), InvalidInvariants);
    EXPECT_THROW(nls_sg_class(4, Placement::same_projection(4), {2, 2, 2, 2}), InvalidInvariants);
    EXPECT_THROW(nls_sg_class(0, Placement::distinct_generic(), {0, 0, 0, 0}), InvalidInvariants);
}

TEST(NlsSgClass, NonNegativeTildeGenusMatchesTypeBound)
{
    // g~ >= 0 exactly when gamma^(2) stays below the type bound of the placement:
    // 4n (distinct), 4n - 4 (same, n even), 4n - 8 (same, n odd)
    for (Int n = 1; n <= 12; ++n) {
        for (Int a = 0; a <= 8; ++a) {
            for (Int b = 0; b <= 8; ++b) {
                for (Int c = 0; c <= 8; ++c) {
                    for (Int e = 0; e <= 8; ++e) {
                        const Quad gamma{a, b, c, e};
                        const Int g2 = sum_squares(gamma);
                        for (const Placement p : {Placement::distinct_generic(), Placement::same_projection(0),
                                                  Placement::same_projection(2),
                                                  Placement::distinct_half_periods(0, 1),
                                                  Placement::distinct_half_periods(2, 3)}) {
                            if (!placement_parity_holds(n, p, gamma)) {
                                continue;
                            }
                            Int bound = 4 * n;
                            if (p.kind == PlacementKind::SameProjection) {
                                bound = n % 2 == 0 ? 4 * n - 4 : 4 * n - 8;
                            }
                            const bool nonneg = tilde_genus(nls_sg_class(n, p, gamma)) >= Rational(0);
                            EXPECT_EQ(nonneg, g2 <= bound) << "n=" << n << " gamma=" << a << b << c << e;
                        }
                    }
                }
            }
        }
    }
}

TEST(ExceptionalClass, Examples)
{
    const DivisorClass a = exceptional_class({1, 0, 0, 0});
    EXPECT_EQ(a.a, 0);
    EXPECT_EQ(intersect(a, a), -2);
    EXPECT_TRUE(is_exceptional_first_kind(a));

    const DivisorClass b = exceptional_class({2, 1, 1, 1});
    EXPECT_EQ(b.a, 3);
    EXPECT_EQ(intersect(b, quotient_canonical_pullback()), -2);
    EXPECT_TRUE(is_exceptional_first_kind(b));

    EXPECT_THROW(exceptional_class({1, 1, 0, 0}), ParityViolation);
    EXPECT_THROW(exceptional_class({1, 1, 1, 1}), ParityViolation);
}

TEST(ExceptionalClass, DistinguishedIndex)
{
    EXPECT_EQ(distinguished_index({1, 0, 0, 0}), 0);
    EXPECT_EQ(distinguished_index({2, 1, 1, 1}), 0);
    EXPECT_EQ(distinguished_index({1, 1, 2, 1}), 2);
    EXPECT_EQ(distinguished_index({0, 0, 0, 1}), 3);
}

TEST(ExceptionalClass, AllSmallAlphaAreExceptional)
{
    for (Int a = 0; a <= 10; ++a) {
        for (Int b = 0; b <= 10; ++b) {
            for (Int c = 0; c <= 10; ++c) {
                for (Int e = 0; e <= 10; ++e) {
                    const Quad alpha{a, b, c, e};
                    if (sum_squares(alpha) > 101 || sum_squares(alpha) % 2 == 0) {
                        continue;
                    }
                    const DivisorClass x = exceptional_class(alpha);
                    EXPECT_TRUE(is_exceptional_first_kind(x));
                    EXPECT_EQ(Rational(intersect(x, x), 2), Rational(-1));
                    EXPECT_EQ(Rational(intersect(x, quotient_canonical_pullback()), 2), Rational(-1));
                }
            }
        }
    }
}

TEST(ExceptionalClass, DegreeOneCoverClassIsExceptional)
{
    // rho = 1, d = 1 and gamma^(2) = 2n + 1 reproduce the exceptional class of alpha = gamma
    EXPECT_EQ(cover_class(3, 1, 1, {2, 1, 1, 1}), exceptional_class({2, 1, 1, 1}));
    EXPECT_TRUE(is_exceptional_first_kind(cover_class(3, 1, 1, {2, 1, 1, 1})));
}

TEST(ExceptionalClass, PredicateRejectsOtherClasses)
{
    EXPECT_FALSE(is_exceptional_first_kind(cover_class(13, 2, 1, {0, 5, 5, 5})));
    EXPECT_FALSE(is_exceptional_first_kind(nls_sg_class(4, Placement::distinct_generic(), {2, 2, 2, 2})));
    EXPECT_FALSE(is_exceptional_first_kind(DivisorClass::section()));
}
