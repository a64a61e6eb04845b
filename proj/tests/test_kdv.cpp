#include "ellsol/errors.hpp"
#include "ellsol/kdv.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace ellsol;
using namespace ellsol::kdv;
using elliptic::Lattice;

namespace
{

const Complex I{0.0, 1.0};

Lattice square() { return Lattice(0.5, 0.5 * I); }

TravelingWave with_speed(const Lattice &l, Complex level, Complex speed) { return {l, level, {0.0, 0.0}, speed}; }

} // namespace

TEST(KdvResidual, StationaryWave)
{
    const TravelingWave w = TravelingWave::exact(square(), 0.0);
    const Grid g = default_grid(w);
    EXPECT_LT(kdv_residual(w, g, TimeDerivative::FiniteDifference), 1e-6);
    EXPECT_LT(kdv_residual(w, g, TimeDerivative::ChainRule), 1e-6);
}

TEST(KdvResidual, TravelingWaveSquareLattice)
{
    const TravelingWave w = TravelingWave::exact(square(), 1.0);
    EXPECT_EQ(w.speed, Complex(1.5, 0.0));
    const Grid g = default_grid(w);
    EXPECT_EQ(g.x_count, 200);
    EXPECT_EQ(g.t_count, 20);
    const double fd = kdv_residual(w, g, TimeDerivative::FiniteDifference);
    const double chain = kdv_residual(w, g, TimeDerivative::ChainRule);
    EXPECT_LT(fd, 1e-6);
    EXPECT_LT(chain, 1e-6);
    // the two time derivatives agree to within the stencil error
    EXPECT_LT(std::abs(fd - chain), 1e-6);
}

TEST(KdvResidual, WrongSpeedIsDetected)
{
    const TravelingWave w = with_speed(square(), 1.0, 1.0);
    EXPECT_GT(kdv_residual(w, default_grid(w, 50, 5)), 1e-2);
}

TEST(KdvResidual, SpeedSweepFindsThreeHalvesLambda)
{
    const Lattice l = square();
    double best_speed = 0.0;
    double best = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= 40; ++k) {
        const double c = 0.5 + 0.05 * k;
        const TravelingWave w = with_speed(l, 1.0, c);
        const double r = kdv_residual(w, default_grid(w, 20, 2), TimeDerivative::ChainRule);
        if (r < best) {
            best = r;
            best_speed = c;
        }
    }
    EXPECT_NEAR(best_speed, 1.5, 1e-12);
}

TEST(KdvResidual, OtherLatticesAndComplexLevel)
{
    for (const auto &[w1, w2, level] : {std::tuple{Complex(0.6, 0.1), Complex(0.2, 0.7), Complex(1.0, 0.0)},
                                         std::tuple{Complex(0.5, 0.0), 0.5 * std::exp(I * (M_PI / 3.0)), Complex(-0.7, 0.3)},
                                         std::tuple{Complex(0.0, -0.4), Complex(0.9, 0.0), Complex(2.0, 0.0)}}) {
        const TravelingWave w = TravelingWave::exact(Lattice(w1, w2), level, 0.1);
        const Grid g = default_grid(w, 40, 4);
        EXPECT_LT(kdv_residual(w, g, TimeDerivative::FiniteDifference), 1e-6);
        EXPECT_LT(kdv_residual(w, g, TimeDerivative::ChainRule), 1e-6);
    }
}

TEST(KdvResidual, SymbolicOracleForStationaryIdentity)
{
    // 6 u u_x + u_xxx = 0 for u = -2p is 24 p p' - 2 p''' = 0, checked on the
    // brute-force sums with no differencing at all
    const oracle::BruteForce bf{1.0, I};
    for (const Complex z : {Complex(0.25, 0.25), Complex(0.1, 0.37), Complex(-0.31, 0.05)}) {
        const Complex p = bf.wp(z), dp = bf.wp_prime(z), d3p = bf.wp_third(z);
        EXPECT_LT(std::abs(24.0 * p * dp - 2.0 * d3p), 1e-8 * std::max(1.0, std::abs(d3p)));
    }
}

TEST(KdvResidual, ConvergesAtStencilOrder)
{
    const TravelingWave w = TravelingWave::exact(square(), 1.0);
    for (const int order : {2, 4}) {
        Grid coarse = default_grid(w, 20, 2, order, 0.02);
        Grid fine = default_grid(w, 20, 2, order, 0.01);
        const double measured = std::log2(kdv_residual(w, coarse, TimeDerivative::ChainRule) /
                                          kdv_residual(w, fine, TimeDerivative::ChainRule));
        EXPECT_NEAR(measured, static_cast<double>(order), 0.3) << "order " << order;
    }
}

TEST(Periodicity, AnyWaveIsLatticePeriodic)
{
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 10; ++trial) {
        const auto rl = oracle::random_lattice(rng, 0.5, 3.0);
        const Lattice l(rl.omega1, rl.omega2);
        const TravelingWave w = TravelingWave::exact(l, Complex(0.5, -0.2));
        EXPECT_LE(periodicity_check(w), 1e-10);
    }
}

TEST(Periodicity, DiagonalShiftAndHalfPeriodControl)
{
    const TravelingWave w = TravelingWave::exact(Lattice(Complex(0.6, 0.1), Complex(0.2, 0.7)), 1.0);
    const Grid g = default_grid(w, 64, 4);
    EXPECT_LE(shift_defect(w, w.lattice.period1() + w.lattice.period2(), g), 1e-10);
    EXPECT_GT(shift_defect(w, w.lattice.omega1(), g), 1e-2);
}

TEST(Monodromy, SingleValuedOnSquareLattice)
{
    const Lattice l = square();
    for (int j = 1; j <= 2; ++j) {
        for (int k = 1; k <= 2; ++k) {
            EXPECT_LE(monodromy_defect(l, j, k, Complex(0.13, 0.21)), 1e-9);
        }
    }
}

TEST(Monodromy, InverseUnderNegation)
{
    const Lattice l(Complex(0.6, 0.1), Complex(0.2, 0.7));
    for (int j = 1; j <= 2; ++j) {
        const Complex z(0.17, 0.29);
        EXPECT_LT(std::abs(monodromy_factor(l, j, z) * monodromy_factor(l, j, -z) - 1.0), 1e-9);
    }
}

TEST(Monodromy, EssentialSingularityAtOrigin)
{
    // phi_j(z) exp(-2 omega_j / z) = 1 + O(z); compared in the exponent
    const Lattice l = square();
    const Complex dir = std::exp(I * 0.3);
    for (int j = 1; j <= 2; ++j) {
        const Complex omega = j == 1 ? l.omega1() : l.omega2();
        double previous = 0.0;
        for (int s = 0; s < 5; ++s) {
            const Complex z = 0.04 * std::pow(0.5, s) * dir;
            const double err = std::abs(std::exp(monodromy_exponent(l, j, z) - 2.0 * omega / z) - 1.0);
            EXPECT_LT(err, 4.0 * std::abs(z));
            if (s > 0) {
                EXPECT_LT(err, 0.6 * previous);
            }
            previous = err;
        }
    }
}

TEST(Monodromy, RandomLatticesAndPoints)
{
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 50; ++trial) {
        const auto rl = oracle::random_lattice(rng);
        const Lattice l(rl.omega1, rl.omega2);
        for (int p = 0; p < 20; ++p) {
            const Complex z = oracle::random_point(rng, rl.omega1, rl.omega2, 0.05);
            for (int j = 1; j <= 2; ++j) {
                for (int k = 1; k <= 2; ++k) {
                    EXPECT_LE(monodromy_defect(l, j, k, z), 1e-8);
                }
            }
        }
    }
}

TEST(Monodromy, IndexAndPoleErrors)
{
    const Lattice l = square();
    EXPECT_THROW(monodromy_factor(l, 3, 0.2), Error);
    EXPECT_THROW(monodromy_defect(l, 1, 0, 0.2), Error);
    EXPECT_THROW(monodromy_factor(l, 1, 0.0), PoleProximity);
}

TEST(KdvResidual, PoleOnGridFailsLoudly)
{
    const TravelingWave w = TravelingWave::exact(square(), 1.0);
    Grid g = default_grid(w, 10, 1);
    g.x_origin = 0.0;
    EXPECT_THROW(kdv_residual(w, g), PoleProximity);
    EXPECT_THROW(default_grid(w, 0, 1), Error);
}
