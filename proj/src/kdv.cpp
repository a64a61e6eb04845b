#include "ellsol/kdv.hpp"

#include "ellsol/errors.hpp"
#include "ellsol/finite_difference.hpp"

#include <algorithm>
#include <cmath>

namespace ellsol::kdv
{

using elliptic::Lattice;

TravelingWave TravelingWave::exact(const Lattice &lattice, Complex level, Complex shift)
{
    return {lattice, level, shift, 1.5 * level};
}

Complex TravelingWave::operator()(Complex x, Complex t) const
{
    return -2.0 * elliptic::wp(lattice, x + speed * t + shift) + level;
}

Grid default_grid(const TravelingWave &wave, int x_count, int t_count, int order, double relative_step)
{
    if (x_count < 1 || t_count < 1) {
        throw Error("grid needs at least one sample in x and t");
    }
    const auto &r = wave.lattice.reduced_periods();
    const Complex along = r[0] / std::abs(r[0]);
    const double h = relative_step * std::abs(r[0]);

    Grid g;
    g.x_origin = 0.5 * r[1] - wave.shift;
    g.x_step = r[0] / static_cast<double>(x_count);
    g.x_count = x_count;
    g.t_origin = {0.0, 0.0};
    g.t_count = t_count;
    g.order = order;
    g.h_x = h * along;
    if (std::abs(wave.speed) > 0.0) {
        // speed * t advances the argument by a small fraction of a period
        g.t_step = 0.05 * r[0] / (static_cast<double>(t_count) * wave.speed);
        g.h_t = h * along / wave.speed;
    } else {
        g.t_step = {0.01, 0.0};
        g.h_t = {h, 0.0};
    }
    return g;
}

double kdv_residual(const TravelingWave &wave, const Grid &grid, TimeDerivative time_derivative)
{
    const fd::Stencil d1 = fd::central_stencil(1, grid.order);
    const fd::Stencil d3 = fd::central_stencil(3, grid.order);
    const Complex hx3 = grid.h_x * grid.h_x * grid.h_x;

    double worst = 0.0;
    for (int j = 0; j < grid.t_count; ++j) {
        const Complex t = grid.t_origin + static_cast<double>(j) * grid.t_step;
        for (int i = 0; i < grid.x_count; ++i) {
            const Complex x = grid.x_origin + static_cast<double>(i) * grid.x_step;
            const Complex u = wave(x, t);

            Complex ux{0.0, 0.0};
            for (std::size_t s = 0; s < d1.offsets.size(); ++s) {
                ux += d1.weights[s] * wave(x + static_cast<double>(d1.offsets[s]) * grid.h_x, t);
            }
            ux /= grid.h_x;

            Complex uxxx{0.0, 0.0};
            for (std::size_t s = 0; s < d3.offsets.size(); ++s) {
                uxxx += d3.weights[s] * wave(x + static_cast<double>(d3.offsets[s]) * grid.h_x, t);
            }
            uxxx /= hx3;

            Complex ut{0.0, 0.0};
            if (time_derivative == TimeDerivative::ChainRule) {
                ut = -2.0 * wave.speed * elliptic::wp_prime(wave.lattice, x + wave.speed * t + wave.shift);
            } else {
                for (std::size_t s = 0; s < d1.offsets.size(); ++s) {
                    ut += d1.weights[s] * wave(x, t + static_cast<double>(d1.offsets[s]) * grid.h_t);
                }
                ut /= grid.h_t;
            }

            worst = std::max(worst, std::abs(ut - 0.25 * (6.0 * u * ux + uxxx)));
        }
    }
    return worst;
}

double shift_defect(const TravelingWave &wave, Complex shift, const Grid &grid)
{
    double worst = 0.0;
    for (int j = 0; j < grid.t_count; ++j) {
        const Complex t = grid.t_origin + static_cast<double>(j) * grid.t_step;
        for (int i = 0; i < grid.x_count; ++i) {
            const Complex x = grid.x_origin + static_cast<double>(i) * grid.x_step;
            worst = std::max(worst, std::abs(wave(x + shift, t) - wave(x, t)));
        }
    }
    return worst;
}

double periodicity_check(const TravelingWave &wave, const Grid &grid)
{
    return std::max(shift_defect(wave, wave.lattice.period1(), grid), shift_defect(wave, wave.lattice.period2(), grid));
}

double periodicity_check(const TravelingWave &wave)
{
    return periodicity_check(wave, default_grid(wave, 64, 4));
}

Complex monodromy_exponent(const Lattice &lattice, int j, Complex z)
{
    if (j != 1 && j != 2) {
        throw Error("monodromy index must be 1 or 2");
    }
    const elliptic::QuasiPeriods eta = elliptic::quasi_periods(lattice);
    const Complex omega = j == 1 ? lattice.omega1() : lattice.omega2();
    const Complex eta_j = j == 1 ? eta.eta1 : eta.eta2;
    return 2.0 * omega * elliptic::zeta(lattice, z) - eta_j * z;
}

Complex monodromy_factor(const Lattice &lattice, int j, Complex z)
{
    return std::exp(monodromy_exponent(lattice, j, z));
}

double monodromy_defect(const Lattice &lattice, int j, int k, Complex z)
{
    if (k != 1 && k != 2) {
        throw Error("period index must be 1 or 2");
    }
    const Complex period = k == 1 ? lattice.period1() : lattice.period2();
    // ratio of the two factors, formed in the exponent so that neither factor can overflow
    return std::abs(std::exp(monodromy_exponent(lattice, j, z + period) - monodromy_exponent(lattice, j, z)) - 1.0);
}

} // namespace ellsol::kdv
