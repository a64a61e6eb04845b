#ifndef ELLSOL_KDV_HPP
#define ELLSOL_KDV_HPP

#include "ellsol/elliptic.hpp"

#include <vector>

namespace ellsol::kdv
{

/// Elliptic traveling wave u(x, t) = -2 p(x + speed * t + shift) + level.
///
/// With the flow written as u_t = (6 u u_x + u_xxx) / 4, substituting the
/// ansatz and using p''' = 12 p p' leaves -2 speed p' = -3 level p', so the
/// wave solves the equation exactly when speed = 3 level / 2. The residual
/// sweep in the tests recovers this value numerically.
///
/// The other common convention, u_t + (6 u u_x - u_xxx) / 4 = 0, maps to this
/// one under u -> -u, t -> -t.
struct TravelingWave
{
    elliptic::Lattice lattice;
    Complex level;
    Complex shift;
    Complex speed;

    /// The exact solution: speed = 3 level / 2.
    static TravelingWave exact(const elliptic::Lattice &lattice, Complex level, Complex shift = {0.0, 0.0});

    Complex operator()(Complex x, Complex t) const;
};

/// Sample points plus finite-difference setup.
///
/// Samples are x_i = x_origin + i x_step (i < x_count) and
/// t_j = t_origin + j t_step (j < t_count). Steps are complex: every
/// derivative is the complex derivative of an analytic function, so stencils
/// may run along any direction that stays clear of the poles.
struct Grid
{
    Complex x_origin;
    Complex x_step;
    int x_count = 200;
    Complex t_origin;
    Complex t_step;
    int t_count = 20;
    Complex h_x;
    Complex h_t;
    int order = 10;
};

/// Default stencil accuracy order and step (relative to the shortest period).
inline constexpr int default_order = 10;
inline constexpr double default_relative_step = 0.01;

/// One full period of samples on the mid-line of the reduced cell, i.e. at
/// maximal distance from the poles, with the stencils aligned to that line.
/// The t-samples move the argument along the same line.
Grid default_grid(const TravelingWave &wave, int x_count = 200, int t_count = 20,
                  int order = default_order, double relative_step = default_relative_step);

enum class TimeDerivative { FiniteDifference, ChainRule };

/// max over the grid of |u_t - (6 u u_x + u_xxx) / 4|. Throws PoleProximity if
/// any stencil node comes within the pole radius.
double kdv_residual(const TravelingWave &wave, const Grid &grid,
                    TimeDerivative time_derivative = TimeDerivative::FiniteDifference);

/// max over samples of |u(x + shift, t) - u(x, t)|.
double shift_defect(const TravelingWave &wave, Complex shift, const Grid &grid);

/// max over samples and j = 1, 2 of |u(x + 2 omega_j, t) - u(x, t)|.
double periodicity_check(const TravelingWave &wave);
double periodicity_check(const TravelingWave &wave, const Grid &grid);

/// exp(2 omega_j zeta(z) - eta_j z), j in {1, 2}: the monodromy factor of the
/// Baker-Akhiezer function for the degree-one tangential cover (kappa = 0).
Complex monodromy_factor(const elliptic::Lattice &lattice, int j, Complex z);

/// The exponent 2 omega_j zeta(z) - eta_j z of monodromy_factor.
Complex monodromy_exponent(const elliptic::Lattice &lattice, int j, Complex z);

/// |phi_j(z + 2 omega_k) / phi_j(z) - 1|.
double monodromy_defect(const elliptic::Lattice &lattice, int j, int k, Complex z);

} // namespace ellsol::kdv

#endif
