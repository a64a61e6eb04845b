#ifndef ELLSOL_ELLIPTIC_HPP
#define ELLSOL_ELLIPTIC_HPP

#include <array>
#include <complex>
#include <cstdint>

namespace ellsol
{

using Complex = std::complex<double>;

namespace elliptic
{

/// The four fixed points of z -> -z on C/L.
///
/// Fixed ordering, used to index type vectors everywhere in the library:
///   Origin -> 0, First -> omega1, Second -> omega2, Third -> omega1 + omega2.
enum class HalfPeriodIndex : int { Origin = 0, First = 1, Second = 2, Third = 3 };

/// Additive monodromy of zeta along the periods: zeta(z + 2 omega_j) = zeta(z) + eta_j.
struct QuasiPeriods
{
    Complex eta1;
    Complex eta2;
};

/// Evaluation route for the Weierstrass functions.
///
/// LatticeSum sums the lattice row by row (each row in closed form through
/// csc^2 / cot) and truncates the rows with an explicit geometric tail bound.
/// Theta evaluates the Jacobi theta_1 quotient; it exists to cross-check the
/// lattice sum.
enum class Backend { LatticeSum, Theta };

/// Period lattice L = 2 omega1 Z + 2 omega2 Z with an evaluation precision.
///
/// Construction validates the basis, Gauss-reduces it internally and sizes
/// the row truncation from `precision`. The object is immutable afterwards;
/// all evaluation functions are pure and may be called concurrently.
class Lattice
{
public:
    static constexpr double precision_floor = 1e-12;

    /// Throws InvalidLattice if Im(omega2/omega1) <= 0, an input is not
    /// finite, or precision <= 0. Precision below the floor is raised to it.
    Lattice(Complex omega1, Complex omega2, double precision = precision_floor);

    Complex omega1() const { return omega1_; }
    Complex omega2() const { return omega2_; }
    Complex period1() const { return 2.0 * omega1_; }
    Complex period2() const { return 2.0 * omega2_; }
    double precision() const { return precision_; }

    /// Pole-exclusion radius: 1e-3 times the shortest nonzero lattice vector.
    double pole_radius() const { return pole_radius_; }

    /// Shortest nonzero lattice vector length.
    double min_period_length() const { return std::abs(reduced_[0]); }

    Complex half_period(HalfPeriodIndex index) const;

    /// Real coordinates (x, y) with z = x * 2 omega1 + y * 2 omega2.
    std::array<double, 2> coordinates(Complex z) const;

    /// Number of lattice rows kept on each side of the origin row.
    int rows() const { return rows_; }

    /// Gauss-reduced periods; |reduced[0]| <= |reduced[1]|, same orientation.
    const std::array<Complex, 2> &reduced_periods() const { return reduced_; }

    /// user period j = to_user[j][0] * reduced[0] + to_user[j][1] * reduced[1].
    const std::array<std::array<std::int64_t, 2>, 2> &user_in_reduced() const { return to_user_; }

    /// Linear coefficient of zeta in the row-sum representation.
    Complex zeta_slope() const { return slope_; }

    /// Quasi-periods of the reduced basis for the lattice-sum backend.
    const std::array<Complex, 2> &reduced_quasi_periods() const { return reduced_eta_; }

private:
    Complex omega1_;
    Complex omega2_;
    double precision_;
    double pole_radius_;
    std::array<Complex, 2> reduced_;
    std::array<std::array<std::int64_t, 2>, 2> to_user_;
    int rows_;
    Complex slope_;
    std::array<Complex, 2> reduced_eta_;
};

/// z' = z mod L with both coordinates in the user basis inside [-1/2, 1/2].
Complex reduce(const Lattice &lattice, Complex z);

/// Distance from z to the nearest lattice point.
double distance_to_lattice(const Lattice &lattice, Complex z);

/// Weierstrass p. Throws PoleProximity within pole_radius() of L.
Complex wp(const Lattice &lattice, Complex z, Backend backend = Backend::LatticeSum);

/// Derivative of Weierstrass p.
Complex wp_prime(const Lattice &lattice, Complex z, Backend backend = Backend::LatticeSum);

/// Weierstrass zeta (quasi-periodic, so no reduction of the result).
Complex zeta(const Lattice &lattice, Complex z, Backend backend = Backend::LatticeSum);

/// eta_j = 2 zeta(omega_j), mapped back to the user basis.
QuasiPeriods quasi_periods(const Lattice &lattice, Backend backend = Backend::LatticeSum);

/// |eta1 * 2 omega2 - eta2 * 2 omega1 - 2 pi i|.
double legendre_defect(const Lattice &lattice, const QuasiPeriods &eta);

} // namespace elliptic
} // namespace ellsol

#endif
