#ifndef ELLSOL_TESTS_ORACLES_HPP
#define ELLSOL_TESTS_ORACLES_HPP

// Independent reference computations for the tests. Nothing here calls the
// library's evaluation code.

#include "ellsol/elliptic.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

namespace oracle
{

using Complex = std::complex<double>;

/// Term-by-term lattice sums over the box |n| <= rows, |m| <= cols with
/// lattice points l = m P1 + n P2. The box is symmetric under l -> -l, so odd
/// leading terms of the tail cancel pairwise. Rows beyond `rows` contribute
/// O(exp(-2 pi rows Im(P2/P1))), the column tail O(|z|^2 / cols^3).
/// Requires Im(P2/P1) >= 0.7 or so for rows = 8.
struct BruteForce
{
    Complex p1;
    Complex p2;
    int rows = 8;
    int cols = 20000;

    template <class Term>
    Complex sum(Complex z, Term term) const
    {
        Complex total{0.0, 0.0};
        for (int n = -rows; n <= rows; ++n) {
            Complex row{0.0, 0.0};
            for (int m = -cols; m <= cols; ++m) {
                if (m == 0 && n == 0) {
                    continue;
                }
                row += term(z, static_cast<double>(m) * p1 + static_cast<double>(n) * p2);
            }
            total += row;
        }
        return total;
    }

    /// 1/z^2 + sum' [1/(z-l)^2 - 1/l^2]
    Complex wp(Complex z) const
    {
        return 1.0 / (z * z) + sum(z, [](Complex w, Complex l) {
                   // 1/(w-l)^2 - 1/l^2 without the cancellation
                   return w * (2.0 * l - w) / (l * l * (w - l) * (w - l));
               });
    }

    /// -2 sum 1/(z-l)^3
    Complex wp_prime(Complex z) const
    {
        return -2.0 / (z * z * z) + sum(z, [](Complex w, Complex l) {
                   const Complex d = w - l;
                   return -2.0 / (d * d * d);
               });
    }

    /// -24 sum 1/(z-l)^5, the third derivative of p
    Complex wp_third(Complex z) const
    {
        const Complex z5 = z * z * z * z * z;
        return -24.0 / z5 + sum(z, [](Complex w, Complex l) {
                   const Complex d = w - l;
                   return -24.0 / (d * d * d * d * d);
               });
    }

    /// 1/z + sum' [1/(z-l) + 1/l + z/l^2]
    Complex zeta(Complex z) const
    {
        return 1.0 / z + sum(z, [](Complex w, Complex l) { return w * w / (l * l * (w - l)); });
    }
};

struct RandomLattice
{
    Complex omega1;
    Complex omega2;
};

/// omega1 = r e^{i theta}, omega2 = omega1 tau with Im tau in [im_lo, im_hi].
inline RandomLattice random_lattice(std::mt19937_64 &rng, double im_lo = 0.2, double im_hi = 5.0)
{
    std::uniform_real_distribution<double> radius(0.3, 3.0);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::uniform_real_distribution<double> re_tau(-2.0, 2.0);
    std::uniform_real_distribution<double> im_tau(im_lo, im_hi);
    const Complex w1 = std::polar(radius(rng), angle(rng));
    return {w1, w1 * Complex(re_tau(rng), im_tau(rng))};
}

/// Distance from z to the nearest point of 2 w1 Z + 2 w2 Z, by exhaustive
/// search over a neighbourhood of the rounded coordinates.
inline double lattice_distance(Complex w1, Complex w2, Complex z)
{
    const Complex p1 = 2.0 * w1, p2 = 2.0 * w2;
    const double det = (p1.real() * p2.imag() - p1.imag() * p2.real());
    const double a = (z.real() * p2.imag() - z.imag() * p2.real()) / det;
    const double b = (p1.real() * z.imag() - p1.imag() * z.real()) / det;
    double best = std::abs(z);
    const int span = 12;
    for (int i = -span; i <= span; ++i) {
        for (int j = -span; j <= span; ++j) {
            const Complex l = (std::round(a) + i) * p1 + (std::round(b) + j) * p2;
            best = std::min(best, std::abs(z - l));
        }
    }
    return best;
}

/// Shortest nonzero lattice vector, exhaustively.
inline double shortest_vector(Complex w1, Complex w2)
{
    double best = std::numeric_limits<double>::infinity();
    for (int i = -30; i <= 30; ++i) {
        for (int j = -30; j <= 30; ++j) {
            if (i != 0 || j != 0) {
                best = std::min(best, std::abs(2.0 * (static_cast<double>(i) * w1 + static_cast<double>(j) * w2)));
            }
        }
    }
    return best;
}

/// Random point z = a 2w1 + b 2w2, a, b in (-1, 1), at least `margin` times
/// the shortest period away from the lattice.
inline Complex random_point(std::mt19937_64 &rng, Complex w1, Complex w2, double margin = 0.05)
{
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const double lmin = shortest_vector(w1, w2);
    while (true) {
        const Complex z = u(rng) * 2.0 * w1 + u(rng) * 2.0 * w2;
        if (lattice_distance(w1, w2, z) > margin * lmin) {
            return z;
        }
    }
}

} // namespace oracle

#endif
