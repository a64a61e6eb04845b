#ifndef ELLSOL_FINITE_DIFFERENCE_HPP
#define ELLSOL_FINITE_DIFFERENCE_HPP

#include <vector>

namespace ellsol::fd
{

/// Central stencil for the `derivative`-th derivative on unit spacing.
///
/// offsets[i] are the integer node positions, weights[i] the matching
/// coefficients; divide the weighted sum by h^derivative.
struct Stencil
{
    int derivative = 0;
    int order = 0;
    std::vector<int> offsets;
    std::vector<double> weights;
};

/// Fornberg weights for arbitrary nodes, derivative m, expansion point x0.
std::vector<double> fornberg_weights(double x0, const std::vector<double> &nodes, int derivative);

/// Smallest symmetric stencil reaching the given even accuracy order.
/// order 2 gives the classical 3-point first derivative and 5-point third derivative.
Stencil central_stencil(int derivative, int order);

} // namespace ellsol::fd

#endif
