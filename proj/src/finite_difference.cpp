#include "ellsol/finite_difference.hpp"

#include "ellsol/errors.hpp"

#include <cmath>

namespace ellsol::fd
{

// B. Fornberg, "Generation of finite difference formulas on arbitrarily
// spaced grids", Math. Comp. 51 (1988).
std::vector<double> fornberg_weights(double x0, const std::vector<double> &nodes, int derivative)
{
    const int n = static_cast<int>(nodes.size()) - 1;
    const int m = derivative;
    if (n < m || m < 0) {
        throw Error("not enough nodes for the requested derivative");
    }
    // c[j][k]: weight of node j for the k-th derivative
    std::vector<std::vector<double>> c(n + 1, std::vector<double>(m + 1, 0.0));
    double c1 = 1.0;
    double c4 = nodes[0] - x0;
    c[0][0] = 1.0;
    for (int i = 1; i <= n; ++i) {
        const int mn = std::min(i, m);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = nodes[i] - x0;
        for (int j = 0; j < i; ++j) {
            const double c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k) {
                    c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k) {
                c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(n + 1);
    for (int j = 0; j <= n; ++j) {
        w[j] = c[j][m];
    }
    return w;
}

Stencil central_stencil(int derivative, int order)
{
    if (derivative < 1 || order < 2 || order % 2 != 0) {
        throw Error("central stencils need derivative >= 1 and an even order >= 2");
    }
    // 2p + 1 symmetric nodes give order 2p + 1 - derivative, rounded down to even
    const int half = (derivative - 1) / 2 + order / 2;
    Stencil s;
    s.derivative = derivative;
    s.order = order;
    std::vector<double> nodes;
    for (int i = -half; i <= half; ++i) {
        nodes.push_back(static_cast<double>(i));
    }
    const std::vector<double> w = fornberg_weights(0.0, nodes, derivative);
    for (int i = -half; i <= half; ++i) {
        const double wi = w[static_cast<std::size_t>(i + half)];
        if (std::abs(wi) > 1e-13) {
            s.offsets.push_back(i);
            s.weights.push_back(wi);
        }
    }
    return s;
}

} // namespace ellsol::fd
