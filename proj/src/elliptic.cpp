#include "ellsol/elliptic.hpp"

#include "ellsol/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace ellsol::elliptic
{

namespace
{

constexpr double pi = std::numbers::pi;
constexpr Complex I{0.0, 1.0};

// Beyond this |Im w| the exponential forms below are used; inside it the
// trigonometric forms avoid the cancellation in 1 - exp(2iw).
constexpr double trig_switch = 0.5;

constexpr int max_rows = 400;

// csc^2(w) = -4 e / (1 - e)^2 with e = exp(2iw) (Im w > 0) or exp(-2iw).
Complex csc2(Complex w)
{
    if (std::abs(w.imag()) < trig_switch) {
        const Complex s = std::sin(w);
        return 1.0 / (s * s);
    }
    const Complex e = w.imag() > 0 ? std::exp(2.0 * I * w) : std::exp(-2.0 * I * w);
    const Complex d = 1.0 - e;
    return -4.0 * e / (d * d);
}

Complex cot(Complex w)
{
    if (std::abs(w.imag()) < trig_switch) {
        return std::cos(w) / std::sin(w);
    }
    if (w.imag() > 0) {
        const Complex e = std::exp(2.0 * I * w);
        return -I * (1.0 + e) / (1.0 - e);
    }
    const Complex e = std::exp(-2.0 * I * w);
    return I * (1.0 + e) / (1.0 - e);
}

// Im(a * conj(b)), the oriented area spanned by a and b.
double cross(Complex a, Complex b)
{
    return a.imag() * b.real() - a.real() * b.imag();
}

struct CellPoint
{
    Complex z;
    std::int64_t shift1;
    std::int64_t shift2;
};

// Reduction in the Gauss-reduced basis; z = cell.z + shift1 r1 + shift2 r2.
CellPoint to_cell(const Lattice &lattice, Complex z)
{
    const auto &r = lattice.reduced_periods();
    const double area = cross(r[0], r[1]);
    const double x = cross(z, r[1]) / area;
    const double y = cross(r[0], z) / area;
    const double rx = std::round(x);
    const double ry = std::round(y);
    return {z - rx * r[0] - ry * r[1], static_cast<std::int64_t>(rx), static_cast<std::int64_t>(ry)};
}

double cell_distance(const Lattice &lattice, Complex cell_z)
{
    const auto &r = lattice.reduced_periods();
    double best = std::numeric_limits<double>::infinity();
    for (int i = -1; i <= 1; ++i) {
        for (int j = -1; j <= 1; ++j) {
            best = std::min(best, std::abs(cell_z - static_cast<double>(i) * r[0] - static_cast<double>(j) * r[1]));
        }
    }
    return best;
}

CellPoint checked_cell(const Lattice &lattice, Complex z)
{
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw Error("evaluation point is not finite");
    }
    const CellPoint cell = to_cell(lattice, z);
    const double dist = cell_distance(lattice, cell.z);
    if (dist < lattice.pole_radius()) {
        std::ostringstream msg;
        msg << "point (" << z.real() << ", " << z.imag() << ") lies within " << dist
            << " of a lattice point (exclusion radius " << lattice.pole_radius() << ")";
        throw PoleProximity(msg.str());
    }
    return cell;
}

// Shared constants of the row-sum representation.
struct RowData
{
    Complex k;   // pi / r1
    Complex tau; // r2 / r1
    Complex q2;  // exp(2 pi i tau)
};

RowData row_data(const Lattice &lattice)
{
    const auto &r = lattice.reduced_periods();
    const Complex tau = r[1] / r[0];
    return {pi / r[0], tau, std::exp(2.0 * pi * I * tau)};
}

// zeta on the closed reduced cell:
//   k cot(kz) + c z + 2ik sum_n [Q^n/E / (1 - Q^n/E) - Q^n E / (1 - Q^n E)],
// with E = exp(2ikz), Q = exp(2 pi i tau). Rows n and -n are paired.
Complex zeta_rows(const Lattice &lattice, const RowData &rd, Complex z, Complex slope)
{
    const Complex kz = rd.k * z;
    const Complex e = std::exp(2.0 * I * kz);
    const Complex e_inv = 1.0 / e;
    Complex tail{0.0, 0.0};
    Complex qn{1.0, 0.0};
    for (int n = 1; n <= lattice.rows(); ++n) {
        qn *= rd.q2;
        const Complex lo = qn * e_inv;
        const Complex hi = qn * e;
        tail += lo / (1.0 - lo) - hi / (1.0 - hi);
    }
    return rd.k * cot(kz) + slope * z + 2.0 * I * rd.k * tail;
}

// p on the closed reduced cell:
//   k^2 [csc^2(kz) - 1/3 + sum_n (csc^2(kz - n pi tau) + csc^2(kz + n pi tau) - 2 csc^2(n pi tau))].
Complex wp_rows(const Lattice &lattice, const RowData &rd, Complex z)
{
    const Complex kz = rd.k * z;
    const Complex e = std::exp(2.0 * I * kz);
    const Complex e_inv = 1.0 / e;
    Complex tail{0.0, 0.0};
    Complex qn{1.0, 0.0};
    for (int n = 1; n <= lattice.rows(); ++n) {
        qn *= rd.q2;
        const Complex lo = qn * e_inv;
        const Complex hi = qn * e;
        const Complex dl = 1.0 - lo;
        const Complex dh = 1.0 - hi;
        const Complex dq = 1.0 - qn;
        tail += -4.0 * lo / (dl * dl) - 4.0 * hi / (dh * dh) + 8.0 * qn / (dq * dq);
    }
    return rd.k * rd.k * (csc2(kz) - 1.0 / 3.0 + tail);
}

// p' = -2 k^3 sum_n csc^2(w_n) cot(w_n), w_n = kz - n pi tau.
Complex wp_prime_rows(const Lattice &lattice, const RowData &rd, Complex z)
{
    const Complex kz = rd.k * z;
    const Complex e = std::exp(2.0 * I * kz);
    const Complex e_inv = 1.0 / e;
    Complex sum = csc2(kz) * cot(kz);
    Complex qn{1.0, 0.0};
    for (int n = 1; n <= lattice.rows(); ++n) {
        qn *= rd.q2;
        const Complex lo = qn * e_inv; // row n, Im w < 0
        const Complex hi = qn * e;     // row -n, Im w > 0
        const Complex dl = 1.0 - lo;
        const Complex dh = 1.0 - hi;
        sum += 4.0 * I * hi * (1.0 + hi) / (dh * dh * dh) - 4.0 * I * lo * (1.0 + lo) / (dl * dl * dl);
    }
    return -2.0 * rd.k * rd.k * rd.k * sum;
}

// theta_1 and its first three derivatives at v, up to the common factor 2 q^(1/4).
struct ThetaJet
{
    std::array<Complex, 4> d;
};

int theta_terms(const RowData &rd)
{
    const double y = pi * rd.tau.imag();
    int n = 1;
    while (n < 64) {
        const double bound = std::exp(-y * n * n) * std::pow(2.0 * n + 1.0, 3);
        if (bound < 1e-20) {
            break;
        }
        ++n;
    }
    return n;
}

ThetaJet theta1_jet(const RowData &rd, Complex v)
{
    ThetaJet jet{};
    const int terms = theta_terms(rd);
    for (int n = 0; n <= terms; ++n) {
        const double m = 2.0 * n + 1.0;
        const Complex weight = (n % 2 == 0 ? 1.0 : -1.0) * std::exp(I * pi * rd.tau * static_cast<double>(n * (n + 1)));
        const Complex s = std::sin(m * v);
        const Complex c = std::cos(m * v);
        jet.d[0] += weight * s;
        jet.d[1] += weight * m * c;
        jet.d[2] -= weight * m * m * s;
        jet.d[3] -= weight * m * m * m * c;
    }
    return jet;
}

// -k^2 theta'''(0) / (3 theta'(0)).
Complex theta_slope(const RowData &rd)
{
    const ThetaJet jet = theta1_jet(rd, Complex{0.0, 0.0});
    return -rd.k * rd.k * jet.d[3] / (3.0 * jet.d[1]);
}

Complex zeta_theta(const RowData &rd, Complex z, Complex slope)
{
    const ThetaJet jet = theta1_jet(rd, rd.k * z);
    return slope * z + rd.k * jet.d[1] / jet.d[0];
}

Complex wp_theta(const RowData &rd, Complex z, Complex slope)
{
    const ThetaJet jet = theta1_jet(rd, rd.k * z);
    const Complex l1 = jet.d[1] / jet.d[0];
    const Complex l2 = jet.d[2] / jet.d[0];
    return -slope - rd.k * rd.k * (l2 - l1 * l1);
}

Complex wp_prime_theta(const RowData &rd, Complex z)
{
    const ThetaJet jet = theta1_jet(rd, rd.k * z);
    const Complex l1 = jet.d[1] / jet.d[0];
    const Complex l2 = jet.d[2] / jet.d[0];
    const Complex l3 = jet.d[3] / jet.d[0];
    return -rd.k * rd.k * rd.k * (l3 - 3.0 * l2 * l1 + 2.0 * l1 * l1 * l1);
}

std::array<Complex, 2> theta_reduced_eta(const Lattice &lattice, const RowData &rd)
{
    const Complex slope = theta_slope(rd);
    const auto &r = lattice.reduced_periods();
    return {2.0 * zeta_theta(rd, 0.5 * r[0], slope), 2.0 * zeta_theta(rd, 0.5 * r[1], slope)};
}

} // namespace

Lattice::Lattice(Complex omega1, Complex omega2, double precision)
    : omega1_(omega1), omega2_(omega2), precision_(precision), pole_radius_(0.0), reduced_{}, to_user_{},
      rows_(0), slope_{}, reduced_eta_{}
{
    const auto finite = [](Complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); };
    if (!finite(omega1) || !finite(omega2)) {
        throw InvalidLattice("half-periods must be finite");
    }
    if (!(precision > 0.0) || !std::isfinite(precision)) {
        throw InvalidLattice("precision must be a positive finite number");
    }
    precision_ = std::max(precision, precision_floor);
    if (std::abs(omega1) == 0.0 || !((omega2 / omega1).imag() > 0.0)) {
        throw InvalidLattice("basis must satisfy Im(omega2 / omega1) > 0");
    }

    // Gauss reduction: r_i = a[i][0] P1 + a[i][1] P2 with det a = 1.
    Complex r1 = period1();
    Complex r2 = period2();
    std::int64_t a[2][2] = {{1, 0}, {0, 1}};
    int guard = 0;
    for (;; ++guard) {
        if (guard > 200) {
            throw InvalidLattice("basis reduction did not terminate");
        }
        const double m = std::round((r2 / r1).real());
        if (m != 0.0) {
            r2 -= m * r1;
            const auto mi = static_cast<std::int64_t>(m);
            a[1][0] -= mi * a[0][0];
            a[1][1] -= mi * a[0][1];
        }
        if (std::abs(r2) < std::abs(r1) * (1.0 - 1e-14)) {
            const Complex t = r1;
            r1 = r2;
            r2 = -t;
            const std::int64_t b0 = a[0][0];
            const std::int64_t b1 = a[0][1];
            a[0][0] = a[1][0];
            a[0][1] = a[1][1];
            a[1][0] = -b0;
            a[1][1] = -b1;
            continue;
        }
        break;
    }
    reduced_ = {r1, r2};
    // inverse of a (determinant 1)
    to_user_ = {{{a[1][1], -a[0][1]}, {-a[1][0], a[0][0]}}};
    pole_radius_ = 1e-3 * std::abs(r1);

    // Row truncation from the geometric tail bound. For z in the closed cell
    // every neglected row term is bounded by F exp(-(2n - 1) y) / (1 - e^-y)^3
    // with y = pi Im(tau); summing n > N gives the expression below.
    const RowData rd = row_data(*this);
    const double y = pi * rd.tau.imag();
    const double kk = std::abs(rd.k);
    const double scale = std::max({16.0 * kk * kk, 8.0 * kk, 64.0 * kk * kk * kk});
    const double denom = (1.0 - std::exp(-2.0 * y)) * std::pow(1.0 - std::exp(-y), 3);
    int rows = 1;
    while (scale * std::exp(-(2.0 * rows + 1.0) * y) / denom > 0.25 * precision_) {
        if (++rows > max_rows) {
            throw ConvergenceFailure("lattice row sum cannot meet the requested precision");
        }
    }
    rows_ = rows;

    // c = k^2 (1/3 + 2 sum csc^2(n pi tau)) = k^2 (1/3 - 8 sum Q^n / (1 - Q^n)^2).
    Complex acc{0.0, 0.0};
    Complex qn{1.0, 0.0};
    for (int n = 1; n <= 4 * max_rows; ++n) {
        qn *= rd.q2;
        const Complex d = 1.0 - qn;
        const Complex term = qn / (d * d);
        acc += term;
        if (std::abs(term) < 1e-18 * std::max(1.0, std::abs(acc))) {
            break;
        }
    }
    slope_ = rd.k * rd.k * (1.0 / 3.0 - 8.0 * acc);
    if (!std::isfinite(slope_.real()) || !std::isfinite(slope_.imag())) {
        throw ConvergenceFailure("zeta slope is not finite");
    }

    reduced_eta_ = {2.0 * zeta_rows(*this, rd, 0.5 * r1, slope_), 2.0 * zeta_rows(*this, rd, 0.5 * r2, slope_)};
}

Complex Lattice::half_period(HalfPeriodIndex index) const
{
    switch (index) {
    case HalfPeriodIndex::Origin:
        return {0.0, 0.0};
    case HalfPeriodIndex::First:
        return omega1_;
    case HalfPeriodIndex::Second:
        return omega2_;
    case HalfPeriodIndex::Third:
        return omega1_ + omega2_;
    }
    return {0.0, 0.0};
}

std::array<double, 2> Lattice::coordinates(Complex z) const
{
    const Complex p1 = period1();
    const Complex p2 = period2();
    const double area = cross(p1, p2);
    return {cross(z, p2) / area, cross(p1, z) / area};
}

Complex reduce(const Lattice &lattice, Complex z)
{
    const auto xy = lattice.coordinates(z);
    return z - std::round(xy[0]) * lattice.period1() - std::round(xy[1]) * lattice.period2();
}

double distance_to_lattice(const Lattice &lattice, Complex z)
{
    return cell_distance(lattice, to_cell(lattice, z).z);
}

Complex wp(const Lattice &lattice, Complex z, Backend backend)
{
    const CellPoint cell = checked_cell(lattice, z);
    const RowData rd = row_data(lattice);
    if (backend == Backend::Theta) {
        return wp_theta(rd, cell.z, theta_slope(rd));
    }
    return wp_rows(lattice, rd, cell.z);
}

Complex wp_prime(const Lattice &lattice, Complex z, Backend backend)
{
    const CellPoint cell = checked_cell(lattice, z);
    const RowData rd = row_data(lattice);
    if (backend == Backend::Theta) {
        return wp_prime_theta(rd, cell.z);
    }
    return wp_prime_rows(lattice, rd, cell.z);
}

Complex zeta(const Lattice &lattice, Complex z, Backend backend)
{
    const CellPoint cell = checked_cell(lattice, z);
    const RowData rd = row_data(lattice);
    Complex value;
    std::array<Complex, 2> eta;
    if (backend == Backend::Theta) {
        value = zeta_theta(rd, cell.z, theta_slope(rd));
        eta = theta_reduced_eta(lattice, rd);
    } else {
        value = zeta_rows(lattice, rd, cell.z, lattice.zeta_slope());
        eta = lattice.reduced_quasi_periods();
    }
    return value + static_cast<double>(cell.shift1) * eta[0] + static_cast<double>(cell.shift2) * eta[1];
}

QuasiPeriods quasi_periods(const Lattice &lattice, Backend backend)
{
    const std::array<Complex, 2> eta =
        backend == Backend::Theta ? theta_reduced_eta(lattice, row_data(lattice)) : lattice.reduced_quasi_periods();
    const auto &m = lattice.user_in_reduced();
    const auto map = [&](int j) {
        return static_cast<double>(m[j][0]) * eta[0] + static_cast<double>(m[j][1]) * eta[1];
    };
    return {map(0), map(1)};
}

double legendre_defect(const Lattice &lattice, const QuasiPeriods &eta)
{
    return std::abs(eta.eta1 * lattice.period2() - eta.eta2 * lattice.period1() - 2.0 * pi * I);
}

} // namespace ellsol::elliptic
