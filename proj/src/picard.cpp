#include "ellsol/picard.hpp"

#include "ellsol/errors.hpp"

#include <string>

namespace ellsol::picard
{

namespace
{

Int sum_squares(const Quad &v)
{
    Int total = 0;
    for (Int x : v) {
        total += x * x;
    }
    return total;
}

bool is_even(Int x) { return x % 2 == 0; }

void require_non_negative(const Quad &v, const char *name)
{
    for (Int x : v) {
        if (x < 0) {
            throw InvalidInvariants(std::string(name) + " must have non-negative entries");
        }
    }
}

void require_index(int i)
{
    if (i < 0 || i > 3) {
        throw InvalidInvariants("half-period index must lie in 0..3");
    }
}

} // namespace

DivisorClass DivisorClass::section()
{
    DivisorClass d;
    d.a = 1;
    return d;
}

DivisorClass DivisorClass::fiber()
{
    DivisorClass d;
    d.b = 1;
    return d;
}

DivisorClass DivisorClass::s_exceptional(int i)
{
    require_index(i);
    DivisorClass d;
    d.s[i] = 1;
    return d;
}

DivisorClass DivisorClass::r_exceptional(int i)
{
    require_index(i);
    DivisorClass d;
    d.r[i] = 1;
    return d;
}

std::array<Int, 10> DivisorClass::to_array() const
{
    return {a, b, s[0], s[1], s[2], s[3], r[0], r[1], r[2], r[3]};
}

DivisorClass DivisorClass::from_array(const std::array<Int, 10> &v)
{
    DivisorClass d;
    d.a = v[0];
    d.b = v[1];
    for (int i = 0; i < 4; ++i) {
        d.s[i] = v[2 + i];
        d.r[i] = v[6 + i];
    }
    return d;
}

DivisorClass operator+(const DivisorClass &x, const DivisorClass &y)
{
    DivisorClass z;
    z.a = x.a + y.a;
    z.b = x.b + y.b;
    for (int i = 0; i < 4; ++i) {
        z.s[i] = x.s[i] + y.s[i];
        z.r[i] = x.r[i] + y.r[i];
    }
    return z;
}

DivisorClass operator-(const DivisorClass &x, const DivisorClass &y) { return x + (-1) * y; }

DivisorClass operator*(Int k, const DivisorClass &x)
{
    DivisorClass z;
    z.a = k * x.a;
    z.b = k * x.b;
    for (int i = 0; i < 4; ++i) {
        z.s[i] = k * x.s[i];
        z.r[i] = k * x.r[i];
    }
    return z;
}

Int intersect(const DivisorClass &x, const DivisorClass &y)
{
    Int total = x.a * y.b + x.b * y.a;
    for (int i = 0; i < 4; ++i) {
        total -= x.s[i] * y.s[i] + x.r[i] * y.r[i];
    }
    return total;
}

DivisorClass canonical_class()
{
    DivisorClass k;
    k.a = -2;
    k.s = {1, 1, 1, 1};
    k.r = {1, 1, 1, 1};
    return k;
}

DivisorClass quotient_canonical_pullback()
{
    DivisorClass k;
    k.a = -2;
    return k;
}

Rational adjunction_genus(const DivisorClass &d)
{
    return Rational(1) + Rational(intersect(d, d) + intersect(d, canonical_class()), 2);
}

DivisorClass cover_class(Int n, Int d, Int rho, const Quad &gamma)
{
    if (n < 1 || d < 1) {
        throw InvalidInvariants("cover class needs n >= 1 and d >= 1");
    }
    if (rho < 1 || is_even(rho) || rho > 2 * d - 1) {
        throw InvalidInvariants("ramification index must be odd and at most 2d-1");
    }
    require_non_negative(gamma, "type vector");
    DivisorClass c;
    c.a = n;
    c.b = 2 * d - 1;
    c.s[0] = -rho;
    for (int i = 0; i < 4; ++i) {
        c.r[i] = -gamma[i];
    }
    return c;
}

DivisorClass image_class(Int n, Int d, Int rho, Int m, const Quad &gamma)
{
    if (m < 1) {
        throw InvalidInvariants("image degree must be positive");
    }
    const DivisorClass c = cover_class(n, d, rho, gamma);
    std::array<Int, 10> v = c.to_array();
    for (Int &x : v) {
        if (x % m != 0) {
            throw InvalidInvariants("image degree does not divide the cover class");
        }
        x /= m;
    }
    return DivisorClass::from_array(v);
}

TauInvariantClass::TauInvariantClass(const DivisorClass &d) : d_(d)
{
    if (!is_even(intersect(d, d))) {
        throw ParityViolation("self-intersection of a pullback must be even");
    }
    if (!is_even(intersect(d, quotient_canonical_pullback()))) {
        throw ParityViolation("pairing of a pullback with e*(-2C_o) must be even");
    }
}

Int TauInvariantClass::self_intersection() const { return intersect(d_, d_) / 2; }

Int TauInvariantClass::canonical_pairing() const { return intersect(d_, quotient_canonical_pullback()) / 2; }

Rational tilde_genus(const TauInvariantClass &lambda)
{
    return Rational(1) + Rational(lambda.self_intersection() + lambda.canonical_pairing(), 2);
}

Rational tilde_genus(const DivisorClass &d) { return tilde_genus(TauInvariantClass(d)); }

Placement Placement::same_projection(int half_period)
{
    return {PlacementKind::SameProjection, half_period, half_period};
}

Placement Placement::distinct_generic() { return {PlacementKind::DistinctGeneric, 0, 0}; }

Placement Placement::distinct_half_periods(int k, int j) { return {PlacementKind::DistinctHalfPeriods, k, j}; }

void validate(const Placement &placement)
{
    switch (placement.kind) {
    case PlacementKind::SameProjection:
        require_index(placement.first);
        break;
    case PlacementKind::DistinctGeneric:
        break;
    case PlacementKind::DistinctHalfPeriods:
        require_index(placement.first);
        require_index(placement.second);
        if (placement.first == placement.second) {
            throw InvalidInvariants("distinct half-period placement needs two different indices");
        }
        break;
    }
}

bool placement_parity_holds(Int n, const Placement &placement, const Quad &gamma)
{
    validate(placement);
    for (int i = 0; i < 4; ++i) {
        Int expected = n;
        if (placement.kind == PlacementKind::DistinctHalfPeriods && (i == placement.first || i == placement.second)) {
            expected += 1;
        }
        if (!is_even(gamma[i] - expected)) {
            return false;
        }
    }
    return true;
}

DivisorClass nls_sg_class(Int n, const Placement &placement, const Quad &gamma)
{
    if (n < 1) {
        throw InvalidInvariants("degree must be positive");
    }
    require_non_negative(gamma, "type vector");
    if (!placement_parity_holds(n, placement, gamma)) {
        throw ParityViolation("type vector parities do not match the placement");
    }
    DivisorClass c;
    c.a = n;
    c.b = 2;
    for (int i = 0; i < 4; ++i) {
        c.r[i] = -gamma[i];
    }
    switch (placement.kind) {
    case PlacementKind::SameProjection:
        c.s[placement.first] = -2;
        break;
    case PlacementKind::DistinctGeneric:
        break;
    case PlacementKind::DistinctHalfPeriods:
        c.s[placement.first] = -1;
        c.s[placement.second] = -1;
        break;
    }
    return c;
}

int distinguished_index(const Quad &alpha)
{
    int found = -1;
    for (int k = 0; k < 4; ++k) {
        bool ok = true;
        for (int j = 0; j < 4 && ok; ++j) {
            if (j != k && !is_even(alpha[k] + 1 - alpha[j])) {
                ok = false;
            }
        }
        if (ok) {
            if (found >= 0) {
                throw ParityViolation("parity-distinguished index is not unique");
            }
            found = k;
        }
    }
    if (found < 0) {
        throw ParityViolation("no parity-distinguished index: alpha^(2) must be odd");
    }
    return found;
}

DivisorClass exceptional_class(const Quad &alpha)
{
    require_non_negative(alpha, "alpha");
    const int k = distinguished_index(alpha);
    DivisorClass c;
    c.a = (sum_squares(alpha) - 1) / 2;
    c.b = 1;
    c.s[k] = -1;
    for (int i = 0; i < 4; ++i) {
        c.r[i] = -alpha[i];
    }
    return c;
}

bool is_exceptional_first_kind(const DivisorClass &d)
{
    return intersect(d, d) == -2 && intersect(d, quotient_canonical_pullback()) == -2;
}

} // namespace ellsol::picard
