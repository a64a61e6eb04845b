#ifndef ELLSOL_PICARD_HPP
#define ELLSOL_PICARD_HPP

#include <boost/rational.hpp>

#include <array>
#include <cstdint>

namespace ellsol::picard
{

using Int = std::int64_t;
using Rational = boost::rational<Int>;
using Quad = std::array<Int, 4>;

/// Numerical class on the blown-up ruled surface:
///   a e*(C_o) + b e*(F) + sum_i s[i] s_i + sum_i r[i] r_i
/// with F any fiber and s_i, r_i the eight exceptional curves over the
/// half-periods (index order as in elliptic::HalfPeriodIndex). Coefficients
/// are stored as written, so curve classes carry negative s and r entries.
struct DivisorClass
{
    Int a = 0;
    Int b = 0;
    Quad s{};
    Quad r{};

    static DivisorClass section();   // e*(C_o)
    static DivisorClass fiber();     // e*(F)
    static DivisorClass s_exceptional(int i);
    static DivisorClass r_exceptional(int i);

    /// Layout (a, b, s0..s3, r0..r3).
    std::array<Int, 10> to_array() const;
    static DivisorClass from_array(const std::array<Int, 10> &v);

    friend bool operator==(const DivisorClass &, const DivisorClass &) = default;
};

DivisorClass operator+(const DivisorClass &x, const DivisorClass &y);
DivisorClass operator-(const DivisorClass &x, const DivisorClass &y);
DivisorClass operator*(Int k, const DivisorClass &x);

/// C.F = 1, C^2 = F^2 = 0, exceptional curves square to -1 and are orthogonal
/// to each other and to pullbacks.
Int intersect(const DivisorClass &x, const DivisorClass &y);

/// -2 e*(C_o) + sum_i (s_i + r_i). Its square is -8.
DivisorClass canonical_class();

/// e*(-2 C_o): pullback of the canonical class of the quotient surface.
DivisorClass quotient_canonical_pullback();

/// 1 + (D^2 + D.K) / 2.
Rational adjunction_genus(const DivisorClass &d);

/// e*(n C_o + (2d-1) F) - rho s_0 - sum gamma_i r_i.
/// Throws InvalidInvariants unless n >= 1, d >= 1, rho odd in [1, 2d-1] and
/// gamma >= 0.
DivisorClass cover_class(Int n, Int d, Int rho, const Quad &gamma);

/// cover_class / m for covers of degree m onto their image. Throws
/// InvalidInvariants if m < 1 or m does not divide every coefficient.
DivisorClass image_class(Int n, Int d, Int rho, Int m, const Quad &gamma);

/// A class claimed to be a pullback from the quotient surface under the
/// degree-2 map. Construction enforces the two parity conditions that such a
/// pullback satisfies: D^2 even and D.e*(-2 C_o) even.
class TauInvariantClass
{
public:
    /// Throws ParityViolation if either parity condition fails.
    explicit TauInvariantClass(const DivisorClass &d);

    const DivisorClass &pullback() const { return d_; }

    /// Lambda^2 = D^2 / 2 and Lambda.K = D.e*(-2 C_o) / 2 on the quotient.
    Int self_intersection() const;
    Int canonical_pairing() const;

private:
    DivisorClass d_;
};

/// Arithmetic genus of Lambda on the quotient: 1 + (Lambda^2 + Lambda.K) / 2.
Rational tilde_genus(const TauInvariantClass &lambda);

/// Convenience overload; throws ParityViolation like the constructor.
Rational tilde_genus(const DivisorClass &d);

enum class PlacementKind { SameProjection, DistinctGeneric, DistinctHalfPeriods };

/// Where the two marked points of an NLS/Toda or sine-Gordon cover project.
///
/// SameProjection: both over the half-period `first`.
/// DistinctGeneric: over two distinct points, neither a half-period.
/// DistinctHalfPeriods: over the half-periods `first` != `second`.
struct Placement
{
    PlacementKind kind = PlacementKind::DistinctGeneric;
    int first = 0;
    int second = 0;

    static Placement same_projection(int half_period = 0);
    static Placement distinct_generic();
    static Placement distinct_half_periods(int k, int j);

    friend bool operator==(const Placement &, const Placement &) = default;
};

/// Throws InvalidInvariants for out-of-range or coincident half-period indices.
void validate(const Placement &placement);

/// True when gamma satisfies the congruences attached to the placement:
/// all gamma_i = n (mod 2), except gamma_k + 1 = gamma_j + 1 = n for
/// DistinctHalfPeriods(k, j).
bool placement_parity_holds(Int n, const Placement &placement, const Quad &gamma);

/// Class of an NLS/Toda or sine-Gordon cover (fibers identified):
///   SameProjection(i0):      e*(n C_o + 2F) - 2 s_i0 - sum gamma_i r_i
///   DistinctGeneric:         e*(n C_o + 2F) - sum gamma_i r_i
///   DistinctHalfPeriods(k,j): e*(n C_o + 2F) - s_k - s_j - sum gamma_i r_i
/// Throws ParityViolation when placement_parity_holds fails and
/// InvalidInvariants for n < 1 or negative gamma.
DivisorClass nls_sg_class(Int n, const Placement &placement, const Quad &gamma);

/// Index k with alpha_k + 1 = alpha_j (mod 2) for all j != k.
/// Throws ParityViolation when no unique such k exists, which happens exactly
/// when alpha^(2) is even.
int distinguished_index(const Quad &alpha);

/// e*(n C_o + F) - s_k - sum alpha_i r_i with 2n + 1 = alpha^(2).
/// Throws InvalidInvariants for negative entries, ParityViolation as above.
DivisorClass exceptional_class(const Quad &alpha);

/// D^2 = -2 and D.e*(-2 C_o) = -2, i.e. the quotient class has
/// Lambda^2 = Lambda.K = -1.
bool is_exceptional_first_kind(const DivisorClass &d);

} // namespace ellsol::picard

#endif
