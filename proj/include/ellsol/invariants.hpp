#ifndef ELLSOL_INVARIANTS_HPP
#define ELLSOL_INVARIANTS_HPP

#include "ellsol/picard.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ellsol::invariants
{

using picard::Int;
using picard::Placement;
using picard::PlacementKind;
using picard::Quad;

/// Inputs larger than this in absolute value are rejected with
/// InvalidInvariants so that every bound below stays inside 64-bit range.
inline constexpr Int magnitude_limit = 1'000'000;

/// gamma in N^4, indexed by elliptic::HalfPeriodIndex.
class TypeVector
{
public:
    TypeVector() = default;

    /// Throws InvalidInvariants for negative or oversized entries.
    explicit TypeVector(const Quad &values);

    Int operator[](int i) const { return v_[i]; }
    const Quad &values() const { return v_; }

    Int sum() const;             // gamma^(1)
    Int sum_of_squares() const;  // gamma^(2)

    friend bool operator==(const TypeVector &, const TypeVector &) = default;
    friend auto operator<=>(const TypeVector &, const TypeVector &) = default;

private:
    Quad v_{};
};

/// Claimed invariants (n, d, g, rho, m, gamma) of a hyperelliptic
/// d-osculating cover.
struct CoverInvariants
{
    Int n = 1;
    Int d = 1;
    Int g = 0;
    Int rho = 1;
    Int m = 1;
    TypeVector gamma;
};

enum class CaseFamily { KdV, NlsToda, SineGordon };

struct CaseLabel
{
    CaseFamily family = CaseFamily::KdV;
    Int d = 1;  // KdV only
    Placement placement;  // NlsToda and SineGordon only

    static CaseLabel kdv(Int d);
    static CaseLabel nls_toda(const Placement &placement);
    static CaseLabel sine_gordon(const Placement &placement);
};

std::string to_string(CaseFamily family);
std::string to_string(PlacementKind kind);

/// One named constraint, evaluated as `lhs relation rhs`.
///
/// Informational verdicts are reported but never count as violations.
struct Verdict
{
    std::string clause;
    bool ok = true;
    Int lhs = 0;
    Int rhs = 0;
    std::string relation;
    bool informational = false;
};

/// Verdicts that are violated and not informational.
std::vector<Verdict> violations(const std::vector<Verdict> &verdicts);
bool admissible(const std::vector<Verdict> &verdicts);

/// Every KdV constraint with its outcome, in a fixed order:
/// domain, ramification parity and bound, divisibility by m, type parity,
/// then the genus and type inequalities. Clauses that only apply when
/// rho = 1 are omitted otherwise.
std::vector<Verdict> evaluate_kdv(const CoverInvariants &inv);

/// Violated KdV constraints; empty means admissible.
std::vector<Verdict> check_kdv(const CoverInvariants &inv);

/// NLS / 1D Toda constraints. DistinctHalfPeriods is not a possible
/// placement here (the two marked points are exchanged by the involution, so
/// their projections are opposite) and is flagged as a placement violation.
std::vector<Verdict> evaluate_nls_toda(Int n, Int g, const TypeVector &gamma, const Placement &placement);
std::vector<Verdict> check_nls_toda(Int n, Int g, const TypeVector &gamma, const Placement &placement);

/// sine-Gordon constraints. The marked points are Weierstrass points and
/// project to half-periods, so DistinctGeneric is flagged as a placement
/// violation. For distinct projections both g^2 <= 4n and the stricter
/// g^2 <= 4n - 2 are reported; the stricter one is informational.
std::vector<Verdict> evaluate_sine_gordon(Int n, Int g, const TypeVector &gamma, const Placement &placement);
std::vector<Verdict> check_sine_gordon(Int n, Int g, const TypeVector &gamma, const Placement &placement);

/// (2d-1)(2n-2) + 3.
Int type_target(Int n, Int d);

struct EnumeratedType
{
    TypeVector gamma;
    Int g = 0;
    std::vector<Verdict> verdicts;  // evaluate_kdv with rho = m = 1
};

/// All gamma with gamma^(2) = type_target(n, d) and the KdV type parity for
/// rho = m = 1, sorted lexicographically. Slices over gamma_0 run on
/// `threads` workers; 0 means the ELLSOL_THREADS environment variable or,
/// failing that, the hardware concurrency. Output does not depend on it.
std::vector<EnumeratedType> enumerate_types(Int n, Int d, unsigned threads = 0);

enum class Pattern68 { Uniform, Shifted };

struct Construct68Row
{
    TypeVector gamma;
    Quad two_epsilon{};
    Pattern68 pattern = Pattern68::Uniform;
    Int n = 0;
    Int g = 0;
    std::vector<Verdict> verdicts;  // evaluate_kdv with rho = m = 1
};

struct Construct68Result
{
    Int dimension = 0;  // of the family of covers, d - 1
    std::vector<Construct68Row> rows;
};

/// gamma = (2d-1) mu + 2 epsilon over both epsilon patterns
///   Uniform: |2 epsilon_i| = (2d-2)(1 - delta_ik)
///   Shifted: |2 epsilon_i| = d - (-1)^delta_ik (d odd), d - 2 delta_ik (d even)
/// and all sign choices; vectors with negative entries are dropped,
/// duplicates removed, rows sorted by gamma. n comes from
/// gamma^(2) = (2d-1)(2n-2) + 3 and g from 2g + 1 = gamma^(1).
/// Throws InvalidInvariants for d < 2, k outside 0..3 or negative mu, and
/// ParityViolation unless mu_0 + 1 = mu_1 = mu_2 = mu_3 (mod 2).
Construct68Result construct_types_68(Int d, int k, const Quad &mu);

struct GenusDegree
{
    Int g = 0;
    Int n = 0;
};

/// Closed forms for epsilon = (0, d-1, d-1, d-1):
///   2g + 1 = (2d-1) mu^(1) + 6(d-1)
///   2n = (2d-1) mu^(2) + 4(d-1)(mu_1 + mu_2 + mu_3) + 6d - 7
GenusDegree closed_form_68(Int d, const Quad &mu);

enum class FamilyTheorem { T613, T614, T615, T616, T617, T618 };

std::string to_string(FamilyTheorem theorem);

/// Accepts "6.13" .. "6.18"; throws InvalidInvariants otherwise.
FamilyTheorem parse_family_theorem(const std::string &text);

struct FamilySpec
{
    FamilyTheorem theorem = FamilyTheorem::T613;
    Quad alpha{};
    bool at_half_period = false;  // 6.13 and 6.14 only
    std::optional<int> j0;        // 6.17 only
};

struct FamilyResult
{
    Int g = 0;
    Int n = 0;
    CaseLabel label;
    std::vector<Verdict> verdicts;  // genus-degree restrictions for the label
};

/// Genus and degree of the explicit NLS/Toda (6.13, 6.14) and sine-Gordon
/// (6.15 - 6.18) families, cross-checked against the genus-degree
/// restrictions for their placement.
/// Throws ParityViolation when the theorem's parity precondition fails and
/// InvalidInvariants for malformed specs (negative alpha, alpha = 0 for
/// 6.14, j0 missing or outside 1..3 for 6.17, flags given to the wrong
/// theorem).
FamilyResult family_params(const FamilySpec &spec);

} // namespace ellsol::invariants

#endif
