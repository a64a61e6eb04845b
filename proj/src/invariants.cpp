#include "ellsol/invariants.hpp"

#include "ellsol/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <tuple>

namespace ellsol::invariants
{

namespace
{

bool is_even(Int x) { return x % 2 == 0; }

Int parity(Int x) { return is_even(x) ? 0 : 1; }

void require_in_range(Int x, const char *name)
{
    if (x > magnitude_limit || x < -magnitude_limit) {
        throw InvalidInvariants(std::string(name) + " is out of the supported range");
    }
}

Int isqrt(Int x)
{
    if (x < 0) {
        return -1;
    }
    Int r = static_cast<Int>(std::sqrt(static_cast<double>(x)));
    while (r * r > x) {
        --r;
    }
    while ((r + 1) * (r + 1) <= x) {
        ++r;
    }
    return r;
}

Verdict less_equal(std::string clause, Int lhs, Int rhs)
{
    return {std::move(clause), lhs <= rhs, lhs, rhs, "<=", false};
}

Verdict equal(std::string clause, Int lhs, Int rhs)
{
    return {std::move(clause), lhs == rhs, lhs, rhs, "==", false};
}

Int parity_mismatches(Int n, const Placement &placement, const TypeVector &gamma)
{
    Int count = 0;
    for (int i = 0; i < 4; ++i) {
        Int expected = n;
        if (placement.kind == PlacementKind::DistinctHalfPeriods && (i == placement.first || i == placement.second)) {
            expected += 1;
        }
        if (!is_even(gamma[i] - expected)) {
            ++count;
        }
    }
    return count;
}

bool same_projection(const Placement &placement) { return placement.kind == PlacementKind::SameProjection; }

/// Genus-only restrictions for NLS/Toda (offset 1: bounds on (g+1)^2) and
/// sine-Gordon (offset 0: bounds on g^2), selected by placement and parity of n.
std::vector<Verdict> genus_verdicts(CaseFamily family, Int n, Int g, const Placement &placement)
{
    const bool nls = family == CaseFamily::NlsToda;
    const Int lhs = nls ? (g + 1) * (g + 1) : g * g;
    const std::string theorem = nls ? "5.7" : "5.8";
    const std::string prop = nls ? "6.11" : "6.12";
    std::vector<Verdict> out;
    if (!same_projection(placement)) {
        out.push_back(less_equal(theorem + "(2) genus", lhs, 4 * n));
        if (nls) {
            out.push_back(less_equal(prop + "(3)", lhs, 4 * n));
        } else {
            Verdict v = less_equal(prop + "(3) [informational]", lhs, 4 * n - 2);
            v.informational = true;
            out.push_back(v);
        }
    } else if (is_even(n)) {
        out.push_back(less_equal(theorem + "(3) genus", lhs, 4 * n - 4));
        out.push_back(less_equal(prop + "(1)", lhs, 4 * n - 4));
    } else {
        out.push_back(less_equal(theorem + "(4) genus", lhs, 4 * n - 8));
        out.push_back(less_equal(prop + "(2)", lhs, 4 * n - 8));
    }
    return out;
}

/// gamma^(2) bound for NLS/Toda and sine-Gordon; same constants for both.
Verdict type_bound_verdict(CaseFamily family, Int n, const TypeVector &gamma, const Placement &placement)
{
    const std::string theorem = family == CaseFamily::NlsToda ? "5.7" : "5.8";
    if (!same_projection(placement)) {
        return less_equal(theorem + "(2)", gamma.sum_of_squares(), 4 * n);
    }
    if (is_even(n)) {
        return less_equal(theorem + "(3)", gamma.sum_of_squares(), 4 * n - 4);
    }
    return less_equal(theorem + "(4)", gamma.sum_of_squares(), 4 * n - 8);
}

std::vector<Verdict> evaluate_two_point(CaseFamily family, Int n, Int g, const TypeVector &gamma,
                                        const Placement &placement)
{
    require_in_range(n, "n");
    require_in_range(g, "g");
    picard::validate(placement);

    std::vector<Verdict> out;
    const Int bad = (n < 1 ? 1 : 0) + (g < 0 ? 1 : 0);
    out.push_back(equal("domain", bad, 0));
    if (bad != 0) {
        return out;
    }

    const bool nls = family == CaseFamily::NlsToda;
    const bool placement_ok = nls ? placement.kind != PlacementKind::DistinctHalfPeriods
                                  : placement.kind != PlacementKind::DistinctGeneric;
    out.push_back(equal("5.6 placement", placement_ok ? 1 : 0, 1));

    if (nls) {
        out.push_back(equal("5.7 parity", parity_mismatches(n, Placement::distinct_generic(), gamma), 0));
        out.push_back(less_equal("5.7(1)", 2 * g + 2, gamma.sum()));
    } else {
        out.push_back(equal("5.6 parity", parity_mismatches(n, placement, gamma), 0));
        out.push_back(less_equal("5.8(1)", 2 * g, gamma.sum()));
    }
    out.push_back(type_bound_verdict(family, n, gamma, placement));
    for (Verdict &v : genus_verdicts(family, n, g, placement)) {
        out.push_back(std::move(v));
    }
    return out;
}

unsigned resolve_threads(unsigned requested)
{
    if (requested > 0) {
        return requested;
    }
    if (const char *env = std::getenv("ELLSOL_THREADS")) {
        char *end = nullptr;
        const long value = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || value < 1 || value > 1024) {
            throw Error("ELLSOL_THREADS must be a positive integer");
        }
        return static_cast<unsigned>(value);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// All gamma with gamma_0 fixed, in lexicographic order of the tail.
std::vector<Quad> enumerate_slice(Int g0, Int target, Int n)
{
    std::vector<Quad> out;
    const Int rest0 = target - g0 * g0;
    const Int p = parity(n);
    for (Int g1 = p; g1 * g1 <= rest0; g1 += 2) {
        const Int rest1 = rest0 - g1 * g1;
        for (Int g2 = p; g2 * g2 <= rest1; g2 += 2) {
            const Int rest2 = rest1 - g2 * g2;
            const Int g3 = isqrt(rest2);
            if (g3 * g3 == rest2 && parity(g3) == p) {
                out.push_back({g0, g1, g2, g3});
            }
        }
    }
    return out;
}

} // namespace

TypeVector::TypeVector(const Quad &values) : v_(values)
{
    for (Int x : v_) {
        if (x < 0) {
            throw InvalidInvariants("type vector entries must be non-negative");
        }
        require_in_range(x, "type vector entry");
    }
}

Int TypeVector::sum() const { return v_[0] + v_[1] + v_[2] + v_[3]; }

Int TypeVector::sum_of_squares() const { return v_[0] * v_[0] + v_[1] * v_[1] + v_[2] * v_[2] + v_[3] * v_[3]; }

CaseLabel CaseLabel::kdv(Int d) { return {CaseFamily::KdV, d, Placement{}}; }

CaseLabel CaseLabel::nls_toda(const Placement &placement) { return {CaseFamily::NlsToda, 1, placement}; }

CaseLabel CaseLabel::sine_gordon(const Placement &placement) { return {CaseFamily::SineGordon, 1, placement}; }

std::string to_string(CaseFamily family)
{
    switch (family) {
    case CaseFamily::KdV:
        return "kdv";
    case CaseFamily::NlsToda:
        return "nls";
    case CaseFamily::SineGordon:
        return "sg";
    }
    return "?";
}

std::string to_string(PlacementKind kind)
{
    switch (kind) {
    case PlacementKind::SameProjection:
        return "same";
    case PlacementKind::DistinctGeneric:
        return "generic";
    case PlacementKind::DistinctHalfPeriods:
        return "half-periods";
    }
    return "?";
}

std::vector<Verdict> violations(const std::vector<Verdict> &verdicts)
{
    std::vector<Verdict> out;
    std::copy_if(verdicts.begin(), verdicts.end(), std::back_inserter(out),
                 [](const Verdict &v) { return !v.ok && !v.informational; });
    return out;
}

bool admissible(const std::vector<Verdict> &verdicts) { return violations(verdicts).empty(); }

std::vector<Verdict> evaluate_kdv(const CoverInvariants &inv)
{
    for (Int x : {inv.n, inv.d, inv.g, inv.rho, inv.m}) {
        require_in_range(x, "cover invariant");
    }
    const Int n = inv.n, d = inv.d, g = inv.g, rho = inv.rho, m = inv.m;
    const TypeVector &gamma = inv.gamma;

    std::vector<Verdict> out;
    const Int bad = (n < 1) + (d < 1) + (g < 0) + (rho < 1) + (m < 1);
    out.push_back(equal("domain", bad, 0));
    if (bad != 0) {
        return out;
    }

    const Int w = 2 * d - 1;
    out.push_back(equal("5.4(3) odd", parity(rho), 1));
    out.push_back(less_equal("5.4(3) bound", rho, w));

    Int common = std::gcd(std::gcd(n, w), rho);
    for (int i = 0; i < 4; ++i) {
        common = std::gcd(common, gamma[i]);
    }
    out.push_back({"5.4(4) divisibility", common % m == 0, m, common, "divides", false});

    Int mismatches = is_even(gamma[0] + 1 - n) ? 0 : 1;
    for (int j = 1; j < 4; ++j) {
        mismatches += is_even(gamma[j] - n) ? 0 : 1;
    }
    out.push_back(equal("5.4(5) parity", mismatches, 0));

    const Int lhs1 = 2 * g + 1;
    out.push_back(less_equal("5.5(1)", lhs1, gamma.sum()));
    if (rho == 1) {
        out.push_back(equal("5.5(2)", m, 1));
    }
    out.push_back(less_equal("5.5(3)", gamma.sum_of_squares(), 2 * w * (n - m) + 4 * m * m - rho * rho));
    out.push_back(less_equal("5.5(4)", lhs1 * lhs1, 8 * w * (n - m) + 13 * m * m - 4 * rho * rho));
    out.push_back(less_equal("5.5(4b)", lhs1 * lhs1, 8 * w * n + w * w));
    if (rho == 1) {
        out.push_back(less_equal("5.5(5)", lhs1 * lhs1, 8 * w * (n - 1) + 9));
    }
    return out;
}

std::vector<Verdict> check_kdv(const CoverInvariants &inv) { return violations(evaluate_kdv(inv)); }

std::vector<Verdict> evaluate_nls_toda(Int n, Int g, const TypeVector &gamma, const Placement &placement)
{
    return evaluate_two_point(CaseFamily::NlsToda, n, g, gamma, placement);
}

std::vector<Verdict> check_nls_toda(Int n, Int g, const TypeVector &gamma, const Placement &placement)
{
    return violations(evaluate_nls_toda(n, g, gamma, placement));
}

std::vector<Verdict> evaluate_sine_gordon(Int n, Int g, const TypeVector &gamma, const Placement &placement)
{
    return evaluate_two_point(CaseFamily::SineGordon, n, g, gamma, placement);
}

std::vector<Verdict> check_sine_gordon(Int n, Int g, const TypeVector &gamma, const Placement &placement)
{
    return violations(evaluate_sine_gordon(n, g, gamma, placement));
}

Int type_target(Int n, Int d) { return (2 * d - 1) * (2 * n - 2) + 3; }

std::vector<EnumeratedType> enumerate_types(Int n, Int d, unsigned threads)
{
    require_in_range(n, "n");
    require_in_range(d, "d");
    if (n < 1 || d < 1) {
        throw InvalidInvariants("enumeration needs n >= 1 and d >= 1");
    }
    const Int target = type_target(n, d);
    const Int bound = isqrt(target);

    std::vector<Int> heads;
    for (Int g0 = parity(n + 1); g0 <= bound; g0 += 2) {
        heads.push_back(g0);
    }
    std::vector<std::vector<Quad>> slices(heads.size());

    const unsigned workers = std::min<unsigned>(resolve_threads(threads), std::max<std::size_t>(1, heads.size()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < heads.size(); ++i) {
            slices[i] = enumerate_slice(heads[i], target, n);
        }
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < heads.size(); i += workers) {
                    slices[i] = enumerate_slice(heads[i], target, n);
                }
            });
        }
        for (std::thread &t : pool) {
            t.join();
        }
    }

    std::vector<EnumeratedType> out;
    for (const auto &slice : slices) {
        for (const Quad &q : slice) {
            EnumeratedType e;
            e.gamma = TypeVector(q);
            e.g = (e.gamma.sum() - 1) / 2;
            e.verdicts = evaluate_kdv({n, d, e.g, 1, 1, e.gamma});
            out.push_back(std::move(e));
        }
    }
    return out;
}

Construct68Result construct_types_68(Int d, int k, const Quad &mu)
{
    require_in_range(d, "d");
    if (d < 2) {
        throw InvalidInvariants("construction needs d >= 2");
    }
    if (k < 0 || k > 3) {
        throw InvalidInvariants("distinguished index k must lie in 0..3");
    }
    for (Int x : mu) {
        if (x < 0) {
            throw InvalidInvariants("mu must have non-negative entries");
        }
        require_in_range(x, "mu entry");
    }
    for (int j = 1; j < 4; ++j) {
        if (!is_even(mu[0] + 1 - mu[j])) {
            throw ParityViolation("mu must satisfy mu_0 + 1 = mu_j (mod 2)");
        }
    }

    const Int w = 2 * d - 1;
    Quad uniform{}, shifted{};
    for (int i = 0; i < 4; ++i) {
        const bool at_k = i == k;
        uniform[i] = at_k ? 0 : 2 * d - 2;
        if (is_even(d)) {
            shifted[i] = at_k ? d - 2 : d;
        } else {
            shifted[i] = at_k ? d + 1 : d - 1;
        }
    }

    std::vector<std::tuple<Quad, Pattern68, Quad>> candidates;
    for (Pattern68 pattern : {Pattern68::Uniform, Pattern68::Shifted}) {
        const Quad &magnitude = pattern == Pattern68::Uniform ? uniform : shifted;
        for (int signs = 0; signs < 16; ++signs) {
            Quad two_eps{}, gamma{};
            bool non_negative = true;
            for (int i = 0; i < 4; ++i) {
                two_eps[i] = (signs >> i) & 1 ? -magnitude[i] : magnitude[i];
                gamma[i] = w * mu[i] + two_eps[i];
                non_negative = non_negative && gamma[i] >= 0;
            }
            if (non_negative) {
                candidates.emplace_back(gamma, pattern, two_eps);
            }
        }
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end(),
                                 [](const auto &x, const auto &y) { return std::get<0>(x) == std::get<0>(y); }),
                     candidates.end());

    Construct68Result result;
    result.dimension = d - 1;
    for (const auto &[gamma_values, pattern, two_eps] : candidates) {
        Construct68Row row;
        row.gamma = TypeVector(gamma_values);
        row.two_epsilon = two_eps;
        row.pattern = pattern;
        const Int excess = row.gamma.sum_of_squares() - 3;
        if (excess % w != 0 || !is_even(excess / w) || !is_even(row.gamma.sum() - 1)) {
            throw std::logic_error("generated type vector does not fit the degree formula");
        }
        row.n = excess / w / 2 + 1;
        row.g = (row.gamma.sum() - 1) / 2;
        row.verdicts = evaluate_kdv({row.n, d, row.g, 1, 1, row.gamma});
        result.rows.push_back(std::move(row));
    }
    return result;
}

GenusDegree closed_form_68(Int d, const Quad &mu)
{
    const Int w = 2 * d - 1;
    const Int s1 = mu[0] + mu[1] + mu[2] + mu[3];
    const Int s2 = mu[0] * mu[0] + mu[1] * mu[1] + mu[2] * mu[2] + mu[3] * mu[3];
    const Int two_g_plus_one = w * s1 + 6 * (d - 1);
    const Int two_n = w * s2 + 4 * (d - 1) * (mu[1] + mu[2] + mu[3]) + 6 * d - 7;
    return {(two_g_plus_one - 1) / 2, two_n / 2};
}

std::string to_string(FamilyTheorem theorem)
{
    switch (theorem) {
    case FamilyTheorem::T613:
        return "6.13";
    case FamilyTheorem::T614:
        return "6.14";
    case FamilyTheorem::T615:
        return "6.15";
    case FamilyTheorem::T616:
        return "6.16";
    case FamilyTheorem::T617:
        return "6.17";
    case FamilyTheorem::T618:
        return "6.18";
    }
    return "?";
}

FamilyTheorem parse_family_theorem(const std::string &text)
{
    for (FamilyTheorem t : {FamilyTheorem::T613, FamilyTheorem::T614, FamilyTheorem::T615, FamilyTheorem::T616,
                            FamilyTheorem::T617, FamilyTheorem::T618}) {
        if (to_string(t) == text) {
            return t;
        }
    }
    throw InvalidInvariants("unknown family theorem '" + text + "' (expected 6.13 .. 6.18)");
}

FamilyResult family_params(const FamilySpec &spec)
{
    const Quad &a = spec.alpha;
    for (Int x : a) {
        if (x < 0) {
            throw InvalidInvariants("alpha must have non-negative entries");
        }
        require_in_range(x, "alpha entry");
    }
    const bool nls = spec.theorem == FamilyTheorem::T613 || spec.theorem == FamilyTheorem::T614;
    if (spec.at_half_period && !nls) {
        throw InvalidInvariants("the half-period flag applies to 6.13 and 6.14 only");
    }
    if (spec.j0 && spec.theorem != FamilyTheorem::T617) {
        throw InvalidInvariants("j0 applies to 6.17 only");
    }

    const Int s1 = a[0] + a[1] + a[2] + a[3];
    const Int s2 = a[0] * a[0] + a[1] * a[1] + a[2] * a[2] + a[3] * a[3];

    FamilyResult r;
    switch (spec.theorem) {
    case FamilyTheorem::T613:
        r.g = s1 + 1;
        r.n = s2 + s1 + (spec.at_half_period ? 3 : 1);
        break;
    case FamilyTheorem::T614:
        if (s1 == 0) {
            throw InvalidInvariants("6.14 needs alpha != 0");
        }
        if (is_even(s1) == spec.at_half_period) {
            throw ParityViolation("6.14 needs alpha^(1) even off the half-periods, odd on them");
        }
        r.g = s1 - 1;
        r.n = s2 + (spec.at_half_period ? 1 : 0);
        break;
    case FamilyTheorem::T615:
        if (is_even(a[2] + a[3])) {
            throw ParityViolation("6.15 needs alpha_2 + alpha_3 odd");
        }
        r.g = s1 + 1;
        r.n = s2 + a[0] + a[1] + 1;
        break;
    case FamilyTheorem::T616:
        if (!is_even(a[0] + a[1])) {
            throw ParityViolation("6.16 needs alpha_0 + alpha_1 even");
        }
        r.g = s1 + 1;
        r.n = s2 + a[2] + a[3] + 1;
        break;
    case FamilyTheorem::T617: {
        if (!spec.j0 || *spec.j0 < 1 || *spec.j0 > 3) {
            throw InvalidInvariants("6.17 needs j0 in 1..3");
        }
        const int j0 = *spec.j0;
        for (int i = 0; i < 4; ++i) {
            if (i != j0 && !is_even(a[j0] + 1 - a[i])) {
                throw ParityViolation("6.17 needs alpha_j0 + 1 = alpha_i (mod 2) for i != j0");
            }
        }
        r.g = s1;
        r.n = s2 + 1;
        break;
    }
    case FamilyTheorem::T618:
        r.g = s1 + 2;
        r.n = s2 + s1 + 3;
        break;
    }

    switch (spec.theorem) {
    case FamilyTheorem::T613:
    case FamilyTheorem::T614:
        r.label = CaseLabel::nls_toda(spec.at_half_period ? Placement::same_projection(0)
                                                          : Placement::distinct_generic());
        break;
    case FamilyTheorem::T615:
    case FamilyTheorem::T616:
        r.label = CaseLabel::sine_gordon(Placement::distinct_half_periods(0, 1));
        break;
    case FamilyTheorem::T617:
    case FamilyTheorem::T618:
        r.label = CaseLabel::sine_gordon(Placement::same_projection(0));
        break;
    }
    r.verdicts = genus_verdicts(r.label.family, r.n, r.g, r.label.placement);
    return r;
}

} // namespace ellsol::invariants
