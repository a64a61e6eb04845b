#include "ellsol/cli.hpp"

#include "ellsol/errors.hpp"
#include "ellsol/invariants.hpp"
#include "ellsol/kdv.hpp"
#include "report.hpp"

#include <boost/algorithm/string/trim.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <array>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace ellsol::cli
{

namespace
{

using invariants::Verdict;
using picard::Int;
using picard::Placement;
using picard::Quad;

double parse_double(const std::string &text)
{
    if (text.empty()) {
        throw std::invalid_argument("empty number");
    }
    char *end = nullptr;
    const double value = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size() || !std::isfinite(value)) {
        throw std::invalid_argument("malformed number '" + text + "'");
    }
    return value;
}

Quad to_quad(const std::vector<Int> &v) { return {v[0], v[1], v[2], v[3]}; }

Placement parse_placement(const std::string &text)
{
    const std::size_t colon = text.find(':');
    const std::string kind = text.substr(0, colon);
    const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
    if (kind == "generic" && rest.empty()) {
        return Placement::distinct_generic();
    }
    if (kind == "same") {
        return Placement::same_projection(rest.empty() ? 0 : static_cast<int>(parse_ints(rest, 1)[0]));
    }
    if (kind == "half-periods") {
        const auto kj = parse_ints(rest, 2);
        return Placement::distinct_half_periods(static_cast<int>(kj[0]), static_cast<int>(kj[1]));
    }
    throw std::invalid_argument("placement must be 'same[:i]', 'generic' or 'half-periods:k,j'");
}

Json placement_json(const Placement &p)
{
    Json j = Json::object();
    j["kind"] = invariants::to_string(p.kind);
    if (p.kind == picard::PlacementKind::SameProjection) {
        j["half_period"] = p.first;
    } else if (p.kind == picard::PlacementKind::DistinctHalfPeriods) {
        j["half_periods"] = Json::array({p.first, p.second});
    }
    return j;
}

void add_verdicts(Row &row, const std::vector<Verdict> &verdicts)
{
    for (const Verdict &v : verdicts) {
        row.verdicts.push_back(from_verdict(v));
    }
}

ReportVerdict numeric_verdict(std::string clause, double lhs, double rhs)
{
    return {std::move(clause), lhs <= rhs, real_json(lhs), real_json(rhs), false};
}

Json lattice_inputs(const std::string &omega1, const std::string &omega2, double precision)
{
    Json j = Json::object();
    j["omega1"] = complex_json(parse_complex(omega1));
    j["omega2"] = complex_json(parse_complex(omega2));
    j["precision"] = real_json(precision);
    return j;
}

struct Output
{
    std::string format = "json";
    std::string path;
};

void add_output_options(CLI::App *sub, Output &o)
{
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    sub->add_option("--output", o.path, "Write to this file instead of stdout");
}

struct LatticeArgs
{
    std::string omega1;
    std::string omega2;
    double precision = elliptic::Lattice::precision_floor;
};

void add_lattice_options(CLI::App *sub, LatticeArgs &l)
{
    sub->add_option("--omega1", l.omega1, "Half-period omega1 as re+imi")->required();
    sub->add_option("--omega2", l.omega2, "Half-period omega2 as re+imi")->required();
    sub->add_option("--precision", l.precision, "Target absolute error (floor 1e-12)")->capture_default_str();
}

Table legendre_table(const LatticeArgs &l, const std::string &backend_name)
{
    const elliptic::Backend backend =
        backend_name == "theta" ? elliptic::Backend::Theta : elliptic::Backend::LatticeSum;
    const elliptic::Lattice lattice(parse_complex(l.omega1), parse_complex(l.omega2), l.precision);
    const elliptic::QuasiPeriods eta = elliptic::quasi_periods(lattice, backend);
    const double defect = elliptic::legendre_defect(lattice, eta);

    Row row;
    row.inputs = lattice_inputs(l.omega1, l.omega2, lattice.precision());
    row.inputs["backend"] = backend_name;
    row.derived["eta1"] = complex_json(eta.eta1);
    row.derived["eta2"] = complex_json(eta.eta2);
    row.derived["legendre_defect"] = real_json(defect);
    row.verdicts.push_back(numeric_verdict("Legendre relation", defect, 10.0 * lattice.precision()));
    return {{row}};
}

Table enumerate_table(Int n, Int d)
{
    Table t;
    for (const invariants::EnumeratedType &e : invariants::enumerate_types(n, d)) {
        Row row;
        row.inputs["n"] = n;
        row.inputs["d"] = d;
        row.derived["gamma"] = quad_json(e.gamma.values());
        row.derived["gamma1"] = e.gamma.sum();
        row.derived["gamma2"] = e.gamma.sum_of_squares();
        row.derived["g"] = e.g;
        row.derived["admissible"] = invariants::admissible(e.verdicts);
        add_verdicts(row, e.verdicts);
        t.rows.push_back(std::move(row));
    }
    return t;
}

struct CoverArgs
{
    Int n = 1, d = 1, g = 0, rho = 1, m = 1;
    std::string gamma;
    std::string family = "kdv";
    std::string placement;
};

Table check_cover_table(const CoverArgs &a)
{
    const invariants::TypeVector gamma(to_quad(parse_ints(a.gamma, 4)));
    Row row;
    row.inputs["case"] = a.family;
    row.inputs["n"] = a.n;
    row.inputs["g"] = a.g;
    row.inputs["gamma"] = quad_json(gamma.values());

    std::vector<Verdict> verdicts;
    if (a.family == "kdv") {
        if (!a.placement.empty()) {
            throw std::invalid_argument("--placement applies to --case nls and sg only");
        }
        row.inputs["d"] = a.d;
        row.inputs["rho"] = a.rho;
        row.inputs["m"] = a.m;
        verdicts = invariants::evaluate_kdv({a.n, a.d, a.g, a.rho, a.m, gamma});
    } else {
        if (a.placement.empty()) {
            throw std::invalid_argument("--case " + a.family + " requires --placement");
        }
        const Placement p = parse_placement(a.placement);
        row.inputs["placement"] = placement_json(p);
        verdicts = a.family == "nls" ? invariants::evaluate_nls_toda(a.n, a.g, gamma, p)
                                     : invariants::evaluate_sine_gordon(a.n, a.g, gamma, p);
    }
    row.derived["gamma1"] = gamma.sum();
    row.derived["gamma2"] = gamma.sum_of_squares();
    row.derived["admissible"] = invariants::admissible(verdicts);
    add_verdicts(row, verdicts);
    return {{row}};
}

Table construct_table(Int d, int k, const std::string &mu_text)
{
    const Quad mu = to_quad(parse_ints(mu_text, 4));
    const invariants::Construct68Result result = invariants::construct_types_68(d, k, mu);
    Quad reference{0, 2 * d - 2, 2 * d - 2, 2 * d - 2};

    Table t;
    for (const invariants::Construct68Row &r : result.rows) {
        Row row;
        row.inputs["d"] = d;
        row.inputs["k"] = k;
        row.inputs["mu"] = quad_json(mu);
        row.derived["gamma"] = quad_json(r.gamma.values());
        row.derived["two_epsilon"] = quad_json(r.two_epsilon);
        row.derived["pattern"] = r.pattern == invariants::Pattern68::Uniform ? "uniform" : "shifted";
        row.derived["n"] = r.n;
        row.derived["g"] = r.g;
        row.derived["dimension"] = result.dimension;
        add_verdicts(row, r.verdicts);
        if (r.pattern == invariants::Pattern68::Uniform && r.two_epsilon == reference) {
            const invariants::GenusDegree closed = invariants::closed_form_68(d, mu);
            row.verdicts.push_back({"6.8 closed form g", r.g == closed.g, r.g, closed.g, false});
            row.verdicts.push_back({"6.8 closed form n", r.n == closed.n, r.n, closed.n, false});
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table family_table(const std::string &theorem, const std::string &alpha, bool at_half_period, const CLI::Option *j0_opt,
                   int j0)
{
    invariants::FamilySpec spec;
    spec.theorem = invariants::parse_family_theorem(theorem);
    spec.alpha = to_quad(parse_ints(alpha, 4));
    spec.at_half_period = at_half_period;
    if (j0_opt->count() > 0) {
        spec.j0 = j0;
    }
    const invariants::FamilyResult r = invariants::family_params(spec);

    Row row;
    row.inputs["theorem"] = theorem;
    row.inputs["alpha"] = quad_json(spec.alpha);
    row.inputs["at_half_period"] = at_half_period;
    if (spec.j0) {
        row.inputs["j0"] = *spec.j0;
    }
    row.derived["g"] = r.g;
    row.derived["n"] = r.n;
    row.derived["case"] = invariants::to_string(r.label.family);
    row.derived["placement"] = placement_json(r.label.placement);
    add_verdicts(row, r.verdicts);
    return {{row}};
}

Table picard_table(const std::string &text)
{
    const auto v = parse_ints(text, 10);
    std::array<Int, 10> coeffs{};
    std::copy(v.begin(), v.end(), coeffs.begin());
    const picard::DivisorClass d = picard::DivisorClass::from_array(coeffs);

    Row row;
    row.inputs["class"] = Json(coeffs);
    const Int dd = picard::intersect(d, d);
    const Int dk = picard::intersect(d, picard::canonical_class());
    const Int dk2 = picard::intersect(d, picard::quotient_canonical_pullback());
    row.derived["self_intersection"] = dd;
    row.derived["canonical_pairing"] = dk;
    row.derived["quotient_canonical_pairing"] = dk2;
    row.derived["adjunction_genus"] = rational_json(picard::adjunction_genus(d));
    const bool parity_ok = dd % 2 == 0 && dk2 % 2 == 0;
    row.derived["tilde_genus"] = parity_ok ? rational_json(picard::tilde_genus(d)) : Json(nullptr);
    row.derived["exceptional_first_kind"] = picard::is_exceptional_first_kind(d);
    row.verdicts.push_back({"pullback parity", parity_ok, dd % 2 == 0 ? 0 : 1, dk2 % 2 == 0 ? 0 : 1, true});
    return {{row}};
}

struct KdvArgs
{
    std::string lambda = "1";
    std::string shift = "0";
    std::string grid = "200,20";
    int order = kdv::default_order;
    double step = kdv::default_relative_step;
    double tolerance = 1e-6;
};

Table verify_kdv_table(const LatticeArgs &l, const KdvArgs &k)
{
    const elliptic::Lattice lattice(parse_complex(l.omega1), parse_complex(l.omega2), l.precision);
    const auto counts = parse_ints(k.grid, 2);
    if (counts[0] < 1 || counts[1] < 1 || counts[0] > 100000 || counts[1] > 100000) {
        throw std::invalid_argument("grid counts must lie in 1..100000");
    }
    if (k.order < 2 || k.order % 2 != 0 || k.order > 20) {
        throw std::invalid_argument("--order must be even and in 2..20");
    }
    if (!(k.step > 0.0 && k.step < 0.1)) {
        throw std::invalid_argument("--step must lie in (0, 0.1)");
    }
    const kdv::TravelingWave wave = kdv::TravelingWave::exact(lattice, parse_complex(k.lambda), parse_complex(k.shift));
    const kdv::Grid grid =
        kdv::default_grid(wave, static_cast<int>(counts[0]), static_cast<int>(counts[1]), k.order, k.step);

    const double fd = kdv::kdv_residual(wave, grid, kdv::TimeDerivative::FiniteDifference);
    const double chain = kdv::kdv_residual(wave, grid, kdv::TimeDerivative::ChainRule);
    const double periodic = kdv::periodicity_check(wave, grid);

    Row row;
    row.inputs = lattice_inputs(l.omega1, l.omega2, lattice.precision());
    row.inputs["lambda"] = complex_json(wave.level);
    row.inputs["shift"] = complex_json(wave.shift);
    row.inputs["grid"] = Json::array({counts[0], counts[1]});
    row.inputs["order"] = k.order;
    row.inputs["step"] = real_json(k.step);
    row.derived["speed"] = complex_json(wave.speed);
    row.derived["residual_finite_difference"] = real_json(fd);
    row.derived["residual_chain_rule"] = real_json(chain);
    row.derived["periodicity"] = real_json(periodic);
    row.verdicts.push_back(numeric_verdict("KdV residual (finite difference)", fd, k.tolerance));
    row.verdicts.push_back(numeric_verdict("KdV residual (chain rule)", chain, k.tolerance));
    row.verdicts.push_back(numeric_verdict("periodicity", periodic, 10.0 * lattice.precision()));

    // fixed sample points, in coordinates of the user basis
    const std::array<std::array<double, 2>, 4> samples{{{0.25, 0.25}, {0.1, 0.4}, {0.45, -0.3}, {-0.2, 0.15}}};
    Json mono = Json::array();
    for (int j = 1; j <= 2; ++j) {
        for (int kk = 1; kk <= 2; ++kk) {
            double worst = 0.0;
            for (const auto &s : samples) {
                const Complex z = s[0] * lattice.period1() + s[1] * lattice.period2();
                worst = std::max(worst, kdv::monodromy_defect(lattice, j, kk, z));
            }
            Json m = Json::object();
            m["j"] = j;
            m["k"] = kk;
            m["defect"] = real_json(worst);
            mono.push_back(m);
            row.verdicts.push_back(numeric_verdict("monodromy j=" + std::to_string(j) + " k=" + std::to_string(kk),
                                                   worst, 1e-8));
        }
    }
    row.derived["monodromy"] = std::move(mono);
    return {{row}};
}

std::string error_kind(const Error &e)
{
    if (dynamic_cast<const PoleProximity *>(&e)) {
        return "PoleProximity";
    }
    if (dynamic_cast<const ConvergenceFailure *>(&e)) {
        return "ConvergenceFailure";
    }
    if (dynamic_cast<const InvalidLattice *>(&e)) {
        return "InvalidLattice";
    }
    if (dynamic_cast<const InvalidInvariants *>(&e)) {
        return "InvalidInvariants";
    }
    if (dynamic_cast<const ParityViolation *>(&e)) {
        return "ParityViolation";
    }
    return "Error";
}

} // namespace

Complex parse_complex(const std::string &raw)
{
    std::string text;
    for (char c : raw) {
        if (c != ' ') {
            text += c;
        }
    }
    if (text.empty()) {
        throw std::invalid_argument("empty complex number");
    }
    if (text.back() != 'i') {
        return {parse_double(text), 0.0};
    }
    const std::string body = text.substr(0, text.size() - 1);
    // split at the last sign that is not the leading one or part of an exponent
    std::size_t split = std::string::npos;
    for (std::size_t p = body.size(); p-- > 1;) {
        if ((body[p] == '+' || body[p] == '-') && body[p - 1] != 'e' && body[p - 1] != 'E') {
            split = p;
            break;
        }
    }
    const std::string re_text = split == std::string::npos ? "" : body.substr(0, split);
    std::string im_text = split == std::string::npos ? body : body.substr(split);
    if (im_text.empty() || im_text == "+") {
        im_text = "1";
    } else if (im_text == "-") {
        im_text = "-1";
    }
    return {re_text.empty() ? 0.0 : parse_double(re_text), parse_double(im_text)};
}

std::vector<Int> parse_ints(const std::string &text, std::size_t count)
{
    std::vector<Int> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = text.find(',', start);
        const std::string item =
            boost::algorithm::trim_copy(text.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
        if (item.empty()) {
            throw std::invalid_argument("malformed integer list '" + text + "'");
        }
        char *end = nullptr;
        errno = 0;
        const long long value = std::strtoll(item.c_str(), &end, 10);
        if (end != item.c_str() + item.size() || errno == ERANGE) {
            throw std::invalid_argument("malformed integer '" + item + "'");
        }
        out.push_back(value);
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    if (out.size() != count) {
        throw std::invalid_argument("expected " + std::to_string(count) + " comma-separated integers, got '" + text +
                                    "'");
    }
    return out;
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Invariants of hyperelliptic covers of an elliptic curve and genus-one KdV checks", "ellsol"};
    app.require_subcommand(1);

    Output o;
    LatticeArgs lat;

    std::string backend = "sum";
    CLI::App *legendre = app.add_subcommand("legendre", "Quasi-periods and Legendre defect of a lattice");
    add_lattice_options(legendre, lat);
    legendre->add_option("--backend", backend, "Evaluation backend")
        ->check(CLI::IsMember({"sum", "theta"}))
        ->capture_default_str();
    add_output_options(legendre, o);

    Int n = 1, d = 1;
    CLI::App *enumerate = app.add_subcommand("enumerate-types", "All KdV types with rho = m = 1 for given n, d");
    enumerate->add_option("--n", n, "Degree")->required();
    enumerate->add_option("--d", d, "Osculating order")->required();
    add_output_options(enumerate, o);

    CoverArgs cover;
    CLI::App *check = app.add_subcommand("check-cover", "Verdicts for claimed cover invariants");
    check->add_option("--n", cover.n, "Degree")->required();
    check->add_option("--d", cover.d, "Osculating order (kdv)")->capture_default_str();
    check->add_option("--g", cover.g, "Arithmetic genus")->required();
    check->add_option("--rho", cover.rho, "Ramification index at the marked point (kdv)")->capture_default_str();
    check->add_option("--m", cover.m, "Degree onto the image (kdv)")->capture_default_str();
    check->add_option("--gamma", cover.gamma, "Type vector a,b,c,d")->required();
    check->add_option("--case", cover.family, "Cover family")
        ->check(CLI::IsMember({"kdv", "nls", "sg"}))
        ->capture_default_str();
    check->add_option("--placement", cover.placement, "same[:i] | generic | half-periods:k,j (nls, sg)");
    add_output_options(check, o);

    Int c_d = 2;
    int c_k = 0;
    std::string mu;
    CLI::App *construct = app.add_subcommand("construct-68", "Types gamma = (2d-1) mu + 2 epsilon and their (n, g)");
    construct->add_option("--d", c_d, "Osculating order, at least 2")->required();
    construct->add_option("--k", c_k, "Distinguished index 0..3")->required();
    construct->add_option("--mu", mu, "mu as a,b,c,d")->required();
    add_output_options(construct, o);

    std::string theorem, alpha;
    bool at_half = false;
    int j0 = 0;
    CLI::App *family = app.add_subcommand("family", "Genus and degree of an explicit NLS/Toda or sine-Gordon family");
    family->add_option("--theorem", theorem, "6.13 .. 6.18")->required();
    family->add_option("--alpha", alpha, "alpha as a,b,c,d")->required();
    family->add_flag("--at-half-period", at_half, "Marked point projects to a half-period (6.13, 6.14)");
    CLI::Option *j0_opt = family->add_option("--j0", j0, "Index j0 in 1..3 (6.17)");
    add_output_options(family, o);

    std::string class_text;
    CLI::App *picard_cmd = app.add_subcommand("picard-genus", "Intersection numbers and genera of a divisor class");
    picard_cmd->add_option("--class", class_text, "a,b,s0,s1,s2,s3,r0,r1,r2,r3")->required();
    add_output_options(picard_cmd, o);

    KdvArgs kargs;
    LatticeArgs kl;
    CLI::App *verify = app.add_subcommand("verify-kdv", "Residual, periodicity and monodromy checks of the elliptic wave");
    add_lattice_options(verify, kl);
    verify->add_option("--lambda", kargs.lambda, "Level lambda as re+imi")->capture_default_str();
    verify->add_option("--shift", kargs.shift, "Phase shift x0 as re+imi")->capture_default_str();
    verify->add_option("--grid", kargs.grid, "Sample counts NX,NT")->capture_default_str();
    verify->add_option("--order", kargs.order, "Stencil accuracy order (even)")->capture_default_str();
    verify->add_option("--step", kargs.step, "Stencil step relative to the shortest period")->capture_default_str();
    verify->add_option("--tolerance", kargs.tolerance, "Residual tolerance")->capture_default_str();
    add_output_options(verify, o);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError &e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }
    Table table;
    try {
        if (*legendre) {
            table = legendre_table(lat, backend);
        } else if (*enumerate) {
            table = enumerate_table(n, d);
        } else if (*check) {
            table = check_cover_table(cover);
        } else if (*construct) {
            table = construct_table(c_d, c_k, mu);
        } else if (*family) {
            table = family_table(theorem, alpha, at_half, j0_opt, j0);
        } else if (*picard_cmd) {
            table = picard_table(class_text);
        } else if (*verify) {
            table = verify_kdv_table(kl, kargs);
        }
    } catch (const Error &e) {
        err << error_kind(e) << ": " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument &e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    const std::string text = o.format == "csv" ? table.to_csv() : table.to_json();
    if (o.path.empty()) {
        out << text;
    } else {
        std::ofstream file(o.path, std::ios::binary);
        if (!file || !(file << text)) {
            err << "error: cannot write " << o.path << "\n";
            return 2;
        }
    }
    return table.any_violation() ? 1 : 0;
}

} // namespace ellsol::cli
