#ifndef ELLSOL_CLI_REPORT_HPP
#define ELLSOL_CLI_REPORT_HPP

#include "ellsol/elliptic.hpp"
#include "ellsol/invariants.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace ellsol::cli
{

using Json = nlohmann::ordered_json;

/// x rounded to 12 significant digits; -0 becomes 0, non-finite becomes null.
Json real_json(double x);
Json complex_json(Complex z);
Json quad_json(const picard::Quad &q);
Json rational_json(const picard::Rational &q);

struct ReportVerdict
{
    std::string clause;
    bool ok = true;
    Json lhs;
    Json rhs;
    bool informational = false;
};

ReportVerdict from_verdict(const invariants::Verdict &v);

struct Row
{
    Json inputs = Json::object();
    Json derived = Json::object();
    std::vector<ReportVerdict> verdicts;
};

struct Table
{
    std::vector<Row> rows;

    bool any_violation() const;

    /// Array of {inputs, derived, verdicts: [{clause, ok, lhs, rhs}]}.
    std::string to_json() const;

    /// One line per row: flattened inputs.* and derived.* columns, then the
    /// violation count and the verdicts as "clause|ok|lhs|rhs" joined by ';'.
    std::string to_csv() const;
};

} // namespace ellsol::cli

#endif
