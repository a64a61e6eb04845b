#include "report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace ellsol::cli
{

namespace
{

std::string scalar_text(const Json &v)
{
    if (v.is_string()) {
        return v.get<std::string>();
    }
    if (v.is_null()) {
        return "";
    }
    return v.dump();
}

/// Arrays of scalars become space-separated text; objects nest with dots.
void flatten(const Json &v, const std::string &prefix, std::vector<std::pair<std::string, std::string>> &out)
{
    if (v.is_object()) {
        for (const auto &[key, child] : v.items()) {
            flatten(child, prefix.empty() ? key : prefix + "." + key, out);
        }
        return;
    }
    if (v.is_array()) {
        bool scalars = true;
        for (const auto &child : v) {
            scalars = scalars && !child.is_structured();
        }
        if (scalars) {
            std::string joined;
            for (const auto &child : v) {
                joined += (joined.empty() ? "" : " ") + scalar_text(child);
            }
            out.emplace_back(prefix, joined);
            return;
        }
        for (std::size_t i = 0; i < v.size(); ++i) {
            flatten(v[i], prefix + "." + std::to_string(i), out);
        }
        return;
    }
    out.emplace_back(prefix, scalar_text(v));
}

std::string csv_field(const std::string &s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string quoted = "\"";
    for (char c : s) {
        quoted += c;
        if (c == '"') {
            quoted += '"';
        }
    }
    return quoted + "\"";
}

} // namespace

Json real_json(double x)
{
    if (!std::isfinite(x)) {
        return nullptr;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    double rounded = std::strtod(buf, nullptr);
    if (rounded == 0.0) {
        rounded = 0.0;
    }
    return rounded;
}

Json complex_json(Complex z)
{
    Json j = Json::object();
    j["re"] = real_json(z.real());
    j["im"] = real_json(z.imag());
    return j;
}

Json quad_json(const picard::Quad &q) { return Json::array({q[0], q[1], q[2], q[3]}); }

Json rational_json(const picard::Rational &q)
{
    if (q.denominator() == 1) {
        return q.numerator();
    }
    return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

ReportVerdict from_verdict(const invariants::Verdict &v) { return {v.clause, v.ok, v.lhs, v.rhs, v.informational}; }

bool Table::any_violation() const
{
    for (const Row &row : rows) {
        for (const ReportVerdict &v : row.verdicts) {
            if (!v.ok && !v.informational) {
                return true;
            }
        }
    }
    return false;
}

std::string Table::to_json() const
{
    Json doc = Json::array();
    for (const Row &row : rows) {
        Json r = Json::object();
        r["inputs"] = row.inputs;
        r["derived"] = row.derived;
        Json verdicts = Json::array();
        for (const ReportVerdict &v : row.verdicts) {
            Json jv = Json::object();
            jv["clause"] = v.clause;
            jv["ok"] = v.ok;
            jv["lhs"] = v.lhs;
            jv["rhs"] = v.rhs;
            verdicts.push_back(std::move(jv));
        }
        r["verdicts"] = std::move(verdicts);
        doc.push_back(std::move(r));
    }
    return doc.dump(2) + "\n";
}

std::string Table::to_csv() const
{
    std::vector<std::vector<std::pair<std::string, std::string>>> cells;
    std::vector<std::string> header;
    for (const Row &row : rows) {
        std::vector<std::pair<std::string, std::string>> flat;
        flatten(row.inputs, "inputs", flat);
        flatten(row.derived, "derived", flat);
        for (const auto &[key, value] : flat) {
            if (std::find(header.begin(), header.end(), key) == header.end()) {
                header.push_back(key);
            }
        }
        cells.push_back(std::move(flat));
    }

    std::ostringstream os;
    for (const std::string &h : header) {
        os << csv_field(h) << ",";
    }
    os << "violations,verdicts\n";
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (const std::string &h : header) {
            std::string value;
            for (const auto &[key, v] : cells[r]) {
                if (key == h) {
                    value = v;
                    break;
                }
            }
            os << csv_field(value) << ",";
        }
        int failed = 0;
        std::string joined;
        for (const ReportVerdict &v : rows[r].verdicts) {
            failed += (!v.ok && !v.informational) ? 1 : 0;
            if (!joined.empty()) {
                joined += ";";
            }
            joined += v.clause + "|" + (v.ok ? "true" : "false") + "|" + scalar_text(v.lhs) + "|" + scalar_text(v.rhs);
        }
        os << failed << "," << csv_field(joined) << "\n";
    }
    return os.str();
}

} // namespace ellsol::cli
