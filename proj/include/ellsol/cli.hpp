#ifndef ELLSOL_CLI_HPP
#define ELLSOL_CLI_HPP

#include "ellsol/elliptic.hpp"
#include "ellsol/picard.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace ellsol::cli
{

/// Runs one subcommand. `args` excludes the program name. Data goes to
/// `out`, diagnostics to `err`.
///
/// Returns 0 when every check passed, 1 when at least one verdict is
/// violated, 2 on usage or numeric errors.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

/// Parses "re", "imi", "re+imi" or "re-imi" (e.g. "0.5", "0.5i", "-i",
/// "1e-3+2i"). Throws std::invalid_argument on malformed input.
Complex parse_complex(const std::string &text);

/// Parses a comma-separated list of exactly `count` integers.
std::vector<picard::Int> parse_ints(const std::string &text, std::size_t count);

} // namespace ellsol::cli

#endif
