#ifndef ELLSOL_ERRORS_HPP
#define ELLSOL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ellsol
{

/// Base class for every error raised by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Evaluation point lies within the pole-exclusion radius of a lattice point.
class PoleProximity : public Error
{
public:
    using Error::Error;
};

/// A series could not be truncated within the requested precision.
class ConvergenceFailure : public Error
{
public:
    using Error::Error;
};

/// Degenerate or badly oriented period lattice.
class InvalidLattice : public Error
{
public:
    using Error::Error;
};

/// Numerical invariants outside the domain of an operation.
class InvalidInvariants : public Error
{
public:
    using Error::Error;
};

/// A congruence required by the operation does not hold.
class ParityViolation : public Error
{
public:
    using Error::Error;
};

} // namespace ellsol

#endif
