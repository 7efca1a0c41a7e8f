#ifndef COMPOSTER_ERRORS_HPP
#define COMPOSTER_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace composter {

// Bad argument values (negative radius, zero voltage, ...).
class InvalidInput : public std::invalid_argument {
public:
    explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

// Geometrically or mechanically impossible request (reduction < 1, belt
// asin argument out of range, pulley stage larger than the total).
class Infeasible : public std::runtime_error {
public:
    explicit Infeasible(const std::string& what) : std::runtime_error(what) {}
};

// Parameter extraction did not converge; carries the final residuals in
// the message.
class ExtractionFailure : public std::runtime_error {
public:
    explicit ExtractionFailure(const std::string& what) : std::runtime_error(what) {}
};

// Root finder ran out of iterations. Should be unreachable with a
// bracketed solver; treated as a defect when seen.
class NumericFailure : public std::runtime_error {
public:
    explicit NumericFailure(const std::string& what) : std::runtime_error(what) {}
};

// Configuration file problems: syntax, schema, invariant violations.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace composter

#endif
