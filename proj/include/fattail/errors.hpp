#pragma once

#include <stdexcept>
#include <string>

namespace fattail {

// Base class for all library errors so callers can catch the whole family.
class error : public std::runtime_error {
public:
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// A caller-supplied argument violates a precondition (bad scale, bad weight,
// malformed scenario line, ...). CLI maps this to exit code 2.
class invalid_parameter : public error {
public:
    explicit invalid_parameter(const std::string& msg) : error(msg) {}
};

// A requested moment does not exist for the distribution (e.g. Student-T
// kurtosis with tail exponent <= 4).
class moment_undefined : public error {
public:
    explicit moment_undefined(const std::string& msg) : error(msg) {}
};

// A numeric routine failed to converge within its budget. CLI maps this to
// exit code 3.
class numeric_failure : public error {
public:
    explicit numeric_failure(const std::string& msg) : error(msg) {}
};

// An expected mathematical structure was not found (fewer than four
// crossover sign changes, degenerate solve, broken ordering).
class structure_not_found : public error {
public:
    explicit structure_not_found(const std::string& msg) : error(msg) {}
};

// The backspread credit rule cannot be satisfied with the requested
// quantities. Carries the minimum at-the-money quantity that would satisfy
// it so callers can retry.
class credit_rule_violation : public error {
public:
    credit_rule_violation(const std::string& msg, double min_atm_quantity_)
        : error(msg), min_atm_quantity(min_atm_quantity_) {}
    double min_atm_quantity;
};

} // namespace fattail
