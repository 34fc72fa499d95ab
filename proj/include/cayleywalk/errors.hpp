#pragma once

#include <stdexcept>
#include <string>

namespace cayleywalk {

/// Malformed ring expression, time, pair or other user input.
class ParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Well-formed input that violates a domain invariant (e.g. F6, GR(8,4) with bad sizes).
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Dense materialization requested above the configured vertex cap.
class SizeCapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An exact self-check failed. Never expected; indicates a bug.
class ConsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Input spectrum does not match the matrix handed to the Lagrange route.
class SpectrumMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class DivisionByZero : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

}  // namespace cayleywalk
