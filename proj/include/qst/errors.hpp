#pragma once

#include <stdexcept>
#include <string>

namespace qst {

/// Base of every error raised by the library. The CLI maps the concrete
/// kind onto its exit code (input/contract → 2, numerical → 3).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed structure: dimension mismatch, unparsable file, wrong shape.
class StructuralError : public Error {
public:
    using Error::Error;
};

/// A precondition of an operation does not hold for the supplied data.
class ContractError : public Error {
public:
    using Error::Error;
};

/// Iteration failed to converge or a computed quantity broke down.
class NumericalError : public Error {
public:
    using Error::Error;
};

}  // namespace qst
