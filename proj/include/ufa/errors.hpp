#pragma once

#include <stdexcept>
#include <string>

namespace ufa {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The input (file, automaton, parameters) violates a documented precondition.
/// CLI maps these to exit code 1.
struct InputError : Error {
    using Error::Error;
};

/// Malformed automaton file; carries the 1-based line number when known.
struct ParseError : InputError {
    int line;
    ParseError(int line_no, const std::string& what)
        : InputError("line " + std::to_string(line_no) + ": " + what), line(line_no) {}
    explicit ParseError(const std::string& what) : InputError(what), line(0) {}
};

/// A matrix product left {0,1}: the automaton is not unambiguous.
struct AmbiguityError : InputError {
    using InputError::InputError;
};

/// No word maps p to q.
struct UnreachableError : InputError {
    using InputError::InputError;
};

/// A hard invariant failed: either the implementation is wrong or an upstream
/// precondition was silently violated. CLI maps these to exit code 2.
struct InternalError : Error {
    using Error::Error;
};

}  // namespace ufa
