#pragma once

#include <stdexcept>
#include <string>

namespace dualres {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed or inconsistent user input (files, ids, corank tables).
class InputError : public Error {
public:
    using Error::Error;
};

// A rule or operation was invoked outside its precondition set.
class PreconditionError : public Error {
public:
    using Error::Error;
};

// An internal invariant failed: a lex certificate that does not decrease,
// a dual complex that moved, a replay that diverged.
class InvariantBreach : public Error {
public:
    using Error::Error;
};

// A hard cap was exceeded: oracle scale limits or the engine's event ceiling.
class ScaleError : public Error {
public:
    using Error::Error;
};

} // namespace dualres
