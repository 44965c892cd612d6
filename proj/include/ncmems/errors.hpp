#pragma once

#include <stdexcept>
#include <string>

namespace ncmems {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parameter set violates a documented invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Evaluation outside the physical domain (gap collapse, LJ penetration).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A bisection predicate did not change sign over its bracket.
class BracketError : public Error {
public:
    using Error::Error;
};

/// Design targets cannot be met with 0 < r_alphaN, r_betaN < 1.
class InfeasibleDesignError : public Error {
public:
    using Error::Error;
};

/// Numerical failure inside a solver (no real root, non-finite state).
class SolverError : public Error {
public:
    using Error::Error;
};

/// A file could not be read or written.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace ncmems
