// errors.hpp — exception taxonomy. The CLI maps these onto exit codes:
// ParseError -> 2, NumericError -> 3, IoError -> 4.

#pragma once

#include <stdexcept>
#include <string>

namespace gsteer {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input text: config files, CM files, CSV, predicate names.
class ParseError : public Error {
public:
    using Error::Error;
};

class UnknownPredicate : public ParseError {
public:
    using ParseError::ParseError;
};

class UnknownColumn : public ParseError {
public:
    using ParseError::ParseError;
};

// A computation failed or an input is numerically inadmissible.
class NumericError : public Error {
public:
    using Error::Error;
};

class NotStable : public NumericError {
public:
    using NumericError::NumericError;
};

class SingularSystem : public NumericError {
public:
    using NumericError::NumericError;
};

class StepTooLarge : public NumericError {
public:
    using NumericError::NumericError;
};

class NoConvergence : public NumericError {
public:
    using NumericError::NumericError;
};

class NotSymmetric : public NumericError {
public:
    using NumericError::NumericError;
};

class NotPSD : public NumericError {
public:
    using NumericError::NumericError;
};

class SpectrumNotReal : public NumericError {
public:
    using NumericError::NumericError;
};

class NotHermitian : public NumericError {
public:
    using NumericError::NumericError;
};

class SingularXBlock : public NumericError {
public:
    using NumericError::NumericError;
};

class Unphysical : public NumericError {
public:
    using NumericError::NumericError;
};

// Filesystem failures, reported with path context.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace gsteer
