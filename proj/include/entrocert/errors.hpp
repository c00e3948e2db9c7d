#pragma once

#include <stdexcept>
#include <string>

namespace entrocert {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotSquare : public Error {
public:
    using Error::Error;
};

class NotHermitian : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class BarycenterMismatch : public Error {
public:
    using Error::Error;
};

class SupportTooLarge : public Error {
public:
    using Error::Error;
};

class InfiniteEntropyDominator : public Error {
public:
    using Error::Error;
};

/// Malformed input file. The message carries the file path and field.
class ParseError : public Error {
public:
    using Error::Error;
};

/// An invariant of a domain type does not hold; the message carries the residual.
class ValidationError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace entrocert
