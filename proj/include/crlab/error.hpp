#pragma once

#include <stdexcept>
#include <string>

namespace crlab {

// Base for every error raised by the library. Callers that only care about
// "bad input vs. everything else" can catch this one type.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class TruncationMismatch : public Error {
public:
    using Error::Error;
};

class NonvanishingConstantTerm : public Error {
public:
    using Error::Error;
};

class ConstantCurve : public Error {
public:
    using Error::Error;
};

class TruncationTooSmall : public Error {
public:
    using Error::Error;
};

class InvalidSchedule : public Error {
public:
    using Error::Error;
};

class RadiusTooLarge : public Error {
public:
    using Error::Error;
};

class OriginSingularity : public Error {
public:
    using Error::Error;
};

class UnsupportedReportKind : public Error {
public:
    using Error::Error;
};

// Malformed JSON or missing fields. `where` names the offending field path.
class ParseError : public Error {
public:
    ParseError(const std::string &where, const std::string &what)
        : Error(where + ": " + what), where_(where) {}
    const std::string &where() const noexcept { return where_; }

private:
    std::string where_;
};

} // namespace crlab
