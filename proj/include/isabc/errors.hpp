#pragma once

#include <stdexcept>
#include <string>

namespace isabc {

// Base of every error the simulator throws. Callers that only care about
// "the trial failed" catch this; tests match the concrete type.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class MissingKey : public Error {
public:
    explicit MissingKey(const std::string& key)
        : Error("missing key: " + key), key_(key) {}
    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

class InvalidValue : public Error {
public:
    InvalidValue(const std::string& name, const std::string& reason)
        : Error("invalid value for " + name + ": " + reason), name_(name), reason_(reason) {}
    const std::string& name() const noexcept { return name_; }
    const std::string& reason() const noexcept { return reason_; }

private:
    std::string name_;
    std::string reason_;
};

#define ISABC_SIMPLE_ERROR(Name)            \
    class Name : public Error {             \
    public:                                 \
        using Error::Error;                 \
    }

ISABC_SIMPLE_ERROR(DimensionMismatch);
ISABC_SIMPLE_ERROR(SparsityViolation);
ISABC_SIMPLE_ERROR(InvalidSpread);
ISABC_SIMPLE_ERROR(CapacityExceeded);
ISABC_SIMPLE_ERROR(CpOverflow);
ISABC_SIMPLE_ERROR(OverlapDetected);
ISABC_SIMPLE_ERROR(NumericalFailure);
ISABC_SIMPLE_ERROR(DomainError);
ISABC_SIMPLE_ERROR(SingularPilot);
ISABC_SIMPLE_ERROR(NoPathDetected);
ISABC_SIMPLE_ERROR(TooFewPeaks);
ISABC_SIMPLE_ERROR(EmptyInput);
ISABC_SIMPLE_ERROR(IoError);
ISABC_SIMPLE_ERROR(ResumeMismatch);

#undef ISABC_SIMPLE_ERROR

}  // namespace isabc
