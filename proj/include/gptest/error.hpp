#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gptest {

enum class ErrorCode {
    AllMissing,
    LagTooLarge,
    DegenerateSeries,
    InsufficientData,
    UnorderedTimestamps,
    SingularCovariance,
    NonpositiveLongRunVariance,
    TruncationFailure,
    SeriesTooShort,
    EmptyInput,
    OutOfRange,
    InvalidArgument,
    NonstationaryCoefficients,
    ParseError,
    IoError,
    HttpError,
    UnknownStation,
    MissingVariable,
};

[[nodiscard]] std::string_view to_string(ErrorCode code) noexcept;

/// Single exception type for the library; `code()` tells callers which failure it was.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace gptest
