#include "gptest/error.hpp"

namespace gptest {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::AllMissing: return "AllMissing";
        case ErrorCode::LagTooLarge: return "LagTooLarge";
        case ErrorCode::DegenerateSeries: return "DegenerateSeries";
        case ErrorCode::InsufficientData: return "InsufficientData";
        case ErrorCode::UnorderedTimestamps: return "UnorderedTimestamps";
        case ErrorCode::SingularCovariance: return "SingularCovariance";
        case ErrorCode::NonpositiveLongRunVariance: return "NonpositiveLongRunVariance";
        case ErrorCode::TruncationFailure: return "TruncationFailure";
        case ErrorCode::SeriesTooShort: return "SeriesTooShort";
        case ErrorCode::EmptyInput: return "EmptyInput";
        case ErrorCode::OutOfRange: return "OutOfRange";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::NonstationaryCoefficients: return "NonstationaryCoefficients";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::IoError: return "IoError";
        case ErrorCode::HttpError: return "HttpError";
        case ErrorCode::UnknownStation: return "UnknownStation";
        case ErrorCode::MissingVariable: return "MissingVariable";
    }
    return "Unknown";
}

}  // namespace gptest
