#ifndef PATGRAPH_ERROR_HPP
#define PATGRAPH_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace patgraph {

/// Coarse error category, mapped onto CLI exit codes.
enum class ErrorCategory { Usage, Data, Io };

enum class ErrorCode {
    InvalidArgument,
    MalformedIpc,
    MissingField,
    DuplicateRegistrationId,
    EmptyGraph,
    NoConnectedPairs,
    NotConverged,
    InsufficientData,
    DegenerateDistribution,
    UncoveredNode,
    EmptyCorpus,
    NonFiniteLoss,
    MalformedHeader,
    DimensionMismatch,
    DuplicateKey,
    TooFewPoints,
    PerplexityTooLarge,
    UnknownKey,
    KindMismatch,
    ZeroVector,
    MalformedInput,
    UnknownConfigKey,
    Io,
};

inline std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::MalformedIpc: return "MalformedIpc";
    case ErrorCode::MissingField: return "MissingField";
    case ErrorCode::DuplicateRegistrationId: return "DuplicateRegistrationId";
    case ErrorCode::EmptyGraph: return "EmptyGraph";
    case ErrorCode::NoConnectedPairs: return "NoConnectedPairs";
    case ErrorCode::NotConverged: return "NotConverged";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::DegenerateDistribution: return "DegenerateDistribution";
    case ErrorCode::UncoveredNode: return "UncoveredNode";
    case ErrorCode::EmptyCorpus: return "EmptyCorpus";
    case ErrorCode::NonFiniteLoss: return "NonFiniteLoss";
    case ErrorCode::MalformedHeader: return "MalformedHeader";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DuplicateKey: return "DuplicateKey";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::PerplexityTooLarge: return "PerplexityTooLarge";
    case ErrorCode::UnknownKey: return "UnknownKey";
    case ErrorCode::KindMismatch: return "KindMismatch";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::MalformedInput: return "MalformedInput";
    case ErrorCode::UnknownConfigKey: return "UnknownConfigKey";
    case ErrorCode::Io: return "Io";
    }
    return "Unknown";
}

inline ErrorCategory category_of(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::UnknownConfigKey:
        return ErrorCategory::Usage;
    case ErrorCode::Io:
        return ErrorCategory::Io;
    default:
        return ErrorCategory::Data;
    }
}

inline std::string_view to_string(ErrorCategory c) {
    switch (c) {
    case ErrorCategory::Usage: return "UsageError";
    case ErrorCategory::Data: return "DataError";
    case ErrorCategory::Io: return "IoError";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }
    ErrorCategory category() const noexcept { return category_of(code_); }

private:
    ErrorCode code_;
};

/// Thrown by iterative solvers; carries the last iterate.
class NotConvergedError : public Error {
public:
    NotConvergedError(const std::string& message, std::vector<double> last)
        : Error(ErrorCode::NotConverged, message), last_(std::move(last)) {}

    const std::vector<double>& last_iterate() const noexcept { return last_; }

private:
    std::vector<double> last_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

/// Non-fatal diagnostics collected by lenient operations.
using Warnings = std::vector<std::string>;

inline void warn(Warnings* sink, std::string message) {
    if (sink) sink->push_back(std::move(message));
}

} // namespace patgraph

#endif
