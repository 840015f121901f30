#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qconfine {

/// Stable, machine-readable error identities. The CLI reports name(code)
/// verbatim, so existing spellings must not change.
enum class ErrorCode {
    NonPositiveLength,
    NegativeMass,
    BadDimensionCount,
    BadAxis,
    BadQuantumIndex,
    BadUnits,
    ConfigParse,
    TruncationTooSmall,
    ToleranceNotMet,
    NonFiniteIntegrand,
    DivergentMoment,
    SyntaxError,
    UnknownFunction,
    UnboundIdentifier,
    DomainError,
    NotEven,
    MasslessNonRelativistic,
    DimensionMismatch,
    BadRange,
    GridTooCoarse,
    SinkWriteFailure,
    VerificationFailed,
};

std::string_view name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }
    std::string_view name() const noexcept { return qconfine::name(code_); }

private:
    ErrorCode code_;
};

/// Parse failure with the 0-based character offset of the offending token.
class SyntaxError : public Error {
public:
    SyntaxError(std::size_t offset, const std::string& message)
        : Error(ErrorCode::SyntaxError,
                "at offset " + std::to_string(offset) + ": " + message),
          offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

}  // namespace qconfine
