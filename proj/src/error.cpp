#include "qconfine/error.hpp"

namespace qconfine {

std::string_view name(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::NonPositiveLength: return "NonPositiveLength";
    case ErrorCode::NegativeMass: return "NegativeMass";
    case ErrorCode::BadDimensionCount: return "BadDimensionCount";
    case ErrorCode::BadAxis: return "BadAxis";
    case ErrorCode::BadQuantumIndex: return "BadQuantumIndex";
    case ErrorCode::BadUnits: return "BadUnits";
    case ErrorCode::ConfigParse: return "ConfigParse";
    case ErrorCode::TruncationTooSmall: return "TruncationTooSmall";
    case ErrorCode::ToleranceNotMet: return "ToleranceNotMet";
    case ErrorCode::NonFiniteIntegrand: return "NonFiniteIntegrand";
    case ErrorCode::DivergentMoment: return "DivergentMoment";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownFunction: return "UnknownFunction";
    case ErrorCode::UnboundIdentifier: return "UnboundIdentifier";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::NotEven: return "NotEven";
    case ErrorCode::MasslessNonRelativistic: return "MasslessNonRelativistic";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::BadRange: return "BadRange";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::SinkWriteFailure: return "SinkWriteFailure";
    case ErrorCode::VerificationFailed: return "VerificationFailed";
    }
    return "Unknown";
}

}  // namespace qconfine
