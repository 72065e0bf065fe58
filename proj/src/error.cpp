#include "lrc/error.hpp"

namespace lrc {

const char* to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::InvalidField: return "InvalidField";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::DuplicateAbscissa: return "DuplicateAbscissa";
    case ErrorCode::ZeroFunction: return "ZeroFunction";
    case ErrorCode::ParamViolation: return "ParamViolation";
    case ErrorCode::NoSubgroupFound: return "NoSubgroupFound";
    case ErrorCode::NoInvariantFound: return "NoInvariantFound";
    case ErrorCode::NotEnoughFreeOrbits: return "NotEnoughFreeOrbits";
    case ErrorCode::SeparationFailure: return "SeparationFailure";
    case ErrorCode::PoleCancellationFailure: return "PoleCancellationFailure";
    case ErrorCode::InvalidCurve: return "InvalidCurve";
    case ErrorCode::DegenerateSystem: return "DegenerateSystem";
    case ErrorCode::RecipeInapplicable: return "RecipeInapplicable";
    case ErrorCode::NoInvariantZ: return "NoInvariantZ";
    case ErrorCode::ExactPoleUnreachable: return "ExactPoleUnreachable";
    case ErrorCode::SubmatrixSingular: return "SubmatrixSingular";
    case ErrorCode::NoSuchFunction: return "NoSuchFunction";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::TooManyErasures: return "TooManyErasures";
    case ErrorCode::CrossBlockErasure: return "CrossBlockErasure";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

}  // namespace lrc
