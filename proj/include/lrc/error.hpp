#pragma once

#include <stdexcept>
#include <string>

namespace lrc {

enum class ErrorCode {
    InvalidField,
    DivisionByZero,
    DuplicateAbscissa,
    ZeroFunction,
    ParamViolation,
    NoSubgroupFound,
    NoInvariantFound,
    NotEnoughFreeOrbits,
    SeparationFailure,
    PoleCancellationFailure,
    InvalidCurve,
    DegenerateSystem,
    RecipeInapplicable,
    NoInvariantZ,
    ExactPoleUnreachable,
    SubmatrixSingular,
    NoSuchFunction,
    DimensionMismatch,
    TooManyErasures,
    CrossBlockErasure,
    BudgetExceeded,
    ParseError,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& detail)
        : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code)
    {
    }
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

}  // namespace lrc
