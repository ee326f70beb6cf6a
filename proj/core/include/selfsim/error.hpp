#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace selfsim {

enum class ErrorCode {
    InvalidArgument,
    DeltaOutOfRange,
    NonPositiveScale,
    PoleError,
    QuadratureNoConvergence,
    GridTooSmall,
    AlphaOutOfRange,
    DeltaPole,
    OriginSingular,
    NonZeroMeanForce,
    ExcludedAlpha,
    NonPositiveA,
    SeriesBudgetExceeded,
    EpsNonPositive,
    TimeNonPositive,
    DeltaMismatch,
    NegativeTime,
    LOutOfGrid,
    IoError,
};

/// Stable machine-readable name, e.g. "DeltaOutOfRange".
std::string_view to_string(ErrorCode code) noexcept;

/// True for failures of a numeric method (non-convergence, exhausted budgets)
/// as opposed to inputs rejected up front.
bool is_numeric_failure(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Raised when a series evaluator runs out of terms before meeting its
/// tolerance. Carries the partial sum and the tail bound at the point of
/// failure.
class SeriesBudgetError : public Error {
public:
    SeriesBudgetError(const std::string& message, double partial_sum, double tail_bound);

    double partial_sum() const noexcept { return partial_sum_; }
    double tail_bound() const noexcept { return tail_bound_; }

private:
    double partial_sum_;
    double tail_bound_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace selfsim
