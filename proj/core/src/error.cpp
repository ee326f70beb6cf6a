#include "selfsim/error.hpp"

namespace selfsim {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::DeltaOutOfRange: return "DeltaOutOfRange";
        case ErrorCode::NonPositiveScale: return "NonPositiveScale";
        case ErrorCode::PoleError: return "PoleError";
        case ErrorCode::QuadratureNoConvergence: return "QuadratureNoConvergence";
        case ErrorCode::GridTooSmall: return "GridTooSmall";
        case ErrorCode::AlphaOutOfRange: return "AlphaOutOfRange";
        case ErrorCode::DeltaPole: return "DeltaPole";
        case ErrorCode::OriginSingular: return "OriginSingular";
        case ErrorCode::NonZeroMeanForce: return "NonZeroMeanForce";
        case ErrorCode::ExcludedAlpha: return "ExcludedAlpha";
        case ErrorCode::NonPositiveA: return "NonPositiveA";
        case ErrorCode::SeriesBudgetExceeded: return "SeriesBudgetExceeded";
        case ErrorCode::EpsNonPositive: return "EpsNonPositive";
        case ErrorCode::TimeNonPositive: return "TimeNonPositive";
        case ErrorCode::DeltaMismatch: return "DeltaMismatch";
        case ErrorCode::NegativeTime: return "NegativeTime";
        case ErrorCode::LOutOfGrid: return "LOutOfGrid";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

bool is_numeric_failure(ErrorCode code) noexcept {
    return code == ErrorCode::QuadratureNoConvergence || code == ErrorCode::SeriesBudgetExceeded;
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

SeriesBudgetError::SeriesBudgetError(const std::string& message, double partial_sum,
                                     double tail_bound)
    : Error(ErrorCode::SeriesBudgetExceeded, message),
      partial_sum_(partial_sum),
      tail_bound_(tail_bound) {}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace selfsim

namespace selfsim {

const char* version() noexcept { return SELFSIM_VERSION_STRING; }

}  // namespace selfsim
