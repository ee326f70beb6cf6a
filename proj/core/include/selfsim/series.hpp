#pragma once

#include <functional>

namespace selfsim {

/// Truncation contract for the power-series evaluators.
struct SeriesPolicy {
    int max_terms = 400;
    double abs_tol = 1e-15;
    /// Divergence guard: a term ratio above this value while the tail is
    /// still above abs_tol aborts the evaluation.
    double ratio_guard = 1e6;

    void validate() const;
};

struct SeriesResult {
    double value = 0.0;
    /// Certified bound on the neglected tail.
    double tail_bound = 0.0;
    /// Largest term magnitude seen; value carries a rounding error of about
    /// 1e-16 times this.
    double max_term = 0.0;
    int terms = 0;
};

/// One term of a series: its value and log of an envelope |value| <= exp(log_envelope).
/// Envelopes let terms that vanish by a trigonometric factor still certify the tail.
struct SeriesTerm {
    double value;
    double log_envelope;
};

/// Sums term(first) + term(first + 1) + ... under `policy`.
///
/// Requires the envelope ratios to be eventually non-increasing; once the
/// ratio r of the next pair drops below one the tail after term n is bounded
/// by envelope(n+1) / (1 - r). Throws SeriesBudgetError when max_terms is hit
/// or the ratio guard trips.
SeriesResult sum_series(const std::function<SeriesTerm(int)>& term, int first, const SeriesPolicy& policy);

}  // namespace selfsim
