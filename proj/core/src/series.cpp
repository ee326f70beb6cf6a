#include "selfsim/series.hpp"

#include "selfsim/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace selfsim {

void SeriesPolicy::validate() const {
    if (max_terms < 1) fail(ErrorCode::InvalidArgument, "series policy needs max_terms >= 1");
    if (!(abs_tol > 0.0)) fail(ErrorCode::InvalidArgument, "series policy needs abs_tol > 0");
    if (!(ratio_guard > 1.0)) fail(ErrorCode::InvalidArgument, "series policy needs ratio_guard > 1");
}

SeriesResult sum_series(const std::function<SeriesTerm(int)>& term, int first, const SeriesPolicy& policy) {
    policy.validate();
    SeriesResult r;
    SeriesTerm cur = term(first);
    SeriesTerm next = term(first + 1);
    double sum = 0.0;
    for (int i = 0; i < policy.max_terms; ++i) {
        const int n = first + i;
        sum += cur.value;
        r.max_term = std::max(r.max_term, std::abs(cur.value));
        r.terms = i + 1;

        const SeriesTerm after = term(n + 2);
        const double log_ratio = after.log_envelope - next.log_envelope;
        const double ratio = std::exp(log_ratio);
        const double next_env = std::exp(next.log_envelope);
        if (ratio < 1.0) {
            const double bound = next_env / (1.0 - ratio);
            if (bound <= policy.abs_tol || next_env == 0.0) {
                r.value = sum;
                r.tail_bound = bound;
                return r;
            }
        } else if (ratio > policy.ratio_guard && next_env > policy.abs_tol) {
            std::ostringstream msg;
            msg << "term ratio " << ratio << " exceeds guard at n=" << n + 1;
            throw SeriesBudgetError(msg.str(), sum, next_env);
        }
        cur = next;
        next = after;
    }
    const double ratio = std::exp(next.log_envelope - cur.log_envelope);
    const double bound = ratio < 1.0 ? std::exp(cur.log_envelope) / (1.0 - ratio)
                                     : std::numeric_limits<double>::infinity();
    std::ostringstream msg;
    msg << "series not converged after " << policy.max_terms << " terms";
    throw SeriesBudgetError(msg.str(), sum, bound);
}

}  // namespace selfsim
