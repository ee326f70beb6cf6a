#include "selfsim/quadrature.hpp"

#include "selfsim/error.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

namespace selfsim::quad {

namespace {

struct Segment {
    double a, b, value, error, l1;
    bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gk31(const Integrand& f, double a, double b) {
    using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
    Segment s{a, b, 0.0, 0.0, 0.0};
    s.value = GK::integrate(f, a, b, 0, 0.0, &s.error, &s.l1);
    // Boost reports |K - G| of the rule mapped onto [-1, 1]; rescale to [a, b].
    s.error *= 0.5 * (b - a);
    return s;
}

}  // namespace

Estimate adaptive(const Integrand& f, double a, double b, double abs_tol, double rel_tol,
                  unsigned max_depth) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    // Global bisection of the worst segment, as in QUADPACK's qag.
    std::priority_queue<Segment> heap;
    heap.push(gk31(f, a, b));
    double value = heap.top().value;
    double error = heap.top().error;
    double l1 = heap.top().l1;
    const double min_width = std::ldexp(b - a, -static_cast<int>(max_depth));
    const std::size_t max_segments = 4 * static_cast<std::size_t>(max_depth) * max_depth + 64;
    while (std::isfinite(value) && error > std::max(abs_tol, rel_tol * l1) && heap.size() < max_segments) {
        const Segment worst = heap.top();
        if (worst.b - worst.a <= min_width) break;
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        const Segment left = gk31(f, worst.a, mid);
        const Segment right = gk31(f, mid, worst.b);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        l1 += left.l1 + right.l1 - worst.l1;
        heap.push(left);
        heap.push(right);
    }
    // Recompute the sums to shed the drift of the running updates.
    value = error = l1 = 0.0;
    for (auto h = heap; !h.empty(); h.pop()) {
        value += h.top().value;
        error += h.top().error;
        l1 += h.top().l1;
    }
    if (!std::isfinite(value)) {
        std::ostringstream msg;
        msg << "non-finite integral on [" << a << ", " << b << "]";
        fail(ErrorCode::QuadratureNoConvergence, msg.str());
    }
    // Nothing beats the rounding floor of the integrand itself.
    const double floor = 64.0 * eps * l1;
    if (error > 10.0 * std::max({abs_tol, rel_tol * l1, floor})) {
        std::ostringstream msg;
        msg << "error estimate " << error << " above tolerance on [" << a << ", " << b << "]";
        fail(ErrorCode::QuadratureNoConvergence, msg.str());
    }
    return {value, error};
}

namespace {

struct TwoTermFit {
    double c1, c2;
    double operator()(double tau, const SmallTauModel& m) const {
        return c1 * std::pow(tau, m.p1) + c2 * std::pow(tau, m.p2);
    }
};

TwoTermFit fit_two_terms(double tc, double d1, double d2, const SmallTauModel& m) {
    const double a11 = std::pow(tc, m.p1);
    const double a12 = std::pow(tc, m.p2);
    const double a21 = std::pow(0.5 * tc, m.p1);
    const double a22 = std::pow(0.5 * tc, m.p2);
    const double det = a11 * a22 - a12 * a21;
    return {(d1 * a22 - a12 * d2) / det, (a11 * d2 - a21 * d1) / det};
}

}  // namespace

Estimate singular_inner(const Integrand& D, double beta, double split, SmallTauModel model,
                        double abs_tol, double rel_tol, double scale, int max_levels) {
    Estimate total;
    const double panel_tol = abs_tol / 16.0;
    const double noise = 128.0 * std::numeric_limits<double>::epsilon() * scale;
    double hi = split;
    double d_hi = D(hi);
    double d_mid = D(0.5 * hi);
    for (int m = 0; m < max_levels; ++m) {
        const double d_q = D(0.25 * hi);
        if (m >= 2) {
            // Close with the model once it predicts D(hi/4) from D(hi), D(hi/2)
            // to 1e-9 relative, or to the rounding level of the bracket.
            const auto fit = fit_two_terms(hi, d_hi, d_mid, model);
            const double mismatch = std::abs(fit(0.25 * hi, model) - d_q);
            if (mismatch <= std::max(1e-9 * std::abs(d_q), noise)) break;
        }
        const double lo = 0.5 * hi;
        const auto part =
            adaptive([&](double tau) { return D(tau) * std::pow(tau, -beta); }, lo, hi, panel_tol, rel_tol);
        total.value += part.value;
        total.error += part.error;
        hi = lo;
        d_hi = d_mid;
        d_mid = d_q;
    }

    // Innermost panel [0, tau_c]: D(tau) = c1 tau^p1 + c2 tau^p2 through two samples.
    const double tc = hi;
    const auto fit = fit_two_terms(tc, d_hi, d_mid, model);
    const double e1 = model.p1 - beta + 1.0;
    const double e2 = model.p2 - beta + 1.0;
    total.value += fit.c1 * std::pow(tc, e1) / e1 + fit.c2 * std::pow(tc, e2) / e2;
    // The neglected term is O(tau_c^(p2 - p1)) relative to the panel.
    total.error += std::abs(fit.c2 * std::pow(tc, e2) / e2) * std::pow(tc, model.p2 - model.p1);
    return total;
}

Estimate wynn_epsilon(std::span<const double> s) {
    const std::size_t n = s.size();
    if (n == 0) return {};
    if (n < 3) return {s.back(), n == 2 ? std::abs(s[1] - s[0]) : 0.0};

    // table[i][c] holds epsilon_{c-1}^{(i)}; column 0 is epsilon_{-1} = 0.
    double best = s.back();
    double best_err = std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> table(n, std::vector<double>(n + 1, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        table[i][0] = 0.0;
        table[i][1] = s[i];
    }
    for (std::size_t k = 2; k <= n; ++k) {
        for (std::size_t i = 0; i + k <= n; ++i) {
            const double diff = table[i + 1][k - 1] - table[i][k - 1];
            if (diff == 0.0) {
                table[i][k] = std::numeric_limits<double>::infinity();
            } else {
                table[i][k] = table[i + 1][k - 2] + 1.0 / diff;
            }
        }
        if (k % 2 == 1) {
            // Odd k in this indexing corresponds to the even epsilon columns (estimates).
            const std::size_t last = n - k;
            const double est = table[last][k];
            if (!std::isfinite(est)) break;
            if (last >= 1) {
                const double err = std::abs(est - table[last - 1][k]);
                if (err <= best_err) {
                    best = est;
                    best_err = err;
                }
            }
        }
    }
    if (!std::isfinite(best_err)) best_err = std::abs(s[n - 1] - s[n - 2]);
    return {best, best_err};
}

double richardson(std::span<const double> values, double ratio, double p0, double dp) {
    std::vector<double> t(values.begin(), values.end());
    const std::size_t n = t.size();
    for (std::size_t m = 1; m < n; ++m) {
        const double factor = std::pow(ratio, p0 + dp * static_cast<double>(m - 1));
        for (std::size_t i = n - 1; i >= m; --i) {
            t[i] = t[i] + (t[i] - t[i - 1]) / (factor - 1.0);
            if (i == m) break;
        }
    }
    return t[n - 1];
}

}  // namespace selfsim::quad
