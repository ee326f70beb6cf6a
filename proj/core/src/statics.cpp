#include "selfsim/statics.hpp"

#include "selfsim/quadrature.hpp"
#include "selfsim/spectral.hpp"

#include <boost/math/special_functions/sin_pi.hpp>
#include <boost/math/special_functions/cos_pi.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

namespace selfsim {
namespace {

bool is_integer(double a) { return std::isfinite(a) && a == std::floor(a); }

bool is_even_integer(double a) { return is_integer(a) && std::fmod(a, 2.0) == 0.0; }

}  // namespace

double greens_static_prefactor(const MediumParams& params) {
    const double d = params.delta();
    if (std::abs(d - 1.0) <= kDeltaPoleGuard) fail(ErrorCode::DeltaPole, "static Green's function diverges at delta = 1");
    return params.zeta() * d * std::tan(0.5 * std::numbers::pi * d) / (2.0 * std::numbers::pi * std::pow(params.h(), d));
}

double greens_static(const MediumParams& params, double x) {
    const double g0 = greens_static_prefactor(params);
    if (!std::isfinite(x)) fail(ErrorCode::InvalidArgument, "x must be finite");
    if (x == 0.0) {
        if (params.delta() < 1.0) fail(ErrorCode::OriginSingular, "g(0) diverges for delta < 1");
        return 0.0;
    }
    return g0 * std::pow(std::abs(x), params.delta() - 1.0);
}

RealField poisson_solve(const MediumParams& params, const RealField& force, const PoissonOptions& opts) {
    const std::size_t n = force.grid.size();
    const double a = params.a_delta();
    const double d = params.delta();

    if (opts.mode == PoissonMode::FreeSpace) {
        const double g0 = greens_static_prefactor(params);
        const double h = force.grid.dx();
        // Cell average of g over [(m - 1/2) h, (m + 1/2) h].
        auto prim = [&](double y) { return g0 * std::pow(y, d) / d; };  // int_0^y g, y >= 0
        std::vector<double> krev(2 * n - 1);
        for (std::size_t q = 0; q < krev.size(); ++q) {
            const double m = std::abs(static_cast<double>(q) - static_cast<double>(n - 1));
            const double cell = m == 0.0 ? 2.0 * prim(0.5 * h) : prim((m + 0.5) * h) - prim((m - 0.5) * h);
            krev[q] = cell;  // already includes the dx of the sum
        }
        const auto conv = spectral::convolve(force.values, krev);
        std::vector<double> u(n);
        for (std::size_t i = 0; i < n; ++i) u[i] = conv[n - 1 + i];
        return RealField(force.grid, std::move(u));
    }

    auto spec = spectral::transform(force);
    const double mean = spec.amplitudes[0].real() / static_cast<double>(n);
    if (!opts.project_mean && std::abs(mean) > opts.mean_tol * std::max(force.max_abs(), 1e-300))
        fail(ErrorCode::NonZeroMeanForce, "force has nonzero mean; enable projection or use free-space mode");
    for (std::size_t j = 0; j < n; ++j) {
        const double k = force.grid.k(j);
        spec.amplitudes[j] = k == 0.0 ? 0.0 : spec.amplitudes[j] / (a * std::pow(std::abs(k), d));
    }
    return spectral::to_real(spec);
}

PotentialSpec PotentialSpec::make(double alpha) {
    if (!std::isfinite(alpha)) fail(ErrorCode::InvalidArgument, "alpha must be finite");
    PotentialSpec s{alpha, is_even_integer(alpha), false};
    s.excluded_pole = alpha < -1.0 && is_integer(alpha) && !s.even_integer;
    return s;
}

double potential_b_reflected(double alpha, double x) {
    const double c = boost::math::cos_pi(0.5 * alpha);
    return std::pow(std::abs(x), -alpha - 1.0) / (2.0 * c * std::tgamma(-alpha));
}

double potential_b(double alpha, double x, double eps) {
    const auto spec = PotentialSpec::make(alpha);
    if (!std::isfinite(x) || !std::isfinite(eps) || eps < 0.0) fail(ErrorCode::InvalidArgument, "bad x or eps");
    if (alpha == -1.0 || spec.excluded_pole) fail(ErrorCode::ExcludedAlpha, "alpha is an excluded odd negative integer");

    if (eps > 0.0) {
        if (alpha < -1.0) fail(ErrorCode::AlphaOutOfRange, "regularized form needs alpha > -1");
        const std::complex<double> z(eps, -x);
        return factorial_ext(alpha) / std::numbers::pi * std::pow(z, -alpha - 1.0).real();
    }
    if (x == 0.0) {
        if (alpha >= 0.0) fail(ErrorCode::OriginSingular, "b_alpha is singular at the origin");
        if (alpha < -1.0) return 0.0;
        return std::numeric_limits<double>::infinity();  // integrable singularity for -1 < alpha < 0
    }
    if (spec.even_integer && alpha >= 0.0) return 0.0;
    if (alpha < -1.0) return potential_b_reflected(alpha, x);
    return -factorial_ext(alpha) / std::numbers::pi * std::pow(std::abs(x), -alpha - 1.0) *
           boost::math::sin_pi(0.5 * alpha);
}

QnValue q_n(const MediumParams& params, int n, double x) {
    if (n < -1) fail(ErrorCode::InvalidArgument, "q_n needs n >= -1");
    QnValue q;
    if (n == 0) {
        q.origin_weight = 1.0;
        return q;
    }
    if (n == -1) {
        q.smooth = greens_static(params, x);
        return q;
    }
    if (x == 0.0) fail(ErrorCode::OriginSingular, "q_n is singular at the origin for n >= 1");
    const double nd = n * params.delta();
    const double s = boost::math::sin_pi(0.5 * nd);
    if (s == 0.0) return q;
    // Log-space magnitude keeps A^n (n d)! finite for large n.
    const double logmag = n * std::log(params.a_delta()) + std::lgamma(nd + 1.0) - (nd + 1.0) * std::log(std::abs(x));
    q.smooth = -s * std::exp(logmag) / std::numbers::pi;
    return q;
}

double integral_I(double alpha, double a) {
    if (!(alpha > 0.0)) fail(ErrorCode::AlphaOutOfRange, "integral_I needs alpha > 0");
    if (!(a > 0.0)) fail(ErrorCode::NonPositiveA, "integral_I needs a > 0");
    return -std::tgamma(alpha) * std::pow(a, -alpha) * boost::math::sin_pi(0.5 * alpha) / std::numbers::pi;
}

double integral_J(double alpha, double a) {
    if (!(alpha > 0.0)) fail(ErrorCode::AlphaOutOfRange, "integral_J needs alpha > 0");
    if (!(a > 0.0)) fail(ErrorCode::NonPositiveA, "integral_J needs a > 0");
    return std::tgamma(alpha) * std::pow(a, -alpha) * boost::math::sin_pi(0.5 * alpha) / std::numbers::pi;
}

AnnihilationReport constant_annihilation_check(double alpha, const std::vector<double>& eps) {
    if (!(alpha > 0.0)) fail(ErrorCode::AlphaOutOfRange, "constant annihilation needs alpha > 0");
    AnnihilationReport r;
    r.alpha = alpha;
    const std::complex<double> I(0.0, 1.0);
    const double S = 10.0;
    for (double e : eps) {
        if (!(e > 0.0)) fail(ErrorCode::EpsNonPositive, "eps must be positive");
        auto integrand = [&](double x) { return std::pow(std::complex<double>(e, -x), -alpha - 1.0).real(); };
        // Geometric panels resolve the peak of width eps at the origin.
        double total = 0.0;
        double lo = 0.0;
        double hi = e;
        while (lo < S) {
            hi = std::min(hi, S);
            total += quad::adaptive(integrand, lo, hi, 1e-14 * std::pow(e, -alpha), 1e-13).value;
            lo = hi;
            hi *= 2.0;
        }
        // int_S^inf = -F(S), F(x) = (eps - i x)^-alpha / (i alpha).
        total += (-std::pow(std::complex<double>(e, -S), -alpha) / (I * alpha)).real();
        r.eps.push_back(e);
        r.values.push_back(total);
        r.max_abs = std::max(r.max_abs, std::abs(total));
    }
    return r;
}

}  // namespace selfsim
