#include "selfsim/dynamics.hpp"

#include "selfsim/spectral.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/sin_pi.hpp>

#include <cmath>
#include <complex>
#include <numbers>

namespace selfsim {
namespace {

using cd = std::complex<double>;

void require_finite_time(double t) {
    if (!std::isfinite(t)) fail(ErrorCode::InvalidArgument, "time must be finite");
}

// sin(w t)/w as an entire function of w^2; stable for tiny w.
double sinc_t(double w, double t) {
    const double z = w * t;
    if (std::abs(z) < 1e-4) return t * (1.0 - z * z / 6.0);
    return std::sin(z) / w;
}

// Series term of Im sum (-1)^n a_n xi^n, a_n = (n delta)!/(m(n))!.
SeriesResult kernel_series(const MediumParams& params, double x, double t, const SeriesPolicy& policy, bool q) {
    if (!std::isfinite(x) || !std::isfinite(t)) fail(ErrorCode::InvalidArgument, "x and t must be finite");
    if (x == 0.0) fail(ErrorCode::OriginSingular, "kernel series exclude x = 0");
    policy.validate();
    if (t == 0.0) return {};
    const double d = params.delta();
    const double ax = std::abs(x);
    const double log_xi = std::log(params.a_delta()) + 2.0 * std::log(std::abs(t)) - d * std::log(ax);
    const double pre = -(q ? t : 1.0) / (std::numbers::pi * ax);
    auto term = [&](int n) -> SeriesTerm {
        const double nn = n;
        const double fact = q ? std::lgamma(2.0 * nn + 2.0) : std::lgamma(2.0 * nn + 1.0);
        const double log_env = std::lgamma(nn * d + 1.0) - fact + nn * log_xi + std::log(std::abs(pre));
        const double sign = (n % 2 == 0 ? 1.0 : -1.0) * (pre < 0.0 ? -1.0 : 1.0);
        // Im xi^n = |xi|^n sin(n pi delta / 2)
        const double s = boost::math::sin_pi(0.5 * nn * d);
        return {sign * s * std::exp(log_env), log_env};
    };
    return sum_series(term, 1, policy);
}

// (1/pi) Re[i int_0^inf e^{-s|x|} G(i s) ds]. `damped(s, ax)` must return
// e^{-s|x|} G(i s), combining the exponentials before evaluating them.
template <class F>
double imaginary_axis_transform(double x, F&& damped) {
    boost::math::quadrature::exp_sinh<double> integrator;
    const double ax = std::abs(x);
    auto f = [&](double s) -> double {
        if (s == 0.0) return 0.0;
        return -damped(s, ax).imag();
    };
    return integrator.integrate(f, 1e-13) / std::numbers::pi;
}

// z = c (i s)^{delta/2}
cd rotated_phase(double c, double s, double half_delta) {
    return c * std::pow(s, half_delta) * std::polar(1.0, 0.5 * std::numbers::pi * half_delta);
}

}  // namespace

CauchyState::CauchyState(RealField u0, RealField v0, double t0) : u(std::move(u0)), v(std::move(v0)), t(t0) {
    if (!(u.grid == v.grid)) fail(ErrorCode::InvalidArgument, "displacement and velocity must share a grid");
    if (!std::isfinite(t)) fail(ErrorCode::InvalidArgument, "state time must be finite");
}

CauchyState cauchy_evolve(const MediumParams& params, const CauchyState& state, double t) {
    require_finite_time(t);
    auto uh = spectral::transform(state.u);
    auto vh = spectral::transform(state.v);
    const auto& g = state.u.grid;
    const double a = params.a_delta();
    const double d = params.delta();
    for (std::size_t j = 0; j < g.size(); ++j) {
        const double w = std::sqrt(a * std::pow(std::abs(g.k(j)), d));
        const double c = std::cos(w * t);
        const double s = sinc_t(w, t);
        const cd u0 = uh.amplitudes[j];
        const cd v0 = vh.amplitudes[j];
        uh.amplitudes[j] = c * u0 + s * v0;
        vh.amplitudes[j] = -w * w * s * u0 + c * v0;
    }
    return CauchyState(spectral::to_real(uh), spectral::to_real(vh), state.t + t);
}

double energy(const MediumParams& params, const CauchyState& state) {
    const auto uh = spectral::transform(state.u);
    const auto vh = spectral::transform(state.v);
    const auto& g = state.u.grid;
    double e = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) {
        const double w2 = dispersion(params, g.k(j));
        e += std::norm(vh.amplitudes[j]) + w2 * std::norm(uh.amplitudes[j]);
    }
    return 0.5 * e * g.dx() / static_cast<double>(g.size());
}

RealField kernel_Q_spectral(const MediumParams& params, const Grid1D& grid, double t) {
    require_finite_time(t);
    return spectral::kernel_from_symbol(grid, spectral::RealSymbol([&](double k) {
        return sinc_t(std::sqrt(dispersion(params, k)), t);
    }));
}

RealField kernel_Qdot_spectral(const MediumParams& params, const Grid1D& grid, double t) {
    require_finite_time(t);
    return spectral::kernel_from_symbol(grid, spectral::RealSymbol([&](double k) {
        return std::cos(std::sqrt(dispersion(params, k)) * t);
    }));
}

SeriesResult kernel_Q_series_result(const MediumParams& params, double x, double t, const SeriesPolicy& policy) {
    return kernel_series(params, x, t, policy, true);
}

SeriesResult kernel_Qdot_series_result(const MediumParams& params, double x, double t, const SeriesPolicy& policy) {
    return kernel_series(params, x, t, policy, false);
}

double kernel_Q_series(const MediumParams& params, double x, double t, const SeriesPolicy& policy) {
    return kernel_series(params, x, t, policy, true).value;
}

double kernel_Qdot_series(const MediumParams& params, double x, double t, const SeriesPolicy& policy) {
    return kernel_series(params, x, t, policy, false).value;
}

double kernel_Q_fourier(const MediumParams& params, double x, double t) {
    if (x == 0.0) fail(ErrorCode::OriginSingular, "Fourier kernels are evaluated for x != 0");
    require_finite_time(t);
    if (t == 0.0) return 0.0;
    const double c = std::sqrt(params.a_delta()) * std::abs(t);
    const double hd = 0.5 * params.delta();
    const double value = imaginary_axis_transform(x, [&](double s, double ax) -> cd {
        const cd z = rotated_phase(c, s, hd);
        if (std::abs(z) < 1e-3) {
            const cd z2 = z * z;
            return std::exp(-s * ax) * (1.0 - z2 / 6.0 + z2 * z2 / 120.0);
        }
        const cd I(0.0, 1.0);
        return (std::exp(I * z - s * ax) - std::exp(-I * z - s * ax)) / (2.0 * I * z);
    });
    return t * value;
}

double kernel_Qdot_fourier(const MediumParams& params, double x, double t) {
    if (x == 0.0) fail(ErrorCode::OriginSingular, "Fourier kernels are evaluated for x != 0");
    require_finite_time(t);
    if (t == 0.0) return 0.0;
    const double c = std::sqrt(params.a_delta()) * std::abs(t);
    const double hd = 0.5 * params.delta();
    return imaginary_axis_transform(x, [&](double s, double ax) -> cd {
        const cd z = rotated_phase(c, s, hd);
        const cd I(0.0, 1.0);
        return 0.5 * (std::exp(I * z - s * ax) + std::exp(-I * z - s * ax));
    });
}

std::vector<double> series_term_ratios(const MediumParams& params, double x, double t, int n_max, KernelKind kind) {
    if (x == 0.0) fail(ErrorCode::OriginSingular, "term ratios need x != 0");
    if (n_max < 1) fail(ErrorCode::InvalidArgument, "n_max must be positive");
    const double d = params.delta();
    const double log_xi = std::log(params.a_delta()) + 2.0 * std::log(std::abs(t)) - d * std::log(std::abs(x));
    const double off = kind == KernelKind::Q ? 2.0 : 1.0;
    auto log_c = [&](double n) { return std::lgamma(n * d + 1.0) - std::lgamma(2.0 * n + off) + n * log_xi; };
    std::vector<double> r;
    r.reserve(n_max);
    for (int n = 1; n <= n_max; ++n) r.push_back(std::exp(log_c(n + 1.0) - log_c(n)));
    return r;
}

double greens_retarded(const MediumParams& params, double x, double t, double eps, const SeriesPolicy& policy) {
    if (!(eps >= 0.0)) fail(ErrorCode::InvalidArgument, "damping must be non-negative");
    require_finite_time(t);
    if (t <= 0.0) return 0.0;
    return std::exp(-eps * t) * kernel_Q_series(params, x, t, policy);
}

ComplexField helmholtz_green(const MediumParams& params, const Grid1D& grid, double omega, double eps) {
    if (!(eps > 0.0)) fail(ErrorCode::EpsNonPositive, "Helmholtz resolvent needs eps > 0");
    if (!std::isfinite(omega)) fail(ErrorCode::InvalidArgument, "omega must be finite");
    const cd shift = cd(omega, eps) * cd(omega, eps);
    return spectral::kernel_from_symbol(grid, spectral::ComplexSymbol([&](double k) {
        return 1.0 / (dispersion(params, k) - shift);
    }));
}

}  // namespace selfsim
