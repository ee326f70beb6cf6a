#include "selfsim/params.hpp"

#include "selfsim/quadrature.hpp"

#include <boost/math/special_functions/sin_pi.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

namespace selfsim {

namespace {

std::string describe(const char* name, double value) {
    std::ostringstream os;
    os.precision(17);
    os << name << " = " << value;
    return os.str();
}

// 1 - cos(s) - s^2/2 without cancellation, for 0 <= s <= 1.
double cos_remainder(double s) {
    const double s2 = s * s;
    double term = -s2 * s2 / 24.0;
    double sum = term;
    for (int m = 3; m < 12; ++m) {
        term *= -s2 / ((2.0 * m - 1.0) * (2.0 * m));
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

}  // namespace

MediumParams make_params(double delta, double h, double zeta) {
    if (!std::isfinite(delta) || !std::isfinite(h) || !std::isfinite(zeta)) {
        fail(ErrorCode::InvalidArgument, "medium parameters must be finite");
    }
    if (!(delta > 0.0 && delta < 2.0)) {
        fail(ErrorCode::DeltaOutOfRange, describe("delta", delta) + " outside (0, 2)");
    }
    if (!(h > 0.0)) fail(ErrorCode::NonPositiveScale, describe("h", h));
    if (!(zeta > 0.0)) fail(ErrorCode::NonPositiveScale, describe("zeta", zeta));

    const double scale = std::pow(h, delta) / zeta;
    const double a = scale * std::numbers::pi /
                     (std::tgamma(1.0 + delta) * std::sin(0.5 * std::numbers::pi * delta));
    return MediumParams(delta, h, zeta, scale, a);
}

void QuadratureConfig::validate() const {
    if (!(epsilon > 0.0)) fail(ErrorCode::InvalidArgument, describe("epsilon", epsilon));
    if (!(tau_split > 0.0)) fail(ErrorCode::InvalidArgument, describe("tau_split", tau_split));
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
        fail(ErrorCode::InvalidArgument, "quadrature tolerances must be positive");
    }
    if (max_subdivisions < 1) fail(ErrorCode::InvalidArgument, "max_subdivisions must be >= 1");
}

double factorial_ext(double alpha) {
    if (!std::isfinite(alpha)) fail(ErrorCode::InvalidArgument, "alpha must be finite");
    if (alpha <= -1.0 && alpha == std::floor(alpha)) {
        fail(ErrorCode::PoleError, describe("alpha", alpha) + " is a pole of Gamma(alpha + 1)");
    }
    if (alpha > -1.0) return std::tgamma(alpha + 1.0);
    return -std::numbers::pi / (std::tgamma(-alpha) * boost::math::sin_pi(alpha));
}

double dispersion(const MediumParams& params, double k) noexcept {
    if (k == 0.0) return 0.0;
    return params.a_delta() * std::pow(std::abs(k), params.delta());
}

double dispersion_quadrature(const MediumParams& params, double k, const QuadratureConfig& qcfg) {
    qcfg.validate();
    if (k == 0.0) return 0.0;
    const double delta = params.delta();

    // [0, 1]: subtract s^2/2 from 1 - cos s; its contribution is 1 / (2 (2 - delta)).
    const auto inner = quad::singular_inner(cos_remainder, 1.0 + delta, 1.0, {4.0, 6.0},
                                            qcfg.abs_tol, qcfg.rel_tol, 0.0, 12);
    const double inner_total = inner.value + 0.5 / (2.0 - delta);

    // [1, inf): int s^(-1-delta) = 1/delta, and the cosine part along s = 1 + i u,
    // where e^{is} decays like e^{-u}.
    using cplx = std::complex<double>;
    const auto steepest = [delta](double u, bool real_part) {
        const cplx z = cplx(0.0, 1.0) * std::exp(cplx(0.0, 1.0)) * std::exp(-u) *
                       std::pow(cplx(1.0, u), -1.0 - delta);
        return real_part ? z.real() : z.imag();
    };
    double cos_tail = 0.0;
    double tail_err = 0.0;
    double lo = 0.0;
    double hi = 1.0;
    while (lo < 60.0) {
        const auto part = quad::adaptive([&](double u) { return steepest(u, true); }, lo, hi,
                                         qcfg.abs_tol * 0.1, qcfg.rel_tol);
        cos_tail += part.value;
        tail_err += part.error;
        lo = hi;
        hi *= 2.0;
    }
    const double outer_total = 1.0 / delta - cos_tail;

    const double integral = inner_total + outer_total;
    const double err = inner.error + tail_err;
    if (err > qcfg.abs_tol + qcfg.rel_tol * std::abs(integral)) {
        fail(ErrorCode::QuadratureNoConvergence, describe("dispersion integral error", err));
    }
    return 2.0 * params.kernel_scale() * std::pow(std::abs(k), delta) * integral;
}

}  // namespace selfsim
