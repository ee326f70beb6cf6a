#include "selfsim/operator.hpp"

#include "increment.hpp"
#include "selfsim/spectral.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/erf.hpp>

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

namespace selfsim {

TestFunction TestFunction::constant(double c) {
    TestFunction f;
    f.value = [c](double) { return c; };
    f.sup_abs = std::abs(c);
    return f;
}

TestFunction TestFunction::cosine(double k, double amplitude) {
    TestFunction f;
    f.value = [k, amplitude](double x) { return amplitude * std::cos(k * x); };
    f.sup_abs = std::abs(amplitude);
    f.period = k != 0.0 ? 2.0 * std::numbers::pi / std::abs(k) : 0.0;
    return f;
}

TestFunction TestFunction::gaussian(double width, double center, double amplitude) {
    if (!(width > 0.0)) fail(ErrorCode::InvalidArgument, "gaussian width must be positive");
    TestFunction f;
    f.value = [=](double x) {
        const double u = (x - center) / width;
        return amplitude * std::exp(-u * u);
    };
    f.sup_abs = std::abs(amplitude);
    f.tail_mass = [=](double r) {
        // int_{|y| > r} |f|: the worst placement puts the centre at the boundary of [-r, r].
        const double a = std::abs(amplitude) * width * std::sqrt(std::numbers::pi);
        const double reach = r - std::abs(center);
        if (reach <= 0.0) return a;
        return a * boost::math::erfc(reach / width);
    };
    return f;
}

namespace detail {

quad::Estimate increment_integral(const TestFunction& f, double x, double c0, std::span<const Shift> shifts,
                                  double beta, quad::SmallTauModel model, const QuadratureConfig& qcfg) {
    qcfg.validate();
    const double split = qcfg.tau_split;
    const double fx = c0 != 0.0 ? f(x) : 0.0;
    auto bracket = [&](double tau) {
        double s = c0 * fx;
        for (const auto& sh : shifts) s += sh.weight * f(x + sh.sigma * tau);
        return s;
    };
    double scale = std::abs(c0 * fx);
    for (const auto& sh : shifts) scale += std::abs(sh.weight * f(x));
    quad::Estimate total =
        quad::singular_inner(bracket, beta, split, model, 0.25 * qcfg.abs_tol, qcfg.rel_tol, scale);

    if (c0 != 0.0) total.value += c0 * fx * std::pow(split, 1.0 - beta) / (beta - 1.0);

    auto shifted = [&](double tau) {
        double s = 0.0;
        for (const auto& sh : shifts) s += sh.weight * f(x + sh.sigma * tau);
        return s * std::pow(tau, -beta);
    };
    double weight_sum = 0.0;
    for (const auto& sh : shifts) weight_sum += std::abs(sh.weight);

    if (f.period > 0.0) {
        // Half-period blocks give an asymptotically alternating sequence of
        // partial sums; Wynn's epsilon accelerates it.
        const double block = 0.5 * f.period;
        for (int nblocks : {48, 96, 192}) {
            std::vector<double> partial;
            partial.reserve(nblocks);
            double s = 0.0;
            double err = 0.0;
            for (int m = 0; m < nblocks; ++m) {
                const double a = split + block * m;
                const auto part = quad::adaptive(shifted, a, a + block, 1e-3 * qcfg.abs_tol, qcfg.rel_tol);
                s += part.value;
                err += part.error;
                partial.push_back(s);
            }
            const auto acc = quad::wynn_epsilon(partial);
            const double tol = std::max(qcfg.abs_tol, qcfg.rel_tol * std::abs(acc.value));
            if (acc.error + err <= tol || nblocks == 192) {
                if (acc.error + err > 100.0 * tol) {
                    std::ostringstream msg;
                    msg << "periodic tail did not converge (error " << acc.error + err << ")";
                    fail(ErrorCode::QuadratureNoConvergence, msg.str());
                }
                total.value += acc.value;
                total.error += acc.error + err;
                return total;
            }
        }
    }

    auto remainder = [&](double T) {
        if (f.tail_mass) return weight_sum * f.tail_mass(T - std::abs(x)) * std::pow(T, -beta);
        if (beta > 1.0 && std::isfinite(f.sup_abs))
            return weight_sum * f.sup_abs * std::pow(T, 1.0 - beta) / (beta - 1.0);
        fail(ErrorCode::InvalidArgument, "test function needs tail_mass to certify this integral");
    };
    const double target = 0.5 * qcfg.abs_tol;
    double a = split;
    for (int m = 0; m < qcfg.max_subdivisions; ++m) {
        const double b = 2.0 * a;
        const auto part = quad::adaptive(shifted, a, b, 0.01 * qcfg.abs_tol, qcfg.rel_tol);
        total.value += part.value;
        total.error += part.error;
        a = b;
        const double rem = remainder(a);
        if (rem <= target || rem <= qcfg.rel_tol * std::abs(total.value)) {
            total.error += rem;
            return total;
        }
    }
    fail(ErrorCode::QuadratureNoConvergence, "increment integral tail not certified within max_subdivisions");
}

std::vector<double> product_weights(std::size_t R, double p, double h) {
    std::vector<double> w(R + 2, 0.0);
    // Cell [m, m+1] in units of h, local u = s - m, nodes at u = -1, 0, 1, 2.
    auto basis = [](double u) {
        return std::array<double, 4>{-u * (u - 1.0) * (u - 2.0) / 6.0, (u + 1.0) * (u - 1.0) * (u - 2.0) / 2.0,
                                     -(u + 1.0) * u * (u - 2.0) / 2.0, (u + 1.0) * u * (u - 1.0) / 6.0};
    };
    {
        // First cell: exact moments of u^p against the cubic basis.
        const double M0 = 1.0 / (p + 1.0), M1 = 1.0 / (p + 2.0), M2 = 1.0 / (p + 3.0), M3 = 1.0 / (p + 4.0);
        const double lm1 = -(M3 - 3.0 * M2 + 2.0 * M1) / 6.0;
        const double l0 = (M3 - 2.0 * M2 - M1 + 2.0 * M0) / 2.0;
        const double l1 = -(M3 - M2 - 2.0 * M1) / 2.0;
        const double l2 = (M3 - M1) / 6.0;
        w[0] += l0;
        w[1] += l1 + lm1;  // E(-h) = E(h)
        w[2] += l2;
    }
    using GL = boost::math::quadrature::gauss<double, 10>;
    const auto& abscissa = GL::abscissa();
    const auto& weights = GL::weights();
    for (std::size_t m = 1; m < R; ++m) {
        std::array<double, 4> acc{};
        auto add = [&](double u, double wt) {
            const auto b = basis(u);
            const double g = wt * std::pow(static_cast<double>(m) + u, p);
            for (int k = 0; k < 4; ++k) acc[k] += b[k] * g;
        };
        for (std::size_t q = 0; q < abscissa.size(); ++q) {
            // Map [-1, 1] onto [0, 1].
            add(0.5 * (1.0 + abscissa[q]), 0.5 * weights[q]);
            if (abscissa[q] != 0.0) add(0.5 * (1.0 - abscissa[q]), 0.5 * weights[q]);
        }
        for (int k = 0; k < 4; ++k) w[m - 1 + k] += acc[k];
    }
    const double scale = std::pow(h, p + 1.0);
    for (auto& v : w) v *= scale;
    return w;
}

}  // namespace detail

double laplacian_apply_point(const MediumParams& params, const TestFunction& f, double x,
                             const QuadratureConfig& qcfg) {
    const detail::Shift shifts[] = {{-1.0, 1.0}, {1.0, 1.0}};
    const auto est = detail::increment_integral(f, x, -2.0, shifts, 1.0 + params.delta(), {2.0, 4.0}, qcfg);
    return params.kernel_scale() * est.value;
}

RealField laplacian_apply_spectral(const MediumParams& params, const RealField& field) {
    const double a = params.a_delta();
    const double d = params.delta();
    return spectral::apply_symbol(field, [a, d](double k) { return -a * std::pow(std::abs(k), d); });
}

RealField laplacian_apply_grid(const MediumParams& params, const RealField& field) {
    const std::size_t n = field.grid.size();
    const double h = field.grid.dx();
    const double d = params.delta();
    const std::size_t R = n - 1;
    const auto w = detail::product_weights(R, 1.0 - d, h);
    // E_m = D_m / (m h)^2 with D_m = rho_{i+m} + rho_{i-m} - 2 rho_i; E_0 folded onto E_1..E_3.
    std::vector<double> c(R + 2, 0.0);
    for (std::size_t m = 1; m <= R + 1; ++m) {
        double wm = w[m];
        if (m <= 3) wm += w[0] * detail::kEvenFit[m - 1];
        const double tau = static_cast<double>(m) * h;
        c[m] = wm / (tau * tau);
    }
    double csum = 0.0;
    for (std::size_t m = 1; m <= R + 1; ++m) csum += c[m];

    // Even kernel over offsets l in [-n, n], reversed for linear convolution.
    std::vector<double> krev(2 * n + 1, 0.0);
    for (std::size_t m = 1; m <= n; ++m) {
        krev[n - m] = c[m];
        krev[n + m] = c[m];
    }
    const auto conv = spectral::convolve(field.values, krev);
    const double tail = std::pow(static_cast<double>(R) * h, -d) / d;
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double rho = field.values[i];
        out[i] = params.kernel_scale() * (conv[n + i] - 2.0 * rho * csum - 2.0 * rho * tail);
    }
    return RealField(field.grid, std::move(out));
}

std::complex<double> weyl_marchaud(const MediumParams& params, const TestFunction& f, double x, Side side,
                                   const QuadratureConfig& qcfg) {
    const double d = params.delta();
    if (!(d < 1.0)) fail(ErrorCode::DeltaOutOfRange, "Weyl-Marchaud derivatives need 0 < delta < 1");
    const detail::Shift left[] = {{-1.0, -1.0}};
    const detail::Shift right[] = {{1.0, -1.0}};
    const auto est = detail::increment_integral(f, x, 1.0, side == Side::Left ? left : right, 1.0 + d,
                                                {1.0, 2.0}, qcfg);
    const double value = d / std::tgamma(1.0 - d) * est.value;
    if (side == Side::Left) return {value, 0.0};
    return value * std::polar(1.0, std::numbers::pi * d);
}

std::complex<double> laplacian_from_weyl_marchaud(const MediumParams& params, const TestFunction& f, double x,
                                                  const QuadratureConfig& qcfg) {
    const double d = params.delta();
    const auto dl = weyl_marchaud(params, f, x, Side::Left, qcfg);
    const auto dr = weyl_marchaud(params, f, x, Side::Right, qcfg);
    const double pre = -params.kernel_scale() * std::tgamma(1.0 - d) / d;
    return pre * (dl + std::polar(1.0, -std::numbers::pi * d) * dr);
}

RealField flux_apply(const MediumParams& params, const RealField& rho) {
    const std::size_t n = rho.grid.size();
    const double h = rho.grid.dx();
    const double d = params.delta();
    const std::size_t R = n - 1;
    const auto w = detail::product_weights(R, 1.0 - d, h);
    // E_m = (rho_{i+m} - rho_{i-m}) / (m h), even in tau.
    std::vector<double> c(R + 2, 0.0);
    for (std::size_t m = 1; m <= R + 1; ++m) {
        double wm = w[m];
        if (m <= 3) wm += w[0] * detail::kEvenFit[m - 1];
        c[m] = wm / (static_cast<double>(m) * h);
    }
    std::vector<double> krev(2 * n + 1, 0.0);
    for (std::size_t m = 1; m <= n; ++m) {
        krev[n - m] = c[m];   // rho_{i+m}
        krev[n + m] = -c[m];  // rho_{i-m}
    }
    const auto conv = spectral::convolve(rho.values, krev);
    const double pre = -params.kernel_scale() / d;
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = pre * conv[n + i];
    return RealField(rho.grid, std::move(out));
}

double flux_apply_point(const MediumParams& params, const TestFunction& f, double x, const QuadratureConfig& qcfg) {
    const double d = params.delta();
    const detail::Shift shifts[] = {{1.0, 1.0}, {-1.0, -1.0}};
    const auto est = detail::increment_integral(f, x, 0.0, shifts, d, {1.0, 3.0}, qcfg);
    return -params.kernel_scale() / d * est.value;
}

double frac_kernel_y(double alpha, double x, double eps) {
    if (!std::isfinite(alpha) || !std::isfinite(x) || !std::isfinite(eps))
        fail(ErrorCode::InvalidArgument, "frac_kernel_y needs finite arguments");
    if (!(alpha > -1.0)) fail(ErrorCode::AlphaOutOfRange, "frac_kernel_y needs alpha > -1");
    if (eps < 0.0) fail(ErrorCode::InvalidArgument, "eps must be non-negative");
    if (eps == 0.0 && x == 0.0) fail(ErrorCode::OriginSingular, "y_alpha is singular at x = 0 without regularization");
    const double fact = std::tgamma(alpha + 1.0) / std::numbers::pi;
    if (eps == 0.0) {
        if (x < 0.0) return 0.0;
        if (alpha == std::floor(alpha)) return 0.0;
        return -fact * std::pow(x, -alpha - 1.0) * std::sin(std::numbers::pi * alpha);
    }
    const std::complex<double> z(x, eps);
    // i^(2 alpha + 1) / z^(alpha + 1) = exp(i [pi (alpha + 1/2) - (alpha + 1) arg z]) / |z|^(alpha + 1)
    const double phase = std::numbers::pi * (alpha + 0.5) - (alpha + 1.0) * std::arg(z);
    return fact * std::cos(phase) * std::pow(std::abs(z), -alpha - 1.0);
}

ComplexField frac_derivative_spectral(double alpha, const RealField& field) {
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) fail(ErrorCode::AlphaOutOfRange, "spectral derivative needs alpha >= 0");
    return spectral::apply_symbol(
        field,
        [alpha](double k) -> std::complex<double> {
            if (k == 0.0) return alpha == 0.0 ? 1.0 : 0.0;
            const double mag = std::pow(std::abs(k), alpha);
            return std::polar(mag, (k > 0.0 ? 0.5 : -0.5) * std::numbers::pi * alpha);
        },
        true);
}

RealField frac_derivative_spectral_real(double alpha, const RealField& field) {
    const auto c = frac_derivative_spectral(alpha, field);
    std::vector<double> v(c.values.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = c.values[i].real();
    return RealField(field.grid, std::move(v));
}

}  // namespace selfsim
