#pragma once

#include "selfsim/grid.hpp"
#include "selfsim/params.hpp"

#include <complex>
#include <functional>
#include <limits>

namespace selfsim {

/// A real function of x together with what the quadrature routines need to
/// certify the truncated tail of an increment integral.
struct TestFunction {
    std::function<double(double)> value;
    /// Upper bound on |f| over the real line.
    double sup_abs = std::numeric_limits<double>::infinity();
    /// Optional R -> int_{|y| > R} |f(y)| dy. Preferred over sup_abs when present.
    std::function<double(double)> tail_mass;
    /// Period of f, or 0 when f is not periodic.
    double period = 0.0;

    double operator()(double x) const { return value(x); }

    static TestFunction constant(double c);
    static TestFunction cosine(double k, double amplitude = 1.0);
    /// amplitude * exp(-((x - center) / width)^2)
    static TestFunction gaussian(double width = 1.0, double center = 0.0, double amplitude = 1.0);
};

enum class Side { Left, Right };

/// (h^delta/zeta) int_0^inf (f(x - tau) + f(x + tau) - 2 f(x)) / tau^(1+delta) dtau.
double laplacian_apply_point(const MediumParams& params, const TestFunction& f, double x,
                             const QuadratureConfig& qcfg = {});

/// Spectral application with symbol -A_delta |k|^delta on the periodic grid.
RealField laplacian_apply_spectral(const MediumParams& params, const RealField& field);

/// Direct quadrature of the increment integral on grid data, treating the
/// field as zero outside the grid (no periodization). Fourth order in dx for
/// fields that decay smoothly to zero at the edges.
RealField laplacian_apply_grid(const MediumParams& params, const RealField& field);

/// Weyl-Marchaud derivatives for 0 < delta < 1:
///   D_l = delta/Gamma(1-delta) int (f(x) - f(x - tau)) / tau^(1+delta)
///   D_r = e^{i pi delta} delta/Gamma(1-delta) int (f(x) - f(x + tau)) / tau^(1+delta)
/// The right-sided derivative carries the principal value of (-1)^delta.
std::complex<double> weyl_marchaud(const MediumParams& params, const TestFunction& f, double x, Side side,
                                   const QuadratureConfig& qcfg = {});

/// -(h^delta Gamma(1-delta) / (zeta delta)) (D_l + e^{-i pi delta} D_r) f(x).
std::complex<double> laplacian_from_weyl_marchaud(const MediumParams& params, const TestFunction& f, double x,
                                                  const QuadratureConfig& qcfg = {});

/// j = -(h^delta/(zeta delta)) int_0^inf (rho(x + tau) - rho(x - tau)) / tau^delta dtau
/// on grid data (zero outside the grid). The integration constant is zero.
RealField flux_apply(const MediumParams& params, const RealField& rho);

/// Same flux at one point for an analytic density. For delta <= 1 the tail
/// can only be certified through f.tail_mass (or periodicity).
double flux_apply_point(const MediumParams& params, const TestFunction& f, double x,
                        const QuadratureConfig& qcfg = {});

/// y_alpha(x) = (alpha!/pi) Re{ i^(2 alpha + 1) / (x + i eps)^(alpha + 1) }, principal branch.
/// For eps = 0 this is -(alpha!/pi) x^(-alpha-1) sin(pi alpha) when x > 0 and 0 when x < 0.
double frac_kernel_y(double alpha, double x, double eps);

/// Multiplies the spectrum by (ik)^alpha (principal branch, alpha >= 0). The
/// Nyquist bin uses the real part of the symbol so real input gives real output.
ComplexField frac_derivative_spectral(double alpha, const RealField& field);
RealField frac_derivative_spectral_real(double alpha, const RealField& field);

}  // namespace selfsim
