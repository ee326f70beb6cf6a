#pragma once

#include "selfsim/error.hpp"

namespace selfsim {

/// Physical parameters of the self-similar medium.
///
/// `delta` is the scaling exponent (0 < delta < 2), `h` the length scale and
/// `zeta` the continuum-limit parameter (N = 1 + zeta). The dispersion
/// coefficient A_delta = (h^delta / zeta) * pi / (Gamma(1 + delta) sin(pi delta / 2))
/// is derived once at construction. Instances are only obtainable through
/// make_params(), so every MediumParams in circulation is admissible.
class MediumParams {
public:
    double delta() const noexcept { return delta_; }
    double h() const noexcept { return h_; }
    double zeta() const noexcept { return zeta_; }
    double a_delta() const noexcept { return a_delta_; }

    /// h^delta / zeta, the prefactor of the integral form of the Laplacian.
    double kernel_scale() const noexcept { return kernel_scale_; }

    friend MediumParams make_params(double delta, double h, double zeta);

private:
    MediumParams(double delta, double h, double zeta, double kernel_scale, double a_delta)
        : delta_(delta), h_(h), zeta_(zeta), kernel_scale_(kernel_scale), a_delta_(a_delta) {}

    double delta_;
    double h_;
    double zeta_;
    double kernel_scale_;
    double a_delta_;
};

/// Throws DeltaOutOfRange unless 0 < delta < 2, NonPositiveScale unless h, zeta > 0.
MediumParams make_params(double delta, double h, double zeta);

/// Tolerances and regularization shared by the quadrature-based routines.
struct QuadratureConfig {
    double epsilon = 1e-3;     // regularizer for epsilon -> 0+ sweeps
    double tau_split = 1.0;    // inner/outer split of singular integrals
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_subdivisions = 2000;

    void validate() const;
};

/// Extended factorial alpha! = Gamma(alpha + 1).
///
/// For alpha > -1 this is the usual Gamma function; for alpha < -1 the value is
/// continued through the reflection formula -pi / (Gamma(-alpha) sin(pi alpha)).
/// Throws PoleError at alpha = -1, -2, -3, ...
double factorial_ext(double alpha);

/// omega^2(k) = A_delta |k|^delta.
double dispersion(const MediumParams& params, double k) noexcept;

/// omega^2(k) from the defining integral 2 (h^delta/zeta) |k|^delta int_0^inf (1 - cos s) / s^(1+delta) ds,
/// evaluated numerically. Independent of the closed form used by dispersion().
double dispersion_quadrature(const MediumParams& params, double k, const QuadratureConfig& qcfg = {});

}  // namespace selfsim
