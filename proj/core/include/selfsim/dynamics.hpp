#pragma once

#include "selfsim/grid.hpp"
#include "selfsim/params.hpp"
#include "selfsim/series.hpp"

#include <vector>

namespace selfsim {

/// Displacement and velocity on one grid at time t.
struct CauchyState {
    RealField u;
    RealField v;
    double t = 0.0;

    CauchyState(RealField u0, RealField v0, double t0 = 0.0);
};

/// Spectral evolution by t (any sign): u^ = cos(w t) u0^ + sin(w t)/w v0^,
/// v^ = -w sin(w t) u0^ + cos(w t) v0^, with the k = 0 limit u0^ + t v0^.
CauchyState cauchy_evolve(const MediumParams& params, const CauchyState& state, double t);

/// E = 1/2 sum (|v^|^2 + w^2 |u^|^2) dx / n, the discrete Hamiltonian.
double energy(const MediumParams& params, const CauchyState& state);

/// Kernels Q (symbol sin(w t)/w) and dQ/dt (symbol cos(w t)) sampled on a
/// periodic grid; their discrete masses are t and 1.
RealField kernel_Q_spectral(const MediumParams& params, const Grid1D& grid, double t);
RealField kernel_Qdot_spectral(const MediumParams& params, const Grid1D& grid, double t);

/// Smooth (x != 0) parts from the power series in
/// xi = A t^2 e^{i pi delta/2} / |x|^delta:
///   Q    = -(t/(pi |x|)) Im sum_{n>=1} (-1)^n (n delta)!/(2n+1)! xi^n
///   Qdot = -(1/(pi |x|)) Im sum_{n>=1} (-1)^n (n delta)!/(2n)! xi^n
/// The origin-supported terms (t delta(x) and its companions) are omitted.
SeriesResult kernel_Q_series_result(const MediumParams& params, double x, double t, const SeriesPolicy& policy = {});
SeriesResult kernel_Qdot_series_result(const MediumParams& params, double x, double t,
                                       const SeriesPolicy& policy = {});
double kernel_Q_series(const MediumParams& params, double x, double t, const SeriesPolicy& policy = {});
double kernel_Qdot_series(const MediumParams& params, double x, double t, const SeriesPolicy& policy = {});

/// Continuum kernels from their Fourier integrals, evaluated pointwise on the
/// imaginary k axis (exact rotation for x != 0). Independent of the series.
double kernel_Q_fourier(const MediumParams& params, double x, double t);
double kernel_Qdot_fourier(const MediumParams& params, double x, double t);

enum class KernelKind { Q, Qdot };

/// |c_{n+1} / c_n| for the coefficients c_n = (n delta)!/(2n+1)! |xi|^n (Q) or
/// (n delta)!/(2n)! |xi|^n (Qdot), n = 1..n_max.
std::vector<double> series_term_ratios(const MediumParams& params, double x, double t, int n_max, KernelKind kind);

/// Theta(t) e^{-eps t} Q(x, t) from the series.
double greens_retarded(const MediumParams& params, double x, double t, double eps = 0.0,
                       const SeriesPolicy& policy = {});

/// Kernel with symbol 1/(w^2(k) - (omega + i eps)^2) on the grid (k = 0 included).
ComplexField helmholtz_green(const MediumParams& params, const Grid1D& grid, double omega, double eps);

}  // namespace selfsim
