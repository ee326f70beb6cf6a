#pragma once

#include "selfsim/grid.hpp"
#include "selfsim/params.hpp"
#include "selfsim/series.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

namespace selfsim {

/// W(x, t) on a periodic grid from the symbol exp(-A |k|^delta t); the discrete mass is 1.
RealField propagator_W(const MediumParams& params, const Grid1D& grid, double t);

/// W(x, t) = (1/pi) int_0^inf exp(-A t k^delta) cos(k x) dk at one point, by
/// quadrature along a rotated ray in the complex k plane.
double propagator_W_fourier(const MediumParams& params, double x, double t);

/// delta = 1 closed form (1/pi) A t / (x^2 + (A t)^2). Throws DeltaMismatch otherwise.
double propagator_W_cauchy(const MediumParams& params, double x, double t);
/// Its time derivative (A/pi) (x^2 - a^2) / (x^2 + a^2)^2, a = A t.
double propagator_W_cauchy_dt(const MediumParams& params, double x, double t);

/// Power series (1/pi) sum_{n>=1} (-1)^(n-1) (n delta)!/n! sin(pi n delta/2) (A t)^n / |x|^(n delta + 1),
/// convergent for 0 < delta < 1 only.
SeriesResult propagator_W_series_result(const MediumParams& params, double x, double t,
                                        const SeriesPolicy& policy = {});
double propagator_W_series(const MediumParams& params, double x, double t, const SeriesPolicy& policy = {});

/// Cumulative distribution int_{-inf}^x W(y, t) dy, pointwise.
double propagator_cdf(const MediumParams& params, double x, double t);

/// exp(-A |k|^delta t) applied to rho0. Throws NegativeTime for t < 0.
RealField diffuse(const MediumParams& params, const RealField& rho0, double t);

/// Symmetric stable samples with characteristic function exp(-A |k|^delta t).
struct SampleBatch {
    double delta = 0.0;
    double scale = 0.0;  // (A t)^(1/delta)
    std::uint64_t seed = 0;
    std::vector<double> samples;
};

/// Samples are produced in partitions of kPartitionSize; partition p draws from
/// mt19937_64 seeded with splitmix64(seed + p), so batches are reproducible and
/// partitions can be generated independently.
inline constexpr std::size_t kPartitionSize = 1u << 16;
SampleBatch sample_levy(const MediumParams& params, double t, std::size_t n, std::uint64_t seed);

/// Header "# delta=..,scale=..,seed=..", then "x" and one sample per line.
void write_samples_csv(const SampleBatch& batch, std::ostream& out);

/// Kolmogorov-Smirnov distance between the empirical CDF of `samples` and `cdf`.
double ks_distance(std::span<const double> samples, const std::function<double(double)>& cdf);

/// int_{-L}^{L} x^p W dx on grid data (trapezoid over the nodes inside [-L, L]).
double truncated_moment(const RealField& w, int p, double L);
/// Same integral for the continuum propagator, by quadrature of propagator_W_fourier.
double truncated_moment(const MediumParams& params, double t, int p, double L);
/// delta = 1 closed form of the second moment (2 a / pi) (L - a arctan(L / a)), a = A t.
double truncated_moment2_cauchy(const MediumParams& params, double t, double L);

/// Least-squares slope of log W against log |x| at `points` log-spaced positions in [x_lo, x_hi].
double tail_slope(const MediumParams& params, double t, double x_lo, double x_hi, int points = 32);

/// (-L rho) - d/dx j[rho]: spectral Laplacian against the quadrature flux, with
/// a fourth-order centred difference for the divergence.
RealField continuity_residual(const MediumParams& params, const RealField& rho);

}  // namespace selfsim
