#include "selfsim/diffusion.hpp"

#include "selfsim/operator.hpp"
#include "selfsim/quadrature.hpp"
#include "selfsim/spectral.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/sin_pi.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>

namespace selfsim {
namespace {

using cd = std::complex<double>;

void require_positive_time(double t) {
    if (!std::isfinite(t) || !(t > 0.0)) fail(ErrorCode::TimeNonPositive, "propagator needs t > 0");
}

// Ray angle inside the sector where both exp(i x k) and exp(-A t k^delta) decay.
double ray_angle(double delta) { return 0.5 * std::numbers::pi / (1.0 + delta); }

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Uniform on (0, 1) from the top 53 bits; never returns 0 or 1.
double open_uniform(std::mt19937_64& rng) {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

RealField propagator_W(const MediumParams& params, const Grid1D& grid, double t) {
    require_positive_time(t);
    const double at = params.a_delta() * t;
    const double d = params.delta();
    return spectral::kernel_from_symbol(grid, spectral::RealSymbol([=](double k) {
        return std::exp(-at * std::pow(std::abs(k), d));
    }));
}

double propagator_W_fourier(const MediumParams& params, double x, double t) {
    require_positive_time(t);
    const double d = params.delta();
    const double at = params.a_delta() * t;
    const double th = ray_angle(d);
    const cd e1 = std::polar(1.0, th);
    const cd ed = std::polar(1.0, d * th);
    const double ax = std::abs(x);
    boost::math::quadrature::exp_sinh<double> integrator;
    auto f = [&](double s) -> double {
        const cd expo = cd(0.0, ax * s) * e1 - at * std::pow(s, d) * ed;
        return (e1 * std::exp(expo)).real();
    };
    return integrator.integrate(f, 1e-14) / std::numbers::pi;
}

double propagator_W_cauchy(const MediumParams& params, double x, double t) {
    if (params.delta() != 1.0) fail(ErrorCode::DeltaMismatch, "closed Cauchy form needs delta = 1");
    require_positive_time(t);
    const double a = params.a_delta() * t;
    return a / (std::numbers::pi * (x * x + a * a));
}

double propagator_W_cauchy_dt(const MediumParams& params, double x, double t) {
    if (params.delta() != 1.0) fail(ErrorCode::DeltaMismatch, "closed Cauchy form needs delta = 1");
    require_positive_time(t);
    const double a = params.a_delta() * t;
    const double r = x * x + a * a;
    return params.a_delta() * (x * x - a * a) / (std::numbers::pi * r * r);
}

SeriesResult propagator_W_series_result(const MediumParams& params, double x, double t, const SeriesPolicy& policy) {
    const double d = params.delta();
    if (!(d < 1.0)) fail(ErrorCode::DeltaOutOfRange, "the W series converges only for 0 < delta < 1");
    if (x == 0.0) fail(ErrorCode::OriginSingular, "the W series excludes x = 0");
    if (!std::isfinite(x)) fail(ErrorCode::InvalidArgument, "x must be finite");
    require_positive_time(t);
    policy.validate();
    const double ax = std::abs(x);
    const double log_at = std::log(params.a_delta() * t);
    auto term = [&](int n) -> SeriesTerm {
        const double nn = n;
        const double log_env = std::lgamma(nn * d + 1.0) - std::lgamma(nn + 1.0) + nn * log_at -
                               (nn * d + 1.0) * std::log(ax) - std::log(std::numbers::pi);
        const double sign = n % 2 == 1 ? 1.0 : -1.0;
        return {sign * boost::math::sin_pi(0.5 * nn * d) * std::exp(log_env), log_env};
    };
    return sum_series(term, 1, policy);
}

double propagator_W_series(const MediumParams& params, double x, double t, const SeriesPolicy& policy) {
    return propagator_W_series_result(params, x, t, policy).value;
}

double propagator_cdf(const MediumParams& params, double x, double t) {
    require_positive_time(t);
    if (!std::isfinite(x)) return x > 0.0 ? 1.0 : 0.0;
    if (x < 0.0) return 1.0 - propagator_cdf(params, -x, t);
    if (x == 0.0) return 0.5;
    // F(x) - 1/2 = (1/pi) Im int_0^inf (e^{ikx} - 1) e^{-A t k^delta} dk / k, rotated onto the ray.
    const double d = params.delta();
    const double at = params.a_delta() * t;
    const double th = ray_angle(d);
    const cd e1 = std::polar(1.0, th);
    const cd ed = std::polar(1.0, d * th);
    boost::math::quadrature::exp_sinh<double> integrator;
    auto f = [&](double s) -> double {
        const cd z = x * s * e1;
        const cd damp = -at * std::pow(s, d) * ed;
        cd v;
        if (std::abs(z) < 1.0) {
            // e^{iz} - 1 = 2 i sin(z/2) e^{iz/2}, free of cancellation for small z.
            v = cd(0.0, 2.0) * std::sin(0.5 * z) * std::exp(cd(0.0, 0.5) * z + damp);
        } else {
            v = std::exp(cd(0.0, 1.0) * z + damp) - std::exp(damp);
        }
        return v.imag() / s;
    };
    return 0.5 + integrator.integrate(f, 1e-13) / std::numbers::pi;
}

RealField diffuse(const MediumParams& params, const RealField& rho0, double t) {
    if (!std::isfinite(t)) fail(ErrorCode::InvalidArgument, "time must be finite");
    if (t < 0.0) fail(ErrorCode::NegativeTime, "diffusion is irreversible; t must be >= 0");
    if (t == 0.0) return rho0;
    const double at = params.a_delta() * t;
    const double d = params.delta();
    return spectral::apply_symbol(rho0, [=](double k) { return std::exp(-at * std::pow(std::abs(k), d)); });
}

SampleBatch sample_levy(const MediumParams& params, double t, std::size_t n, std::uint64_t seed) {
    require_positive_time(t);
    if (n == 0) fail(ErrorCode::InvalidArgument, "sample count must be positive");
    const double a = params.delta();
    SampleBatch batch;
    batch.delta = a;
    batch.scale = std::pow(params.a_delta() * t, 1.0 / a);
    batch.seed = seed;
    batch.samples.resize(n);
    const double pi = std::numbers::pi;
    for (std::size_t start = 0, p = 0; start < n; start += kPartitionSize, ++p) {
        std::mt19937_64 rng(splitmix64(seed + p));
        const std::size_t stop = std::min(n, start + kPartitionSize);
        for (std::size_t i = start; i < stop; ++i) {
            // Chambers-Mallows-Stuck, symmetric case.
            const double v = pi * (open_uniform(rng) - 0.5);
            const double w = -std::log(open_uniform(rng));
            double x;
            if (a == 1.0) {
                x = std::tan(v);
            } else {
                x = std::sin(a * v) / std::pow(std::cos(v), 1.0 / a) *
                    std::pow(std::cos((1.0 - a) * v) / w, (1.0 - a) / a);
            }
            batch.samples[i] = batch.scale * x;
        }
    }
    return batch;
}

void write_samples_csv(const SampleBatch& batch, std::ostream& out) {
    const auto old = out.precision(std::numeric_limits<double>::max_digits10);
    out << "# delta=" << batch.delta << ",scale=" << batch.scale << ",seed=" << batch.seed << '\n';
    out << "x\n";
    for (double x : batch.samples) out << x << '\n';
    out.precision(old);
}

double ks_distance(std::span<const double> samples, const std::function<double(double)>& cdf) {
    if (samples.empty()) fail(ErrorCode::InvalidArgument, "KS distance needs samples");
    std::vector<double> s(samples.begin(), samples.end());
    std::sort(s.begin(), s.end());
    const double n = static_cast<double>(s.size());
    double d = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double f = cdf(s[i]);
        d = std::max({d, std::abs(f - static_cast<double>(i) / n), std::abs(static_cast<double>(i + 1) / n - f)});
    }
    return d;
}

double truncated_moment(const RealField& w, int p, double L) {
    if (p < 1 || p > 4) fail(ErrorCode::InvalidArgument, "moment order must be 1..4");
    const auto& g = w.grid;
    if (!(L > 0.0) || -L < g.x(0) || L > g.x(g.size() - 1))
        fail(ErrorCode::LOutOfGrid, "moment window must lie inside the grid");
    // Trapezoid over nodes in [-L, L], symmetric pairs summed first so odd moments cancel exactly
    // on grids centred at the origin.
    double s = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double x = g.x(i);
        if (std::abs(x) > L) continue;
        const double wt = std::abs(x) == L ? 0.5 : 1.0;
        s += wt * std::pow(x, p) * w.values[i];
    }
    return s * g.dx();
}

double truncated_moment(const MediumParams& params, double t, int p, double L) {
    if (p < 1 || p > 4) fail(ErrorCode::InvalidArgument, "moment order must be 1..4");
    if (!(L > 0.0) || !std::isfinite(L)) fail(ErrorCode::LOutOfGrid, "moment window must be positive");
    require_positive_time(t);
    if (p % 2 == 1) return 0.0;  // W is even
    auto f = [&](double x) { return std::pow(x, p) * propagator_W_fourier(params, x, t); };
    double s = 0.0;
    double lo = 0.0;
    double hi = std::min(1.0, L);
    while (lo < L) {
        s += quad::adaptive(f, lo, hi, 1e-12, 1e-11).value;
        lo = hi;
        hi = std::min(2.0 * hi, L);
    }
    return 2.0 * s;
}

double truncated_moment2_cauchy(const MediumParams& params, double t, double L) {
    if (params.delta() != 1.0) fail(ErrorCode::DeltaMismatch, "closed Cauchy moment needs delta = 1");
    require_positive_time(t);
    if (!(L > 0.0)) fail(ErrorCode::LOutOfGrid, "moment window must be positive");
    const double a = params.a_delta() * t;
    return 2.0 * a / std::numbers::pi * (L - a * std::atan(L / a));
}

double tail_slope(const MediumParams& params, double t, double x_lo, double x_hi, int points) {
    if (!(x_lo > 0.0) || !(x_hi > x_lo) || points < 2) fail(ErrorCode::InvalidArgument, "bad tail window");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < points; ++i) {
        const double lx = std::log(x_lo) + (std::log(x_hi) - std::log(x_lo)) * i / (points - 1);
        const double w = propagator_W_fourier(params, std::exp(lx), t);
        if (!(w > 0.0)) fail(ErrorCode::QuadratureNoConvergence, "non-positive propagator value in tail window");
        const double ly = std::log(w);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double n = points;
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

RealField continuity_residual(const MediumParams& params, const RealField& rho) {
    const auto lap = laplacian_apply_spectral(params, rho);
    const auto j = flux_apply(params, rho);
    const std::size_t n = rho.grid.size();
    const double h = rho.grid.dx();
    std::vector<double> div(n, 0.0);
    const auto& v = j.values;
    for (std::size_t i = 2; i + 2 < n; ++i)
        div[i] = (v[i - 2] - 8.0 * v[i - 1] + 8.0 * v[i + 1] - v[i + 2]) / (12.0 * h);
    div[1] = (v[2] - v[0]) / (2.0 * h);
    div[n - 2] = (v[n - 1] - v[n - 3]) / (2.0 * h);
    div[0] = (v[1] - v[0]) / h;
    div[n - 1] = (v[n - 1] - v[n - 2]) / h;
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = -lap.values[i] - div[i];
    return RealField(rho.grid, std::move(r));
}

}  // namespace selfsim
