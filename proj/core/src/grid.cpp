#include "selfsim/grid.hpp"

#include "selfsim/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace selfsim {

Grid1D::Grid1D(double x_min, double dx, std::size_t n) : x_min_(x_min), dx_(dx), n_(n) {
    if (n < 8) fail(ErrorCode::GridTooSmall, "grid needs at least 8 points, got " + std::to_string(n));
    if (!(dx > 0.0) || !std::isfinite(dx)) fail(ErrorCode::InvalidArgument, "grid spacing must be positive");
    if (!std::isfinite(x_min)) fail(ErrorCode::InvalidArgument, "grid origin must be finite");
}

Grid1D Grid1D::centered(double dx, std::size_t n) {
    return Grid1D(-static_cast<double>(n / 2) * dx, dx, n);
}

double Grid1D::k(std::size_t j) const noexcept {
    const auto n = static_cast<long long>(n_);
    auto jj = static_cast<long long>(j);
    if (jj >= (n + 1) / 2) jj -= n;
    return 2.0 * std::numbers::pi * static_cast<double>(jj) / (static_cast<double>(n_) * dx_);
}

std::size_t Grid1D::index_of(double x) const noexcept {
    const double r = std::round((x - x_min_) / dx_);
    if (r <= 0.0) return 0;
    return std::min(static_cast<std::size_t>(r), n_ - 1);
}

RealField::RealField(Grid1D g, std::vector<double> v) : grid(g), values(std::move(v)) {
    if (values.size() != grid.size()) fail(ErrorCode::InvalidArgument, "field length does not match grid");
    for (double x : values) {
        if (!std::isfinite(x)) fail(ErrorCode::InvalidArgument, "field samples must be finite");
    }
}

RealField RealField::sample(const Grid1D& g, const std::function<double(double)>& f) {
    std::vector<double> v(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) v[i] = f(g.x(i));
    return RealField(g, std::move(v));
}

double RealField::mass() const noexcept {
    double s = 0.0;
    for (double x : values) s += x;
    return s * grid.dx();
}

double RealField::max_abs() const noexcept {
    double m = 0.0;
    for (double x : values) m = std::max(m, std::abs(x));
    return m;
}

ComplexField::ComplexField(Grid1D g, std::vector<std::complex<double>> v)
    : grid(g), values(std::move(v)) {
    if (values.size() != grid.size()) fail(ErrorCode::InvalidArgument, "field length does not match grid");
}

SpectralField::SpectralField(Grid1D g, std::vector<std::complex<double>> a)
    : grid(g), amplitudes(std::move(a)) {
    if (amplitudes.size() != grid.size()) fail(ErrorCode::InvalidArgument, "spectrum length does not match grid");
}

double inner_product(const RealField& f, const RealField& g) {
    if (!(f.grid == g.grid)) fail(ErrorCode::InvalidArgument, "inner product of fields on different grids");
    double s = 0.0;
    for (std::size_t i = 0; i < f.values.size(); ++i) s += f.values[i] * g.values[i];
    return s * f.grid.dx();
}

}  // namespace selfsim
