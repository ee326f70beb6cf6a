#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace selfsim {

/// Uniform periodic sampling grid x_i = x_min + i dx, i in [0, n).
///
/// The dual wavenumber grid is k_j = 2 pi j / (n dx) for j in [-n/2, n/2),
/// stored in FFT order (non-negative wavenumbers first).
class Grid1D {
public:
    /// Throws GridTooSmall if n < 8, InvalidArgument if dx <= 0.
    Grid1D(double x_min, double dx, std::size_t n);

    /// Grid of n points centred on the origin: x_min = -(n/2) dx, so x = 0 is a node.
    static Grid1D centered(double dx, std::size_t n);

    double x_min() const noexcept { return x_min_; }
    double dx() const noexcept { return dx_; }
    std::size_t size() const noexcept { return n_; }
    double length() const noexcept { return dx_ * static_cast<double>(n_); }

    // Offset in cells first, so nodes of a centred grid are exact multiples of dx.
    double x(std::size_t i) const noexcept { return dx_ * (static_cast<double>(i) + x_min_ / dx_); }
    /// Wavenumber of FFT bin j.
    double k(std::size_t j) const noexcept;
    /// True for the unpaired Nyquist bin (even n only).
    bool is_nyquist(std::size_t j) const noexcept { return n_ % 2 == 0 && j == n_ / 2; }

    /// Index of the node nearest to x (clamped).
    std::size_t index_of(double x) const noexcept;

    bool operator==(const Grid1D& other) const noexcept = default;

private:
    double x_min_;
    double dx_;
    std::size_t n_;
};

struct RealField {
    Grid1D grid;
    std::vector<double> values;

    RealField(Grid1D g, std::vector<double> v);
    explicit RealField(Grid1D g) : grid(g), values(g.size(), 0.0) {}

    static RealField sample(const Grid1D& g, const std::function<double(double)>& f);

    /// Discrete mass sum(values) * dx.
    double mass() const noexcept;
    double max_abs() const noexcept;
};

struct ComplexField {
    Grid1D grid;
    std::vector<std::complex<double>> values;

    ComplexField(Grid1D g, std::vector<std::complex<double>> v);
};

/// Fourier amplitudes of a field, a_j = sum_i f_i exp(-2 pi i i j / n), in FFT order.
/// Phases are relative to x_min.
struct SpectralField {
    Grid1D grid;
    std::vector<std::complex<double>> amplitudes;

    SpectralField(Grid1D g, std::vector<std::complex<double>> a);
};

/// Euclidean inner product sum f_i g_i dx. Grids must match.
double inner_product(const RealField& f, const RealField& g);

}  // namespace selfsim
