#pragma once

#include "selfsim/grid.hpp"

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace selfsim::spectral {

using cvec = std::vector<std::complex<double>>;

/// Unnormalized DFT a_j = sum_i f_i exp(-2 pi i ij/n).
cvec forward(std::span<const std::complex<double>> data);
cvec forward(std::span<const double> data);

/// Normalized inverse DFT f_i = (1/n) sum_j a_j exp(+2 pi i ij/n).
cvec inverse(std::span<const std::complex<double>> amplitudes);

SpectralField transform(const RealField& field);
SpectralField transform(const ComplexField& field);

/// Inverse transform keeping the real part; use only for conjugate-symmetric amplitudes.
RealField to_real(const SpectralField& spectrum);
ComplexField to_complex(const SpectralField& spectrum);

using RealSymbol = std::function<double(double k)>;
using ComplexSymbol = std::function<std::complex<double>(double k)>;

/// Multiplies the transform of `field` by m(k) and transforms back.
RealField apply_symbol(const RealField& field, const RealSymbol& m);

/// Complex multiplier. With `real_output` the Nyquist bin uses Re m(k_N), so a
/// Hermitian symbol yields a real field; the result still carries the
/// (rounding-level) imaginary parts otherwise.
ComplexField apply_symbol(const RealField& field, const ComplexSymbol& m, bool real_output);

/// Samples of the continuum kernel (1/2pi) int m(k) e^{ikx} dk synthesized on
/// `grid` by the DFT, i.e. the periodized kernel with discrete mass m(0).
/// Grid coordinates are absolute (the kernel is centred at x = 0, which
/// need not be a node).
ComplexField kernel_from_symbol(const Grid1D& grid, const ComplexSymbol& m);
RealField kernel_from_symbol(const Grid1D& grid, const RealSymbol& m);

/// Linear convolution of two equally long real sequences via zero padding:
/// out_i = sum_m a_m b_{i-m} for i in [0, a.size() + b.size() - 1).
std::vector<double> convolve(std::span<const double> a, std::span<const double> b);

}  // namespace selfsim::spectral
