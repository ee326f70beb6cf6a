#pragma once

// Shared machinery for increment integrals int_0^inf [c0 f(x) + sum w f(x + s tau)] tau^-beta dtau,
// on analytic functions (adaptive quadrature) and on grid samples (product integration).

#include "selfsim/operator.hpp"
#include "selfsim/quadrature.hpp"

#include <span>
#include <vector>

namespace selfsim::detail {

struct Shift {
    double sigma;
    double weight;
};

/// The bracket must vanish at tau = 0 like tau^model.p1 with model.p1 - beta > -1.
/// A nonzero c0 requires beta > 1.
quad::Estimate increment_integral(const TestFunction& f, double x, double c0, std::span<const Shift> shifts,
                                  double beta, quad::SmallTauModel model, const QuadratureConfig& qcfg);

/// Weights w_0..w_{R+1} with int_0^{R h} E(tau) tau^p dtau ~ sum w_m E(m h) for even, smooth E,
/// using cubic interpolation on each cell (E(-h) folded onto E(h)). Requires p > -1.
std::vector<double> product_weights(std::size_t R, double p, double h);

/// Extrapolation of an even function to 0 from its values at h, 2h, 3h.
inline constexpr double kEvenFit[3] = {1.5, -0.6, 0.1};

}  // namespace selfsim::detail
