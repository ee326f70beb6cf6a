#pragma once

#include <functional>
#include <span>

namespace selfsim::quad {

using Integrand = std::function<double(double)>;

struct Estimate {
    double value = 0.0;
    double error = 0.0;
};

/// Adaptive Gauss-Kronrod (31 points) on a finite interval. Throws
/// QuadratureNoConvergence when the error estimate stays above
/// max(abs_tol, rel_tol * L1) at the subdivision limit.
Estimate adaptive(const Integrand& f, double a, double b, double abs_tol, double rel_tol,
                  unsigned max_depth = 18);

/// Leading small-tau behaviour D(tau) ~ c1 tau^p1 + c2 tau^p2 of a difference
/// quotient numerator. Used to close the innermost panel analytically.
struct SmallTauModel {
    double p1;
    double p2;
};

/// Integral of D(tau) * tau^(-beta) over [0, split].
///
/// Geometric panels [split 2^-(m+1), split 2^-m] are integrated adaptively
/// until the two-term model D(tau) ~ c1 tau^p1 + c2 tau^p2, fitted through
/// D(tau_c) and D(tau_c / 2), predicts D(tau_c / 4) to 1e-9 relative or to the
/// rounding level of `scale` (the magnitude of the terms making up D). The
/// model is then integrated exactly over [0, tau_c]. Requires p1 - beta > -1.
Estimate singular_inner(const Integrand& D, double beta, double split, SmallTauModel model,
                        double abs_tol, double rel_tol, double scale, int max_levels = 40);

/// Wynn epsilon extrapolation of a sequence of partial sums; returns the
/// estimate from the deepest even column together with its last increment.
Estimate wynn_epsilon(std::span<const double> partial_sums);

/// Richardson extrapolation of values computed at step sizes h0, h0/ratio,
/// h0/ratio^2, ... whose error expands in h^p0, h^(p0+dp), ...
double richardson(std::span<const double> values, double ratio, double p0, double dp);

}  // namespace selfsim::quad
