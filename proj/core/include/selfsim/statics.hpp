#pragma once

#include "selfsim/grid.hpp"
#include "selfsim/params.hpp"

#include <vector>

namespace selfsim {

/// Half-width of the excluded band around delta = 1 where g0 diverges.
inline constexpr double kDeltaPoleGuard = 1e-6;

/// g0 = zeta delta tan(pi delta / 2) / (2 pi h^delta). Throws DeltaPole near delta = 1.
double greens_static_prefactor(const MediumParams& params);

/// g(x) = g0 |x|^(delta - 1). Throws OriginSingular at x = 0 for delta < 1 (returns 0 there for delta > 1).
double greens_static(const MediumParams& params, double x);

enum class PoissonMode {
    /// Periodic grid, k = 0 mode of u set to zero.
    Periodic,
    /// Infinite medium: zero-padded convolution with the cell-averaged Green's function.
    FreeSpace,
};

struct PoissonOptions {
    PoissonMode mode = PoissonMode::Periodic;
    /// Periodic mode only: remove the mean of the force instead of rejecting it.
    bool project_mean = false;
    /// Mean force tolerated without projection, relative to max |f|.
    double mean_tol = 1e-10;
};

/// Solves Delta u + f = 0.
RealField poisson_solve(const MediumParams& params, const RealField& force, const PoissonOptions& opts = {});

/// Exponent of a self-similar potential with its exclusion flags.
struct PotentialSpec {
    double alpha;
    bool even_integer;     // b vanishes away from the origin
    bool excluded_pole;    // alpha < -1 odd integer

    static PotentialSpec make(double alpha);
};

/// b_alpha(x) = (1/2pi) int |k|^alpha e^{ikx} dk, regularized.
///
/// eps = 0 gives the closed form -(alpha!/pi) |x|^(-alpha-1) sin(pi alpha / 2) for x != 0
/// (written as |x|^(-alpha-1) / (2 cos(pi alpha / 2) Gamma(-alpha)) for alpha < -1).
/// eps > 0 evaluates (alpha!/pi) Re (eps - i x)^(-alpha-1), defined for alpha > -1 only.
double potential_b(double alpha, double x, double eps = 0.0);

/// The alpha < -1 form |x|^(-alpha-1) / (2 cos(pi alpha / 2) Gamma(-alpha)), for any alpha
/// where it is finite. Exposed for branch comparisons.
double potential_b_reflected(double alpha, double x);

/// q_n(x) = A^n b_{n delta}(x). q_0 is the unit point mass at the origin and is
/// reported as a token; q_{-1} is the static Green's function.
struct QnValue {
    double smooth = 0.0;
    /// Weight of delta(x) carried by this term (1 for n = 0, else 0).
    double origin_weight = 0.0;
};
QnValue q_n(const MediumParams& params, int n, double x);

/// I_alpha(a) = int_a^inf b_alpha = -(Gamma(alpha)/pi) a^-alpha sin(pi alpha / 2), alpha > 0, a > 0.
double integral_I(double alpha, double a);
/// J_alpha(a) = int_0^a b_alpha (regularized), the compensating part: J = -I.
double integral_J(double alpha, double a);

struct AnnihilationReport {
    double alpha = 0.0;
    std::vector<double> eps;
    std::vector<double> values;
    double max_abs = 0.0;
};

/// Evaluates Re int_0^inf dx / (eps - i x)^(alpha + 1) for each eps: numeric
/// quadrature on [0, S] plus the closed antiderivative beyond S.
AnnihilationReport constant_annihilation_check(double alpha,
                                               const std::vector<double>& eps = {1e-1, 1e-2, 1e-3, 1e-4});

}  // namespace selfsim
