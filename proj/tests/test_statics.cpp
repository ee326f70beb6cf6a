#include "selfsim/grid.hpp"
#include "selfsim/operator.hpp"
#include "selfsim/params.hpp"
#include "selfsim/statics.hpp"

#include <boost/math/quadrature/ooura_fourier_integrals.hpp>
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace selfsim;

namespace {

constexpr double pi = std::numbers::pi;

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no selfsim::Error thrown";
    return ErrorCode::InvalidArgument;
}

// J_alpha(a) = (1/pi) int_0^inf k^(alpha-1) sin(k a) dk in the Abel sense. For
// 1 < alpha < 2 two integrations by parts give -(alpha-1)(alpha-2)/a^2 times the
// convergent integral of k^(alpha-3) sin(k a).
double j_by_oscillatory_quadrature(double alpha, double a) {
    boost::math::quadrature::ooura_fourier_sin<double> sine;
    if (alpha < 1.0) return sine.integrate([=](double k) { return std::pow(k, alpha - 1.0); }, a).first / pi;
    const double c = -(alpha - 1.0) * (alpha - 2.0) / (a * a);
    return c * sine.integrate([=](double k) { return std::pow(k, alpha - 3.0); }, a).first / pi;
}

}  // namespace

TEST(GreensStatic, NormalizationIdentity) {
    for (double d : {0.25, 0.5, 1.5}) {
        const auto p = make_params(d, 1.0, 1.0);
        const double lhs = 2.0 * greens_static_prefactor(p) * std::tgamma(d) * std::cos(0.5 * pi * d) * p.a_delta();
        EXPECT_NEAR(lhs, 1.0, 1e-12) << d;
    }
}

TEST(GreensStatic, FrozenValueAndSymmetry) {
    const auto p = make_params(0.5, 1.0, 1.0);
    EXPECT_NEAR(greens_static(p, 1.0), 0.0795774715459476679, 1e-16);
    EXPECT_EQ(greens_static(p, 2.3), greens_static(p, -2.3));
    EXPECT_NEAR(greens_static(p, 4.0), 0.5 * greens_static(p, 1.0), 1e-16);
}

TEST(GreensStatic, Rejections) {
    EXPECT_EQ(code_of([] { greens_static(make_params(1.0, 1, 1), 1.0); }), ErrorCode::DeltaPole);
    EXPECT_EQ(code_of([] { greens_static(make_params(1.0 + 5e-7, 1, 1), 1.0); }), ErrorCode::DeltaPole);
    EXPECT_EQ(code_of([] { greens_static(make_params(0.5, 1, 1), 0.0); }), ErrorCode::OriginSingular);
    EXPECT_NO_THROW(greens_static(make_params(1.0 + 1e-5, 1, 1), 1.0));
}

TEST(Poisson, PeriodicRoundTrip) {
    const auto g = Grid1D::centered(0.05, 1 << 12);
    const auto f = RealField::sample(g, [](double x) { return (1.0 - 2.0 * x * x) * std::exp(-x * x); });
    for (double d : {0.25, 0.5, 1.5}) {
        const auto p = make_params(d, 1.0, 1.0);
        const auto u = poisson_solve(p, f);
        const auto lu = laplacian_apply_spectral(p, u);
        for (std::size_t i = 0; i < g.size(); ++i) ASSERT_NEAR(lu.values[i], -f.values[i], 1e-6 * f.max_abs()) << d;
    }
}

TEST(Poisson, MeanHandling) {
    const auto g = Grid1D::centered(0.05, 1 << 10);
    const auto f = RealField::sample(g, [](double x) { return std::exp(-x * x); });
    const auto p = make_params(0.5, 1.0, 1.0);
    EXPECT_EQ(code_of([&] { poisson_solve(p, f); }), ErrorCode::NonZeroMeanForce);
    PoissonOptions o;
    o.project_mean = true;
    const auto u = poisson_solve(p, f, o);
    double mean = 0.0;
    for (double v : u.values) mean += v;
    EXPECT_NEAR(mean / static_cast<double>(g.size()), 0.0, 1e-12);
}

TEST(Poisson, FreeSpaceFarField) {
    // A unit-mass Gaussian force looks like a point force from far away.
    const auto g = Grid1D::centered(0.05, 1 << 14);
    const auto f = RealField::sample(g, [](double x) { return std::exp(-x * x) / std::sqrt(pi); });
    PoissonOptions o;
    o.mode = PoissonMode::FreeSpace;
    for (double d : {0.5, 1.5}) {
        const auto p = make_params(d, 1.0, 1.0);
        const auto u = poisson_solve(p, f, o);
        const double x = 300.0;
        EXPECT_NEAR(u.values[g.index_of(x)], greens_static(p, x), 1e-5 * std::abs(greens_static(p, x))) << d;
    }
}

TEST(Potentials, FrozenValues) {
    EXPECT_NEAR(potential_b(0.5, 1.0), -0.199471140200716339, 1e-15);
    EXPECT_NEAR(potential_b(-0.5, 1.0), 0.398942280401432678, 1e-15);
}

TEST(Potentials, SymmetryAndEvenZeros) {
    for (double a : {-0.5, 0.5, 1.5, 3.3, -1.5, -2.5})
        for (double x : {0.3, 1.0, 7.0}) EXPECT_EQ(potential_b(a, x), potential_b(a, -x)) << a << " " << x;
    for (double a : {0.0, 2.0, 4.0}) EXPECT_EQ(potential_b(a, 1.7), 0.0);
}

TEST(Potentials, ReflectedBranch) {
    for (double a : {-1.5, -2.5, -3.7})
        for (double x : {0.5, 1.0, 3.0}) {
            const double r = potential_b_reflected(a, x);
            EXPECT_NEAR(potential_b(a, x), r, 1e-12 * std::abs(r)) << a << " " << x;
        }
    // The two forms coincide where both are finite.
    for (double a : {-0.5, 0.5, 1.5}) EXPECT_NEAR(potential_b(a, 2.0), potential_b_reflected(a, 2.0), 1e-14);
}

TEST(Potentials, RegularizedLimit) {
    for (double a : {-0.5, 0.5, 1.5}) EXPECT_NEAR(potential_b(a, 1.0, 1e-9), potential_b(a, 1.0), 1e-7) << a;
}

TEST(Potentials, Rejections) {
    EXPECT_EQ(code_of([] { potential_b(-1.0, 1.0); }), ErrorCode::ExcludedAlpha);
    EXPECT_EQ(code_of([] { potential_b(-3.0, 1.0); }), ErrorCode::ExcludedAlpha);
    EXPECT_EQ(code_of([] { potential_b(0.5, 0.0); }), ErrorCode::OriginSingular);
    EXPECT_TRUE(PotentialSpec::make(2.0).even_integer);
    EXPECT_TRUE(PotentialSpec::make(-3.0).excluded_pole);
    EXPECT_FALSE(PotentialSpec::make(-2.0).excluded_pole);
}

TEST(Potentials, HierarchyQn) {
    const auto p = make_params(0.5, 1.0, 1.0);
    const auto q0 = q_n(p, 0, 1.0);
    EXPECT_EQ(q0.origin_weight, 1.0);
    EXPECT_EQ(q0.smooth, 0.0);
    EXPECT_NEAR(q_n(p, -1, 2.0).smooth, greens_static(p, 2.0), 1e-15);
    EXPECT_NEAR(q_n(p, 1, 2.0).smooth, p.a_delta() * potential_b(0.5, 2.0), 1e-14);
    EXPECT_NEAR(q_n(p, 3, 2.0).smooth, std::pow(p.a_delta(), 3) * potential_b(1.5, 2.0), 1e-12);
}

TEST(Potentials, CompensatingIntegrals) {
    struct Case {
        double alpha, a, j;
    } cases[] = {{0.5, 0.5, 0.564189583547756}, {0.5, 1.0, 0.398942280401433}, {0.5, 2.0, 0.282094791773878},
                 {1.5, 0.5, 0.564189583547756}, {1.5, 1.0, 0.199471140200716}, {1.5, 2.0, 0.0705236979434695}};
    for (const auto& c : cases) {
        EXPECT_NEAR(integral_I(c.alpha, c.a) + integral_J(c.alpha, c.a), 0.0, 1e-12);
        EXPECT_NEAR(integral_J(c.alpha, c.a), c.j, 1e-14);
        EXPECT_NEAR(j_by_oscillatory_quadrature(c.alpha, c.a), c.j, 1e-4) << c.alpha << " " << c.a;
    }
}

TEST(Potentials, ConstantAnnihilation) {
    for (double a : {0.5, 1.5}) {
        const auto r = constant_annihilation_check(a);
        EXPECT_EQ(r.values.size(), 4u);
        EXPECT_LT(r.max_abs, 1e-8) << a;
    }
}
