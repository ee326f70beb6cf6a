#include "selfsim/grid.hpp"
#include "selfsim/operator.hpp"
#include "selfsim/params.hpp"

#include <boost/math/special_functions/hypergeometric_1F1.hpp>
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

// Delta exp(-x^2) = -(A/sqrt(pi)) 2^d Gamma((d+1)/2) 1F1((d+1)/2; 1/2; -x^2)
double gaussian_laplacian(const MediumParams& p, double x) {
    const double d = p.delta();
    const double a = 0.5 * (d + 1.0);
    return -p.a_delta() / std::sqrt(pi) * std::pow(2.0, d) * std::tgamma(a) *
           boost::math::hypergeometric_1F1(a, 0.5, -x * x);
}

const double kDeltas[] = {0.25, 0.5, 1.0, 1.5, 1.9};

}  // namespace

TEST(LaplacianPoint, CosineEigenfunction) {
    for (double d : kDeltas) {
        const auto p = make_params(d, 1.0, 1.0);
        for (double k0 : {0.5, 1.0, 3.0}) {
            const auto f = TestFunction::cosine(k0);
            for (double x : {0.0, 0.3, 1.7}) {
                const double expect = -p.a_delta() * std::pow(k0, d) * std::cos(k0 * x);
                const double got = laplacian_apply_point(p, f, x);
                EXPECT_NEAR(got, expect, 1e-6 * p.a_delta() * std::pow(k0, d)) << d << " " << k0 << " " << x;
            }
        }
    }
}

TEST(LaplacianPoint, GaussianClosedForm) {
    for (double d : kDeltas) {
        const auto p = make_params(d, 1.0, 1.0);
        const auto f = TestFunction::gaussian();
        for (double x : {0.0, 0.5, 2.0, 6.0}) {
            const double expect = gaussian_laplacian(p, x);
            EXPECT_NEAR(laplacian_apply_point(p, f, x), expect, 1e-6 * std::abs(gaussian_laplacian(p, 0.0)))
                << d << " " << x;
        }
    }
}

TEST(LaplacianPoint, AnnihilatesConstants) {
    for (double d : kDeltas) {
        const auto p = make_params(d, 1.0, 1.0);
        EXPECT_NEAR(laplacian_apply_point(p, TestFunction::constant(2.5), 0.7), 0.0, 1e-9) << d;
    }
}

TEST(LaplacianPoint, ScalesWithMedium) {
    // Delta_{(d, h, zeta)} is linear in h^d/zeta.
    const auto f = TestFunction::gaussian(1.3, 0.2);
    const double a = laplacian_apply_point(make_params(0.7, 1.0, 1.0), f, 0.4);
    const double b = laplacian_apply_point(make_params(0.7, 2.0, 0.5), f, 0.4);
    EXPECT_NEAR(b, a * std::pow(2.0, 0.7) / 0.5, 1e-8 * std::abs(b));
}

TEST(LaplacianPoint, NeedsATailBound) {
    TestFunction f;
    f.value = [](double x) { return std::exp(-x * x); };
    EXPECT_EQ(code_of([&] { laplacian_apply_point(make_params(0.5, 1, 1), f, 0.0); }), ErrorCode::InvalidArgument);
}

TEST(LaplacianSpectral, CosineEigenfunction) {
    const auto g = Grid1D::centered(2.0 * pi / 64.0, 256);  // four periods of cos(x), 16 of cos(4x)
    for (double d : kDeltas) {
        const auto p = make_params(d, 1.0, 1.0);
        for (double k0 : {1.0, 4.0}) {
            const auto f = RealField::sample(g, [=](double x) { return std::cos(k0 * x); });
            const auto lf = laplacian_apply_spectral(p, f);
            const double lam = p.a_delta() * std::pow(k0, d);
            for (std::size_t i = 0; i < g.size(); ++i)
                ASSERT_NEAR(lf.values[i], -lam * f.values[i], 1e-10 * lam) << d << " " << k0 << " " << i;
        }
    }
}

TEST(LaplacianSpectral, GaussianOnWideGrid) {
    // Periodic images contribute O(L^-(1+delta)); this grid keeps them below 1e-7.
    const auto g = Grid1D::centered(0.04, 1 << 15);
    const auto f = RealField::sample(g, [](double x) { return std::exp(-x * x); });
    for (double d : {1.0, 1.5, 1.9}) {
        const auto p = make_params(d, 1.0, 1.0);
        const auto lf = laplacian_apply_spectral(p, f);
        const double scale = std::abs(gaussian_laplacian(p, 0.0));
        for (double x : {0.0, 1.0, 3.0}) EXPECT_NEAR(lf.values[g.index_of(x)], gaussian_laplacian(p, x), 1e-5 * scale);
    }
}

TEST(LaplacianGrid, MatchesClosedForm) {
    const auto g = Grid1D::centered(0.02, 2048);
    const auto f = RealField::sample(g, [](double x) { return std::exp(-x * x); });
    for (double d : kDeltas) {
        const auto p = make_params(d, 1.0, 1.0);
        const auto lf = laplacian_apply_grid(p, f);
        const double scale = std::abs(gaussian_laplacian(p, 0.0));
        for (double x : {0.0, 0.5, 2.0, 8.0}) EXPECT_NEAR(lf.values[g.index_of(x)], gaussian_laplacian(p, x), 1e-6 * scale) << d;
    }
}

TEST(WeylMarchaud, RecombinesToLaplacian) {
    for (double d : {0.25, 0.5, 0.75}) {
        const auto p = make_params(d, 1.0, 1.0);
        const auto f = TestFunction::gaussian(1.0, 0.3);
        for (double x : {-1.0, 0.0, 0.8}) {
            const auto z = laplacian_from_weyl_marchaud(p, f, x);
            const double ref = laplacian_apply_point(p, f, x);
            EXPECT_NEAR(z.real(), ref, 1e-7 * std::abs(ref) + 1e-9) << d << " " << x;
            EXPECT_NEAR(z.imag(), 0.0, 1e-9) << d << " " << x;
        }
    }
}

TEST(WeylMarchaud, ExponentialProfile) {
    // At x = 0 both one-sided integrals of e^{-|x|} reduce to int (1 - e^{-t}) t^{-1-d} dt.
    TestFunction f;
    f.value = [](double x) { return std::exp(-std::abs(x)); };
    f.sup_abs = 1.0;
    f.tail_mass = [](double r) { return 2.0 * std::exp(-std::max(r, 0.0)); };
    for (double d : {0.3, 0.5, 0.8}) {
        const auto p = make_params(d, 1.0, 1.0);
        const auto l = weyl_marchaud(p, f, 0.0, Side::Left);
        const auto r = weyl_marchaud(p, f, 0.0, Side::Right);
        EXPECT_NEAR(l.real(), 1.0, 1e-8) << d;
        EXPECT_NEAR(l.imag(), 0.0, 1e-15);
        EXPECT_NEAR(std::abs(r - std::polar(1.0, pi * d)), 0.0, 1e-8) << d;
    }
    EXPECT_EQ(code_of([&] { weyl_marchaud(make_params(1.0, 1, 1), f, 0.0, Side::Left); }), ErrorCode::DeltaOutOfRange);
    EXPECT_EQ(code_of([&] { weyl_marchaud(make_params(1.5, 1, 1), f, 0.0, Side::Right); }), ErrorCode::DeltaOutOfRange);
}

TEST(WeylMarchaud, RightSideCarriesPhase) {
    const auto p = make_params(0.5, 1.0, 1.0);
    const auto f = TestFunction::gaussian();
    const auto l = weyl_marchaud(p, f, 0.0, Side::Left);
    const auto r = weyl_marchaud(p, f, 0.0, Side::Right);
    // Even f at the origin: the two real integrals coincide.
    EXPECT_NEAR(std::abs(r), std::abs(l), 1e-9 * std::abs(l));
    EXPECT_NEAR(std::arg(r), 0.5 * pi, 1e-9);  // e^{i pi / 2}
}

TEST(Flux, PointMatchesGrid) {
    const auto g = Grid1D::centered(0.01, 1 << 13);
    const auto rho = RealField::sample(g, [](double x) { return std::exp(-x * x); });
    for (double d : {0.5, 1.0, 1.5}) {
        const auto p = make_params(d, 1.0, 1.0);
        const auto j = flux_apply(p, rho);
        for (double x : {-1.0, 0.5, 2.0}) {
            const double ref = flux_apply_point(p, TestFunction::gaussian(), x);
            EXPECT_NEAR(j.values[g.index_of(x)], ref, 1e-6 * std::abs(ref)) << d << " " << x;
        }
        EXPECT_NEAR(j.values[g.index_of(0.0)], 0.0, 1e-12);
    }
}

TEST(FracKernelY, ClosedForm) {
    EXPECT_NEAR(frac_kernel_y(0.5, 1.0, 0.0), -0.282094791773878, 1e-14);
    EXPECT_EQ(frac_kernel_y(0.5, -1.0, 0.0), 0.0);
    EXPECT_EQ(frac_kernel_y(2.0, 1.5, 0.0), 0.0);
    // The regularized form tends to the limit as eps -> 0.
    EXPECT_NEAR(frac_kernel_y(0.5, 1.0, 1e-7), -0.282094791773878, 1e-6);
    EXPECT_NEAR(frac_kernel_y(0.5, -1.0, 1e-7), 0.0, 1e-6);
}

TEST(FracKernelY, Rejections) {
    EXPECT_EQ(code_of([] { frac_kernel_y(-1.0, 1.0, 0.0); }), ErrorCode::AlphaOutOfRange);
    EXPECT_EQ(code_of([] { frac_kernel_y(0.5, 0.0, 0.0); }), ErrorCode::OriginSingular);
}

TEST(FracDerivative, IntegerOrderIsDerivative) {
    const auto g = Grid1D::centered(2.0 * pi / 32.0, 128);
    const auto f = RealField::sample(g, [](double x) { return std::sin(2.0 * x); });
    const auto df = frac_derivative_spectral_real(1.0, f);
    for (std::size_t i = 0; i < g.size(); ++i) ASSERT_NEAR(df.values[i], 2.0 * std::cos(2.0 * g.x(i)), 1e-12);
}

TEST(FracDerivative, HalfOrdersCompose) {
    const auto g = Grid1D::centered(2.0 * pi / 32.0, 128);
    const auto f = RealField::sample(g, [](double x) { return std::cos(x) + 0.5 * std::sin(3.0 * x); });
    const auto half = frac_derivative_spectral_real(0.5, frac_derivative_spectral_real(0.5, f));
    const auto one = frac_derivative_spectral_real(1.0, f);
    for (std::size_t i = 0; i < g.size(); ++i) ASSERT_NEAR(half.values[i], one.values[i], 1e-12);
    EXPECT_EQ(code_of([&] { frac_derivative_spectral(-0.5, f); }), ErrorCode::AlphaOutOfRange);
}
