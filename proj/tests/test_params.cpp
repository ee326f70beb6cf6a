#include "selfsim/params.hpp"

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

}  // namespace

TEST(MakeParams, CauchyCoefficient) {
    EXPECT_NEAR(make_params(1.0, 1.0, 0.1).a_delta(), 10.0 * pi, 1e-12);
    EXPECT_NEAR(make_params(1.0, 1.0, 1.0).a_delta(), pi, 1e-14);
}

TEST(MakeParams, FrozenCoefficients) {
    // 30-digit reference values of (h^d/zeta) pi / (Gamma(1+d) sin(pi d/2)).
    struct Case {
        double delta, a;
    } cases[] = {{0.25, 9.05709928164040719830},
                 {0.5, 5.01325654926200100483},
                 {1.5, 3.34217103284133400322},
                 {1.9, 10.9899188679967102891}};
    for (const auto& c : cases) EXPECT_NEAR(make_params(c.delta, 1.0, 1.0).a_delta(), c.a, 1e-13 * c.a) << c.delta;
}

TEST(MakeParams, ScalesWithHAndZeta) {
    const auto p = make_params(0.5, 4.0, 0.25);
    EXPECT_NEAR(p.a_delta(), 5.01325654926200100483 * 2.0 / 0.25, 1e-12);
    EXPECT_NEAR(p.kernel_scale(), 8.0, 1e-14);
}

TEST(MakeParams, Rejections) {
    EXPECT_EQ(code_of([] { make_params(2.0, 1, 1); }), ErrorCode::DeltaOutOfRange);
    EXPECT_EQ(code_of([] { make_params(0.0, 1, 1); }), ErrorCode::DeltaOutOfRange);
    EXPECT_EQ(code_of([] { make_params(-0.5, 1, 1); }), ErrorCode::DeltaOutOfRange);
    EXPECT_EQ(code_of([] { make_params(0.5, 0.0, 1); }), ErrorCode::NonPositiveScale);
    EXPECT_EQ(code_of([] { make_params(0.5, 1, -1); }), ErrorCode::NonPositiveScale);
    EXPECT_EQ(code_of([] { make_params(NAN, 1, 1); }), ErrorCode::InvalidArgument);
}

TEST(QuadratureConfig, Validation) {
    QuadratureConfig q;
    EXPECT_NO_THROW(q.validate());
    q.epsilon = 0.0;
    EXPECT_EQ(code_of([&] { q.validate(); }), ErrorCode::InvalidArgument);
}

TEST(FactorialExt, Values) {
    EXPECT_DOUBLE_EQ(factorial_ext(0.0), 1.0);
    EXPECT_NEAR(factorial_ext(0.5), std::sqrt(pi) / 2.0, 1e-15);
    EXPECT_NEAR(factorial_ext(-2.5), 2.36327180120735470306, 1e-13);
    // Gamma(-1.5) = Gamma(0.5) / ((-1.5)(-0.5))
    EXPECT_NEAR(factorial_ext(-2.5), std::sqrt(pi) / 0.75, 1e-13);
    EXPECT_NEAR(factorial_ext(-1.5), std::tgamma(-0.5), 1e-13);
}

TEST(FactorialExt, Poles) {
    for (double a : {-1.0, -2.0, -3.0, -10.0}) EXPECT_EQ(code_of([&] { factorial_ext(a); }), ErrorCode::PoleError) << a;
}

TEST(FactorialExt, EulerReflection) {
    for (double a = 0.05; a < 1.0; a += 0.05)
        EXPECT_NEAR(factorial_ext(a - 1.0) * factorial_ext(-a), pi / std::sin(pi * a), 1e-12 * pi / std::sin(pi * a));
}

TEST(Dispersion, ClosedForm) {
    EXPECT_EQ(dispersion(make_params(0.7, 1, 1), 0.0), 0.0);
    EXPECT_NEAR(dispersion(make_params(1.0, 1, 1), 2.0), 2.0 * pi, 1e-14);
    EXPECT_NEAR(dispersion(make_params(0.5, 1, 1), 4.0), 10.0265130985240020097, 1e-13);
}

TEST(Dispersion, PositiveAndHomogeneous) {
    for (double d : {0.1, 0.5, 1.0, 1.5, 1.99}) {
        const auto p = make_params(d, 1.3, 0.2);
        for (double k : {-7.0, -0.3, 1e-3, 2.0}) {
            EXPECT_GT(dispersion(p, k), 0.0);
            for (double c : {-2.0, 0.5, 3.0})
                EXPECT_NEAR(dispersion(p, c * k), std::pow(std::abs(c), d) * dispersion(p, k), 1e-12 * dispersion(p, c * k));
        }
    }
}

TEST(DispersionQuadrature, AgreesWithClosedForm) {
    for (double d : {0.25, 0.5, 1.0, 1.5, 1.9}) {
        const auto p = make_params(d, 1, 1);
        for (double k : {0.1, 1.0, 10.0}) {
            const double closed = dispersion(p, k);
            EXPECT_LT(std::abs(dispersion_quadrature(p, k) - closed) / closed, 1e-6) << d << " " << k;
        }
    }
    EXPECT_EQ(dispersion_quadrature(make_params(0.5, 1, 1), 0.0), 0.0);
}
