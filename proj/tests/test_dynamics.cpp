#include "selfsim/dynamics.hpp"
#include "selfsim/grid.hpp"
#include "selfsim/params.hpp"
#include "selfsim/statics.hpp"

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

struct KernelCase {
    double delta, x, t, q, qdot;
};

// 30-digit evaluations of the continuum Fourier integrals.
const KernelCase kKernelCases[] = {
    {1.0, 2.0, 1.0, 0.0409368822229861037920, 0.119909695706237628993},
    {0.5, 1.0, 1.0, 0.107425351310831287005, 0.218434703195465041768},
    {1.5, 2.0, 1.0, 0.0423826563515050354845, 0.156064295965529563026},
    {0.5, 1.0, 0.1, 1.66000747997657930896e-4, 0.00496671902647901460840},
};

}  // namespace

TEST(KernelSeries, FrozenValues) {
    for (const auto& c : kKernelCases) {
        const auto p = make_params(c.delta, 1.0, 1.0);
        EXPECT_NEAR(kernel_Q_series(p, c.x, c.t), c.q, 1e-11 * c.q) << c.delta;
        EXPECT_NEAR(kernel_Qdot_series(p, c.x, c.t), c.qdot, 1e-11 * c.qdot) << c.delta;
        EXPECT_EQ(kernel_Q_series(p, -c.x, c.t), kernel_Q_series(p, c.x, c.t));
    }
}

TEST(KernelFourier, FrozenValues) {
    for (const auto& c : kKernelCases) {
        const auto p = make_params(c.delta, 1.0, 1.0);
        EXPECT_NEAR(kernel_Q_fourier(p, c.x, c.t), c.q, 1e-11 * c.q) << c.delta;
        EXPECT_NEAR(kernel_Qdot_fourier(p, c.x, c.t), c.qdot, 1e-11 * c.qdot) << c.delta;
    }
}

TEST(KernelSeries, AgreesWithFourierOverRegion) {
    for (double d : {0.5, 1.0, 1.5}) {
        const auto p = make_params(d, 1.0, 1.0);
        for (double x = 1.0; x <= 5.0; x += 1.0)
            for (double t : {0.25, 1.0}) {
                const double q = kernel_Q_fourier(p, x, t);
                const double qd = kernel_Qdot_fourier(p, x, t);
                EXPECT_NEAR(kernel_Q_series(p, x, t), q, 1e-6 * std::abs(q)) << d << " " << x << " " << t;
                EXPECT_NEAR(kernel_Qdot_series(p, x, t), qd, 1e-6 * std::abs(qd)) << d << " " << x << " " << t;
            }
    }
}

TEST(KernelSeries, EdgeCases) {
    const auto p = make_params(0.5, 1.0, 1.0);
    EXPECT_EQ(kernel_Q_series(p, 1.0, 0.0), 0.0);
    EXPECT_EQ(code_of([&] { kernel_Q_series(p, 0.0, 1.0); }), ErrorCode::OriginSingular);
    SeriesPolicy tight;
    tight.max_terms = 5;
    EXPECT_THROW(kernel_Q_series(p, 0.5, 5.0, tight), SeriesBudgetError);
    const auto r = kernel_Q_series_result(p, 1.0, 1.0);
    EXPECT_GT(r.terms, 1);
    EXPECT_LE(r.tail_bound, 1e-14);
}

TEST(KernelSeries, TermRatiosFollowScaling) {
    for (double d : {0.5, 1.0, 1.5}) {
        const auto p = make_params(d, 1.0, 1.0);
        for (auto kind : {KernelKind::Q, KernelKind::Qdot}) {
            const auto r = series_term_ratios(p, 1.0, 1.0, 200, kind);
            for (std::size_t n = 5; n + 1 < r.size(); ++n) ASSERT_LT(r[n + 1], r[n]) << d << " " << n;
            // r_n (2n)^(2-d) settles to a constant.
            auto scaled = [&](std::size_t n) { return r[n - 1] * std::pow(2.0 * n, 2.0 - d); };
            EXPECT_NEAR(scaled(200) / scaled(100), 1.0, 0.02) << d;
        }
    }
}

TEST(KernelGrid, InitialConditions) {
    const auto g = Grid1D::centered(0.01, 4096);
    for (double d : {0.5, 1.0, 1.5}) {
        const auto p = make_params(d, 1.0, 1.0);
        const auto q = kernel_Q_spectral(p, g, 0.0);
        for (double v : q.values) ASSERT_EQ(v, 0.0);
        EXPECT_NEAR(kernel_Qdot_spectral(p, g, 0.0).mass(), 1.0, 1e-9);
        EXPECT_NEAR(kernel_Qdot_spectral(p, g, 0.7).mass(), 1.0, 1e-9);
        EXPECT_NEAR(kernel_Q_spectral(p, g, 0.7).mass(), 0.7, 1e-9);
    }
}

TEST(KernelGrid, ConvergesToContinuum) {
    // The symbol sin(w t)/w decays slowly, so the sampled kernel is only O(dx) accurate.
    const auto g = Grid1D::centered(0.01, 1 << 18);
    for (double d : {0.5, 1.0, 1.5}) {
        const auto p = make_params(d, 1.0, 1.0);
        const auto q = kernel_Q_spectral(p, g, 1.0);
        for (double x : {1.0, 3.0}) {
            const double ref = kernel_Q_fourier(p, x, 1.0);
            EXPECT_NEAR(q.values[g.index_of(x)], ref, 1e-2 * std::abs(ref)) << d << " " << x;
        }
    }
}

TEST(CauchyEvolve, ConservesEnergy) {
    const auto g = Grid1D::centered(0.05, 4096);
    for (double d : {0.5, 1.0, 1.5}) {
        const auto p = make_params(d, 1.0, 1.0);
        CauchyState s(RealField::sample(g, [](double x) { return std::exp(-x * x); }),
                      RealField::sample(g, [](double x) { return x * std::exp(-x * x); }));
        const double e0 = energy(p, s);
        for (int i = 0; i < 100; ++i) {
            s = cauchy_evolve(p, s, 0.1);
            ASSERT_NEAR(energy(p, s), e0, 1e-10 * e0) << d << " " << i;
        }
        EXPECT_NEAR(s.t, 10.0, 1e-12);
    }
}

TEST(CauchyEvolve, GroupProperty) {
    const auto g = Grid1D::centered(0.05, 1024);
    const auto p = make_params(0.7, 1.0, 1.0);
    CauchyState s0(RealField::sample(g, [](double x) { return std::exp(-x * x); }), RealField(g));
    const auto a = cauchy_evolve(p, cauchy_evolve(p, s0, 0.3), 0.9);
    const auto b = cauchy_evolve(p, s0, 1.2);
    const auto back = cauchy_evolve(p, b, -1.2);
    for (std::size_t i = 0; i < g.size(); ++i) {
        ASSERT_NEAR(a.u.values[i], b.u.values[i], 1e-13);
        ASSERT_NEAR(a.v.values[i], b.v.values[i], 1e-13);
        ASSERT_NEAR(back.u.values[i], s0.u.values[i], 1e-13);
    }
}

TEST(CauchyEvolve, VelocityResponseIsQ) {
    // Unit-mass velocity spike: u(t) equals the grid kernel Q.
    const auto g = Grid1D::centered(0.02, 2048);
    const auto p = make_params(1.5, 1.0, 1.0);
    RealField v0(g);
    v0.values[g.index_of(0.0)] = 1.0 / g.dx();
    const auto s = cauchy_evolve(p, CauchyState(RealField(g), v0), 0.8);
    const auto q = kernel_Q_spectral(p, g, 0.8);
    for (std::size_t i = 0; i < g.size(); ++i) ASSERT_NEAR(s.u.values[i], q.values[i], 1e-12);
}

TEST(GreensRetarded, Causality) {
    const auto p = make_params(0.5, 1.0, 1.0);
    for (double t : {-1.0, -1e-3, 0.0}) EXPECT_EQ(greens_retarded(p, 1.0, t), 0.0);
    EXPECT_EQ(greens_retarded(p, 1.5, 0.8), kernel_Q_series(p, 1.5, 0.8));
    EXPECT_NEAR(greens_retarded(p, 1.5, 0.8, 0.5), std::exp(-0.4) * kernel_Q_series(p, 1.5, 0.8), 1e-16);
    EXPECT_EQ(code_of([&] { greens_retarded(p, 1.0, 1.0, -0.1); }), ErrorCode::InvalidArgument);
}

TEST(Helmholtz, StaticLimit) {
    const auto g = Grid1D::centered(0.05, 1 << 20);
    const auto p = make_params(0.5, 1.0, 1.0);
    const double eps[] = {0.8, 0.4, 0.2};
    double m[3][3], r[3];
    for (int i = 0; i < 3; ++i) {
        const auto h = helmholtz_green(p, g, 0.0, eps[i]);
        const auto v = h.values[g.index_of(1.0)];
        EXPECT_NEAR(v.imag(), 0.0, 1e-12);
        m[i][0] = 1.0;
        m[i][1] = eps[i] * eps[i];
        m[i][2] = eps[i] * eps[i] * std::log(eps[i]);
        r[i] = v.real();
    }
    // Solve for the eps -> 0 intercept by Cramer's rule.
    auto det = [](double a[3][3]) {
        return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
               a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    };
    double m0[3][3];
    for (int i = 0; i < 3; ++i) {
        m0[i][0] = r[i];
        m0[i][1] = m[i][1];
        m0[i][2] = m[i][2];
    }
    const double g0 = det(m0) / det(m);
    EXPECT_NEAR(g0, greens_static(p, 1.0), 0.01 * greens_static(p, 1.0));
    EXPECT_EQ(code_of([&] { helmholtz_green(p, g, 0.0, 0.0); }), ErrorCode::EpsNonPositive);
}
