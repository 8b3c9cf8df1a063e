#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "drh/geometry.hpp"

using namespace drh;
using std::numbers::pi;

namespace {

const SpaceParams kS20(2, 0), kS21(2, 1), kS40(4, 0);

// int_N P_{a_t} dn by trapezoid in log-radii; independent of the tanh-sinh route.
double n_mass_trapezoid(const SpaceParams& s, double t) {
    const double h = 0.04, lo = -40.0, hi = 40.0;
    const int n = static_cast<int>((hi - lo) / h);
    const double C = poisson_normalization(s), Q = s.Q(), a = std::exp(t);
    const double sx = detail::unit_sphere_area(s.m());
    double total = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double x = std::exp(lo + i * h);
        const double base = a + 0.25 * x * x;
        const double wx = sx * std::pow(x, s.m());
        if (s.k() == 0) {
            total += wx * std::pow(base, -2.0 * Q);
            continue;
        }
        double inner = 0.0;
        for (int j = 0; j <= n; ++j) {
            const double y = std::exp(lo + j * h);
            inner += 2.0 * y * std::pow(base * base + y * y, -Q);
        }
        total += wx * inner * h;
    }
    return C * std::exp(Q * t) * total * h;
}

NPoint pt(std::vector<double> X, std::vector<double> Y) { return {std::move(X), std::move(Y)}; }

GroupElement ge(std::vector<double> X, std::vector<double> Y, double t) { return {pt(std::move(X), std::move(Y)), t}; }

void expect_close(const GroupElement& a, const GroupElement& b, double tol) {
    ASSERT_EQ(a.n.X.size(), b.n.X.size());
    for (std::size_t i = 0; i < a.n.X.size(); ++i) EXPECT_NEAR(a.n.X[i], b.n.X[i], tol);
    for (std::size_t i = 0; i < a.n.Y.size(); ++i) EXPECT_NEAR(a.n.Y[i], b.n.Y[i], tol);
    EXPECT_NEAR(a.t, b.t, tol);
}

}  // namespace

TEST(Geometry, NormalizationClosedForms) {
    EXPECT_NEAR(poisson_normalization(kS20) * 4.0 * pi, 1.0, 1e-10);
    EXPECT_NEAR(poisson_normalization(kS21) * pi * pi, 1.0, 1e-10);
    EXPECT_NEAR(poisson_normalization(kS40) * 8.0 * pi * pi / 3.0, 1.0, 1e-10);
}

TEST(Geometry, PoissonMassIsOneForEveryHeight) {
    for (const auto& s : {kS20, kS21, kS40})
        for (double t : {-1.0, 0.0, 2.0}) EXPECT_NEAR(n_mass_trapezoid(s, t), 1.0, 1e-6) << s.label() << " t=" << t;
}

TEST(Geometry, PoissonKernelBoundsAndSymmetry) {
    Rng rng(3);
    for (const auto& s : {kS20, kS21, kS40}) {
        const double C = poisson_normalization(s);
        EXPECT_DOUBLE_EQ(poisson_kernel(s, 0.0, NPoint::zero(s)), C);
        EXPECT_LE(C, 1.0);
        for (int i = 0; i < 200; ++i) {
            NPoint n = NPoint::zero(s);
            rng.ball(n.X, 3.0);
            rng.ball(n.Y, 3.0);
            const double t = 4.0 * rng.uniform() - 2.0;
            EXPECT_LE(poisson_kernel(s, 0.0, n), C);
            EXPECT_GT(poisson_kernel(s, t, n), 0.0);
            EXPECT_NEAR(poisson_kernel(s, t, n), poisson_kernel(s, t, n_inverse(n)), 1e-15);
        }
    }
}

TEST(Geometry, PoissonDilationIdentity) {
    // P_{a_t}(n) = P_1(a_{-t} n a_t) e^{-2 rho t}
    Rng rng(5);
    double worst = 0.0;
    for (const auto& s : {kS20, kS21, kS40})
        for (int i = 0; i < 500; ++i) {
            NPoint n = NPoint::zero(s);
            rng.ball(n.X, 5.0);
            rng.ball(n.Y, 5.0);
            const double t = 6.0 * rng.uniform() - 3.0;
            const double lhs = poisson_kernel(s, t, n);
            const double rhs = poisson_kernel(s, 0.0, conjugate_by_a(n, -t)) * std::exp(-2.0 * s.rho() * t);
            worst = std::max(worst, std::abs(lhs - rhs));
        }
    EXPECT_LE(worst, 1e-10);
}

TEST(Geometry, PowerIntegralClosedForm) {
    // k = 0: int_N P_1^e = C^e |S^{m-1}| 2^{m-1} B(m/2, m e - m/2)
    for (const auto& s : {kS20, kS40})
        for (double e : {0.6, 0.75, 1.5, 3.0}) {
            const double m = s.m();
            const double beta = std::exp(std::lgamma(m / 2) + std::lgamma(m * e - m / 2) - std::lgamma(m * e));
            const double expect =
                std::pow(poisson_normalization(s), e) * detail::unit_sphere_area(s.m()) * std::pow(2.0, m - 1) * beta;
            EXPECT_NEAR(poisson_power_integral(s, e) / expect, 1.0, 1e-9) << s.label() << " e=" << e;
        }
    EXPECT_DOUBLE_EQ(poisson_power_integral(kS21, 1.0), 1.0);
    EXPECT_THROW(poisson_power_integral(kS21, 0.5), DomainError);
    EXPECT_THROW(poisson_power_integral(kS20, 0.2), DomainError);
}

TEST(Geometry, ComplexPowerKernel) {
    const auto s = kS21;
    const GroupElement x = ge({0.3, -0.4}, {0.7}, 0.4);
    const NPoint n = pt({1.1, 0.2}, {-0.5});
    const double P = poisson_P(s, x, n);
    EXPECT_NEAR(std::abs(p_lambda(s, x, n, SpectralPoint(0.0, s.rho())) - P), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(p_lambda(s, x, n, SpectralPoint(0.0, -s.rho())) - 1.0), 0.0, 1e-15);
    const GroupElement e = GroupElement::identity(s);
    const double P1 = poisson_kernel(s, 0.0, n);
    EXPECT_NEAR(std::abs(p_lambda(s, e, n, SpectralPoint(1.7, 0.3))), std::pow(P1, 0.5 + 0.3 / s.Q()), 1e-14);
    // P(x, n) = P_{a_t}(n^{-1} n_1)
    EXPECT_DOUBLE_EQ(P, poisson_kernel(s, x.t, n_mul(s, n_inverse(n), x.n)));
}

TEST(Geometry, GroupLaw) {
    for (const auto& s : {kS20, kS21}) {
        const GroupElement g = s.k() ? ge({0.5, -1.2}, {0.8}, 0.7) : ge({0.5, -1.2}, {}, 0.7);
        const GroupElement h = s.k() ? ge({-0.3, 0.9}, {-0.4}, -1.1) : ge({-0.3, 0.9}, {}, -1.1);
        const GroupElement f = s.k() ? ge({2.0, 0.1}, {0.25}, 0.3) : ge({2.0, 0.1}, {}, 0.3);
        const auto id = GroupElement::identity(s);
        expect_close(group_mul(s, g, id), g, 1e-15);
        expect_close(group_mul(s, id, g), g, 1e-15);
        expect_close(group_mul(s, g, group_inverse(s, g)), id, 1e-14);
        expect_close(group_mul(s, group_inverse(s, g), g), id, 1e-14);
        expect_close(group_mul(s, group_mul(s, g, h), f), group_mul(s, g, group_mul(s, h, f)), 1e-13);
        // a_t n a_{-t}
        const auto conj = group_mul(s, group_mul(s, GroupElement::a(s, 0.9), {g.n, 0.0}), GroupElement::a(s, -0.9));
        expect_close(conj, {conjugate_by_a(g.n, 0.9), 0.0}, 1e-14);
        EXPECT_NEAR(conj.n.X[0], std::exp(0.45) * 0.5, 1e-14);
        if (s.k()) {
            EXPECT_NEAR(conj.n.Y[0], std::exp(0.9) * 0.8, 1e-14);
        }
    }
    // Heisenberg bracket
    const auto p = n_mul(kS21, pt({1.0, 0.0}, {0.0}), pt({0.0, 1.0}, {0.0}));
    EXPECT_DOUBLE_EQ(p.Y[0], 0.5);
    EXPECT_THROW(n_mul(kS21, pt({1.0}, {0.0}), pt({0.0, 1.0}, {0.0})), std::invalid_argument);
}

TEST(Geometry, DistanceIsLeftInvariant) {
    const auto s = kS21;
    Rng rng(9);
    for (int i = 0; i < 100; ++i) {
        auto rnd = [&] {
            GroupElement g = GroupElement::identity(s);
            rng.ball(g.n.X, 2.0);
            rng.ball(g.n.Y, 2.0);
            g.t = 3.0 * rng.uniform() - 1.5;
            return g;
        };
        const auto g = rnd(), x = rnd(), y = rnd();
        // d(gx, gy) = d(x, y) = d(y^{-1}x, e)
        const double d1 = distance(s, group_mul(s, group_inverse(s, group_mul(s, g, y)), group_mul(s, g, x)));
        const double d2 = distance(s, group_mul(s, group_inverse(s, y), x));
        EXPECT_NEAR(d1, d2, 1e-9 * (1.0 + d2));
        // symmetric
        EXPECT_NEAR(distance(s, x), distance(s, group_inverse(s, x)), 1e-9 * (1.0 + distance(s, x)));
    }
    for (double r : {-3.0, -0.5, 0.0, 1.0, 7.0}) EXPECT_NEAR(distance(s, GroupElement::a(s, r)), std::abs(r), 1e-12);
    EXPECT_EQ(distance(s, GroupElement::identity(s)), 0.0);
}

TEST(Geometry, DistanceMatchesMetricAtSmallScale) {
    // metric at e: |dX|^2 + |dY|^2 + dt^2
    const auto s = kS21;
    const double eps = 1e-4;
    EXPECT_NEAR(distance(s, ge({eps, 0.0}, {0.0}, 0.0)) / eps, 1.0, 1e-6);
    EXPECT_NEAR(distance(s, ge({0.0, 0.0}, {eps}, 0.0)) / eps, 1.0, 1e-6);
    EXPECT_NEAR(distance(s, ge({0.6 * eps, 0.0}, {0.8 * eps}, 0.0)) / eps, 1.0, 1e-6);
    // the literal variant is still reachable
    EXPECT_NEAR(distance(s, GroupElement::a(s, 2.0), DistanceModel::literal(0.25)), 2.0, 1e-12);
}

TEST(Geometry, RadialDensityAndModularFunction) {
    EXPECT_EQ(radial_density(kS21, 0.0), 0.0);
    for (double r : {0.1, 1.0, 3.0}) EXPECT_NEAR(radial_density(kS20, r), 2.0 * (std::cosh(r) - 1.0), 1e-12 * std::cosh(r));
    for (const auto& s : {kS20, kS21, kS40})
        EXPECT_NEAR(std::log(radial_density(s, 200.0)) / 200.0, 2.0 * s.rho(), 0.01);
    EXPECT_THROW(radial_density(kS20, -1.0), DomainError);
    EXPECT_DOUBLE_EQ(modular_delta(kS21, GroupElement::identity(kS21)), 1.0);
    EXPECT_DOUBLE_EQ(modular_delta(kS21, GroupElement::a(kS21, 1.0)), std::exp(-2.0 * kS21.rho()));
    EXPECT_DOUBLE_EQ(modular_delta(kS21, ge({3.0, 1.0}, {2.0}, 1.0)), modular_delta(kS21, GroupElement::a(kS21, 1.0)));
    EXPECT_NEAR(sphere_area_constant(kS20), 4.0 * pi, 1e-13);
    EXPECT_NEAR(sphere_area_constant(kS21), pi * pi, 1e-13);
}

TEST(Geometry, ShellVolumeMatchesDensity) {
    for (const auto& s : {kS20, kS21})
        for (double t : {1.0, 2.0, 4.0}) {
            const double delta = 0.1;
            McOptions opt;
            opt.samples = 200000;
            opt.seed = 17;
            const auto est = haar_integral(s, [](const GroupElement&) { return cplx(1.0); }, t, t + delta, opt);
            // Simpson on the closed-form density
            const int n = 200;
            double integral = 0.0;
            for (int i = 0; i <= n; ++i) {
                const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
                integral += w * radial_density(s, t + delta * i / n);
            }
            integral *= delta / (3.0 * n);
            const double expect = sphere_area_constant(s) * integral;
            EXPECT_NEAR(est.haar_volume, expect, 4.0 * est.volume_stderr) << s.label() << " t=" << t;
        }
}

TEST(Geometry, ConjugationJacobian) {
    // int_N f(a_t n a_{-t}) dn = e^{-2 rho t} int_N f(n) dn
    for (const auto& s : {kS20, kS21})
        for (double t : {-1.0, 0.5, 1.0}) {
            auto f = [](const NPoint& n) { return std::exp(-n.x_norm2() - n.y_norm2()); };
            McOptions opt;
            opt.samples = 200000;
            opt.seed = 23;
            const auto lhs = n_integral(s, [&](const NPoint& n) { return f(conjugate_by_a(n, t)); }, 9.0, 12.0, opt);
            const double exact = std::pow(pi, 0.5 * (s.m() + s.k()));
            EXPECT_NEAR(lhs.value.real(), std::exp(-2.0 * s.rho() * t) * exact, 3.0 * lhs.stderr_)
                << s.label() << " t=" << t;
        }
}

TEST(Geometry, InversionJacobian) {
    // int_S f(x^{-1}) dx = int_S f(x) e^{2 rho A(x)} dx for f = bump(X) bump(Y) bump(t),
    // bump(v) = (1 - |v|^2)_+^2; the right side is (pi/3) (16/15)^{k+1}
    auto bump = [](double v2) { return v2 < 1.0 ? (1.0 - v2) * (1.0 - v2) : 0.0; };
    for (const auto& s : {kS20, kS21}) {
        auto f = [&](const GroupElement& x) { return bump(x.n.x_norm2()) * bump(x.n.y_norm2()) * bump(x.t * x.t); };
        McOptions opt;
        opt.samples = 400000;
        opt.seed = 29;
        const auto lhs = box_integral(s, [&](const GroupElement& x) { return cplx(f(group_inverse(s, x))); },
                                      {std::exp(0.5), std::exp(1.0), 1.0}, opt);
        const auto rhs = box_integral(
            s, [&](const GroupElement& x) { return cplx(f(x) * std::exp(2.0 * s.rho() * x.t)); }, {1.0, 1.0, 1.0}, opt);
        const double exact = pi / 3.0 * std::pow(16.0 / 15.0, s.k() + 1);
        const double se = std::hypot(lhs.stderr_, rhs.stderr_);
        EXPECT_LT(se, 0.02 * exact);
        EXPECT_NEAR(lhs.value.real(), rhs.value.real(), 3.0 * se) << s.label();
        EXPECT_NEAR(lhs.value.real(), exact, 3.0 * lhs.stderr_) << s.label();
    }
}

TEST(Geometry, ShellAverageReproducesSphericalFunction) {
    const auto s = kS21;
    const double t = 1.0, delta = 0.02;
    const SpectralPoint lam(0.7, 0.2);
    const cplx il = cplx(0.0, 1.0) * lam.value();
    const NPoint n0 = pt({0.4, -0.2}, {0.3});
    McOptions opt;
    opt.samples = 40000;
    opt.seed = 31;
    const auto est = shell_average_many(
        s,
        {[](const GroupElement&) { return cplx(1.0); },
         [&](const GroupElement& x) { return std::exp((s.rho() - il) * x.t); },
         [&](const GroupElement& x) { return p_lambda(s, x, n0, lam); }},
        t, delta, opt);
    EXPECT_NEAR(std::abs(est[0].value - 1.0), 0.0, 1e-12);
    const cplx phi = phi_dr(s, lam, t + 0.5 * delta);
    EXPECT_LE(std::abs(est[1].value - phi), 3.0 * est[1].stderr_ + 1e-3);
    const cplx expect = phi * p_lambda(s, GroupElement::identity(s), n0, lam);
    EXPECT_LE(std::abs(est[2].value - expect), 3.0 * est[2].stderr_ + 1e-3);
}

TEST(Geometry, ShellAverageIsDeterministic) {
    McOptions opt;
    opt.samples = 2000;
    opt.seed = 99;
    auto F = [](const GroupElement& x) { return cplx(std::exp(-0.3 * x.t)); };
    const auto a = shell_average(kS21, F, 2.0, 0.1, opt);
    const auto b = shell_average(kS21, F, 2.0, 0.1, opt);
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.proposed, b.proposed);
}
