#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "drh/geometry.hpp"
#include "drh/meanop.hpp"

using namespace drh;

namespace {

const SpaceParams kS20(2, 0), kS21(2, 1);

double bump_value(double r) {
    const double u = 1.0 - r * r / 4.0;
    return r < 2.0 ? u * u : 0.0;
}

std::vector<RadialProfile> profiles(const SpaceParams& s) {
    const auto g = shared_engine(s)->radial();
    return {RadialProfile::sample(s, g, [](double r) { return cplx(std::exp(-r * r)); }, DecayClass::gaussian(1.0)),
            RadialProfile::sample(s, g, [](double r) { return cplx(bump_value(r)); }, DecayClass::compact(2.0))};
}

double mass(const RadialProfile& f) {
    double m = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) m += f.grid->weights[i] * f.values[i].real();
    return m;
}

double max_diff(const RadialProfile& a, const RadialProfile& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a.values[i] - b.values[i]));
    return d;
}

}  // namespace

TEST(MeanOp, ZeroRadiusIsIdentity) {
    const auto eng = shared_engine(kS21);
    for (const auto& f : profiles(kS21)) {
        EXPECT_EQ(max_diff(spherical_mean(*eng, f, 0.0), f), 0.0);
        const double ts[] = {0.0, 1e-9};
        const auto m = spherical_means(*eng, f, ts);
        // tiny t reproduces the plain roundtrip (cut at the support for compact f)
        auto back = eng->inverse(eng->forward(f));
        if (f.decay.kind == DecayClass::Kind::Compact)
            for (std::size_t i = 0; i < back.size(); ++i)
                if (f.r()[i] > f.decay.param + 1e-9) back[i] = 0.0;
        EXPECT_LE(max_diff(m[1], f.with_values(back)), 1e-6);
    }
    EXPECT_THROW(spherical_mean(*eng, profiles(kS21)[0], -1.0), DomainError);
}

TEST(MeanOp, PreservesMass) {
    for (const auto& s : {kS20, kS21}) {
        const auto eng = shared_engine(s);
        for (const auto& f : profiles(s))
            for (double t : {0.5, 1.0, 2.0}) {
                const double m0 = mass(f);
                EXPECT_NEAR(mass(spherical_mean(*eng, f, t)), m0, 1e-4 * m0) << s.label() << " t=" << t;
            }
    }
}

TEST(MeanOp, MultiplierIdentityAndCommutativity) {
    for (const auto& s : {kS20, kS21}) {
        const auto eng = shared_engine(s);
        const auto f = profiles(s)[0];
        const double t = 1.0, u = 0.6;
        const auto mt = spherical_mean(*eng, f, t);
        for (double xi : {0.0, 0.5, 1.5, 3.0}) {
            const cplx lhs = spherical_transform(mt, SpectralPoint(xi));
            const cplx rhs = spherical_transform(f, SpectralPoint(xi)) * phi_dr(s, SpectralPoint(xi), t);
            EXPECT_LE(std::abs(lhs - rhs), 1e-5 * std::abs(spherical_transform(f, SpectralPoint(xi))) + 1e-12)
                << s.label() << " xi=" << xi;
        }
        const auto a = spherical_mean(*eng, spherical_mean(*eng, f, t), u);
        const auto b = spherical_mean(*eng, spherical_mean(*eng, f, u), t);
        EXPECT_LE(max_diff(a, b), 1e-5);
    }
}

TEST(MeanOp, ShellOracleAtAnotherPoint) {
    // M_t f(a_{r0}) is the average of f(d(., e)) over the sphere of radius t about a_{r0}
    const auto s = kS21;
    const auto eng = shared_engine(s);
    const auto f = profiles(s)[0];
    const double t = 0.8, r0 = 0.7, delta = 0.02;
    auto F = eng->forward(f);
    const double ts[] = {t + 0.5 * delta};
    const auto mult = multiplier_table(s, eng->spectral(), ts);
    for (std::size_t j = 0; j < F.size(); ++j) F[j] *= mult[0][j];
    const double rs[] = {r0};
    const cplx spectral = inverse_transform(*eng, F, rs)[0];
    McOptions opt;
    opt.samples = 40000;
    opt.seed = 53;
    const auto x0 = GroupElement::a(s, r0);
    const auto est = shell_average(
        s, [&](const GroupElement& z) { return cplx(std::exp(-std::pow(distance(s, group_mul(s, x0, z)), 2))); }, t,
        delta, opt);
    EXPECT_LE(std::abs(est.value - spectral), 3.0 * est.stderr_ + 2e-4) << est.value << " vs " << spectral;
}

TEST(MeanOp, OperatorBound) {
    for (const auto& s : {kS20, kS21}) {
        for (double t : {0.0, 0.5, 3.0}) EXPECT_EQ(mean_operator_bound(s, 1.0, t), 1.0);
        EXPECT_EQ(mean_operator_bound(s, kInf, 2.0), 1.0);
        for (double t : {0.1, 1.0, 5.0}) {
            EXPECT_LT(mean_operator_bound(s, 2.0, t), 1.0);
            EXPECT_NEAR(mean_operator_bound(s, 4.0 / 3.0, t), mean_operator_bound(s, 4.0, t), 1e-13);
            EXPECT_NEAR(mean_operator_bound(s, 1.5, t), mean_operator_bound(s, 3.0, t), 1e-13);
        }
        EXPECT_THROW(mean_operator_bound(s, 0.5, 1.0), DomainError);
    }
}

TEST(MeanOp, Contraction) {
    for (const auto& s : {kS20, kS21}) {
        const auto eng = shared_engine(s);
        for (const auto& f : profiles(s)) {
            const double ts[] = {0.25, 1.0, 3.0};
            const auto means = spherical_means(*eng, f, ts);
            for (double p : {1.0, 4.0 / 3.0, 2.0, 3.0, 8.0})
                for (std::size_t i = 0; i < 3; ++i) {
                    const double lhs = lp_norm(means[i].values, f.measure(), p);
                    const double rhs = mean_operator_bound(s, p, ts[i]) * lp_norm(f.values, f.measure(), p);
                    EXPECT_LE(lhs, rhs * (1.0 + 1e-4)) << s.label() << " p=" << p << " t=" << ts[i];
                }
        }
    }
}

TEST(MeanOp, ConvergesToIdentity) {
    for (const auto& s : {kS20, kS21}) {
        const auto eng = shared_engine(s);
        for (const auto& f : profiles(s)) {
            const double ts[] = {0.05, 0.1, 0.2, 0.4};
            const auto means = spherical_means(*eng, f, ts);
            for (double p : {1.0, 2.0}) {
                std::vector<double> d;
                for (const auto& m : means) {
                    std::vector<cplx> diff(f.size());
                    for (std::size_t k = 0; k < diff.size(); ++k) diff[k] = m.values[k] - f.values[k];
                    d.push_back(lp_norm(diff, f.measure(), p));
                }
                EXPECT_LT(d[0], d[1]);
                EXPECT_LT(d[1], d[2]);
                EXPECT_LT(d[2], d[3]);
                EXPECT_LT(d[0], 0.1 * d[3]) << s.label() << " p=" << p;
            }
        }
    }
}

TEST(MeanOp, ModulusOfContinuity) {
    const auto s = kS21;
    const auto eng = shared_engine(s);
    const auto f = profiles(s)[1];
    const LorentzIndex idx(2.0, 1.0);
    double prev = 0.0;
    for (double r : {0.05, 0.2, 0.8, 2.0}) {
        const auto m = modulus_of_continuity(*eng, f, idx, r);
        EXPECT_GE(m.value, prev * (1.0 - 1e-12));
        EXPECT_LE(m.t_at_max, r);
        EXPECT_GT(m.evaluations, 0);
        prev = m.value;
    }
    EXPECT_LT(modulus_of_continuity(*eng, f, idx, 0.01).value, 0.05 * prev);
    // diagonal index gives the L^p modulus
    const auto diag = modulus_of_continuity(*eng, f, LorentzIndex(2.0, 2.0), 0.5);
    const auto mt = spherical_mean(*eng, f, diag.t_at_max);
    std::vector<cplx> diff(f.size());
    for (std::size_t k = 0; k < diff.size(); ++k) diff[k] = mt.values[k] - f.values[k];
    EXPECT_NEAR(diag.value, lp_norm(diff, f.measure(), 2.0), 1e-10 * diag.value);
    EXPECT_THROW(modulus_of_continuity(*eng, f, idx, 0.0), DomainError);
}

TEST(MeanOp, DecayProfile) {
    std::vector<double> ts;
    for (int i = 0; i <= 40; ++i) ts.push_back(0.25 * i);
    for (const auto& s : {kS20, kS21}) {
        const auto one = decay_profile(s, 1.0, ts);
        for (const auto& row : one.rows) EXPECT_EQ(row.bound, 1.0);
        EXPECT_EQ(one.ratio_2_10, 1.0);
        const auto p43 = decay_profile(s, 4.0 / 3.0, ts);
        EXPECT_LE(p43.ratio_2_10, 10.0);
        for (std::size_t i = 1; i < p43.rows.size(); ++i) EXPECT_LT(p43.rows[i].bound, p43.rows[i - 1].bound);
        // p = 2: phi_0(t) e^{rho t} grows like t, so slower than t^2
        const auto p2 = decay_profile(s, 2.0, ts);
        auto at = [&](double t) {
            for (const auto& r : p2.rows)
                if (std::abs(r.t - t) < 1e-12) return r.compensated;
            return 0.0;
        };
        EXPECT_LT(at(10.0) / at(2.0), 25.0);
        EXPECT_GT(at(10.0) / at(2.0), 1.0);
        EXPECT_THROW(decay_profile(s, 3.0, ts), DomainError);
    }
}
