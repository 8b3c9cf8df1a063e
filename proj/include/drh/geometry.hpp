#pragma once

// The Damek-Ricci group S = N A for the supported instances: group law,
// Poisson kernels, complex powers P_lambda, geodesic distance, radial volume
// density and Monte-Carlo estimators over Haar measure.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <numbers>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "drh/errors.hpp"
#include "drh/space.hpp"
#include "drh/specfun.hpp"

namespace drh {

/// n = (X, Y) in N = R^m x R^k.
struct NPoint {
    std::vector<double> X;
    std::vector<double> Y;

    static NPoint zero(const SpaceParams& s) { return {std::vector<double>(s.m(), 0.0), std::vector<double>(s.k(), 0.0)}; }
    double x_norm2() const {
        double a = 0.0;
        for (double v : X) a += v * v;
        return a;
    }
    double y_norm2() const {
        double a = 0.0;
        for (double v : Y) a += v * v;
        return a;
    }
};

/// x = n a_t; t = A(x).
struct GroupElement {
    NPoint n;
    double t = 0.0;

    static GroupElement identity(const SpaceParams& s) { return {NPoint::zero(s), 0.0}; }
    static GroupElement a(const SpaceParams& s, double t) { return {NPoint::zero(s), t}; }
};

namespace detail {

inline void check_shape(const SpaceParams& s, const NPoint& n) {
    if (static_cast<int>(n.X.size()) != s.m() || static_cast<int>(n.Y.size()) != s.k())
        throw std::invalid_argument("NPoint dimensions do not match the space");
}

// [X, X'] in z; nonzero only for the Heisenberg instance.
inline double bracket(const SpaceParams& s, std::span<const double> X, std::span<const double> Xp) {
    if (s.k() == 0) return 0.0;
    return X[0] * Xp[1] - X[1] * Xp[0];
}

// volume of the unit ball in R^d
inline double unit_ball_volume(int d) {
    return std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
}

// surface area of the unit sphere S^{d-1} in R^d (2 for d = 1)
inline double unit_sphere_area(int d) {
    return 2.0 * std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d);
}

}  // namespace detail

/// (X, Y)(X', Y') = (X + X', Y + Y' + [X, X']/2)
inline NPoint n_mul(const SpaceParams& s, const NPoint& a, const NPoint& b) {
    detail::check_shape(s, a);
    detail::check_shape(s, b);
    NPoint r{a.X, a.Y};
    for (int i = 0; i < s.m(); ++i) r.X[i] += b.X[i];
    for (int i = 0; i < s.k(); ++i) r.Y[i] += b.Y[i];
    if (s.k() == 1) r.Y[0] += 0.5 * detail::bracket(s, a.X, b.X);
    return r;
}

inline NPoint n_inverse(const NPoint& a) {
    NPoint r{a.X, a.Y};
    for (double& v : r.X) v = -v;
    for (double& v : r.Y) v = -v;
    return r;
}

/// a_t n a_{-t} = (e^{t/2} X, e^t Y)
inline NPoint conjugate_by_a(const NPoint& n, double t) {
    NPoint r{n.X, n.Y};
    const double ex = std::exp(0.5 * t), ey = std::exp(t);
    for (double& v : r.X) v *= ex;
    for (double& v : r.Y) v *= ey;
    return r;
}

/// (n1 a_{t1})(n2 a_{t2}) = (n1 a_{t1} n2 a_{-t1}) a_{t1 + t2}
inline GroupElement group_mul(const SpaceParams& s, const GroupElement& g1, const GroupElement& g2) {
    return {n_mul(s, g1.n, conjugate_by_a(g2.n, g1.t)), g1.t + g2.t};
}

/// (n a_t)^{-1} = a_{-t} n^{-1} = (a_{-t} n^{-1} a_t) a_{-t}
inline GroupElement group_inverse(const SpaceParams& s, const GroupElement& g) {
    detail::check_shape(s, g.n);
    return {conjugate_by_a(n_inverse(g.n), -g.t), -g.t};
}

// ---------------------------------------------------------------------------
// Poisson kernel
// ---------------------------------------------------------------------------

namespace detail {

// int_N ((1 + |X|^2/4)^2 + |Y|^2)^{-g} dn in polar radii, with |X| = 2 tan(u)
// and |Y| = (1 + |X|^2/4) tan(v) mapping both half-lines onto [0, pi/2].
inline double n_radial_integral(const SpaceParams& s, double g) {
    boost::math::quadrature::tanh_sinh<double> integrator;
    const double tol = 1e-12;
    const int m = s.m(), k = s.k();
    const double half_pi = 0.5 * std::numbers::pi;
    // y-integral for unit base: int_0^inf (1 + b^2)^{-g} b^{k-1} db
    double y_factor = 1.0;
    if (k > 0) {
        auto fy = [&](double v) {
            const double c = std::cos(v);
            return std::pow(std::sin(v), k - 1) * std::pow(c, 2.0 * g - 1.0 - k);
        };
        y_factor = unit_sphere_area(k) * integrator.integrate(fy, 0.0, half_pi, tol);
    }
    // (1 + a^2/4) = sec^2 u; the Y-integral scales as base^{k - 2g}. Written in
    // v = pi/2 - u so that the singular end sits at v = 0 where sin v is exact.
    // Integrand: (2 cot v)^{m-1} 2 csc^2 v (csc^2 v)^{k - 2g}, taken through logs.
    auto fx = [&](double v) {
        const double e = 4.0 * g - 2.0 * k - m - 1.0;
        return 2.0 * std::exp((m - 1) * std::log(2.0 * std::cos(v)) + e * std::log(std::sin(v)));
    };
    return unit_sphere_area(m) * y_factor * integrator.integrate(fx, 0.0, half_pi, tol);
}

}  // namespace detail

/// C with int_N P_1(n) dn = 1, by 2-dim polar quadrature (cached per space).
inline double poisson_normalization(const SpaceParams& s) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, double> cache;
    const auto key = std::make_pair(s.m(), s.k());
    {
        std::lock_guard lock(mu);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    const double integral = detail::n_radial_integral(s, s.Q());
    if (!(integral > 0.0) || !std::isfinite(integral)) throw PrecisionLoss("poisson_normalization: quadrature failed", 1.0);
    const double C = 1.0 / integral;
    std::lock_guard lock(mu);
    cache.emplace(key, C);
    return C;
}

/// P_{a_t}(n) = C e^{Qt} ((e^t + |X|^2/4)^2 + |Y|^2)^{-Q}
inline double poisson_kernel(const SpaceParams& s, double t, const NPoint& n) {
    detail::check_shape(s, n);
    const double Q = s.Q();
    const double a = std::exp(t);
    const double u = a + 0.25 * n.x_norm2();
    return poisson_normalization(s) * std::exp(Q * t) * std::pow(u * u + n.y_norm2(), -Q);
}

/// P(x, n) = P_{a_t}(n^{-1} n_1) for x = n_1 a_t.
inline double poisson_P(const SpaceParams& s, const GroupElement& x, const NPoint& n) {
    return poisson_kernel(s, x.t, n_mul(s, n_inverse(n), x.n));
}

/// P_lambda(x, n) = P(x, n)^{1/2 - i lambda / Q}
inline cplx p_lambda(const SpaceParams& s, const GroupElement& x, const NPoint& n, SpectralPoint lam) {
    const cplx e = 0.5 - cplx(0.0, 1.0) * lam.value() / s.Q();
    return std::exp(e * std::log(poisson_P(s, x, n)));
}

// ---------------------------------------------------------------------------
// Distance, volume density, modular function
// ---------------------------------------------------------------------------

/// Which closed form the geodesic distance uses.
///  - DamekRicci: cosh^2(d/2) = (cosh(t/2) + e^{-t/2}|X|^2/8)^2 + e^{-t}|Y|^2/4,
///    the distance of the left-invariant metric e^{-t}|dX|^2 +
///    e^{-2t}|dY - [X,dX]/2|^2 + dt^2 matching the group law above.
///  - Literal: cosh^2 d = (cosh t + c0 e^t |X|^2)^2 + e^{2t}|Y|^2 with a
///    configurable coefficient c0; kept for comparison only.
struct DistanceModel {
    enum class Kind { DamekRicci, Literal };
    Kind kind = Kind::DamekRicci;
    double c0 = 1.0;

    static DistanceModel literal(double c0) { return {Kind::Literal, c0}; }
};

/// d(x, e) from A(x) = t and the radii |X|^2, |Y|^2.
inline double distance_from_radii(double t, double x2, double y2, const DistanceModel& model = {}) {
    if (model.kind == DistanceModel::Kind::DamekRicci) {
        const double u = std::cosh(0.5 * t) + std::exp(-0.5 * t) * x2 / 8.0;
        const double c = std::sqrt(u * u + std::exp(-t) * y2 / 4.0);
        return 2.0 * std::acosh(std::max(1.0, c));
    }
    const double u = std::cosh(t) + model.c0 * std::exp(t) * x2;
    const double c = std::sqrt(u * u + std::exp(2.0 * t) * y2);
    return std::acosh(std::max(1.0, c));
}

inline double distance(const SpaceParams& s, const GroupElement& x, const DistanceModel& model = {}) {
    detail::check_shape(s, x.n);
    return distance_from_radii(x.t, x.n.x_norm2(), x.n.y_norm2(), model);
}

/// A(r) = (2 sinh(r/2))^{m+k} (2 cosh(r/2))^k
inline double radial_density(const SpaceParams& s, double r) {
    if (!(r >= 0.0)) throw DomainError("radial_density: r must be nonnegative");
    return std::pow(2.0 * std::sinh(0.5 * r), s.m() + s.k()) * std::pow(2.0 * std::cosh(0.5 * r), s.k());
}

/// Ratio of Riemannian sphere area to A(r): area(S^{m+k}) / 2^k.
inline double sphere_area_constant(const SpaceParams& s) {
    return detail::unit_sphere_area(s.m() + s.k() + 1) / std::pow(2.0, s.k());
}

/// Delta(y) = e^{-2 rho A(y)}
inline double modular_delta(const SpaceParams& s, const GroupElement& y) { return std::exp(-2.0 * s.rho() * y.t); }

/// int_N P_1(n)^e dn for e > 1/2 (diverges otherwise).
inline double poisson_power_integral(const SpaceParams& s, double e) {
    if (!(e > 0.5)) throw DomainError("poisson_power_integral: exponent must exceed 1/2 for convergence");
    if (e == 1.0) return 1.0;
    return std::pow(poisson_normalization(s), e) * detail::n_radial_integral(s, s.Q() * e);
}

// ---------------------------------------------------------------------------
// Monte-Carlo over Haar measure
// ---------------------------------------------------------------------------

/// Deterministic uniform/normal source; identical streams on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(2.0 * std::numbers::pi * u2);
        has_spare_ = true;
        return r * std::cos(2.0 * std::numbers::pi * u2);
    }
    /// uniform point in the d-ball of radius R
    void ball(std::span<double> out, double R) {
        const int d = static_cast<int>(out.size());
        if (d == 0) return;
        double n2 = 0.0;
        for (double& v : out) {
            v = normal();
            n2 += v * v;
        }
        const double scale = R * std::pow(uniform(), 1.0 / d) / std::sqrt(n2);
        for (double& v : out) v *= scale;
    }

private:
    std::mt19937_64 eng_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// Proposal over {r_in <= d(x,e) <= r_out}: the A-range [-r_out, r_out] is cut
/// into bins; each bin carries a box (X-ball times Y-ball) that contains the
/// slice of the geodesic ball, and weight e^{-2 rho s_lo} |box| h. Radii are
/// drawn first; directions only once a proposal is kept.
class HaarShellSampler {
public:
    HaarShellSampler(const SpaceParams& s, double r_in, double r_out, const DistanceModel& model = {}, int bins = 4096)
        : space_(s), r_in_(r_in), r_out_(r_out), model_(model) {
        if (!(r_out > r_in && r_in >= 0.0)) throw DomainError("HaarShellSampler: need 0 <= r_in < r_out");
        const double T = r_out;
        const double h = 2.0 * T / bins;
        double acc = 0.0;
        for (int b = 0; b < bins; ++b) {
            Bin bin;
            bin.s_lo = -T + b * h;
            bin.s_hi = bin.s_lo + h;
            const double s_min_abs = (bin.s_lo <= 0.0 && bin.s_hi >= 0.0) ? 0.0 : std::min(std::abs(bin.s_lo), std::abs(bin.s_hi));
            if (model.kind == DistanceModel::Kind::DamekRicci) {
                const double ch = std::cosh(0.5 * T), c0 = std::cosh(0.5 * s_min_abs);
                bin.rx = std::sqrt(std::max(0.0, 8.0 * std::exp(0.5 * bin.s_hi) * (ch - c0)));
                bin.ry = 2.0 * std::exp(0.5 * bin.s_hi) * std::sqrt(std::max(0.0, ch * ch - c0 * c0));
            } else {
                const double ch = std::cosh(T), c0 = std::cosh(s_min_abs);
                bin.rx = std::sqrt(std::max(0.0, std::exp(-bin.s_lo) * (ch - c0) / model.c0));
                bin.ry = std::exp(-bin.s_lo) * std::sqrt(std::max(0.0, ch * ch - c0 * c0));
            }
            bin.rx *= 1.0 + 1e-12;
            bin.ry *= 1.0 + 1e-12;
            double vol = detail::unit_ball_volume(s.m()) * std::pow(bin.rx, s.m());
            if (s.k() > 0) vol *= detail::unit_ball_volume(s.k()) * std::pow(bin.ry, s.k());
            bin.mass = std::exp(-2.0 * s.rho() * bin.s_lo) * vol * h;
            acc += bin.mass;
            bin.cum = acc;
            bins_.push_back(bin);
        }
        total_mass_ = acc;
    }

    /// A proposal in radial coordinates (A, |X|, |Y|).
    struct Proposal {
        double t = 0.0;
        double x_radius = 0.0;
        double y_radius = 0.0;
        double distance = 0.0;
        bool in_shell = false;
        double haar_weight = 0.0;  // e^{-2 rho (s - s_lo)} in (0, 1]
    };

    Proposal propose(Rng& rng) const {
        const double u = rng.uniform() * total_mass_;
        auto it = std::upper_bound(bins_.begin(), bins_.end(), u, [](double v, const Bin& b) { return v < b.cum; });
        if (it == bins_.end()) --it;
        const Bin& b = *it;
        Proposal p;
        p.t = b.s_lo + (b.s_hi - b.s_lo) * rng.uniform();
        p.x_radius = b.rx * std::pow(rng.uniform(), 1.0 / space_.m());
        if (space_.k() > 0) p.y_radius = b.ry * std::pow(rng.uniform(), 1.0 / space_.k());
        p.distance = distance_from_radii(p.t, p.x_radius * p.x_radius, p.y_radius * p.y_radius, model_);
        p.in_shell = p.distance >= r_in_ && p.distance <= r_out_;
        p.haar_weight = std::exp(-2.0 * space_.rho() * (p.t - b.s_lo));
        return p;
    }

    /// Group element with the proposal's radii and uniformly random directions.
    GroupElement realize(const Proposal& p, Rng& rng) const {
        GroupElement x{NPoint::zero(space_), p.t};
        random_direction(rng, x.n.X, p.x_radius);
        random_direction(rng, x.n.Y, p.y_radius);
        return x;
    }

    /// Haar measure of the proposal region (sum of bin masses).
    double total_mass() const { return total_mass_; }
    const SpaceParams& space() const { return space_; }

private:
    struct Bin {
        double s_lo, s_hi, rx, ry, mass, cum;
    };

    static void random_direction(Rng& rng, std::span<double> out, double radius) {
        if (out.empty()) return;
        if (out.size() == 1) {
            out[0] = rng.uniform() < 0.5 ? -radius : radius;
            return;
        }
        double n2 = 0.0;
        for (double& v : out) {
            v = rng.normal();
            n2 += v * v;
        }
        const double scale = radius / std::sqrt(n2);
        for (double& v : out) v *= scale;
    }

    SpaceParams space_;
    double r_in_, r_out_;
    DistanceModel model_;
    std::vector<Bin> bins_;
    double total_mass_ = 0.0;
};

struct McOptions {
    std::size_t samples = 100000;        // accepted samples (averages) or proposals (integrals)
    std::size_t max_proposals = 0;       // 0: 500 x samples
    std::uint64_t seed = 20240611;
    double target_rel_stderr = 0.0;      // 0: no requirement
};

struct McEstimate {
    cplx value;
    double stderr_ = 0.0;  // standard error of value
    std::size_t accepted = 0;
    std::size_t proposed = 0;
    double haar_volume = 0.0;  // Haar measure of the sampled region
    double volume_stderr = 0.0;
};

using GroupFunction = std::function<cplx(const GroupElement&)>;

/// Shell averages of several functions from one stream of shell samples.
inline std::vector<McEstimate> shell_average_many(const SpaceParams& s, const std::vector<GroupFunction>& Fs, double t,
                                                  double delta, const McOptions& opt = {},
                                                  const DistanceModel& model = {}) {
    if (!(t > delta && delta > 0.0)) throw DomainError("shell_average: require t > delta > 0");
    HaarShellSampler sampler(s, t, t + delta, model);
    Rng rng(opt.seed);
    const std::size_t max_prop = opt.max_proposals ? opt.max_proposals : 500 * opt.samples;
    std::vector<cplx> sum(Fs.size(), 0.0);
    std::vector<double> sum2(Fs.size(), 0.0);
    std::size_t accepted = 0, proposed = 0;
    while (accepted < opt.samples && proposed < max_prop) {
        const auto p = sampler.propose(rng);
        ++proposed;
        if (!p.in_shell) continue;
        if (rng.uniform() >= p.haar_weight) continue;
        const GroupElement x = sampler.realize(p, rng);
        for (std::size_t j = 0; j < Fs.size(); ++j) {
            const cplx v = Fs[j](x);
            sum[j] += v;
            sum2[j] += std::norm(v);
        }
        ++accepted;
    }
    if (accepted < 2) throw BudgetExhausted("shell_average: no samples accepted within budget", 1.0);
    const double n = static_cast<double>(accepted);
    const double frac = n / static_cast<double>(proposed);
    std::vector<McEstimate> out(Fs.size());
    for (std::size_t j = 0; j < Fs.size(); ++j) {
        McEstimate& est = out[j];
        est.accepted = accepted;
        est.proposed = proposed;
        est.value = sum[j] / n;
        est.stderr_ = std::sqrt(std::max(0.0, sum2[j] / n - std::norm(est.value)) / (n - 1.0));
        est.haar_volume = frac * sampler.total_mass();
        est.volume_stderr = std::sqrt(frac * (1.0 - frac) / static_cast<double>(proposed)) * sampler.total_mass();
        const double rel = est.stderr_ / std::max(std::abs(est.value), 1e-300);
        if (accepted < opt.samples) throw BudgetExhausted("shell_average: proposal budget exhausted", rel);
        if (opt.target_rel_stderr > 0.0 && rel > opt.target_rel_stderr)
            throw BudgetExhausted("shell_average: relative standard error above request", rel);
    }
    return out;
}

/// Normalized Haar average of F over the shell {t <= d(x,e) <= t + delta} by
/// rejection sampling. As delta -> 0 this tends to the radialization RF(t).
inline McEstimate shell_average(const SpaceParams& s, const GroupFunction& F, double t, double delta,
                                const McOptions& opt = {}, const DistanceModel& model = {}) {
    return shell_average_many(s, {F}, t, delta, opt, model).front();
}

/// int F dx over the geodesic shell {r_in <= d <= r_out} (left Haar measure),
/// importance-weighted over the shell proposal; `samples` counts proposals.
inline McEstimate haar_integral(const SpaceParams& s, const GroupFunction& F, double r_in, double r_out,
                                const McOptions& opt = {}, const DistanceModel& model = {}) {
    HaarShellSampler sampler(s, r_in, r_out, model);
    Rng rng(opt.seed);
    cplx sum = 0.0;
    double sum2 = 0.0;
    McEstimate est;
    for (std::size_t i = 0; i < opt.samples; ++i) {
        const auto p = sampler.propose(rng);
        ++est.proposed;
        if (!p.in_shell) continue;
        ++est.accepted;
        const cplx v = F(sampler.realize(p, rng)) * p.haar_weight * sampler.total_mass();
        sum += v;
        sum2 += std::norm(v);
    }
    const double n = static_cast<double>(est.proposed);
    est.value = sum / n;
    est.stderr_ = std::sqrt(std::max(0.0, sum2 / n - std::norm(est.value)) / (n - 1.0));
    const double frac = static_cast<double>(est.accepted) / n;
    est.haar_volume = frac * sampler.total_mass();
    est.volume_stderr = std::sqrt(frac * (1.0 - frac) / n) * sampler.total_mass();
    if (opt.target_rel_stderr > 0.0 && est.stderr_ > opt.target_rel_stderr * std::abs(est.value))
        throw BudgetExhausted("haar_integral: relative standard error above request",
                              est.stderr_ / std::max(std::abs(est.value), 1e-300));
    return est;
}

/// Support box {|X| <= x_max, |Y| <= y_max, |A| <= t_max} in S.
struct SupportBox {
    double x_max = 1.0;
    double y_max = 1.0;
    double t_max = 1.0;
};

/// int F dx over a support box with left Haar measure e^{-2 rho t} dn dt.
/// A is drawn from its exact marginal on [-t_max, t_max].
inline McEstimate box_integral(const SpaceParams& s, const GroupFunction& F,
                               const SupportBox& box, const McOptions& opt = {}) {
    const double c = 2.0 * s.rho();
    const double T = box.t_max;
    const double t_mass = (std::exp(c * T) - std::exp(-c * T)) / c;
    double n_vol = detail::unit_ball_volume(s.m()) * std::pow(box.x_max, s.m());
    if (s.k() > 0) n_vol *= detail::unit_ball_volume(s.k()) * std::pow(box.y_max, s.k());
    const double mass = t_mass * n_vol;
    Rng rng(opt.seed);
    cplx sum = 0.0;
    double sum2 = 0.0;
    GroupElement x = GroupElement::identity(s);
    for (std::size_t i = 0; i < opt.samples; ++i) {
        // inverse CDF of e^{-c t} on [-T, T]
        const double u = rng.uniform();
        x.t = -std::log(std::exp(c * T) - u * c * t_mass) / c;
        rng.ball(x.n.X, box.x_max);
        rng.ball(x.n.Y, box.y_max);
        const cplx v = F(x) * mass;
        sum += v;
        sum2 += std::norm(v);
    }
    McEstimate est;
    const double n = static_cast<double>(opt.samples);
    est.proposed = est.accepted = opt.samples;
    est.value = sum / n;
    est.stderr_ = std::sqrt(std::max(0.0, sum2 / n - std::norm(est.value)) / (n - 1.0));
    est.haar_volume = mass;
    return est;
}

/// int_N F(n) dn over {|X| <= x_max, |Y| <= y_max} by plain Monte-Carlo.
inline McEstimate n_integral(const SpaceParams& s, const std::function<double(const NPoint&)>& F, double x_max,
                             double y_max, const McOptions& opt = {}) {
    double vol = detail::unit_ball_volume(s.m()) * std::pow(x_max, s.m());
    if (s.k() > 0) vol *= detail::unit_ball_volume(s.k()) * std::pow(y_max, s.k());
    Rng rng(opt.seed);
    NPoint n = NPoint::zero(s);
    double sum = 0.0, sum2 = 0.0;
    for (std::size_t i = 0; i < opt.samples; ++i) {
        rng.ball(n.X, x_max);
        rng.ball(n.Y, y_max);
        const double v = F(n) * vol;
        sum += v;
        sum2 += v * v;
    }
    McEstimate est;
    const double N = static_cast<double>(opt.samples);
    est.proposed = est.accepted = opt.samples;
    est.value = sum / N;
    est.stderr_ = std::sqrt(std::max(0.0, sum2 / N - sum * sum / (N * N)) / (N - 1.0));
    est.haar_volume = vol;
    return est;
}

}  // namespace drh
