#pragma once

// Spherical (Jacobi) transform of radial profiles and its calibrated inverse,
// Helgason-type Fourier transform values, and N-norms of the kernel P_lambda.

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "drh/errors.hpp"
#include "drh/geometry.hpp"
#include "drh/norms.hpp"
#include "drh/quadrature.hpp"
#include "drh/space.hpp"
#include "drh/specfun.hpp"

namespace drh {

/// Discretization parameters shared by radial, spectral and N grids.
struct GridSpec {
    double radial_panel = 0.2;
    int radial_nodes = 20;
    double xi_max = 60.0;
    double spectral_panel = 1.0;
    int spectral_nodes = 16;
    int n_panels = 8;  // per polar axis on N
    int n_nodes = 16;
    int level = 0;  // number of 2x refinements applied; scales the checks' own sample grids

    /// Every panel width halved.
    GridSpec refined() const {
        GridSpec g = *this;
        g.radial_panel /= 2;
        g.spectral_panel /= 2;
        g.n_panels *= 2;
        ++g.level;
        return g;
    }

    friend bool operator==(const GridSpec&, const GridSpec&) = default;
    auto key() const {
        return std::make_tuple(radial_panel, radial_nodes, xi_max, spectral_panel, spectral_nodes, n_panels, n_nodes, level);
    }
};

/// How fast a radial profile decays; fixes its truncation radius and which
/// spectral lines its transform converges on.
struct DecayClass {
    enum class Kind { Compact, Gaussian, Exponential };
    Kind kind = Kind::Gaussian;
    double param = 1.0;  // support radius | gaussian width a | exponential rate c

    static DecayClass compact(double R) { return {Kind::Compact, R}; }
    static DecayClass gaussian(double a) { return {Kind::Gaussian, a}; }
    /// |f(r)| <= C (1+r)^{-b} e^{-c r} with b > 1
    static DecayClass exponential(double c) { return {Kind::Exponential, c}; }

    std::string label() const {
        switch (kind) {
            case Kind::Compact: return "compact";
            case Kind::Gaussian: return "gaussian";
            case Kind::Exponential: return "exponential";
        }
        return "?";
    }

    /// Largest |Im lambda| for which int f phi_lambda A dr converges.
    double max_abs_eta(const SpaceParams& s) const {
        if (kind == Kind::Exponential) return param - s.rho();
        return kInf;
    }
};

/// Gauss-Legendre panels on [0, r_max]; `weights` integrate against A(r) dr.
struct RadialGrid {
    std::vector<double> r;
    std::vector<double> dr;       // plain quadrature weights
    std::vector<double> weights;  // dr * A(r)
    double r_max = 0.0;
    int panels = 0;
    int nodes_per_panel = 0;

    std::size_t size() const { return r.size(); }
    WeightedGrid measure() const { return WeightedGrid(r, weights); }
};

inline std::shared_ptr<const RadialGrid> make_radial_grid(const SpaceParams& s, double r_max, const GridSpec& spec,
                                                         std::vector<double> cuts = {}) {
    if (!(r_max > 0.0 && r_max <= 40.0)) throw DomainError("radial grid: r_max must lie in (0, 40]");
    const auto breaks = quad::panel_breaks(0.0, r_max, spec.radial_panel, std::move(cuts));
    const auto rule = quad::composite(breaks, spec.radial_nodes);
    auto g = std::make_shared<RadialGrid>();
    g->r = rule.nodes;
    g->dr = rule.weights;
    g->weights.resize(rule.size());
    for (std::size_t i = 0; i < rule.size(); ++i) g->weights[i] = rule.weights[i] * radial_density(s, rule.nodes[i]);
    g->r_max = r_max;
    g->panels = static_cast<int>(breaks.size()) - 1;
    g->nodes_per_panel = spec.radial_nodes;
    return g;
}

/// A radial function sampled on a radial grid.
struct RadialProfile {
    SpaceParams space{2, 0};
    std::shared_ptr<const RadialGrid> grid;
    std::vector<cplx> values;
    DecayClass decay;

    const std::vector<double>& r() const { return grid->r; }
    std::size_t size() const { return values.size(); }
    WeightedGrid measure() const { return grid->measure(); }

    static RadialProfile sample(const SpaceParams& s, std::shared_ptr<const RadialGrid> g,
                                const std::function<cplx(double)>& f, DecayClass decay) {
        RadialProfile p{s, std::move(g), {}, decay};
        p.values.reserve(p.grid->size());
        for (double r : p.grid->r) p.values.push_back(f(r));
        return p;
    }

    RadialProfile with_values(std::vector<cplx> v) const {
        if (v.size() != values.size()) throw std::invalid_argument("RadialProfile: size mismatch");
        RadialProfile p = *this;
        p.values = std::move(v);
        return p;
    }
};

/// Plancherel density of the Damek-Ricci spectral variable: |c(2 xi)|^{-2}
/// in the Jacobi normalization.
inline double spectral_density(const SpaceParams& s, double xi) {
    return plancherel_density(jacobi_params(s), 2.0 * xi);
}

/// Gauss-Legendre panels on the half-line [0, xi_max] of Im lambda = eta.
struct SpectralGrid {
    std::vector<double> xi;
    std::vector<double> dxi;
    std::vector<double> density;  // |c|^{-2} at the nodes
    double eta = 0.0;
    double xi_max = 0.0;

    std::size_t size() const { return xi.size(); }
    /// dxi * density * scale
    std::vector<double> density_weights(double scale = 1.0) const {
        std::vector<double> w(xi.size());
        for (std::size_t j = 0; j < xi.size(); ++j) w[j] = dxi[j] * density[j] * scale;
        return w;
    }
    WeightedGrid measure(double scale = 1.0) const { return WeightedGrid(xi, density_weights(scale)); }
};

inline SpectralGrid make_spectral_grid(const SpaceParams& s, const GridSpec& spec, double eta = 0.0) {
    const auto rule = quad::composite(quad::panel_breaks(0.0, spec.xi_max, spec.spectral_panel), spec.spectral_nodes);
    SpectralGrid g;
    g.xi = rule.nodes;
    g.dxi = rule.weights;
    g.eta = eta;
    g.xi_max = spec.xi_max;
    g.density.reserve(rule.size());
    for (double x : rule.nodes) g.density.push_back(spectral_density(s, x));
    return g;
}

namespace detail {

inline void check_strip(const RadialProfile& f, SpectralPoint lam) {
    const double lim = f.decay.max_abs_eta(f.space);
    if (std::abs(lam.eta) > lim + 1e-12)
        throw DomainError("spherical transform diverges: |Im lambda| = " + std::to_string(std::abs(lam.eta)) +
                          " exceeds " + std::to_string(lim) + " for " + f.decay.label() + " decay");
}

}  // namespace detail

/// f^(lambda) = int_0^inf f(r) phi_lambda(r) A(r) dr by quadrature on f's grid.
inline cplx spherical_transform(const RadialProfile& f, SpectralPoint lam, const JacobiConfig& cfg = {}) {
    detail::check_strip(f, lam);
    const auto phi = phi_dr_many(f.space, lam, f.grid->r, cfg);
    cplx acc = 0.0;
    for (std::size_t i = 0; i < phi.size(); ++i) acc += f.grid->weights[i] * f.values[i] * phi[i];
    return acc;
}

inline cplx spherical_transform(const SpaceParams& s, const RadialProfile& f, SpectralPoint lam) {
    if (!(s == f.space)) throw std::invalid_argument("spherical_transform: profile belongs to another space");
    return spherical_transform(f, lam);
}

/// Transforms of several profiles on one spectral point, sharing the kernel.
inline std::vector<cplx> spherical_transform_many(std::span<const RadialProfile> fs, SpectralPoint lam) {
    std::vector<cplx> out;
    if (fs.empty()) return out;
    const auto phi = phi_dr_many(fs[0].space, lam, fs[0].grid->r);
    for (const auto& f : fs) {
        if (f.grid != fs[0].grid) throw std::invalid_argument("spherical_transform_many: profiles on different grids");
        detail::check_strip(f, lam);
        cplx acc = 0.0;
        for (std::size_t i = 0; i < phi.size(); ++i) acc += f.grid->weights[i] * f.values[i] * phi[i];
        out.push_back(acc);
    }
    return out;
}

/// Kernel table phi_xi(r) on a radial grid times a real spectral grid, with
/// forward transform and the inverse
///   f(r) = c_S int_0^Xi F(xi) phi_xi(r) |c|^{-2} dxi.
/// The constant c_S is fitted once by a roundtrip on a reference profile.
class TransformEngine {
public:
    TransformEngine(const SpaceParams& s, std::shared_ptr<const RadialGrid> radial, SpectralGrid spectral)
        : space_(s), radial_(std::move(radial)), spectral_(std::move(spectral)) {
        if (spectral_.eta != 0.0) throw DomainError("TransformEngine: spectral grid must lie on the real line");
        const std::size_t nr = radial_->size(), nx = spectral_.size();
        kernel_.resize(nr * nx);
        for (std::size_t j = 0; j < nx; ++j) {
            const auto phi = phi_dr_many(space_, SpectralPoint(spectral_.xi[j]), radial_->r);
            for (std::size_t i = 0; i < nr; ++i) kernel_[j * nr + i] = phi[i].real();
        }
        dens_w_ = spectral_.density_weights();
    }

    const SpaceParams& space() const { return space_; }
    const std::shared_ptr<const RadialGrid>& radial() const { return radial_; }
    const SpectralGrid& spectral() const { return spectral_; }
    double phi(std::size_t j, std::size_t i) const { return kernel_[j * radial_->size() + i]; }

    /// f^ at every spectral node.
    std::vector<cplx> forward(const RadialProfile& f) const {
        check_profile(f);
        const std::size_t nr = radial_->size();
        std::vector<cplx> fw(nr);
        for (std::size_t i = 0; i < nr; ++i) fw[i] = f.values[i] * radial_->weights[i];
        std::vector<cplx> out(spectral_.size());
        for (std::size_t j = 0; j < out.size(); ++j) {
            const double* row = &kernel_[j * nr];
            cplx acc = 0.0;
            for (std::size_t i = 0; i < nr; ++i) acc += fw[i] * row[i];
            out[j] = acc;
        }
        return out;
    }

    /// Inverse at every radial node; needs calibration.
    std::vector<cplx> inverse(std::span<const cplx> F) const { return inverse_with(F, inversion_constant()); }

    double inversion_constant() const {
        if (!c_s_) throw Uncalibrated("inverse transform: inversion constant not calibrated");
        return *c_s_;
    }
    bool calibrated() const { return c_s_.has_value(); }

    /// Least-squares c_S in L^2(A dr) from inverse(forward(reference)).
    double calibrate(const RadialProfile& reference) {
        const auto raw = inverse_with(forward(reference), 1.0);
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < raw.size(); ++i) {
            num += radial_->weights[i] * std::real(std::conj(raw[i]) * reference.values[i]);
            den += radial_->weights[i] * std::norm(raw[i]);
        }
        if (!(den > 0.0)) throw PrecisionLoss("calibrate: reference profile has vanishing transform", 1.0);
        c_s_ = num / den;
        return *c_s_;
    }
    void set_inversion_constant(double c) { c_s_ = c; }

    /// Profile whose transform is F * multiplier(xi), evaluated on the radial grid.
    RadialProfile apply_multiplier(const RadialProfile& f, const std::function<cplx(double)>& multiplier) const {
        auto F = forward(f);
        for (std::size_t j = 0; j < F.size(); ++j) F[j] *= multiplier(spectral_.xi[j]);
        return f.with_values(inverse(F));
    }

    void check_profile(const RadialProfile& f) const {
        if (!(f.space == space_)) throw std::invalid_argument("TransformEngine: profile belongs to another space");
        if (f.grid != radial_ && f.grid->r != radial_->r)
            throw std::invalid_argument("TransformEngine: profile sampled on a different radial grid");
        if (f.decay.kind == DecayClass::Kind::Exponential)
            throw DomainError("TransformEngine: spectral inversion needs compact or gaussian decay");
    }

private:
    std::vector<cplx> inverse_with(std::span<const cplx> F, double c) const {
        if (F.size() != spectral_.size()) throw std::invalid_argument("inverse transform: sample count mismatch");
        const std::size_t nr = radial_->size();
        std::vector<cplx> out(nr, 0.0);
        for (std::size_t j = 0; j < F.size(); ++j) {
            const cplx a = F[j] * dens_w_[j] * c;
            const double* row = &kernel_[j * nr];
            for (std::size_t i = 0; i < nr; ++i) out[i] += a * row[i];
        }
        return out;
    }

    SpaceParams space_;
    std::shared_ptr<const RadialGrid> radial_;
    SpectralGrid spectral_;
    std::vector<double> kernel_;
    std::vector<double> dens_w_;
    std::optional<double> c_s_;
};

/// Radius of the common grid for gaussian and compact profiles, with a panel
/// break at the standard bump support.
inline constexpr double kProfileRMax = 12.0;
inline constexpr double kBumpRadius = 2.0;

inline std::shared_ptr<const RadialGrid> standard_radial_grid(const SpaceParams& s, const GridSpec& spec) {
    return make_radial_grid(s, kProfileRMax, spec, {kBumpRadius});
}

/// Reference profile for calibration: e^{-r^2}.
inline RadialProfile calibration_reference(const SpaceParams& s, std::shared_ptr<const RadialGrid> g) {
    return RadialProfile::sample(s, std::move(g), [](double r) { return cplx(std::exp(-r * r)); },
                                 DecayClass::gaussian(1.0));
}

/// Calibrated engine on the standard grid, built once per (space, grid spec).
inline std::shared_ptr<const TransformEngine> shared_engine(const SpaceParams& s, const GridSpec& spec = {}) {
    static std::mutex mu;
    static std::map<std::tuple<int, int, decltype(spec.key())>, std::shared_ptr<const TransformEngine>> cache;
    const auto key = std::make_tuple(s.m(), s.k(), spec.key());
    std::lock_guard lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    auto grid = standard_radial_grid(s, spec);
    auto eng = std::make_shared<TransformEngine>(s, grid, make_spectral_grid(s, spec));
    eng->calibrate(calibration_reference(s, grid));
    cache.emplace(key, eng);
    return eng;
}

/// c_S int F(xi) phi_xi(r) |c|^{-2} dxi at arbitrary radii.
inline std::vector<cplx> inverse_transform(const TransformEngine& eng, std::span<const cplx> F,
                                           std::span<const double> r_sorted) {
    const double c = eng.inversion_constant();
    const auto& sp = eng.spectral();
    if (F.size() != sp.size()) throw std::invalid_argument("inverse_transform: sample count mismatch");
    const auto w = sp.density_weights(c);
    std::vector<cplx> out(r_sorted.size(), 0.0);
    for (std::size_t j = 0; j < F.size(); ++j) {
        const auto phi = phi_dr_many(eng.space(), SpectralPoint(sp.xi[j]), r_sorted);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += F[j] * w[j] * phi[i];
    }
    return out;
}

// ---------------------------------------------------------------------------
// Helgason-type Fourier transform
// ---------------------------------------------------------------------------

/// f~(lambda, n) = f^(lambda) P_lambda(e, n) for radial f.
inline cplx helgason_ft_radial(const RadialProfile& f, SpectralPoint lam, const NPoint& n) {
    return spherical_transform(f, lam) * p_lambda(f.space, GroupElement::identity(f.space), n, lam);
}

/// int_S f(x) P_lambda(x, n) dx for f supported in `box`, by Monte-Carlo, with
/// dx = e^{-2 rho t} dn dt. For radial f this is sphere_area_constant(s) times
/// helgason_ft_radial, whose radial integrals use A(r) dr.
inline McEstimate helgason_ft_general(const SpaceParams& s, const GroupFunction& f, const SupportBox& box,
                                      SpectralPoint lam, const NPoint& n, const McOptions& opt = {}) {
    auto integrand = [&](const GroupElement& x) { return f(x) * p_lambda(s, x, n, lam); };
    auto est = box_integral(s, integrand, box, opt);
    if (opt.target_rel_stderr > 0.0 && est.stderr_ > opt.target_rel_stderr * std::abs(est.value))
        throw BudgetExhausted("helgason_ft_general: relative standard error above request",
                              est.stderr_ / std::max(std::abs(est.value), 1e-300));
    return est;
}

// ---------------------------------------------------------------------------
// N-norms of the kernel
// ---------------------------------------------------------------------------

/// Exponent e with |P_lambda(e,n)|^q w(n) = P_1(n)^e.
inline double kernel_power(const SpaceParams& s, double eta, double q, bool weighted) {
    return q * (0.5 + eta / s.Q()) + (weighted ? 1.0 : 0.0);
}

/// (int_N |P_lambda(e,n)|^q w(n) dn)^{1/q}, w = P_1 if weighted else 1.
inline double n_norm_of_kernel(const SpaceParams& s, SpectralPoint lam, double q, bool weighted) {
    if (!(q >= 1.0)) throw DomainError("n_norm_of_kernel: q must be >= 1");
    const double a = 0.5 + lam.eta / s.Q();  // |P_lambda(e, n)| = P_1(n)^a
    if (std::isinf(q)) {
        if (a < 0.0) throw DomainError("n_norm_of_kernel: P_1^a unbounded on N for a = " + std::to_string(a));
        return std::pow(poisson_normalization(s), a);  // P_1 peaks at n = 0
    }
    const double e = kernel_power(s, lam.eta, q, weighted);
    if (!(e > 0.5))
        throw DomainError("n_norm_of_kernel: divergent regime, exponent of P_1 is " + std::to_string(e) +
                          " (needs > 1/2)");
    return std::pow(poisson_power_integral(s, e), 1.0 / q);
}

/// Cells of N (polar in |X|, |Y|) carrying the measure P_1(n) dn; `points`
/// hold P_1 at the cell nodes. Radii are mapped by |X| = 2 tan u and
/// |Y| = (1 + |X|^2/4) tan v onto [0, pi/2]^2.
inline WeightedGrid poisson_weighted_n_grid(const SpaceParams& s, const GridSpec& spec) {
    const double half_pi = 0.5 * std::numbers::pi;
    const auto rule = quad::composite(quad::panel_breaks(0.0, half_pi, half_pi / spec.n_panels), spec.n_nodes);
    const double C = poisson_normalization(s);
    const double Q = s.Q();
    const double wx = detail::unit_sphere_area(s.m());
    std::vector<double> pts, w;
    for (std::size_t iu = 0; iu < rule.size(); ++iu) {
        const double u = rule.nodes[iu];
        const double cu = std::cos(u);
        const double B = 1.0 / (cu * cu);  // 1 + |X|^2/4
        const double jac_x = wx * std::pow(2.0 * std::tan(u), s.m() - 1) * 2.0 * B * rule.weights[iu];
        if (s.k() == 0) {
            const double p1 = C * std::pow(B, -2.0 * Q);
            if (p1 * jac_x > 0.0) {
                pts.push_back(p1);
                w.push_back(p1 * jac_x);
            }
            continue;
        }
        const double wy = detail::unit_sphere_area(s.k());
        for (std::size_t iv = 0; iv < rule.size(); ++iv) {
            const double v = rule.nodes[iv];
            const double cv = std::cos(v);
            const double jac_y = wy * std::pow(B * std::tan(v), s.k() - 1) * B / (cv * cv) * rule.weights[iv];
            const double p1 = C * std::pow(B * B / (cv * cv), -Q);
            const double mass = p1 * jac_x * jac_y;
            if (mass > 0.0) {
                pts.push_back(p1);
                w.push_back(mass);
            }
        }
    }
    return WeightedGrid(std::move(pts), std::move(w));
}

/// Lorentz (q, r) norm of n -> |P_lambda(e, n)| over (N, P_1 dn).
inline double n_lorentz_norm_of_kernel(const SpaceParams& s, SpectralPoint lam, const LorentzIndex& idx,
                                       const WeightedGrid& n_grid) {
    const double a = 0.5 + lam.eta / s.Q();
    std::vector<double> vals(n_grid.size());
    for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = std::pow(n_grid.points[i], a);
    return lorentz_norm(vals, n_grid, idx);
}

}  // namespace drh
