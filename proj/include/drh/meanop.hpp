#pragma once

// Spherical mean operator M_t as the spectral multiplier phi_lambda(t), its
// L^p operator bound, the Lorentz modulus of continuity and the decay law of
// phi_{i gamma_p rho}.

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "drh/errors.hpp"
#include "drh/norms.hpp"
#include "drh/specfun.hpp"
#include "drh/transforms.hpp"

namespace drh {

/// phi_xi(t) for every spectral node of `sp` and every t of `t_sorted`;
/// result[i][j] belongs to t_sorted[i] and xi_j.
inline std::vector<std::vector<double>> multiplier_table(const SpaceParams& s, const SpectralGrid& sp,
                                                         std::span<const double> t_sorted) {
    std::vector<std::vector<double>> out(t_sorted.size(), std::vector<double>(sp.size()));
    for (std::size_t j = 0; j < sp.size(); ++j) {
        const auto phi = phi_dr_many(s, SpectralPoint(sp.xi[j]), t_sorted);
        for (std::size_t i = 0; i < t_sorted.size(); ++i) out[i][j] = phi[i].real();
    }
    return out;
}

namespace detail {

inline RadialProfile mean_from_transform(const TransformEngine& eng, const RadialProfile& f, std::vector<cplx> F,
                                         std::span<const double> multiplier, double t) {
    for (std::size_t j = 0; j < F.size(); ++j) F[j] *= multiplier[j];
    RadialProfile out = f.with_values(eng.inverse(F));
    if (f.decay.kind == DecayClass::Kind::Compact) {
        // M_t f vanishes beyond supp f + t; the inversion only adds noise there
        const double R = f.decay.param + t;
        for (std::size_t i = 0; i < out.size(); ++i)
            if (out.r()[i] > R) out.values[i] = 0.0;
        out.decay = DecayClass::compact(R);
    }
    return out;
}

}  // namespace detail

/// M_t f on f's grid, as the inverse transform of f^(xi) phi_xi(t).
inline RadialProfile spherical_mean(const TransformEngine& eng, const RadialProfile& f, double t) {
    if (!(t >= 0.0)) throw DomainError("spherical_mean: t must be nonnegative");
    eng.check_profile(f);
    if (t == 0.0) return f;
    const double ts[1] = {t};
    const auto mult = multiplier_table(eng.space(), eng.spectral(), ts);
    return detail::mean_from_transform(eng, f, eng.forward(f), mult[0], t);
}

/// M_t f for every t of `t_sorted` (sharing one forward transform).
inline std::vector<RadialProfile> spherical_means(const TransformEngine& eng, const RadialProfile& f,
                                                  std::span<const double> t_sorted) {
    eng.check_profile(f);
    const auto F = eng.forward(f);
    const auto mult = multiplier_table(eng.space(), eng.spectral(), t_sorted);
    std::vector<RadialProfile> out;
    out.reserve(t_sorted.size());
    for (std::size_t i = 0; i < t_sorted.size(); ++i)
        out.push_back(t_sorted[i] == 0.0 ? f : detail::mean_from_transform(eng, f, F, mult[i], t_sorted[i]));
    return out;
}

/// phi_{i gamma_p rho}(t), the L^p -> L^p norm bound of M_t; 1 for p = 1, inf.
inline double mean_operator_bound(const SpaceParams& s, double p, double t) {
    if (!(p >= 1.0)) throw DomainError("mean_operator_bound: p must be >= 1");
    const double g = std::abs(LorentzIndex::gamma(p));
    if (g == 1.0) return 1.0;
    return phi_dr(s, SpectralPoint(0.0, g * s.rho()), t).real();
}

struct ModulusResult {
    double value = 0.0;
    double t_at_max = 0.0;
    int evaluations = 0;
};

struct MeanConfig {
    double ratio = 1.25;     // geometric t-grid ratio
    int levels = 24;         // grid points below r
    double stable_tol = 0.01;
    int max_refinements = 6;
};

/// Omega_{p,q}[f](r) = sup_{0 < t <= r} ||M_t f - f||*_{p,q}: maximum over a
/// geometric grid in (0, r], refined around the argmax until stable to 1%.
inline ModulusResult modulus_of_continuity(const TransformEngine& eng, const RadialProfile& f, const LorentzIndex& idx,
                                           double r, const MeanConfig& cfg = {}) {
    if (!(r > 0.0)) throw DomainError("modulus_of_continuity: r must be positive");
    eng.check_profile(f);
    const auto F = eng.forward(f);
    const auto measure = f.measure();
    ModulusResult res;
    std::map<double, double> seen;
    auto eval = [&](std::vector<double> ts) {
        std::sort(ts.begin(), ts.end());
        ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
        std::erase_if(ts, [&](double t) { return seen.count(t) > 0; });
        if (ts.empty()) return;
        const auto mult = multiplier_table(eng.space(), eng.spectral(), ts);
        for (std::size_t i = 0; i < ts.size(); ++i) {
            const auto mf = detail::mean_from_transform(eng, f, F, mult[i], ts[i]);
            std::vector<cplx> diff(f.size());
            for (std::size_t k = 0; k < diff.size(); ++k) diff[k] = mf.values[k] - f.values[k];
            seen[ts[i]] = lorentz_norm(diff, measure, idx);
            ++res.evaluations;
        }
    };
    std::vector<double> grid;
    for (int i = 0; i <= cfg.levels; ++i) grid.push_back(r * std::pow(cfg.ratio, -i));
    eval(grid);
    auto best = [&] { return *std::max_element(seen.begin(), seen.end(), [](auto& a, auto& b) { return a.second < b.second; }); };
    double prev = best().second;
    for (int it = 0; it < cfg.max_refinements; ++it) {
        const auto [tb, vb] = best();
        auto it_b = seen.find(tb);
        std::vector<double> extra;
        if (it_b != seen.begin()) extra.push_back(std::sqrt(std::prev(it_b)->first * tb));
        if (std::next(it_b) != seen.end()) extra.push_back(std::sqrt(std::next(it_b)->first * tb));
        if (extra.empty()) break;
        eval(extra);
        const double cur = best().second;
        if (std::abs(cur - prev) <= cfg.stable_tol * std::max(cur, 1e-300)) {
            prev = cur;
            break;
        }
        prev = cur;
    }
    const auto [tb, vb] = best();
    res.value = vb;
    res.t_at_max = tb;
    return res;
}

struct DecayRow {
    double t = 0.0;
    double bound = 0.0;        // phi_{i gamma_p rho}(t)
    double compensated = 0.0;  // bound * e^{(2 rho / p') t}
};

struct DecayProfile {
    std::vector<DecayRow> rows;
    double ratio_2_10 = 0.0;  // max/min of the compensated column over t in [2, 10]
};

inline DecayProfile decay_profile(const SpaceParams& s, double p, std::vector<double> t_grid) {
    if (!(p >= 1.0 && p <= 2.0)) throw DomainError("decay_profile: p must lie in [1, 2]");
    std::sort(t_grid.begin(), t_grid.end());
    const double pp = LorentzIndex::conjugate(p);
    const double rate = std::isinf(pp) ? 0.0 : 2.0 * s.rho() / pp;
    const double g = LorentzIndex::gamma(p);
    std::vector<cplx> phi(t_grid.size(), 1.0);
    if (g != 1.0) phi = phi_dr_many(s, SpectralPoint(0.0, g * s.rho()), t_grid);
    DecayProfile out;
    double lo = kInf, hi = 0.0;
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        DecayRow row{t_grid[i], phi[i].real(), phi[i].real() * std::exp(rate * t_grid[i])};
        out.rows.push_back(row);
        if (row.t >= 2.0 - 1e-12 && row.t <= 10.0 + 1e-12) {
            lo = std::min(lo, row.compensated);
            hi = std::max(hi, row.compensated);
        }
    }
    out.ratio_2_10 = hi > 0.0 ? hi / lo : 0.0;
    return out;
}

}  // namespace drh
