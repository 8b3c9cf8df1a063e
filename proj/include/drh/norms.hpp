#pragma once

// Lebesgue and Lorentz norms over discrete measures. Data are step functions
// (one value per cell), for which the rearrangement integrals are exact.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

#include "drh/errors.hpp"

namespace drh {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Cell points and masses of a discretized measure.
struct WeightedGrid {
    std::vector<double> points;
    std::vector<double> weights;

    WeightedGrid() = default;
    WeightedGrid(std::vector<double> pts, std::vector<double> w) : points(std::move(pts)), weights(std::move(w)) {
        if (points.size() != weights.size()) throw std::invalid_argument("WeightedGrid: size mismatch");
        for (double v : weights)
            if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument("WeightedGrid: weights must be positive");
    }
    std::size_t size() const { return weights.size(); }
    double total_mass() const { return std::accumulate(weights.begin(), weights.end(), 0.0); }
};

/// Exponent pair (p, q) of L^{p,q}, with gamma_p = 2/p - 1.
struct LorentzIndex {
    double p = 2.0;
    double q = 2.0;

    LorentzIndex() = default;
    LorentzIndex(double p_, double q_) : p(p_), q(q_) {
        if (!(p > 0.0) || !(q >= 1.0)) throw DomainError("LorentzIndex: need p > 0 and q >= 1");
        if (std::isinf(p) && !std::isinf(q)) throw DomainError("LorentzIndex: L^{inf,q} with q < inf is not normable");
    }
    double gamma_p() const { return gamma(p); }
    double p_prime() const { return conjugate(p); }

    static double gamma(double p) { return std::isinf(p) ? -1.0 : 2.0 / p - 1.0; }
    static double conjugate(double p) {
        if (p == 1.0) return kInf;
        if (std::isinf(p)) return 1.0;
        return p / (p - 1.0);
    }
};

namespace detail {

template <class T>
double magnitude(const T& v) {
    return std::abs(v);
}

template <class Range>
std::vector<double> magnitudes(const Range& f) {
    std::vector<double> out;
    out.reserve(std::size(f));
    for (const auto& v : f) out.push_back(magnitude(v));
    return out;
}

inline void check_sizes(std::size_t n, const WeightedGrid& g) {
    if (n != g.size()) throw std::invalid_argument("values and grid differ in size");
}

}  // namespace detail

/// (sum |f|^p w)^{1/p}, or max |f| over cells for p = inf.
template <class Range>
double lp_norm(const Range& f, const WeightedGrid& g, double p) {
    if (!(p >= 1.0)) throw DomainError("lp_norm: p must be >= 1");
    const auto a = detail::magnitudes(f);
    detail::check_sizes(a.size(), g);
    if (std::isinf(p)) return a.empty() ? 0.0 : *std::max_element(a.begin(), a.end());
    // scale by the max to keep |f|^p in range
    const double mx = a.empty() ? 0.0 : *std::max_element(a.begin(), a.end());
    if (mx == 0.0) return 0.0;
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::pow(a[i] / mx, p) * g.weights[i];
    return mx * std::pow(acc, 1.0 / p);
}

/// mass of {|f| > s}
template <class Range>
double distribution_function(const Range& f, const WeightedGrid& g, double s) {
    if (!(s >= 0.0)) throw DomainError("distribution_function: s must be nonnegative");
    const auto a = detail::magnitudes(f);
    detail::check_sizes(a.size(), g);
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > s) m += g.weights[i];
    return m;
}

/// Decreasing rearrangement as a step function: f*(t) = values[k] for
/// t in [ends[k-1], ends[k]).
struct Rearrangement {
    std::vector<double> values;
    std::vector<double> ends;

    double operator()(double t) const {
        auto it = std::upper_bound(ends.begin(), ends.end(), t);
        if (it == ends.end()) return 0.0;
        return values[static_cast<std::size_t>(it - ends.begin())];
    }
};

template <class Range>
Rearrangement decreasing_rearrangement(const Range& f, const WeightedGrid& g) {
    const auto a = detail::magnitudes(f);
    detail::check_sizes(a.size(), g);
    std::vector<std::size_t> order(a.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a[i] > a[j]; });
    Rearrangement r;
    double T = 0.0;
    for (std::size_t i : order) {
        if (a[i] == 0.0) break;
        // merge equal values into one step
        T += g.weights[i];
        if (!r.values.empty() && r.values.back() == a[i]) {
            r.ends.back() = T;
        } else {
            r.values.push_back(a[i]);
            r.ends.push_back(T);
        }
    }
    return r;
}

/// (int_0^inf (t^{1/p} f*(t))^q dt/t)^{1/q}, exact on step data; q = inf gives
/// sup_t t^{1/p} f*(t).
inline double lorentz_norm(const Rearrangement& r, const LorentzIndex& idx) {
    const double p = idx.p, q = idx.q;
    if (r.values.empty()) return 0.0;
    if (std::isinf(p)) return r.values.front();
    if (std::isinf(q)) {
        double best = 0.0;
        for (std::size_t k = 0; k < r.values.size(); ++k) best = std::max(best, r.values[k] * std::pow(r.ends[k], 1.0 / p));
        return best;
    }
    const double mx = r.values.front();
    const double e = q / p;
    double acc = 0.0, prev = 0.0;
    for (std::size_t k = 0; k < r.values.size(); ++k) {
        const double T = r.ends[k];
        // T^e - prev^e without cancellation
        const double inc = prev > 0.0 ? std::pow(T, e) * -std::expm1(e * std::log(prev / T)) : std::pow(T, e);
        acc += std::pow(r.values[k] / mx, q) * inc;
        prev = T;
    }
    return mx * std::pow(acc / e, 1.0 / q);
}

template <class Range>
double lorentz_norm(const Range& f, const WeightedGrid& g, const LorentzIndex& idx) {
    return lorentz_norm(decreasing_rearrangement(f, g), idx);
}

}  // namespace drh
