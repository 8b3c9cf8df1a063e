#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace drh::quad {

/// Nodes and weights of a discrete measure on an interval.
struct Rule {
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const { return nodes.size(); }

    template <class F>
    auto integrate(F&& f) const {
        using R = decltype(f(0.0));
        R acc{};
        for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * f(nodes[i]);
        return acc;
    }
};

namespace detail {

// Newton iteration on P_n from the Tricomi initial guesses; converges to
// machine precision in a handful of steps for n up to a few hundred.
inline Rule legendre_reference(int n) {
    Rule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // recompute derivative at converged root
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        r.nodes[i] = -x;
        r.nodes[n - 1 - i] = x;
        r.weights[i] = w;
        r.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) r.nodes[half - 1] = 0.0;
    return r;
}

}  // namespace detail

/// Gauss-Legendre rule on [-1, 1]; cached, safe to call concurrently.
inline const Rule& gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
    static std::mutex mu;
    static std::map<int, Rule> cache;
    std::lock_guard lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, detail::legendre_reference(n)).first;
    return it->second;
}

/// Gauss-Legendre rule mapped to [a, b].
inline Rule gauss_legendre(double a, double b, int n) {
    const Rule& ref = gauss_legendre(n);
    Rule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    const double h = 0.5 * (b - a), c = 0.5 * (b + a);
    for (int i = 0; i < n; ++i) {
        r.nodes[i] = c + h * ref.nodes[i];
        r.weights[i] = h * ref.weights[i];
    }
    return r;
}

/// Composite rule: one n-point Gauss-Legendre panel per consecutive pair of
/// breakpoints. Nodes come out strictly increasing.
inline Rule composite(const std::vector<double>& breaks, int n) {
    if (breaks.size() < 2) throw std::invalid_argument("composite: need two breakpoints");
    Rule r;
    r.nodes.reserve((breaks.size() - 1) * n);
    r.weights.reserve((breaks.size() - 1) * n);
    for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
        if (!(breaks[p + 1] > breaks[p])) throw std::invalid_argument("composite: breakpoints must increase");
        Rule panel = gauss_legendre(breaks[p], breaks[p + 1], n);
        r.nodes.insert(r.nodes.end(), panel.nodes.begin(), panel.nodes.end());
        r.weights.insert(r.weights.end(), panel.weights.begin(), panel.weights.end());
    }
    return r;
}

/// Breakpoints of equal panels of width at most `width` on [a, b], with the
/// extra breakpoints in `cuts` (those inside (a, b)) honoured.
inline std::vector<double> panel_breaks(double a, double b, double width, std::vector<double> cuts = {}) {
    std::vector<double> fixed{a, b};
    for (double c : cuts)
        if (c > a && c < b) fixed.push_back(c);
    std::sort(fixed.begin(), fixed.end());
    std::vector<double> out{a};
    for (std::size_t s = 0; s + 1 < fixed.size(); ++s) {
        const double lo = fixed[s], hi = fixed[s + 1];
        const int np = std::max(1, static_cast<int>(std::ceil((hi - lo) / width - 1e-12)));
        for (int i = 1; i <= np; ++i) out.push_back(i == np ? hi : lo + (hi - lo) * i / np);
    }
    return out;
}

}  // namespace drh::quad
