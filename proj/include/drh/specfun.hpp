#pragma once

// Special functions behind the spherical analysis: complex Gamma, Gauss
// hypergeometric 2F1, normalized Bessel j_alpha, Jacobi functions at complex
// spectral parameter, the c-function and the Plancherel density.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include <boost/numeric/odeint.hpp>

#include "drh/errors.hpp"
#include "drh/space.hpp"

namespace drh {

using cplx = std::complex<double>;

/// Jacobi parameters (alpha, beta) with rho_j = alpha + beta + 1.
class JacobiParams {
public:
    JacobiParams(double alpha, double beta) : alpha_(alpha), beta_(beta), rho_j_(alpha + beta + 1.0) {
        if (!(alpha >= beta && beta >= -0.5))
            throw DomainError("JacobiParams: require alpha >= beta >= -1/2");
    }
    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    double rho_j() const { return rho_j_; }

private:
    double alpha_;
    double beta_;
    double rho_j_;
};

inline JacobiParams jacobi_params(const SpaceParams& s) { return {s.alpha(), s.beta()}; }

/// lambda = xi + i eta. Strip membership is the caller's business.
struct SpectralPoint {
    double xi = 0.0;
    double eta = 0.0;

    SpectralPoint() = default;
    SpectralPoint(double xi_, double eta_ = 0.0) : xi(xi_), eta(eta_) {
        if (!std::isfinite(xi) || !std::isfinite(eta)) throw DomainError("SpectralPoint: non-finite component");
    }
    explicit SpectralPoint(cplx z) : SpectralPoint(z.real(), z.imag()) {}

    cplx value() const { return {xi, eta}; }
    SpectralPoint operator-() const { return {-xi, -eta}; }
};

// ---------------------------------------------------------------------------
// Gamma
// ---------------------------------------------------------------------------

namespace detail {

// Lanczos approximation, g = 607/128, 15 terms (Godfrey).
inline constexpr double kLanczosG = 607.0 / 128.0;
inline constexpr std::array<double, 15> kLanczosCoef{
    0.99999999999999709182,     57.156235665862923517,      -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,    .33994649984811888699e-4,
    .46523628927048575665e-4,   -.98374475304879564677e-4,  .15808870322491248884e-3,
    -.21026444172410488319e-3,  .21743961811521264320e-3,   -.16431810653676389022e-3,
    .84418223983852743293e-4,   -.26190838401581408670e-4,  .36899182659531622704e-5};

inline bool is_gamma_pole(cplx z) {
    return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

// log sin(pi z) without overflow for large |Im z|.
inline cplx log_sin_pi(cplx z) {
    const cplx ipz = cplx(0.0, std::numbers::pi) * z;
    if (std::abs(z.imag()) < 20.0) return std::log(std::sin(std::numbers::pi * z));
    if (z.imag() > 0.0)  // sin = e^{-i pi z} (e^{2 i pi z} - 1) / (2i)
        return -ipz + std::log(std::exp(2.0 * ipz) - 1.0) - std::log(cplx(0.0, 2.0));
    return ipz + std::log(1.0 - std::exp(-2.0 * ipz)) - std::log(cplx(0.0, 2.0));
}

inline cplx log_gamma_right(cplx z) {  // Re z >= 1/2
    const cplx zz = z - 1.0;
    cplx sum = kLanczosCoef[0];
    for (std::size_t k = 1; k < kLanczosCoef.size(); ++k) sum += kLanczosCoef[k] / (zz + static_cast<double>(k));
    const cplx t = zz + kLanczosG + 0.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (zz + 0.5) * std::log(t) - t + std::log(sum);
}

}  // namespace detail

/// A logarithm of Gamma(z) (not necessarily the principal branch of
/// log Gamma); exp of it is Gamma(z). Throws DomainError at poles.
inline cplx log_gamma(cplx z) {
    if (detail::is_gamma_pole(z)) throw DomainError("Gamma pole at nonpositive integer");
    if (z.real() >= 0.5) return detail::log_gamma_right(z);
    return std::log(std::numbers::pi) - detail::log_sin_pi(z) - detail::log_gamma_right(1.0 - z);
}

inline cplx gamma_complex(cplx z) {
    if (detail::is_gamma_pole(z)) throw DomainError("Gamma pole at nonpositive integer");
    if (z.imag() == 0.0 && z.real() > 0.0 && z.real() < 170.0) return std::tgamma(z.real());
    return std::exp(log_gamma(z));
}

/// 1/Gamma(z); zero at the poles of Gamma.
inline cplx rgamma(cplx z) {
    if (detail::is_gamma_pole(z)) return 0.0;
    return std::exp(-log_gamma(z));
}

// ---------------------------------------------------------------------------
// Gauss hypergeometric function
// ---------------------------------------------------------------------------

namespace detail {

inline bool is_nonpositive_integer(cplx z) { return is_gamma_pole(z); }

inline double dist_to_integer(cplx z) {
    return std::hypot(z.real() - std::round(z.real()), z.imag());
}

// Plain Taylor series; reports cancellation through PrecisionLoss.
inline cplx hyp2f1_series(cplx a, cplx b, cplx c, cplx z, int max_terms = 200000) {
    cplx term = 1.0, sum = 1.0;
    double max_term = 1.0;
    int n = 0;
    for (; n < max_terms; ++n) {
        const cplx num = (a + static_cast<double>(n)) * (b + static_cast<double>(n));
        if (num == 0.0) break;  // terminating series
        term *= num / ((c + static_cast<double>(n)) * static_cast<double>(n + 1)) * z;
        sum += term;
        max_term = std::max(max_term, std::abs(term));
        if (std::abs(term) <= 1e-17 * std::abs(sum) && n > 2) break;
    }
    if (n >= max_terms) throw PrecisionLoss("2F1 series did not converge within term budget", 1.0);
    const double est = max_term * 4e-16 * std::sqrt(n + 1.0) / std::max(std::abs(sum), 1e-300);
    if (est > 1e-10) throw PrecisionLoss("2F1 series lost precision to cancellation", est);
    return sum;
}

// 0.5 < x < 1 (real), via the 1 - z connection formula when c - a - b is
// safely non-integer.
inline cplx hyp2f1_unit_interval(cplx a, cplx b, cplx c, double x) {
    if (x <= 0.5) return hyp2f1_series(a, b, c, x);
    const cplx s = c - a - b;
    if (dist_to_integer(s) > 1e-4) {
        const double y = 1.0 - x;
        const cplx lg_c = log_gamma(c);
        cplx t1 = 0.0, t2 = 0.0;
        const cplx r1 = rgamma(c - a) * rgamma(c - b);
        if (r1 != 0.0) t1 = std::exp(lg_c + log_gamma(s)) * r1 * hyp2f1_series(a, b, 1.0 - s, y);
        const cplx r2 = rgamma(a) * rgamma(b);
        if (r2 != 0.0)
            t2 = std::pow(cplx(y), s) * std::exp(lg_c + log_gamma(-s)) * r2 * hyp2f1_series(c - a, c - b, s + 1.0, y);
        return t1 + t2;
    }
    if (x <= 0.9) return hyp2f1_series(a, b, c, x);
    throw DomainError("2F1: z outside certified domain (near z=1 with integer c-a-b)");
}

}  // namespace detail

/// Gauss hypergeometric 2F1(a, b; c; z). Certified for real z < 1 and for
/// complex |z| <= 0.9; elsewhere throws DomainError rather than returning
/// an uncertified value.
inline cplx gauss_2f1(cplx a, cplx b, cplx c, cplx z) {
    if (detail::is_nonpositive_integer(c)) throw DomainError("2F1: c is a nonpositive integer");
    if (z == 0.0) return 1.0;
    if (std::abs(z) <= 0.5) return detail::hyp2f1_series(a, b, c, z);
    if (z.imag() == 0.0) {
        const double x = z.real();
        if (x >= 1.0) throw DomainError("2F1: z >= 1 outside certified domain");
        if (x > 0.0) return detail::hyp2f1_unit_interval(a, b, c, x);
        // Pfaff: maps (-inf, -1/2) onto (1/3, 1)
        const double w = x / (x - 1.0);
        return std::pow(cplx(1.0 - x), -a) * detail::hyp2f1_unit_interval(a, c - b, c, w);
    }
    if (std::abs(z) <= 0.9) return detail::hyp2f1_series(a, b, c, z);
    throw DomainError("2F1: complex z with |z| > 0.9 outside certified domain");
}

// ---------------------------------------------------------------------------
// Bessel
// ---------------------------------------------------------------------------

/// j_alpha(x) = Gamma(alpha+1) (2/x)^alpha J_alpha(x), normalized j_alpha(0) = 1.
inline double bessel_j_normalized(double alpha, double x) {
    if (!(alpha > -1.0)) throw DomainError("bessel_j_normalized: alpha must exceed -1");
    x = std::abs(x);
    if (x == 0.0) return 1.0;
    if (x <= 6.0) {
        // 0F1(; alpha+1; -x^2/4)
        const double q = -0.25 * x * x;
        double term = 1.0, sum = 1.0;
        for (int n = 0; n < 200; ++n) {
            term *= q / ((n + 1.0) * (alpha + 1.0 + n));
            sum += term;
            if (std::abs(term) < 1e-18 * std::max(1.0, std::abs(sum))) break;
        }
        return sum;
    }
    const double scale = std::exp(std::lgamma(alpha + 1.0) + alpha * std::log(2.0 / x));
    double J;
    if (alpha >= 0.0) {
        J = std::cyl_bessel_j(alpha, x);
    } else {
        const double nu = -alpha;  // J_{-nu} = cos(nu pi) J_nu - sin(nu pi) Y_nu
        J = std::cos(nu * std::numbers::pi) * std::cyl_bessel_j(nu, x) -
            std::sin(nu * std::numbers::pi) * std::cyl_neumann(nu, x);
    }
    return scale * J;
}

/// 1 - j_alpha(x), summed directly for small x where the difference cancels.
inline double one_minus_bessel_j_normalized(double alpha, double x) {
    if (!(alpha > -1.0)) throw DomainError("one_minus_bessel_j_normalized: alpha must exceed -1");
    x = std::abs(x);
    if (x > 1.0) return 1.0 - bessel_j_normalized(alpha, x);
    const double q = -0.25 * x * x;
    double term = 1.0, sum = 0.0;
    for (int n = 0; n < 60; ++n) {
        term *= q / ((n + 1.0) * (alpha + 1.0 + n));
        sum -= term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

// ---------------------------------------------------------------------------
// Jacobi functions
// ---------------------------------------------------------------------------

struct JacobiConfig {
    double rel_tol = 1e-13;
    std::size_t max_steps = 4'000'000;
};

namespace detail {

// Radius below which the 2F1(.;-sinh^2 s) series is used directly.
inline double jacobi_series_radius(const JacobiParams& p, cplx mu) {
    return std::min(0.5, 1.0 / (std::abs(mu) + p.rho_j() + 1.0));
}

// phi and d phi / ds from the hypergeometric series about s = 0.
inline std::array<cplx, 2> jacobi_series(const JacobiParams& p, cplx mu, double s) {
    const cplx im(0.0, 1.0);
    const cplx a = 0.5 * (p.rho_j() + im * mu), b = 0.5 * (p.rho_j() - im * mu);
    const double c = p.alpha() + 1.0;
    const double sh = std::sinh(s);
    const double z = -sh * sh;
    const cplx phi = hyp2f1_series(a, b, c, z);
    const cplx dphi = -(a * b / c) * std::sinh(2.0 * s) * hyp2f1_series(a + 1.0, b + 1.0, c + 1.0, z);
    return {phi, dphi};
}

using OdeState = std::array<double, 4>;  // Re phi, Im phi, Re phi', Im phi'

struct JacobiRhs {
    double c_coth;  // 2 alpha + 1
    double c_tanh;  // 2 beta + 1
    cplx kappa;     // mu^2 + rho_j^2

    void operator()(const OdeState& y, OdeState& dy, double s) const {
        const double L = c_coth / std::tanh(s) + c_tanh * std::tanh(s);
        dy[0] = y[2];
        dy[1] = y[3];
        dy[2] = -L * y[2] - (kappa.real() * y[0] - kappa.imag() * y[1]);
        dy[3] = -L * y[3] - (kappa.real() * y[1] + kappa.imag() * y[0]);
    }
};

}  // namespace detail

/// phi^{(alpha,beta)}_mu at every radius in `s_sorted` (nondecreasing, >= 0),
/// normalized phi(0) = 1. Short radii use the hypergeometric series about the
/// origin; beyond it the Jacobi ODE is marched with an embedded 7(8)
/// Runge-Kutta-Fehlberg pair started from the series.
inline std::vector<cplx> jacobi_phi_many(const JacobiParams& p, cplx mu, std::span<const double> s_sorted,
                                         const JacobiConfig& cfg = {}) {
    namespace ode = boost::numeric::odeint;
    std::vector<cplx> out(s_sorted.size());
    if (s_sorted.empty()) return out;
    if (!std::isfinite(mu.real()) || !std::isfinite(mu.imag())) throw DomainError("jacobi_phi: non-finite mu");
    for (std::size_t i = 0; i < s_sorted.size(); ++i) {
        if (!(s_sorted[i] >= 0.0)) throw DomainError("jacobi_phi: radius must be nonnegative");
        if (i && s_sorted[i] < s_sorted[i - 1]) throw std::invalid_argument("jacobi_phi_many: radii not sorted");
    }
    const double s0 = detail::jacobi_series_radius(p, mu);
    std::size_t first_ode = 0;
    while (first_ode < s_sorted.size() && s_sorted[first_ode] <= s0) {
        const double s = s_sorted[first_ode];
        out[first_ode] = s == 0.0 ? cplx(1.0) : detail::jacobi_series(p, mu, s)[0];
        ++first_ode;
    }
    if (first_ode == s_sorted.size()) return out;

    const auto init = detail::jacobi_series(p, mu, s0);
    detail::OdeState y{init[0].real(), init[0].imag(), init[1].real(), init[1].imag()};
    const detail::JacobiRhs rhs{2.0 * p.alpha() + 1.0, 2.0 * p.beta() + 1.0, mu * mu + p.rho_j() * p.rho_j()};

    std::vector<double> times;
    times.reserve(s_sorted.size() - first_ode + 1);
    times.push_back(s0);
    for (std::size_t i = first_ode; i < s_sorted.size(); ++i) times.push_back(s_sorted[i]);

    using stepper_t = ode::runge_kutta_fehlberg78<detail::OdeState>;
    using checker_t = ode::default_error_checker<double, ode::array_algebra, ode::default_operations>;
    ode::controlled_runge_kutta<stepper_t, checker_t> stepper(checker_t(0.0, cfg.rel_tol, 1.0, 1.0));
    const double dt0 = std::min(0.01, 0.1 / (std::abs(mu) + p.rho_j() + 1.0));
    std::size_t idx = 0;
    auto observer = [&](const detail::OdeState& st, double) {
        if (idx > 0) out[first_ode + idx - 1] = cplx(st[0], st[1]);
        ++idx;
    };
    try {
        ode::integrate_times(stepper, rhs, y, times.begin(), times.end(), dt0, observer,
                             ode::max_step_checker(static_cast<int>(cfg.max_steps)));
    } catch (const ode::step_adjustment_error& e) {
        throw PrecisionLoss(std::string("jacobi_phi: step control failed: ") + e.what(), cfg.rel_tol);
    } catch (const ode::no_progress_error& e) {
        throw PrecisionLoss(std::string("jacobi_phi: step budget exhausted: ") + e.what(), cfg.rel_tol);
    }
    return out;
}

inline cplx jacobi_phi(const JacobiParams& p, SpectralPoint mu, double s, const JacobiConfig& cfg = {}) {
    const double ss[1] = {s};
    return jacobi_phi_many(p, mu.value(), ss, cfg)[0];
}

/// Independent route through the tanh^2 representation
///   phi = (cosh s)^{-(rho+i mu)} 2F1((rho+i mu)/2, (alpha-beta+1+i mu)/2; alpha+1; tanh^2 s).
/// Used for cross-validation; fails loudly where 2F1 is not certified.
inline cplx jacobi_phi_hypergeometric(const JacobiParams& p, SpectralPoint mu, double s) {
    const cplx im(0.0, 1.0);
    const cplx m = mu.value();
    const cplx e = p.rho_j() + im * m;
    const double th = std::tanh(s);
    return std::exp(-e * std::log(std::cosh(s))) *
           gauss_2f1(0.5 * e, 0.5 * (p.alpha() - p.beta() + 1.0 + im * m), p.alpha() + 1.0, th * th);
}

/// Damek-Ricci spherical function phi_lambda(a_t) = phi^{(alpha,beta)}_{2 lambda}(t/2).
inline cplx phi_dr(const SpaceParams& space, SpectralPoint lam, double t, const JacobiConfig& cfg = {}) {
    if (!(t >= 0.0)) throw DomainError("phi_dr: t must be nonnegative");
    return jacobi_phi(jacobi_params(space), SpectralPoint(2.0 * lam.value()), 0.5 * t, cfg);
}

/// phi_lambda at every radius of `t_sorted` in one march.
inline std::vector<cplx> phi_dr_many(const SpaceParams& space, SpectralPoint lam, std::span<const double> t_sorted,
                                     const JacobiConfig& cfg = {}) {
    std::vector<double> half(t_sorted.begin(), t_sorted.end());
    for (double& v : half) v *= 0.5;
    return jacobi_phi_many(jacobi_params(space), 2.0 * lam.value(), half, cfg);
}

// ---------------------------------------------------------------------------
// c-function and Plancherel density
// ---------------------------------------------------------------------------

/// c_{alpha,beta}(mu) = 2^{rho-i mu} Gamma(alpha+1) Gamma(i mu)
///                      / [Gamma((rho+i mu)/2) Gamma((alpha-beta+1+i mu)/2)]
/// in the Jacobi spectral variable.
inline cplx c_function(const JacobiParams& p, SpectralPoint mu) {
    const cplx im(0.0, 1.0);
    const cplx m = mu.value();
    const cplx d1 = 0.5 * (p.rho_j() + im * m), d2 = 0.5 * (p.alpha() - p.beta() + 1.0 + im * m);
    if (detail::is_gamma_pole(im * m)) throw DomainError("c_function: pole of Gamma(i mu)");
    if (detail::is_gamma_pole(d1) || detail::is_gamma_pole(d2)) return 0.0;
    const cplx lg = (p.rho_j() - im * m) * std::log(2.0) + std::lgamma(p.alpha() + 1.0) + log_gamma(im * m) -
                    log_gamma(d1) - log_gamma(d2);
    return std::exp(lg);
}

/// |c(xi)|^{-2} on the real line (Jacobi variable), with the value at 0
/// defined by continuity.
inline double plancherel_density(const JacobiParams& p, double xi) {
    xi = std::abs(xi);
    if (xi == 0.0) {
        if (p.rho_j() > 0.0) return 0.0;
        // rho_j = 0: Gamma(i mu)/Gamma(i mu/2) -> 1/2
        const double c0 = 0.5 * std::tgamma(p.alpha() + 1.0) / std::tgamma(0.5 * (p.alpha() - p.beta() + 1.0));
        return 1.0 / (c0 * c0);
    }
    return 1.0 / std::norm(c_function(p, SpectralPoint(xi)));
}

}  // namespace drh
