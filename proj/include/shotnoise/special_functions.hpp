#ifndef SHOTNOISE_SPECIAL_FUNCTIONS_HPP
#define SHOTNOISE_SPECIAL_FUNCTIONS_HPP

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "shotnoise/constants.hpp"
#include "shotnoise/quadrature.hpp"

// Special functions appearing in the stationary shot-noise laws: Volterra nu
// and mu, the Fransen-Wrigge function phi, the regularized lower incomplete
// gamma, parabolic cylinder D of negative order, modified Bessel I and K, and
// the Taylor coefficients of 1/Gamma(1+x) that drive the nu asymptotics.

namespace shotnoise {

inline double log_gamma(double x) {
    if (!(x > 0)) throw std::domain_error("log_gamma: requires x > 0");
    return std::lgamma(x);
}

struct SeriesTruncation {
    int max_terms = 200;
    double term_tol = 1e-12;
};

namespace detail {

// Riemann zeta for integer k >= 2, Euler-Maclaurin with a short direct sum.
inline double riemann_zeta_int(int k) {
    const int N = 24;
    const double s = k;
    double sum = 0;
    for (int n = 1; n < N; ++n) sum += std::pow(double(n), -s);
    const double Ns = std::pow(double(N), -s);
    sum += Ns * N / (s - 1.0) + 0.5 * Ns;
    static const double bern[] = {1.0 / 6,  -1.0 / 30,      1.0 / 42, -1.0 / 30,
                                  5.0 / 66, -691.0 / 2730,  7.0 / 6};
    static const double fact[] = {2,       24,           720,          40320,
                                  3628800, 479001600.0,  87178291200.0};
    for (int j = 0; j < 7; ++j) {
        double prod = 1.0;
        for (int i = 0; i <= 2 * j; ++i) prod *= (s + i);
        sum += bern[j] * prod / fact[j] * std::pow(double(N), -s - 2.0 * j - 1.0);
    }
    return sum;
}

// Extends T until extra_exponent(T) has dropped 50 below the largest exponent
// seen on a coarse scan, so the discarded tail is ~exp(-50) of the peak.
template <class ExpFn>
double index_integral_cutoff(ExpFn&& exponent, double t_hi_guess) {
    double peak = -std::numeric_limits<double>::infinity();
    for (int i = 1; i <= 64; ++i) {
        double t = t_hi_guess * i / 64.0;
        peak = std::max(peak, exponent(t));
    }
    double T = t_hi_guess;
    int guard = 0;
    while (exponent(T) > peak - 50.0 && guard++ < 200) T *= 1.3;
    return T;
}

} // namespace detail

// Taylor coefficients a_j of 1/Gamma(1+x) around x = 0.
struct ReciprocalGammaCoeffs {
    std::vector<double> coeffs; // a_0 .. a_N

    int order() const { return static_cast<int>(coeffs.size()) - 1; }

    double evaluate(double x) const {
        double s = 0, p = 1;
        for (double a : coeffs) {
            s += a * p;
            p *= x;
        }
        return s;
    }
};

// a_1 = gamma and n a_n = gamma a_{n-1} + sum_{k=2}^{n} (-1)^{k+1} zeta(k) a_{n-k},
// the recurrence obtained from -psi(1+x) = gamma - sum_{k>=2} (-1)^k zeta(k) x^{k-1}.
inline ReciprocalGammaCoeffs reciprocal_gamma_coeffs(int n) {
    if (n < 1 || n > 80)
        throw std::domain_error("reciprocal_gamma_coeffs: order must be in [1, 80]");
    ReciprocalGammaCoeffs rg;
    rg.coeffs.assign(n + 1, 0.0);
    rg.coeffs[0] = 1.0;
    rg.coeffs[1] = euler_gamma;
    std::vector<double> zeta(n + 1, 0.0);
    for (int k = 2; k <= n; ++k) zeta[k] = detail::riemann_zeta_int(k);
    for (int m = 2; m <= n; ++m) {
        double s = euler_gamma * rg.coeffs[m - 1];
        for (int k = 2; k <= m; ++k)
            s += ((k % 2 == 1) ? 1.0 : -1.0) * zeta[k] * rg.coeffs[m - k];
        rg.coeffs[m] = s / m;
    }
    return rg;
}

// nu(z) = int_0^inf z^t / Gamma(t+1) dt, evaluated by adaptive quadrature on
// a finite interval whose discarded remainder is negligible.
inline double volterra_nu(double z) {
    if (!(z > 0)) throw std::domain_error("volterra_nu: requires z > 0");
    const double lz = std::log(z);
    auto expo = [lz](double t) { return t * lz - std::lgamma(t + 1.0); };
    double T = detail::index_integral_cutoff(expo, std::max(16.0, 3.0 * z));
    auto f = [lz](double t) { return std::exp(t * lz - std::lgamma(t + 1.0)); };
    QuadratureConfig cfg;
    cfg.abs_tol = 1e-12;
    cfg.rel_tol = 1e-11;
    return integrate_finite(f, 0.0, T, cfg).value;
}

// Wyman-Wong asymptotic expansion nu(z) ~ sum_j a_j j! / (-ln z)^{j+1} for
// z -> 0+, truncated at the smallest-magnitude term.  The term scan stops
// once magnitudes have grown well past the running minimum, since the
// coefficient signs make isolated late terms spuriously small.
inline double volterra_nu_series(double z, const ReciprocalGammaCoeffs& rg,
                                 int* terms_used = nullptr) {
    if (!(z > 0 && z < 1))
        throw std::domain_error("volterra_nu_series: requires 0 < z < 1");
    const double L = -std::log(z);
    const int cap = std::min(rg.order(), 60);
    std::vector<double> terms;
    terms.reserve(cap + 1);
    double fact = 1.0, run_min = std::numeric_limits<double>::infinity();
    int best = 0;
    for (int j = 0; j <= cap; ++j) {
        if (j > 0) fact *= j;
        double t = rg.coeffs[j] * fact / std::pow(L, j + 1.0);
        if (std::fabs(t) > 100.0 * run_min) break;
        terms.push_back(t);
        if (std::fabs(t) < run_min) {
            run_min = std::fabs(t);
            best = j;
        }
    }
    double s = 0;
    for (int j = 0; j <= best; ++j) s += terms[j];
    if (terms_used) *terms_used = best + 1;
    return s;
}

// mu(z, b, a) = int_0^inf z^{a+t} t^b / (Gamma(b+1) Gamma(a+t+1)) dt
// (Apelblat's three-argument convention); mu(z, b) == mu(z, b, 0) and
// mu(z, 0) == nu(z).
inline double volterra_mu(double z, double b, double a = 0.0) {
    if (!(z > 0)) throw std::domain_error("volterra_mu: requires z > 0");
    if (!(b >= 0)) throw std::domain_error("volterra_mu: requires b >= 0");
    if (!(a >= -1)) throw std::domain_error("volterra_mu: requires a >= -1");
    const double lz = std::log(z);
    const double lgb = std::lgamma(b + 1.0);
    auto expo = [=](double t) {
        return (a + t) * lz + (b > 0 ? b * std::log(t) : 0.0) - lgb -
               std::lgamma(a + t + 1.0);
    };
    double guess = std::max({16.0, 3.0 * z, 2.0 * (b + std::fabs(a) + 1.0)});
    double T = detail::index_integral_cutoff(expo, guess);
    auto f = [=](double t) {
        if (t <= 0.0) {
            if (b > 0) return 0.0;
            // b == 0: limit z^a / Gamma(a+1); zero when a == -1 (1/Gamma(0) = 0)
            return a <= -1.0 ? 0.0 : std::exp(a * lz - std::lgamma(a + 1.0));
        }
        return std::exp(expo(t));
    };
    QuadratureConfig cfg;
    cfg.abs_tol = 1e-12;
    cfg.rel_tol = 1e-11;
    return integrate_finite(f, 0.0, T, cfg).value;
}

// phi(z) = int_0^inf z^a / Gamma(a) da  (Fransen-Wrigge); equals z nu'(z).
inline double fransen_wrigge_phi(double z) {
    if (!(z > 0)) throw std::domain_error("fransen_wrigge_phi: requires z > 0");
    const double lz = std::log(z);
    auto expo = [lz](double a) { return a * lz - std::lgamma(a); };
    double T = detail::index_integral_cutoff(expo, std::max(16.0, 3.0 * z));
    auto f = [lz](double a) {
        return a <= 0.0 ? 0.0 : std::exp(a * lz - std::lgamma(a));
    };
    QuadratureConfig cfg;
    cfg.abs_tol = 1e-12;
    cfg.rel_tol = 1e-11;
    return integrate_finite(f, 0.0, T, cfg).value;
}

// Regularized lower incomplete gamma P(alpha, s) by series (s < alpha+1) or
// continued fraction (s >= alpha+1), after Numerical Recipes.
inline double lower_incomplete_gamma_regularized(double alpha, double s) {
    if (!(alpha > 0)) throw std::domain_error("incomplete gamma: alpha must be > 0");
    if (!(s >= 0)) throw std::domain_error("incomplete gamma: s must be >= 0");
    if (s == 0.0) return 0.0;
    const double lg = std::lgamma(alpha);
    if (s < alpha + 1.0) {
        double ap = alpha, del = 1.0 / alpha, sum = del;
        for (int i = 0; i < 500; ++i) {
            ap += 1.0;
            del *= s / ap;
            sum += del;
            if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
        }
        return sum * std::exp(-s + alpha * std::log(s) - lg);
    }
    const double fpmin = 1e-300;
    double b = s + 1.0 - alpha, c = 1.0 / fpmin, d = 1.0 / b, h = d;
    for (int i = 1; i <= 500; ++i) {
        double an = -i * (i - alpha);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = b + an / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16) break;
    }
    return 1.0 - h * std::exp(-s + alpha * std::log(s) - lg);
}

// Parabolic cylinder function of negative order, D_{-p}(x) for p > 0, from
// the integral representation
//   D_{-p}(x) = e^{-x^2/4} / Gamma(p) * int_0^inf t^{p-1} e^{-xt - t^2/2} dt.
inline double parabolic_cylinder_D(double p, double x) {
    if (!(p > 0)) throw std::domain_error("parabolic_cylinder_D: requires p > 0");
    if (!(x >= 0)) throw std::domain_error("parabolic_cylinder_D: requires x >= 0");
    auto expo = [=](double t) { return (p - 1.0) * std::log(t) - x * t - 0.5 * t * t; };
    double T = detail::index_integral_cutoff(expo, std::max(12.0, std::sqrt(2.0 * p) + 2.0));
    auto f = [=](double t) { return t <= 0.0 ? 0.0 : std::exp(expo(t)); };
    QuadratureConfig cfg;
    cfg.abs_tol = 1e-13;
    cfg.rel_tol = 1e-12;
    double integral = integrate_finite(f, 0.0, T, cfg).value;
    return std::exp(-0.25 * x * x - std::lgamma(p)) * integral;
}

// Modified Bessel function of the first kind, real order > -1, x >= 0.
// Ascending series; scaled asymptotic expansion for large argument.
inline double bessel_I(double order, double x) {
    if (!(order > -1.0)) throw std::domain_error("bessel_I: requires order > -1");
    if (!(x >= 0)) throw std::domain_error("bessel_I: requires x >= 0");
    if (x == 0.0) return order == 0.0 ? 1.0 : 0.0;
    if (x > 30.0) {
        // I_nu(x) ~ e^x/sqrt(2 pi x) * sum_k (-1)^k a_k(nu)/x^k, stop at smallest term
        const double mu = 4.0 * order * order;
        double term = 1.0, sum = 1.0;
        for (int k = 1; k <= 40; ++k) {
            double next = term * -(mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (8.0 * k * x);
            if (std::fabs(next) >= std::fabs(term)) break;
            term = next;
            sum += term;
            if (std::fabs(term) < 1e-17 * std::fabs(sum)) break;
        }
        return std::exp(x) / std::sqrt(2.0 * pi * x) * sum;
    }
    const double lx = std::log(0.5 * x);
    double sum = 0.0;
    for (int k = 0; k < 400; ++k) {
        double t = std::exp((order + 2.0 * k) * lx - std::lgamma(k + 1.0) -
                            std::lgamma(order + k + 1.0));
        sum += t;
        if (k > 2 && t < 1e-17 * sum) break;
    }
    return sum;
}

// MacDonald function K_nu(x), x > 0, from
//   K_nu(x) = int_0^inf e^{-x cosh t} cosh(nu t) dt.
inline double bessel_K(double order, double x) {
    if (!(x > 0)) throw std::domain_error("bessel_K: requires x > 0");
    const double nu = std::fabs(order); // K_nu = K_{-nu}
    auto expo = [=](double t) { return nu * t - x * std::cosh(t); };
    double t_peak = (nu > x) ? std::asinh(nu / x) : 0.0;
    double T = t_peak + 2.0;
    int guard = 0;
    double peak = expo(t_peak);
    while (expo(T) > peak - 50.0 && guard++ < 200) T += 1.0;
    auto f = [=](double t) {
        return 0.5 * (std::exp(nu * t - x * std::cosh(t)) +
                      std::exp(-nu * t - x * std::cosh(t)));
    };
    QuadratureConfig cfg;
    cfg.abs_tol = 1e-13 * std::max(1.0, std::exp(std::min(700.0, peak)));
    cfg.rel_tol = 1e-12;
    return integrate_finite(f, 0.0, T, cfg).value;
}

// Exponential integral E1(x), x > 0: series for x <= 1, Lentz continued
// fraction otherwise.
inline double expint_E1(double x) {
    if (!(x > 0)) throw std::domain_error("expint_E1: requires x > 0");
    if (x <= 1.0) {
        double s = -euler_gamma - std::log(x), term = 1.0;
        for (int k = 1; k < 80; ++k) {
            term *= -x / k;
            s -= term / k;
            if (std::fabs(term / k) < 1e-18) break;
        }
        return s;
    }
    const double fpmin = 1e-300;
    double b = x + 1.0, c = 1.0 / fpmin, d = 1.0 / b, h = d;
    for (int i = 1; i <= 300; ++i) {
        double an = -double(i) * i;
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = b + an / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16) break;
    }
    return h * std::exp(-x);
}

} // namespace shotnoise

#endif
