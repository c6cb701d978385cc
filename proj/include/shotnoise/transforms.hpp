#ifndef SHOTNOISE_TRANSFORMS_HPP
#define SHOTNOISE_TRANSFORMS_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "shotnoise/constants.hpp"
#include "shotnoise/quadrature.hpp"
#include "shotnoise/special_functions.hpp"

// Laplace/Fourier transforms of the stationary law for every supported
// parameterization, the small-s polynomial expansion with root finding for
// exponential-sum tail approximations, and numerical Fourier inversion for
// the symmetric-amplitude distribution functions.

namespace shotnoise {

// Law of the amplitudes Y_n.  For SymmetricLaplace all transform-side
// quantities live in the Fourier domain (characteristic function
// (1+s^2)^-beta).
struct AmplitudeLaw {
    enum class Kind { deterministic_one, gamma, symmetric_laplace };
    Kind kind = Kind::deterministic_one;
    double beta = 0.0;

    static AmplitudeLaw deterministic() { return {Kind::deterministic_one, 0.0}; }
    static AmplitudeLaw gamma(double beta) {
        if (!(beta > 0)) throw std::domain_error("AmplitudeLaw::gamma: beta must be > 0");
        return {Kind::gamma, beta};
    }
    static AmplitudeLaw laplace(double beta) {
        if (!(beta > 0)) throw std::domain_error("AmplitudeLaw::laplace: beta must be > 0");
        return {Kind::symmetric_laplace, beta};
    }
    bool symmetric() const { return kind == Kind::symmetric_laplace; }
    std::string name() const {
        switch (kind) {
            case Kind::deterministic_one: return "det";
            case Kind::gamma: return "gamma:" + std::to_string(beta);
            default: return "laplace:" + std::to_string(beta);
        }
    }
};

// Law of the exponent A = Lambda/B: fixed, or Gamma(alpha)-mixed across
// trajectories.
struct ExponentLaw {
    enum class Kind { fixed, gamma_mixed };
    Kind kind = Kind::fixed;
    double value = 1.0; // A for fixed, alpha for gamma_mixed

    static ExponentLaw fixed(double a) {
        if (!(a > 0)) throw std::domain_error("ExponentLaw::fixed: A must be > 0");
        return {Kind::fixed, a};
    }
    static ExponentLaw gamma_mixed(double alpha) {
        if (!(alpha > 0)) throw std::domain_error("ExponentLaw::gamma_mixed: alpha must be > 0");
        return {Kind::gamma_mixed, alpha};
    }
    std::string name() const {
        return (kind == Kind::fixed ? "fixed:" : "gamma:") + std::to_string(value);
    }
};

// A full parameterization of the recurrence: the law of A and the law of Y.
struct LawSpec {
    ExponentLaw exponent;
    AmplitudeLaw amplitude;
    std::string name() const { return exponent.name() + "," + amplitude.name(); }
};

// w_Y(s): e^-s, (1+s)^-beta, or (1+s^2)^-beta per variant.
inline double amplitude_transform(const AmplitudeLaw& law, double s) {
    if (!(s >= 0)) throw std::domain_error("amplitude_transform: s must be >= 0");
    switch (law.kind) {
        case AmplitudeLaw::Kind::deterministic_one: return std::exp(-s);
        case AmplitudeLaw::Kind::gamma: return std::pow(1.0 + s, -law.beta);
        default: return std::pow(1.0 + s * s, -law.beta);
    }
}

// I(s) = int_0^s (1 - w_Y(xi))/xi dxi.  Closed forms where they exist; a
// quadrature fallback covers general beta.  The symmetric-Laplace exponent
// integral is half the Gamma(beta) one at s^2 (substitute xi -> xi^2).
inline double exponent_integral(const AmplitudeLaw& law, double s) {
    if (!(s >= 0)) throw std::domain_error("exponent_integral: s must be >= 0");
    if (s == 0.0) return 0.0;
    auto gamma_integral = [](double beta, double x) -> double {
        if (beta == 1.0) return std::log1p(x);
        if (beta == 2.0) return std::log1p(x) + x / (1.0 + x);
        if (beta == 0.5) return 2.0 * std::log(0.5 * (1.0 + std::sqrt(1.0 + x)));
        auto f = [beta](double xi) {
            if (xi < 1e-8) return beta; // limit of (1-(1+xi)^-beta)/xi
            return -std::expm1(-beta * std::log1p(xi)) / xi;
        };
        return integrate_finite(f, 0.0, x).value;
    };
    switch (law.kind) {
        case AmplitudeLaw::Kind::deterministic_one:
            return euler_gamma + std::log(s) + expint_E1(s);
        case AmplitudeLaw::Kind::gamma:
            return gamma_integral(law.beta, s);
        default:
            return 0.5 * gamma_integral(law.beta, s * s);
    }
}

// Stationary transform g(s): exp(-A I(s)) for fixed exponent,
// (1 + I(s))^-alpha for the Gamma(alpha) mixture.  Fourier-domain for
// symmetric amplitudes.
inline double stationary_transform(const ExponentLaw& exp_law,
                                   const AmplitudeLaw& amp_law, double s) {
    const double I = exponent_integral(amp_law, s);
    if (exp_law.kind == ExponentLaw::Kind::fixed)
        return std::exp(-exp_law.value * I);
    return std::pow(1.0 + I, -exp_law.value);
}

// Coefficients c_k, k = 1..N, of int_0^s (1-e^-xi)/xi dxi = sum c_k s^k,
// c_k = (-1)^{k+1} / (k k!).
inline std::vector<double> small_s_expansion_coeffs(int n) {
    if (n < 2 || n > 20)
        throw std::domain_error("small_s_expansion_coeffs: N must be in [2, 20]");
    std::vector<double> c(n);
    double kfact = 1.0;
    for (int k = 1; k <= n; ++k) {
        kfact *= k;
        c[k - 1] = ((k % 2) ? 1.0 : -1.0) / (k * kfact);
    }
    return c;
}

// Exponential-sum approximation of the density tail: sum_i w_i e^{-r_i u}.
// Complex rates/weights occur in conjugate pairs; all rates have positive
// real part.
struct ExponentialSumApprox {
    std::vector<std::complex<double>> rates;
    std::vector<std::complex<double>> weights;
    int order = 0;

    double density(double u) const {
        std::complex<double> s = 0.0;
        for (size_t i = 0; i < rates.size(); ++i)
            s += weights[i] * std::exp(-rates[i] * u);
        return s.real();
    }
    // Antiderivative-form distribution function, 1 - sum w_i e^{-r_i u}/r_i;
    // tends to 1 and differentiates back to density().
    double cdf(double u) const {
        std::complex<double> s = 0.0;
        for (size_t i = 0; i < rates.size(); ++i)
            s += weights[i] / rates[i] * std::exp(-rates[i] * u);
        return 1.0 - s.real();
    }
    double mass() const {
        std::complex<double> s = 0.0;
        for (size_t i = 0; i < rates.size(); ++i) s += weights[i] / rates[i];
        return s.real();
    }
};

namespace detail {

inline std::vector<std::complex<double>> durand_kerner(std::vector<double> poly) {
    const int n = static_cast<int>(poly.size()) - 1;
    std::vector<std::complex<double>> c(poly.size());
    for (size_t i = 0; i < poly.size(); ++i) c[i] = poly[i] / poly[n];
    std::vector<std::complex<double>> r(n);
    std::complex<double> seed(0.4, 0.9), p(1.0, 0.0);
    for (int i = 0; i < n; ++i) {
        p *= seed;
        r[i] = p;
    }
    for (int it = 0; it < 800; ++it) {
        double delta = 0.0;
        for (int i = 0; i < n; ++i) {
            std::complex<double> val = 0.0, xp = 1.0;
            for (int k = 0; k <= n; ++k) {
                val += c[k] * xp;
                xp *= r[i];
            }
            std::complex<double> den = 1.0;
            for (int j = 0; j < n; ++j)
                if (j != i) den *= (r[i] - r[j]);
            std::complex<double> d = val / den;
            r[i] -= d;
            delta = std::max(delta, std::abs(d));
        }
        if (delta < 1e-15) return r;
    }
    throw std::runtime_error("exponential_sum_tail: root finder did not converge");
}

inline std::complex<double> poly_derivative_at(const std::vector<double>& poly,
                                               std::complex<double> s) {
    std::complex<double> v = 0.0, xp = 1.0;
    for (size_t k = 1; k < poly.size(); ++k) {
        v += double(k) * poly[k] * xp;
        xp *= s;
    }
    return v;
}

} // namespace detail

// Builds the N-term exponential tail from the roots s_i of
// 1 + sum_{k=1}^N c_k s^k and the partial-fraction residues 1/P'(s_i).
// Left-half-plane roots invert to w e^{s u}; right-half-plane roots are
// reflected onto decaying exponentials with their residues kept, the same
// construction that produces the printed two-term tail at N = 2.
inline ExponentialSumApprox exponential_sum_tail(int n, double alpha = 1.0) {
    if (alpha != 1.0)
        throw std::domain_error("exponential_sum_tail: only alpha = 1 is supported");
    if (n < 2 || n > 20)
        throw std::domain_error("exponential_sum_tail: N must be in [2, 20]");
    std::vector<double> poly(n + 1);
    poly[0] = 1.0;
    auto c = small_s_expansion_coeffs(n);
    for (int k = 1; k <= n; ++k) poly[k] = c[k - 1];
    auto roots = detail::durand_kerner(poly);

    // symmetrize conjugate pairs and flatten tiny imaginary parts
    const double tol = 1e-9;
    for (auto& s : roots)
        if (std::fabs(s.imag()) < tol * (1.0 + std::abs(s))) s = {s.real(), 0.0};
    for (size_t i = 0; i < roots.size(); ++i) {
        if (roots[i].imag() == 0.0) continue;
        for (size_t j = i + 1; j < roots.size(); ++j) {
            if (std::abs(roots[j] - std::conj(roots[i])) < 1e-6 * (1.0 + std::abs(roots[i]))) {
                std::complex<double> avg = 0.5 * (roots[i] + std::conj(roots[j]));
                roots[i] = avg;
                roots[j] = std::conj(avg);
                break;
            }
        }
    }

    ExponentialSumApprox approx;
    approx.order = n;
    for (auto s : roots) {
        if (std::fabs(s.real()) < tol * (1.0 + std::abs(s)))
            throw std::runtime_error(
                "exponential_sum_tail: root on the imaginary axis, approximation invalid");
        std::complex<double> residue = 1.0 / detail::poly_derivative_at(poly, s);
        approx.rates.push_back(s.real() < 0.0 ? -s : s);
        approx.weights.push_back(residue);
    }
    return approx;
}

// aleph(u) = (e^{-(2 sqrt2 - 2) u} - e^{-(2 sqrt2 + 2) u}) / sqrt2,
// the closed two-exponential density tail.
inline double tail_density_aleph(double u) {
    if (!(u >= 0)) throw std::domain_error("tail_density_aleph: u must be >= 0");
    const double r = 2.0 * std::sqrt(2.0);
    return (std::exp(-(r - 2.0) * u) - std::exp(-(r + 2.0) * u)) / std::sqrt(2.0);
}

// Xi(u) = 1 - (e^{-(2 sqrt2 - 2) u}/(2 sqrt2 - 2) - e^{-(2 sqrt2 + 2) u}/(2 sqrt2 + 2))/sqrt2;
// Xi' = aleph.
inline double tail_cdf_xi(double u) {
    if (!(u >= 0)) throw std::domain_error("tail_cdf_xi: u must be >= 0");
    const double r = 2.0 * std::sqrt(2.0);
    return 1.0 - (std::exp(-(r - 2.0) * u) / (r - 2.0) -
                  std::exp(-(r + 2.0) * u) / (r + 2.0)) /
                     std::sqrt(2.0);
}

struct FourierCdfResult {
    double value = 0.0;     // clamped to [0,1]
    double raw = 0.0;       // unclamped inversion value
    bool clamp_warning = false;
    bool converged = false;
};

// F(u) = (2/pi) int_0^inf sin(xi)/xi * 1/(1 + L(xi/u)) dxi, the symmetric-law
// distribution function of |U| recovered from its characteristic function.
template <class L>
FourierCdfResult fourier_cdf_inversion(L&& kernel, double u,
                                       const QuadratureConfig& cfg = {}) {
    if (!(u > 0)) throw std::domain_error("fourier_cdf_inversion: u must be > 0");
    auto h = [&](double xi) { return 1.0 / (1.0 + kernel(xi / u)); };
    QuadratureResult q = integrate_oscillatory_sine(h, cfg);
    FourierCdfResult out;
    out.raw = 2.0 / pi * q.value;
    out.value = std::clamp(out.raw, 0.0, 1.0);
    out.clamp_warning = out.raw < -1e-3 || out.raw > 1.0 + 1e-3;
    out.converged = q.converged;
    return out;
}

} // namespace shotnoise

#endif
