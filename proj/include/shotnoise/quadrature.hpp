#ifndef SHOTNOISE_QUADRATURE_HPP
#define SHOTNOISE_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <queue>
#include <stdexcept>
#include <vector>

#include "shotnoise/constants.hpp"

// Shared numerical-integration kernel: adaptive finite integrals on a
// Gauss-Kronrod 7/15 pair, semi-infinite integrals by panel summation, and
// slowly convergent oscillatory sine integrals by half-period decomposition
// with Euler acceleration.

namespace shotnoise {

struct QuadratureConfig {
    double abs_tol = 1e-9;
    double rel_tol = 1e-8;
    int max_subdivisions = 2000;
    int oscillatory_max_half_periods = 100000;
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    bool converged = false;
    long evaluations = 0;
};

namespace detail {

// Nodes and weights of the 15-point Kronrod rule on [-1,1]; every other node
// is a Gauss-7 node (odd indices below).
inline constexpr double gk_nodes[8] = {
    0.991455371120812639206854697526, 0.949107912342758524526189684048,
    0.864864423359769072789712788641, 0.741531185599394439863864773281,
    0.586087235467691130294144838259, 0.405845151377397166906606412077,
    0.207784955007898467600689403773, 0.0};
inline constexpr double gk_wk[8] = {
    0.022935322010529224963732008059, 0.063092092629978553290700663189,
    0.104790010322250183839876322542, 0.140653259715525918745189590510,
    0.169004726639267902826583426599, 0.190350578064785409913256402421,
    0.204432940075298892414161999235, 0.209482141084727828012999174892};
inline constexpr double gk_wg[4] = {
    0.129484966168869693270611432679, 0.279705391489276667901467771424,
    0.381830050505118944950369775489, 0.417959183673469387755102040816};

template <class F>
inline void gauss_kronrod_panel(F&& f, double a, double b, double& value,
                                double& error, long& evals) {
    const double h = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[2 * i] = f(mid - h * gk_nodes[i]);
        fv[2 * i + 1] = f(mid + h * gk_nodes[i]);
    }
    fv[14] = f(mid);
    evals += 15;
    double kron = gk_wk[7] * fv[14];
    double gauss = gk_wg[3] * fv[14];
    for (int i = 0; i < 7; ++i) {
        kron += gk_wk[i] * (fv[2 * i] + fv[2 * i + 1]);
        if (i % 2 == 1) gauss += gk_wg[i / 2] * (fv[2 * i] + fv[2 * i + 1]);
    }
    value = kron * h;
    error = std::fabs((kron - gauss) * h);
    if (std::isnan(value))
        throw std::domain_error("quadrature: integrand returned NaN");
}

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

} // namespace detail

// Adaptive estimate of the integral of f over [a,b].  Worst-error-first
// bisection; integrable endpoint power singularities are resolved by the
// resulting geometric refinement toward the endpoint.
template <class F>
QuadratureResult integrate_finite(F&& f, double a, double b,
                                  const QuadratureConfig& cfg = {}) {
    if (!(a <= b)) throw std::invalid_argument("integrate_finite: a > b");
    QuadratureResult res;
    if (a == b) {
        res.converged = true;
        return res;
    }
    std::priority_queue<detail::Panel> panels;
    detail::Panel p0{a, b, 0, 0};
    detail::gauss_kronrod_panel(f, a, b, p0.value, p0.error, res.evaluations);
    panels.push(p0);
    double total = p0.value, toterr = p0.error;
    int splits = 0;
    auto tol = [&] { return std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(total)); };
    while (toterr > tol() && splits < cfg.max_subdivisions) {
        detail::Panel worst = panels.top();
        panels.pop();
        total -= worst.value;
        toterr -= worst.error;
        const double m = 0.5 * (worst.a + worst.b);
        if (m <= worst.a || m >= worst.b) { // interval exhausted at double precision
            total += worst.value;
            toterr += worst.error;
            break;
        }
        detail::Panel left{worst.a, m, 0, 0}, right{m, worst.b, 0, 0};
        detail::gauss_kronrod_panel(f, left.a, left.b, left.value, left.error, res.evaluations);
        detail::gauss_kronrod_panel(f, right.a, right.b, right.value, right.error, res.evaluations);
        total += left.value + right.value;
        toterr += left.error + right.error;
        panels.push(left);
        panels.push(right);
        ++splits;
    }
    res.value = total;
    res.error_estimate = std::max(toterr, 0.0);
    res.converged = toterr <= tol();
    return res;
}

// Integral of f over [a, inf) for integrands that eventually decay at least
// like exp(-decay_hint * x).  Panels of a few decay lengths are summed until
// a panel contributes less than abs_tol/10.
template <class F>
QuadratureResult integrate_semi_infinite(F&& f, double a, double decay_hint,
                                         const QuadratureConfig& cfg = {}) {
    if (!(decay_hint > 0))
        throw std::invalid_argument("integrate_semi_infinite: decay_hint must be > 0");
    QuadratureResult res;
    const double len = std::clamp(4.0 / decay_hint, 1e-8, 64.0);
    QuadratureConfig panel_cfg = cfg;
    panel_cfg.abs_tol = cfg.abs_tol / 20.0;
    const int max_panels = 512;
    double x = a;
    int quiet = 0;
    for (int k = 0; k < max_panels; ++k) {
        QuadratureResult part = integrate_finite(f, x, x + len, panel_cfg);
        res.value += part.value;
        res.error_estimate += part.error_estimate;
        res.evaluations += part.evaluations;
        x += len;
        if (std::fabs(part.value) < cfg.abs_tol / 10.0) {
            // two consecutive negligible panels guard against panel-scale zeros
            if (++quiet == 2) {
                res.converged = true;
                return res;
            }
        } else {
            quiet = 0;
        }
    }
    res.converged = false;
    return res;
}

// Evaluates  int_0^inf  sin(x)/x * h(x) dx  for positive, slowly decaying h.
// The integral is split at multiples of pi into an alternating series of
// half-period contributions which is summed with Euler's transformation.
template <class F>
QuadratureResult integrate_oscillatory_sine(F&& h, const QuadratureConfig& cfg = {}) {
    QuadratureResult res;
    auto integrand = [&h](double x) {
        if (x == 0.0) return h(0.0);
        return std::sin(x) / x * h(x);
    };
    QuadratureConfig panel_cfg = cfg;
    panel_cfg.abs_tol = cfg.abs_tol / 100.0;
    panel_cfg.max_subdivisions = 50;

    // Euler transformation on the sequence of partial sums (van Wijngaarden).
    std::vector<double> row;
    row.reserve(48);
    double partial = 0.0;
    double estimate = 0.0, err = HUGE_VAL;
    int stable = 0;
    const int max_hp = cfg.oscillatory_max_half_periods;
    for (int k = 0; k < max_hp; ++k) {
        QuadratureResult part =
            integrate_finite(integrand, k * pi, (k + 1) * pi, panel_cfg);
        res.evaluations += part.evaluations;
        partial += part.value;
        // push the new partial sum through the averaging table
        double carry = partial;
        for (double& r : row) {
            double tmp = 0.5 * (r + carry);
            r = carry;
            carry = tmp;
        }
        if (row.size() < 40)
            row.push_back(carry);
        else
            row.back() = carry;
        double prev_estimate = estimate;
        estimate = row.back();
        if (!std::isfinite(estimate))
            throw std::domain_error("oscillatory quadrature: acceleration diverged");
        if (k >= 6) {
            double change = std::fabs(estimate - prev_estimate);
            double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(estimate));
            stable = (change < tol) ? stable + 1 : 0;
            err = change;
            if (stable >= 3) {
                res.value = estimate;
                res.error_estimate = std::max(change, cfg.abs_tol * 0.1);
                res.converged = true;
                return res;
            }
        }
    }
    res.value = estimate;
    res.error_estimate = err;
    res.converged = false;
    return res;
}

} // namespace shotnoise

#endif
