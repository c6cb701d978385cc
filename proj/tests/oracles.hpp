#ifndef SHOTNOISE_TEST_ORACLES_HPP
#define SHOTNOISE_TEST_ORACLES_HPP

// Brute-force reference implementations used to derive and freeze expected
// values.  Everything here is deliberately independent of the library's
// adaptive machinery: fixed-panel rules, raw sums, term-by-term series.

#include <cmath>
#include <functional>
#include <vector>

namespace oracle {

inline double midpoint(const std::function<double(double)>& f, double a, double b, long n) {
    double h = (b - a) / n, s = 0;
    for (long i = 0; i < n; ++i) s += f(a + (i + 0.5) * h);
    return s * h;
}

inline double simpson(const std::function<double(double)>& f, double a, double b, long n) {
    if (n % 2) ++n;
    double h = (b - a) / n, s = f(a) + f(b);
    for (long i = 1; i < n; ++i) s += f(a + i * h) * ((i % 2) ? 4.0 : 2.0);
    return s * h / 3.0;
}

// Direct half-period summation of int_0^inf sin(x)/x h(x) dx with a final
// two-point average (one Richardson level) of the oscillating partial sums.
inline double oscillatory_brute(const std::function<double(double)>& h, long half_periods) {
    const double PI = 3.14159265358979323846;
    double s = 0, sprev = 0;
    for (long k = 0; k < half_periods; ++k) {
        sprev = s;
        s += simpson([&](double x) { return x == 0 ? h(0.0) : std::sin(x) / x * h(x); },
                     k * PI, (k + 1) * PI, 32);
    }
    return 0.5 * (s + sprev);
}

// Euler-accelerated sum of term(k), k = 0,1,2,...; for slowly decaying
// alternating-ish sequences produced by oscillatory segment integrals.
inline double euler_sum(const std::function<double(long)>& term, long max_terms) {
    std::vector<double> row;
    double partial = 0, estimate = 0;
    for (long k = 0; k < max_terms; ++k) {
        partial += term(k);
        double carry = partial;
        for (double& r : row) {
            double t = 0.5 * (r + carry);
            r = carry;
            carry = t;
        }
        if (row.size() < 40)
            row.push_back(carry);
        else
            row.back() = carry;
        double prev = estimate;
        estimate = row.back();
        if (k > 8 && std::fabs(estimate - prev) < 1e-12) break;
    }
    return estimate;
}

// nu(z) by fixed-panel Simpson on the defining index integral.
inline double nu_brute(double z, long n = 200000) {
    double lz = std::log(z), T = 50;
    while (T * lz - std::lgamma(T + 1.0) > -60) T *= 1.5;
    return simpson([&](double t) { return std::exp(t * lz - std::lgamma(t + 1.0)); }, 0, T, n);
}

inline double phi_brute(double z, long n = 200000) {
    double lz = std::log(z), T = 50;
    while (T * lz - std::lgamma(T) > -60) T *= 1.5;
    return simpson([&](double a) { return a <= 0 ? 0.0 : std::exp(a * lz - std::lgamma(a)); },
                   0, T, n);
}

// tiny deterministic generator for property tests
struct Lcg {
    unsigned long long state;
    explicit Lcg(unsigned long long seed) : state(seed) {}
    double uniform() { // in [0,1)
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        return double(state >> 11) * 0x1.0p-53;
    }
};

} // namespace oracle

#endif
