#ifndef SHOTNOISE_SIMULATOR_HPP
#define SHOTNOISE_SIMULATOR_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "shotnoise/transforms.hpp"

// Monte Carlo ground truth: the recurrence U_n = X_n (Y_n + U_{n-1}), the
// continuous-time Poisson shot-noise path, and empirical-distribution
// instruments (ECDF, histogram, KS distance, empirical transforms).

namespace shotnoise {

// Counter-splittable 64-bit generator (splitmix64).  Statistical quality and
// deterministic per-chain splitting are the contract, not the algorithm.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    // uniform on the open interval (0,1); never returns 0 or 1, so V^{1/A}
    // stays finite
    double next_open01() {
        return (double(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = next_open01(), u2 = next_open01();
        double r = std::sqrt(-2.0 * std::log(u1)), t = 2.0 * pi * u2;
        spare_ = r * std::sin(t);
        has_spare_ = true;
        return r * std::cos(t);
    }
    double exponential() { return -std::log(next_open01()); }
    // Marsaglia-Tsang for shape >= 1, boosted below 1.
    double gamma(double shape) {
        if (!(shape > 0)) throw std::domain_error("gamma variate: shape must be > 0");
        if (shape < 1.0)
            return gamma(shape + 1.0) * std::pow(next_open01(), 1.0 / shape);
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x = normal();
            double v = 1.0 + c * x;
            if (v <= 0.0) continue;
            v = v * v * v;
            double u = next_open01();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
        }
    }

    // deterministic stream derivation for chain index i under a master seed
    static std::uint64_t derive(std::uint64_t master, std::uint64_t index) {
        SplitMix64 s(master ^ (0xD1B54A32D192ED03ull * (index + 1)));
        s.next_u64();
        return s.next_u64();
    }

  private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

struct ShotNoiseParams {
    double lambda; // Poisson rate
    double b;      // pulse decay
    double exponent() const { return lambda / b; }
};

struct ChainConfig {
    long n_steps = 400;
    long n_samples = 100000;
    std::uint64_t master_seed = 1;
    int n_workers = 0; // 0: SHOTNOISE_WORKERS env var, then hardware concurrency
};

inline int resolve_workers(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("SHOTNOISE_WORKERS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

inline double sample_amplitude(const AmplitudeLaw& law, SplitMix64& rng) {
    switch (law.kind) {
        case AmplitudeLaw::Kind::deterministic_one: return 1.0;
        case AmplitudeLaw::Kind::gamma: return rng.gamma(law.beta);
        default: return rng.gamma(law.beta) - rng.gamma(law.beta);
    }
}

inline double sample_exponent(const ExponentLaw& law, SplitMix64& rng) {
    if (law.kind == ExponentLaw::Kind::fixed) return law.value;
    return rng.gamma(law.value);
}

// One trajectory of U_{n} = X_n (Y_n + U_{n-1}) started from U_0 = 0.
// A is drawn once and shared by every X_n of the trajectory (randomized
// environment); X_n = V_n^{1/A} with V_n uniform.
inline double iterate_chain(const LawSpec& spec, long n_steps, SplitMix64& rng) {
    if (n_steps < 1) throw std::invalid_argument("iterate_chain: n_steps must be >= 1");
    double a = sample_exponent(spec.exponent, rng);
    while (a < 1e-300) a = sample_exponent(spec.exponent, rng); // underflow redraw
    const double inv_a = 1.0 / a;
    const bool unit_exponent = (a == 1.0);
    double u = 0.0;
    for (long k = 0; k < n_steps; ++k) {
        double v = rng.next_open01();
        double x = unit_exponent ? v : std::exp(std::log(v) * inv_a);
        double y = sample_amplitude(spec.amplitude, rng);
        u = x * (y + u);
    }
    return u;
}

// Z(t_end) = sum of Y_i exp(-B (t_end - T_i)) over Poisson arrivals on
// [0, t_end].
inline double simulate_shot_noise(const ShotNoiseParams& params, const AmplitudeLaw& amp,
                                  double t_end, SplitMix64& rng) {
    if (!(t_end > 0)) throw std::invalid_argument("simulate_shot_noise: t_end must be > 0");
    const double mean = params.lambda * t_end;
    if (mean > 700.0)
        throw std::invalid_argument("simulate_shot_noise: lambda * t_end too large");
    // Poisson count by uniform multiplication
    const double limit = std::exp(-mean);
    long n = -1;
    double p = 1.0;
    do {
        ++n;
        p *= rng.next_open01();
    } while (p > limit);
    double z = 0.0;
    for (long i = 0; i < n; ++i) {
        double t = rng.next_open01() * t_end;
        z += sample_amplitude(amp, rng) * std::exp(-params.b * (t_end - t));
    }
    return z;
}

struct HistogramBin {
    double center = 0.0;
    long count = 0;
    double density = 0.0;   // count / (n * width)
    double std_error = 0.0; // binomial SE of the density estimate
};

struct TransformEstimate {
    double mean = 0.0;
    double std_error = 0.0;
};

enum class TransformKind { laplace, cosine };

// Sorted sample set with ECDF/histogram/KS/empirical-transform queries.
class EmpiricalDistribution {
  public:
    EmpiricalDistribution() = default;
    explicit EmpiricalDistribution(std::vector<double> samples)
        : samples_(std::move(samples)) {
        std::sort(samples_.begin(), samples_.end());
    }

    const std::vector<double>& samples() const { return samples_; }
    long size() const { return static_cast<long>(samples_.size()); }
    double min() const { return samples_.front(); }
    double max() const { return samples_.back(); }

    double ecdf(double x) const {
        auto it = std::upper_bound(samples_.begin(), samples_.end(), x);
        return double(it - samples_.begin()) / double(samples_.size());
    }

    double quantile(double q) const {
        double pos = q * (samples_.size() - 1);
        size_t lo = static_cast<size_t>(pos);
        if (lo + 1 >= samples_.size()) return samples_.back();
        double w = pos - lo;
        return samples_[lo] * (1.0 - w) + samples_[lo + 1] * w;
    }

    std::vector<HistogramBin> histogram_density(double bin_width, double lo,
                                                double hi) const {
        if (!(bin_width > 0)) throw std::invalid_argument("histogram: bin_width must be > 0");
        const long nbins = std::max<long>(1, static_cast<long>(std::ceil((hi - lo) / bin_width)));
        std::vector<HistogramBin> bins(nbins);
        const double n = double(samples_.size());
        for (long i = 0; i < nbins; ++i)
            bins[i].center = lo + (i + 0.5) * bin_width;
        for (double x : samples_) {
            long i = static_cast<long>((x - lo) / bin_width);
            if (i >= 0 && i < nbins) ++bins[i].count;
        }
        for (auto& b : bins) {
            double p = b.count / n;
            b.density = p / bin_width;
            b.std_error = std::sqrt(std::max(p * (1.0 - p), 1.0 / n) / n) / bin_width;
        }
        return bins;
    }
    std::vector<HistogramBin> histogram_density(double bin_width) const {
        return histogram_density(bin_width, min(), max());
    }

    // sup over sample points of |ECDF - F|
    template <class F>
    double ks_distance(F&& reference_cdf) const {
        const double n = double(samples_.size());
        double d = 0.0;
        for (size_t i = 0; i < samples_.size(); ++i) {
            double f = reference_cdf(samples_[i]);
            d = std::max(d, std::fabs((i + 1) / n - f));
            d = std::max(d, std::fabs(i / n - f));
        }
        return d;
    }

    TransformEstimate empirical_transform(double s, TransformKind kind) const {
        double sum = 0.0, sumsq = 0.0;
        for (double x : samples_) {
            double v = (kind == TransformKind::laplace) ? std::exp(-s * x)
                                                        : std::cos(s * x);
            sum += v;
            sumsq += v * v;
        }
        const double n = double(samples_.size());
        double mean = sum / n;
        double var = std::max(0.0, sumsq / n - mean * mean);
        return {mean, std::sqrt(var / n)};
    }

  private:
    std::vector<double> samples_;
};

// Two-sample KS distance between sorted sample sets.
inline double ks_two_sample(const EmpiricalDistribution& a, const EmpiricalDistribution& b) {
    const auto& xa = a.samples();
    const auto& xb = b.samples();
    size_t i = 0, j = 0;
    double d = 0.0;
    while (i < xa.size() && j < xb.size()) {
        if (xa[i] <= xb[j])
            ++i;
        else
            ++j;
        d = std::max(d, std::fabs(double(i) / xa.size() - double(j) / xb.size()));
    }
    return d;
}

// n_samples independent chains of n_steps iterations each.  Chains own
// per-index derived RNG streams, so the result is bit-identical for any
// worker count.
inline EmpiricalDistribution sample_stationary(const LawSpec& spec, const ChainConfig& cfg) {
    std::vector<double> out(cfg.n_samples);
    const int workers = std::max(1, std::min<int>(resolve_workers(cfg.n_workers),
                                                  static_cast<int>(cfg.n_samples)));
    auto run_range = [&](long lo, long hi) {
        for (long i = lo; i < hi; ++i) {
            SplitMix64 rng(SplitMix64::derive(cfg.master_seed, static_cast<std::uint64_t>(i)));
            out[i] = iterate_chain(spec, cfg.n_steps, rng);
        }
    };
    if (workers == 1) {
        run_range(0, cfg.n_samples);
    } else {
        std::vector<std::thread> pool;
        const long chunk = (cfg.n_samples + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            long lo = w * chunk, hi = std::min<long>(cfg.n_samples, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back(run_range, lo, hi);
        }
        for (auto& t : pool) t.join();
    }
    return EmpiricalDistribution(std::move(out));
}

// Independent shot-noise paths sampled at t_end, one derived stream per path.
inline EmpiricalDistribution sample_shot_noise(const ShotNoiseParams& params,
                                               const AmplitudeLaw& amp, double t_end,
                                               const ChainConfig& cfg) {
    std::vector<double> out(cfg.n_samples);
    const int workers = std::max(1, std::min<int>(resolve_workers(cfg.n_workers),
                                                  static_cast<int>(cfg.n_samples)));
    auto run_range = [&](long lo, long hi) {
        for (long i = lo; i < hi; ++i) {
            SplitMix64 rng(SplitMix64::derive(cfg.master_seed ^ 0x5851F42D4C957F2Dull,
                                              static_cast<std::uint64_t>(i)));
            out[i] = simulate_shot_noise(params, amp, t_end, rng);
        }
    };
    if (workers == 1) {
        run_range(0, cfg.n_samples);
    } else {
        std::vector<std::thread> pool;
        const long chunk = (cfg.n_samples + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            long lo = w * chunk, hi = std::min<long>(cfg.n_samples, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back(run_range, lo, hi);
        }
        for (auto& t : pool) t.join();
    }
    return EmpiricalDistribution(std::move(out));
}

} // namespace shotnoise

#endif
