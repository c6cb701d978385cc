#ifndef SHOTNOISE_CONSTANTS_HPP
#define SHOTNOISE_CONSTANTS_HPP

namespace shotnoise {

inline constexpr double pi = 3.14159265358979323846264338328;
inline constexpr double euler_gamma = 0.57721566490153286060651209008;

// exp(-(1+gamma)), the argument scale of the Volterra-function laws; also the
// crossover point below which the asymptotic nu series is classically used.
inline constexpr double exp_neg_1_plus_gamma = 0.20654940105499228502404693365;

} // namespace shotnoise

#endif
