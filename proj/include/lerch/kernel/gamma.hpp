#pragma once

// Gamma family for complex arguments: Stirling series after an upward
// recurrence shift, reflection for Re s < 1/2.

#include <array>
#include <cmath>
#include <complex>

#include "lerch/config.hpp"
#include "lerch/errors.hpp"
#include "lerch/kernel/complex.hpp"

namespace lerch {

namespace detail {

// B_{2k} for k = 1..12
inline constexpr std::array<double, 12> bernoulli_even = {
    1.0 / 6.0,           -1.0 / 30.0,        1.0 / 42.0,          -1.0 / 30.0,
    5.0 / 66.0,          -691.0 / 2730.0,    7.0 / 6.0,           -3617.0 / 510.0,
    43867.0 / 798.0,     -174611.0 / 330.0,  854513.0 / 138.0,    -236364091.0 / 2730.0,
};

inline long long nonpositive_integer_pole(ComplexScalar s)
{
    if (s.imag() == 0.0 && s.real() <= 0.0 && s.real() == std::round(s.real()))
        return static_cast<long long>(s.real());
    return 1;
}

// ln Gamma(s) for Re s large, |s| >= ~12.
inline ComplexScalar stirling_log_gamma(ComplexScalar s)
{
    const double half_log_2pi = 0.91893853320467274178;
    ComplexScalar r = (s - 0.5) * std::log(s) - s + half_log_2pi;
    const ComplexScalar inv = 1.0 / s;
    const ComplexScalar inv2 = inv * inv;
    ComplexScalar p = inv;
    for (int k = 1; k <= 10; ++k) {
        r += bernoulli_even[k - 1] / (2.0 * k * (2.0 * k - 1.0)) * p;
        p *= inv2;
    }
    return r;
}

} // namespace detail

// sin(pi s) and cos(pi s) with the real part reduced exactly first.
inline ComplexScalar sinpi(ComplexScalar s)
{
    const double x = std::remainder(s.real(), 2.0);
    const double y = s.imag();
    const double sx = (x == 1.0 || x == -1.0 || x == 0.0) ? 0.0 : std::sin(pi * x);
    const double cx = (std::abs(x) == 0.5) ? 0.0 : std::cos(pi * x);
    return {sx * std::cosh(pi * y), cx * std::sinh(pi * y)};
}

inline ComplexScalar cospi(ComplexScalar s)
{
    const double x = std::remainder(s.real(), 2.0);
    const double y = s.imag();
    const double sx = (x == 1.0 || x == -1.0 || x == 0.0) ? 0.0 : std::sin(pi * x);
    const double cx = (std::abs(x) == 0.5) ? 0.0 : std::cos(pi * x);
    return {cx * std::cosh(pi * y), -sx * std::sinh(pi * y)};
}

// Principal log Gamma, continuous along rays; branch cut on the negative real axis.
inline ComplexScalar log_gamma(ComplexScalar s, const KernelConfig& cfg = default_kernel_config())
{
    if (const long long p = detail::nonpositive_integer_pole(s); p <= 0)
        throw pole_error("log_gamma", p);
    ComplexScalar shift_sum(0.0, 0.0);
    while (s.real() < cfg.gamma_shift) {
        shift_sum += std::log(s);
        s += 1.0;
    }
    return detail::stirling_log_gamma(s) - shift_sum;
}

inline ComplexScalar gamma(ComplexScalar s, const KernelConfig& cfg = default_kernel_config())
{
    if (const long long p = detail::nonpositive_integer_pole(s); p <= 0)
        throw pole_error("gamma", p);
    if (s.real() < 0.5)
        return pi / (sinpi(s) * gamma(1.0 - s, cfg));
    ComplexScalar prod(1.0, 0.0);
    while (s.real() < cfg.gamma_shift) {
        prod *= s;
        s += 1.0;
    }
    return std::exp(detail::stirling_log_gamma(s)) / prod;
}

// 1 / Gamma(s); zero at the poles of Gamma.
inline ComplexScalar rgamma(ComplexScalar s, const KernelConfig& cfg = default_kernel_config())
{
    if (detail::nonpositive_integer_pole(s) <= 0)
        return {0.0, 0.0};
    if (s.real() < 0.5)
        return sinpi(s) * gamma(1.0 - s, cfg) / pi;
    return 1.0 / gamma(s, cfg);
}

inline ComplexScalar digamma(ComplexScalar a, const KernelConfig& cfg = default_kernel_config())
{
    if (const long long p = detail::nonpositive_integer_pole(a); p <= 0)
        throw pole_error("digamma", p);
    if (a.real() < 0.0)
        return digamma(1.0 - a, cfg) - pi * cospi(a) / sinpi(a);
    ComplexScalar acc(0.0, 0.0);
    while (a.real() < cfg.digamma_shift) {
        acc -= 1.0 / a;
        a += 1.0;
    }
    const ComplexScalar inv2 = 1.0 / (a * a);
    ComplexScalar p = inv2;
    ComplexScalar r = std::log(a) - 0.5 / a;
    for (int k = 1; k <= 10; ++k) {
        r -= detail::bernoulli_even[k - 1] / (2.0 * k) * p;
        p *= inv2;
    }
    return r + acc;
}

} // namespace lerch
