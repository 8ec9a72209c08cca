#pragma once

#include <cmath>
#include <complex>

#include "lerch/config.hpp"
#include "lerch/errors.hpp"
#include "lerch/kernel/complex.hpp"
#include "lerch/kernel/gamma.hpp"
#include "lerch/kernel/quadrature.hpp"
#include "lerch/kernel/summation.hpp"

namespace lerch {

namespace detail {

inline ComplexScalar zeta_euler_maclaurin(ComplexScalar s, ComplexScalar a, const KernelConfig& cfg)
{
    const double target = std::max(cfg.zeta_min_shift, std::abs(s) + cfg.zeta_shift_pad);
    ComplexNeumaierSum<double> head;
    while (a.real() < target) {
        head.add(cpow(a, -s));
        a += 1.0;
    }
    const ComplexScalar a_pow = cpow(a, -s);
    ComplexScalar tail = a * a_pow / (s - 1.0) + 0.5 * a_pow;

    // T_j = B_{2j}/(2j)! * s(s+1)...(s+2j-2) * a^{-s-2j+1}
    const ComplexScalar inv_a = 1.0 / a;
    ComplexScalar rising = s;          // (s)_{2j-1}
    ComplexScalar pw = a_pow * inv_a;  // a^{-s-2j+1}
    double fact = 2.0;                 // (2j)!
    for (int j = 1; j <= cfg.zeta_bernoulli_terms; ++j) {
        tail += bernoulli_even[j - 1] / fact * rising * pw;
        rising *= (s + (2.0 * j - 1.0)) * (s + 2.0 * j);
        pw *= inv_a * inv_a;
        fact *= (2.0 * j + 1.0) * (2.0 * j + 2.0);
    }
    return ComplexScalar(head.real(), head.imag()) + tail;
}

// Hermite's representation; needs Re a > 0.
inline ComplexScalar zeta_hermite(ComplexScalar s, ComplexScalar a)
{
    ComplexNeumaierSum<double> head;
    while (a.real() < 0.5) {
        head.add(cpow(a, -s));
        a += 1.0;
    }
    auto integrand = [&](double t) {
        const ComplexScalar d = std::pow(a - I * t, -s) - std::pow(a + I * t, -s);
        return d / std::expm1(2.0 * pi * t);
    };
    const double upper = 12.0 + 1.2 * std::abs(s) / pi;
    const auto r = quad::tanh_sinh(integrand, 0.0, upper, 1e-15, 0.0, 10);
    const ComplexScalar a_pow = std::pow(a, -s);
    return ComplexScalar(head.real(), head.imag()) + 0.5 * a_pow + a * a_pow / (s - 1.0) - I * r.value;
}

} // namespace detail

// Hurwitz zeta(s, a) = sum_{n>=0} (a+n)^{-s}, principal powers, continued in s.
inline ComplexScalar hurwitz_zeta(ComplexScalar s, ComplexScalar a,
                                  const KernelConfig& cfg = default_kernel_config())
{
    if (s == ComplexScalar(1.0, 0.0))
        throw pole_error("hurwitz_zeta: s = 1", 1);
    if (is_nonpositive_integer(a))
        throw domain_error("hurwitz_zeta: a is a non-positive integer");
    if (s.real() < cfg.zeta_hermite_below)
        return detail::zeta_hermite(s, a);
    return detail::zeta_euler_maclaurin(s, a, cfg);
}

} // namespace lerch
