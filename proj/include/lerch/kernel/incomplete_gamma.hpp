#pragma once

// Incomplete gamma functions for complex order and argument.
//
//   upper_incomplete_gamma(s, w)  Gamma(s, w), principal branch in w.
//   lower_gamma_star(s, w)        gamma(s, w) / w^s, entire in w.
//   scaled_upper_gamma(s, r, th)  e^w w^{1-s} Gamma(s, w) with w = r e^{i th},
//                                 th any real angle, i.e. continued past
//                                 the cut onto other sheets of log w.

#include <cmath>
#include <complex>
#include <limits>

#include "lerch/config.hpp"
#include "lerch/errors.hpp"
#include "lerch/kernel/complex.hpp"
#include "lerch/kernel/gamma.hpp"

namespace lerch {

inline ComplexScalar lower_gamma_star(ComplexScalar s, ComplexScalar w,
                                      const KernelConfig& cfg = default_kernel_config())
{
    if (is_nonpositive_integer(s))
        throw pole_error("lower_gamma_star", static_cast<long long>(s.real()));
    const double eps = cfg.igamma_rel_tol;
    if (w.real() > 0.0) {
        // Kummer form: e^{-w} sum w^k / (s(s+1)...(s+k)), no cancellation.
        ComplexScalar term = 1.0 / s;
        ComplexScalar sum = term;
        for (int k = 1; k < cfg.igamma_max_iter; ++k) {
            term *= w / (s + double(k));
            sum += term;
            if (std::abs(term) <= eps * std::abs(sum) && k > std::abs(w))
                return std::exp(-w) * sum;
        }
        throw accuracy_error("lower_gamma_star: series cap", std::abs(term));
    }
    // sum (-w)^k / (k! (s+k))
    ComplexScalar pw(1.0, 0.0);
    ComplexScalar sum = 1.0 / s;
    for (int k = 1; k < cfg.igamma_max_iter; ++k) {
        pw *= -w / double(k);
        const ComplexScalar term = pw / (s + double(k));
        sum += term;
        if (std::abs(term) <= eps * std::abs(sum) && k > std::abs(w))
            return sum;
    }
    throw accuracy_error("lower_gamma_star: series cap", std::abs(pw));
}

namespace detail {

// Legendre continued fraction: returns h with Gamma(s, w) = e^{-w} w^s h.
inline ComplexScalar igamma_continued_fraction(ComplexScalar s, ComplexScalar w, const KernelConfig& cfg)
{
    constexpr double tiny = 1e-300;
    ComplexScalar b = w + 1.0 - s;
    ComplexScalar c = 1.0 / tiny;
    ComplexScalar d = 1.0 / b;
    ComplexScalar h = d;
    for (int i = 1; i < cfg.igamma_max_iter; ++i) {
        const ComplexScalar an = -double(i) * (double(i) - s);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny)
            d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny)
            c = tiny;
        d = 1.0 / d;
        const ComplexScalar del = d * c;
        h *= del;
        if (std::abs(del - 1.0) <= cfg.igamma_rel_tol * 4)
            return h;
    }
    throw accuracy_error("incomplete gamma continued fraction did not converge", std::abs(h));
}

// E1(w) for small |w|, principal.
inline ComplexScalar expint_e1_series(ComplexScalar w, const KernelConfig& cfg)
{
    constexpr double euler_gamma = 0.57721566490153286061;
    ComplexScalar pw(1.0, 0.0);
    ComplexScalar sum(0.0, 0.0);
    for (int k = 1; k < cfg.igamma_max_iter; ++k) {
        pw *= -w / double(k);
        const ComplexScalar term = pw / double(k);
        sum += term;
        if (std::abs(term) <= cfg.igamma_rel_tol * std::abs(sum) && k > std::abs(w))
            return -euler_gamma - std::log(w) - sum;
    }
    throw accuracy_error("E1 series cap", std::abs(pw));
}

// sum_k (s-1)(s-2)...(s-k) w^{-k}, truncated at the smallest term.
inline ComplexScalar scaled_igamma_asymptotic(ComplexScalar s, ComplexScalar w, const KernelConfig& cfg)
{
    ComplexScalar term(1.0, 0.0);
    ComplexScalar sum = term;
    double last = 1.0;
    for (int k = 1; k < 400; ++k) {
        const ComplexScalar next = term * (s - double(k)) / w;
        const double mag = std::abs(next);
        if (mag > last)
            break;
        term = next;
        sum += term;
        last = mag;
        if (mag <= cfg.igamma_rel_tol * std::abs(sum))
            break;
    }
    return sum;
}

} // namespace detail

inline ComplexScalar upper_incomplete_gamma(ComplexScalar s, ComplexScalar w,
                                            const KernelConfig& cfg = default_kernel_config())
{
    if (w == ComplexScalar(0.0, 0.0)) {
        if (s.real() > 0.0)
            return gamma(s, cfg);
        throw domain_error("upper_incomplete_gamma: w = 0 with Re s <= 0");
    }
    if (!is_finite(s) || !is_finite(w))
        throw domain_error("upper_incomplete_gamma: non-finite argument");
    const ComplexScalar wp = cpow(w, s);
    const bool near_cut = w.real() < 0.0 && std::abs(w) * (1.0 - std::cos(std::arg(-w))) < 9.0;
    if (std::abs(w) >= std::abs(s) + cfg.igamma_series_margin && !near_cut)
        return std::exp(-w) * wp * detail::igamma_continued_fraction(s, w, cfg);
    if (is_nonpositive_integer(s)) {
        // Gamma(-m, w) from E1 by downward recurrence.
        const int m = static_cast<int>(-std::round(s.real()));
        ComplexScalar g = detail::expint_e1_series(w, cfg);
        const ComplexScalar ew = std::exp(-w);
        for (int k = 1; k <= m; ++k) {
            // Gamma(-k, w) = (Gamma(1-k, w) - w^{-k} e^{-w}) / (-k)
            g = (g - ipow(w, -k) * ew) / double(-k);
        }
        return g;
    }
    return gamma(s, cfg) - wp * lower_gamma_star(s, w, cfg);
}

inline ComplexScalar scaled_upper_gamma(ComplexScalar s, double modulus, double angle,
                                        const KernelConfig& cfg = default_kernel_config())
{
    if (!(modulus > 0.0))
        throw domain_error("scaled_upper_gamma: w = 0");
    if (!std::isfinite(angle))
        throw domain_error("scaled_upper_gamma: non-finite angle");
    const ComplexScalar w = std::polar(modulus, angle);
    const ComplexScalar log_w(std::log(modulus), angle);  // on the requested sheet
    const double k = std::ceil((angle - pi) / (2 * pi));
    const bool off_sheet = k != 0.0;
    const ComplexScalar log_wp(std::log(modulus), angle - 2 * pi * k);

    auto stokes = [&]() -> ComplexScalar {
        if (!off_sheet)
            return {0.0, 0.0};
        // e^w w_p^{1-s} (e^{-2 pi i k s} - 1) Gamma(s)
        return std::exp(w + (1.0 - s) * log_wp) * (std::exp(-2.0 * pi * k * I * s) - 1.0) * gamma(s, cfg);
    };

    if (modulus >= cfg.scaled_igamma_asymptotic_from)
        return detail::scaled_igamma_asymptotic(s, w, cfg) + stokes();

    if (w.real() >= 0.0 && modulus >= std::abs(s) + cfg.igamma_series_margin)
        return w * detail::igamma_continued_fraction(s, w, cfg) + stokes();

    // Cancellation in the (-w)^k series grows like e^{|w|(1 - cos arg(-w))}.
    const double phi = std::abs(std::arg(-w));
    if (w.real() >= 0.0 || modulus * (1.0 - std::cos(phi)) < 9.0) {
        if (is_nonpositive_integer(s))
            throw pole_error("scaled_upper_gamma", static_cast<long long>(s.real()));
        return std::exp(w + (1.0 - s) * log_w) * gamma(s, cfg) - w * std::exp(w) * lower_gamma_star(s, w, cfg);
    }
    return w * detail::igamma_continued_fraction(s, w, cfg) + stokes();
}

} // namespace lerch
