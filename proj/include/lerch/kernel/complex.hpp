#pragma once

// Complex scalar conventions shared by every module.
//
//  * log, powers: principal branch, arg in (-pi, pi], unless a function
//    says otherwise.
//  * (-z)^t is always exp(t * log_neg_z(z)). For z on the positive real
//    axis the cut side picks the limit: CutSide::above is the limit from
//    Im z > 0 and gives arg(-z) = -pi; CutSide::below gives +pi.
//  * "t-plane" powers pow_t(c, s) use arg c in (-pi/2, 3pi/2]. This is the
//    branch of (a + t)^s met on a loop contour that starts at -i*infinity,
//    and it fixes the phase of (a - n)^s = e^{i pi s} (n - a)^s for n > Re a.

#include <cmath>
#include <complex>
#include <numbers>

#include "lerch/errors.hpp"

namespace lerch {

using ComplexScalar = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr ComplexScalar I{0.0, 1.0};

enum class CutSide { above, below };

struct BranchedLog
{
    enum class Side { above_cut, below_cut, off_cut };

    ComplexScalar value;
    Side side = Side::off_cut;
};

inline bool is_finite(ComplexScalar c) noexcept
{
    return std::isfinite(c.real()) && std::isfinite(c.imag());
}

// ln(-z) with |Im| <= pi. On the positive real axis the side flag selects
// the one-sided limit.
inline BranchedLog log_neg_z(ComplexScalar z, CutSide side = CutSide::above)
{
    if (z == ComplexScalar(0.0, 0.0))
        throw domain_error("log_neg_z: z = 0");
    if (z.imag() == 0.0 && z.real() > 0.0) {
        const double re = std::log(z.real());
        if (side == CutSide::above)
            return {ComplexScalar(re, -pi), BranchedLog::Side::above_cut};
        return {ComplexScalar(re, pi), BranchedLog::Side::below_cut};
    }
    // Avoid signed-zero surprises: build -z with a clean +0 imaginary part
    // when z is real.
    const ComplexScalar mz(-z.real(), z.imag() == 0.0 ? 0.0 : -z.imag());
    return {std::log(mz), BranchedLog::Side::off_cut};
}

// Principal log of z itself, with the same side convention on the negative axis
// (used by the near-one expansion where -ln z sits on the cut for z > 1).
inline ComplexScalar principal_log(ComplexScalar z)
{
    if (z.imag() == 0.0)
        return z.real() > 0.0 ? ComplexScalar(std::log(z.real()), 0.0)
                              : ComplexScalar(std::log(-z.real()), pi);
    return std::log(z);
}

inline ComplexScalar cpow(ComplexScalar base, ComplexScalar expo)
{
    if (base == ComplexScalar(0.0, 0.0)) {
        if (expo.real() > 0.0)
            return {0.0, 0.0};
        if (expo == ComplexScalar(0.0, 0.0))
            return {1.0, 0.0};
        throw domain_error("cpow: 0 raised to a power with Re <= 0");
    }
    return std::exp(expo * principal_log(base));
}

inline double arg_t(ComplexScalar c) noexcept
{
    double th = std::arg(c);
    if (th <= -pi / 2)
        th += 2 * pi;
    return th;
}

inline ComplexScalar log_t(ComplexScalar c) noexcept
{
    return {std::log(std::abs(c)), arg_t(c)};
}

inline ComplexScalar pow_t(ComplexScalar c, ComplexScalar expo) noexcept
{
    return std::exp(expo * log_t(c));
}

inline double distance_to_integer(ComplexScalar c) noexcept
{
    return std::abs(c - std::round(c.real()));
}

inline bool is_nonpositive_integer(ComplexScalar c, double tol = 0.0) noexcept
{
    return c.real() <= tol && distance_to_integer(c) <= tol;
}

// Integer power by repeated squaring; exact sign handling for negative n.
inline ComplexScalar ipow(ComplexScalar base, long long n)
{
    if (n < 0)
        return 1.0 / ipow(base, -n);
    ComplexScalar r(1.0, 0.0);
    while (n) {
        if (n & 1)
            r *= base;
        base *= base;
        n >>= 1;
    }
    return r;
}

} // namespace lerch
