#pragma once

// Tanh-sinh (double-exponential) quadrature on a finite interval.
// Endpoint distances are formed without cancellation, so integrands with
// algebraic endpoint singularities (x^{s-1} at 0) are handled.

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

namespace lerch::quad {

template <typename Value>
struct QuadResult
{
    Value value{};
    double error = 0.0;
    int levels = 0;
    bool converged = false;
};

namespace detail {

// Contribution of the node at t (both t and -t when t > 0).
template <typename F>
auto tanh_sinh_node(F& f, double a, double b, double t)
{
    constexpr double half_pi = std::numbers::pi / 2;
    const double len = b - a;
    const double u = half_pi * std::sinh(t);
    const double ch = std::cosh(u);
    const double w = half_pi * std::cosh(t) / (ch * ch) * len / 2;
    using V = decltype(f(a));
    if (!(w > 0.0) || !std::isfinite(w))
        return V{};
    // distance to the nearer endpoint
    const double d = len / (1.0 + std::exp(2.0 * std::abs(u)));
    if (d <= 0.0)
        return V{};
    if (t == 0.0)
        return V(f(a + len / 2) * w);
    const double xl = a + d;
    const double xr = b - d;
    return V(f(xl) * w + f(xr) * w);
}

} // namespace detail

// Integrate f over [a, b] to relative tolerance rel_tol (absolute floor abs_tol).
template <typename F>
auto tanh_sinh(F&& f, double a, double b, double rel_tol = 1e-13, double abs_tol = 0.0,
               int max_level = 9)
{
    using V = decltype(f(a));
    QuadResult<V> out;
    constexpr double t_max = 4.3;

    double h = 1.0;
    V sum{};
    for (int k = 0; k * h <= t_max; ++k)
        sum += detail::tanh_sinh_node(f, a, b, k * h);
    V estimate = sum * h;

    for (int level = 1; level <= max_level; ++level) {
        h /= 2;
        V add{};
        for (int k = 1; k * h <= t_max; k += 2)
            add += detail::tanh_sinh_node(f, a, b, k * h);
        sum += add;
        const V next = sum * h;
        const double diff = std::abs(next - estimate);
        estimate = next;
        out.levels = level;
        out.error = diff;
        if (level >= 3 && diff <= std::max(rel_tol * std::abs(estimate), abs_tol)) {
            out.converged = true;
            break;
        }
    }
    out.value = estimate;
    return out;
}

} // namespace lerch::quad
