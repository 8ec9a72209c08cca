#pragma once

// Reference values of Phi(z, s, a) that share no code path with the engines:
//   hp_series        direct series summed in double-double, |z| <= 0.9
//   quadrature       Phi = (1/Gamma(s)) int_0^inf x^{s-1} e^{-ax} / (1 - z e^{-x}) dx
//   hp_continuation  the same integral on a keyhole contour, valid for every s
//
// For |z| > 1 the integration ray x = u e^{i phi} is turned away from the poles
// x = ln z + 2 pi i k. No pole lies between the real axis and the ray, so the
// rotated integral equals the real-axis one, and for z on the cut the sign of
// phi selects the boundary value.

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "lerch/errors.hpp"
#include "lerch/kernel.hpp"
#include "lerch/point.hpp"

namespace lerch {

enum class ReferenceMethod { quadrature, hp_series, hp_continuation };

inline const char* to_string(ReferenceMethod m) noexcept
{
    switch (m) {
    case ReferenceMethod::quadrature: return "quadrature";
    case ReferenceMethod::hp_series: return "hp_series";
    case ReferenceMethod::hp_continuation: return "hp_continuation";
    }
    return "?";
}

struct ReferenceValue
{
    ComplexScalar value;
    double err_bar = 0.0;
    ReferenceMethod method = ReferenceMethod::quadrature;

    bool accepted() const noexcept { return err_bar <= 1e-10 * std::max(1.0, std::abs(value)); }
};

namespace oracle_detail {

inline constexpr double max_ray_angle = 1.25;

struct Ray
{
    double phi = 0.0;
    double pole_distance = 1.0;  // distance from the ray to the nearest pole
    double origin_distance = 1.0; // distance from 0 to the nearest pole
};

inline ComplexScalar pole(ComplexScalar z, CutSide side, int k)
{
    double theta = std::arg(z);
    if (on_cut(z))
        theta = (side == CutSide::above) ? 0.0 : -0.0;
    return {std::log(std::abs(z)), theta + 2 * pi * k};
}

inline Ray choose_ray(ComplexScalar z, CutSide side)
{
    Ray ray;
    const double lr = std::log(std::abs(z));
    if (lr > 0.0) {
        double theta = std::arg(z);
        if (on_cut(z))
            theta = (side == CutSide::above) ? 0.0 : -0.0;
        // aim midway between the two poles on either side of the real axis
        const double target = std::signbit(theta) ? theta + pi : theta - pi;
        ray.phi = std::clamp(std::atan2(target, lr), -max_ray_angle, max_ray_angle);
    }
    const ComplexScalar dir = std::polar(1.0, -ray.phi);
    ray.pole_distance = ray.origin_distance = 1e300;
    for (int k = -3; k <= 3; ++k) {
        const ComplexScalar p = pole(z, side, k);
        const ComplexScalar rot = p * dir;
        const double d = rot.real() < 0.0 ? std::abs(p) : std::abs(rot.imag());
        ray.pole_distance = std::min(ray.pole_distance, d);
        ray.origin_distance = std::min(ray.origin_distance, std::abs(p));
    }
    return ray;
}

// F(x) = e^{-ax} / (1 - z e^{-x})
inline ComplexScalar kernel_f(ComplexScalar x, ComplexScalar z, ComplexScalar a)
{
    const ComplexScalar e = std::exp(-x);
    return std::exp(-a * x) / (1.0 - z * e);
}

struct Partial
{
    ComplexScalar value;
    double error = 0.0;
    double magnitude = 0.0;
};

// int_{u0}^{inf} (u e^{i phi})^{s-1} F(u e^{i phi}) e^{i phi} du
inline Partial ray_integral(ComplexScalar z, ComplexScalar s, ComplexScalar a, const Ray& ray, double u0)
{
    const ComplexScalar dir = std::polar(1.0, ray.phi);
    const double decay = (a * dir).real();
    const double sigma = s.real();
    auto f = [&](double u) {
        const ComplexScalar x = u * dir;
        return std::exp((s - 1.0) * ComplexScalar(std::log(u), ray.phi)) * kernel_f(x, z, a) * dir;
    };

    // tail bound once |z| e^{-u cos phi} <= 1/2: |F| <= 2 e^{-decay u}
    const double u_pole = std::max(0.0, std::log(std::abs(z)) / std::cos(ray.phi));
    const double phase = std::exp(std::abs(s.imag() * ray.phi));
    auto tail_bound = [&](double X) {
        const double rate = decay - std::max(0.0, sigma - 1.0) / X;
        if (rate <= 0.0)
            return 1e300;
        return 2.0 * phase * std::pow(X, sigma - 1.0) * std::exp(-decay * X) / rate;
    };
    double X = std::max(50.0, u_pole + 2.0 + 50.0 / decay);
    while (tail_bound(X) > 1e-18 && X < 1e5)
        X *= 1.5;

    const double h = std::clamp(ray.pole_distance, 0.05, 1.0);
    std::vector<double> edges{u0};
    double u = u0;
    const double dense_until = std::max(u0 + 8.0, 2.0 * u_pole + 4.0);
    while (u + h < dense_until && u < X) {
        u += h;
        edges.push_back(u);
    }
    double step = h;
    while (u < X) {
        step = std::min(step * 2.0, 8.0);
        u = std::min(u + step, X);
        edges.push_back(u);
    }

    Partial out;
    ComplexNeumaierSum<double> acc;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        const auto r = quad::tanh_sinh(f, edges[i], edges[i + 1], 1e-15, 1e-20, 11);
        if (!r.converged && r.error > 1e-12 * std::max(1.0, std::abs(r.value)))
            throw accuracy_error("oracle: ray quadrature stagnated", r.error);
        acc.add(r.value);
        out.error += r.error;
        out.magnitude += std::abs(r.value);
    }
    out.value = {acc.real(), acc.imag()};
    out.error += tail_bound(X);
    return out;
}

// int_{phi}^{phi + 2 pi} e^{i s theta} F(r e^{i theta}) d theta
inline Partial circle_integral(ComplexScalar z, ComplexScalar s, ComplexScalar a, double phi, double r)
{
    auto f = [&](double th) { return std::exp(I * s * th) * kernel_f(std::polar(r, th), z, a); };
    const auto q = quad::tanh_sinh(f, phi, phi + 2 * pi, 1e-15, 1e-20, 11);
    if (!q.converged && q.error > 1e-12 * std::max(1.0, std::abs(q.value)))
        throw accuracy_error("oracle: circle quadrature stagnated", q.error);
    return {q.value, q.error, std::abs(q.value)};
}

// Integral representation for Re(a e^{i phi}) > 0.
inline ReferenceValue integral_reference(ComplexScalar z, ComplexScalar s, ComplexScalar a, CutSide side)
{
    const Ray ray = choose_ray(z, side);
    const double eps = 1e-15;
    if (s.real() >= 0.5 || z == ComplexScalar(1.0, 0.0)) {
        if (s.real() <= 0.0)
            throw unsupported_error("oracle: plain integral needs Re s > 0");
        const Partial p = ray_integral(z, s, a, ray, 0.0);
        const ComplexScalar rg = rgamma(s);
        ReferenceValue out{p.value * rg, std::abs(rg) * (p.error + eps * p.magnitude), ReferenceMethod::quadrature};
        return out;
    }
    const double r = std::min(1.0, 0.5 * ray.origin_distance);
    const Partial c = circle_integral(z, s, a, ray.phi, r);
    const Partial l = ray_integral(z, s, a, ray, r);
    const ComplexScalar circle_factor = gamma(1.0 - s) * std::exp(-I * pi * s) * std::pow(r, s) / (2 * pi);
    const ComplexScalar rg = rgamma(s);
    ReferenceValue out;
    out.value = circle_factor * c.value + rg * l.value;
    out.err_bar = std::abs(circle_factor) * (c.error + eps * c.magnitude) + std::abs(rg) * (l.error + eps * l.magnitude);
    out.method = ReferenceMethod::hp_continuation;
    return out;
}

} // namespace oracle_detail

// sum_{n>=0} z^n (a+n)^{-s} with double-double accumulation, |z| <= 0.9.
inline ReferenceValue hp_series(ComplexScalar z, ComplexScalar s, ComplexScalar a)
{
    const double rz = std::abs(z);
    if (rz > 0.9)
        throw domain_error("hp_series: |z| must be at most 0.9");
    if (is_nonpositive_integer(a))
        throw domain_error("hp_series: a must not be a non-positive integer");
    ComplexDoubleDouble acc;
    ComplexDoubleDouble zn = ComplexDoubleDouble::from({1.0, 0.0});
    const ComplexDoubleDouble zdd = ComplexDoubleDouble::from(z);
    double magnitude = 0.0;
    double tail = 0.0;
    for (int n = 0; n < 100000; ++n) {
        const ComplexScalar an = a + double(n);
        const ComplexScalar pw = std::exp(-s * std::log(an));
        acc = acc + zn * ComplexDoubleDouble::from(pw);
        magnitude += std::abs(zn.to_complex() * pw) * (1.0 + std::abs(s) * std::abs(std::log(an)));
        if (rz == 0.0)
            break;
        zn = zn * zdd;
        // for m > n: |(a+m)^{-s}| <= |a+n+1|^{-Re s} e^{pi |Im s| / 2} grow^{m-n-1}
        const ComplexScalar next = a + double(n + 1);
        if (next.real() > 0.0) {
            const double grow = std::pow(1.0 + 1.0 / next.real(), std::max(0.0, -s.real()));
            const double q = rz * grow;
            if (q < 1.0) {
                const double bound = std::pow(rz, n + 1) * std::pow(std::abs(next), -s.real()) *
                                     std::exp(pi * std::abs(s.imag()) / 2) / (1.0 - q);
                if (bound < 1e-18 * std::max(1e-300, std::abs(acc.to_complex()))) {
                    tail = bound;
                    break;
                }
            }
        }
    }
    return {acc.to_complex(), tail + 2e-16 * magnitude, ReferenceMethod::hp_series};
}

// Phi from the integral representation along a rotated ray (Re s > 0, Re a > 0, z off the cut).
inline ReferenceValue quad_integral(ComplexScalar z, ComplexScalar s, ComplexScalar a)
{
    if (s.real() <= 0.0)
        throw domain_error("quad_integral: Re s must be positive");
    if (a.real() <= 0.0)
        throw domain_error("quad_integral: Re a must be positive");
    if (on_cut(z))
        throw domain_error("quad_integral: z lies on the cut [1, inf)");
    const oracle_detail::Ray ray = oracle_detail::choose_ray(z, CutSide::above);
    if ((a * std::polar(1.0, ray.phi)).real() <= 0.0)
        throw unsupported_error("quad_integral: e^{-ax} does not decay along the integration ray");
    return oracle_detail::integral_reference(z, s, a, CutSide::above);
}

// Best available reference for p.
inline ReferenceValue reference_value(const LerchPoint& p)
{
    validate(p);
    if (std::abs(p.z) <= 0.9)
        return hp_series(p.z, p.s, p.a);
    if (p.z == ComplexScalar(1.0, 0.0) && p.s.real() <= 1.0)
        throw unsupported_error("reference_value: z = 1 with Re s <= 1");

    const oracle_detail::Ray ray = oracle_detail::choose_ray(p.z, p.cut_side);
    const ComplexScalar dir = std::polar(1.0, ray.phi);
    // shift a with Phi(z,s,a) = sum_{k<K} z^k (a+k)^{-s} + z^K Phi(z,s,a+K)
    // until e^{-ax} decays along the ray
    int K = 0;
    while ((( p.a + double(K)) * dir).real() < 0.3)
        ++K;
    ReferenceValue inner = oracle_detail::integral_reference(p.z, p.s, p.a + double(K), p.cut_side);
    if (K == 0)
        return inner;
    ComplexScalar head(0.0, 0.0), zk(1.0, 0.0);
    double head_mag = 0.0;
    for (int k = 0; k < K; ++k) {
        const ComplexScalar t = zk * std::exp(-p.s * std::log(p.a + double(k)));
        head += t;
        head_mag += std::abs(t);
        zk *= p.z;
    }
    ReferenceValue out;
    out.value = head + zk * inner.value;
    out.err_bar = std::abs(zk) * inner.err_bar + 1e-15 * head_mag;
    out.method = inner.method;
    return out;
}

} // namespace lerch
