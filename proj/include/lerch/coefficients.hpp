#pragma once

// Expansion coefficients of g(t) = i / (2 sin pi(t - a)):
//   b_n       Maclaurin coefficients (quadratic recurrence)
//   b_{n,N}   coefficients of g with the 2N+1 poles nearest the origin removed
//   B_n       coefficients of the logarithmic series in the comparison expansion

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include "lerch/config.hpp"
#include "lerch/errors.hpp"
#include "lerch/kernel.hpp"

namespace lerch {

enum class CoefficientMethod { recurrence, stable_zeta, direct_sum };

inline const char* to_string(CoefficientMethod m) noexcept
{
    switch (m) {
    case CoefficientMethod::recurrence: return "recurrence";
    case CoefficientMethod::stable_zeta: return "stable-zeta";
    case CoefficientMethod::direct_sum: return "direct-sum";
    }
    return "?";
}

inline constexpr int coefficient_cap = 200;
inline constexpr double coefficient_growth_limit = 1e280;

// Immutable table of b_n (N = -1) or b_{n,N} (N >= 0) for one value of a.
class CoefficientTable
{
public:
    CoefficientTable(ComplexScalar a, int N, std::vector<ComplexScalar> values, CoefficientMethod method,
                     bool growth_flagged = false)
        : a_(a), N_(N), values_(std::move(values)), method_(method), growth_flagged_(growth_flagged)
    {
    }

    ComplexScalar a() const noexcept { return a_; }
    int N() const noexcept { return N_; }
    bool subtracted() const noexcept { return N_ >= 0; }
    CoefficientMethod method() const noexcept { return method_; }
    bool growth_flagged() const noexcept { return growth_flagged_; }

    const std::vector<ComplexScalar>& values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    ComplexScalar operator[](std::size_t n) const { return values_.at(n); }

private:
    ComplexScalar a_;
    int N_;
    std::vector<ComplexScalar> values_;
    CoefficientMethod method_;
    bool growth_flagged_;
};

namespace detail {

using mp_real = boost::multiprecision::cpp_bin_float_100;
using mp_complex = boost::multiprecision::cpp_complex_100;

inline bool is_integer(ComplexScalar a) noexcept
{
    return a.imag() == 0.0 && a.real() == std::round(a.real());
}

inline void check_count(int count, int minimum, const char* who)
{
    if (count < minimum)
        throw contract_error(std::string(who) + ": count must be at least " + std::to_string(minimum));
    if (count > coefficient_cap)
        throw cap_error(std::string(who) + ": count above " + std::to_string(coefficient_cap));
}

// b_0..b_{count-1} from the seeds b_0, b_1 and the quadratic recurrence.
// Works for std::complex<double> and for the multiprecision complex type.
template <typename C, typename R>
std::vector<C> g_recurrence(const C& b0, const C& b1, const R& pi_r, int count)
{
    std::vector<C> b(static_cast<std::size_t>(count));
    b[0] = b0;
    b[1] = b1;
    const R pi2 = pi_r * pi_r;
    for (int n = 0; n + 2 < count; ++n) {
        C acc(0);
        for (int m = 0; m <= n; ++m) {
            acc += R(2 * (m + 1) * (n - m + 1)) * b[m + 1] * b[n - m + 1] + pi2 * b[m] * b[n - m];
        }
        for (int m = 0; m < n; ++m)
            acc -= R((m + 2) * (m + 1)) * b[m + 2] * b[n - m];
        b[n + 2] = acc / (R((n + 2) * (n + 1)) * b[0]);
    }
    return b;
}

inline ComplexScalar to_double(const mp_complex& c)
{
    return {c.real().convert_to<double>(), c.imag().convert_to<double>()};
}

} // namespace detail

// Maclaurin coefficients b_0..b_{count-1} of g(t).
inline CoefficientTable taylor_coeffs_g(ComplexScalar a, int count)
{
    if (detail::is_integer(a))
        throw domain_error("taylor_coeffs_g: a must not be an integer");
    detail::check_count(count, 2, "taylor_coeffs_g");

    const ComplexScalar sn = sinpi(a);
    const ComplexScalar b0 = 1.0 / (2.0 * I * sn);
    const ComplexScalar b1 = 2.0 * pi * I * b0 * b0 * cospi(a);
    std::vector<ComplexScalar> b = detail::g_recurrence(b0, b1, pi, count);

    bool flagged = false;
    for (std::size_t n = 0; n < b.size(); ++n) {
        if (!is_finite(b[n]))
            throw cap_error("taylor_coeffs_g: b_" + std::to_string(n) + " overflowed");
        if (std::abs(b[n]) > coefficient_growth_limit)
            flagged = true;
    }
    return CoefficientTable(a, -1, std::move(b), CoefficientMethod::recurrence, flagged);
}

// b_{n,N} from digamma (n = 0) and Hurwitz zeta (n >= 1) values.
inline CoefficientTable shifted_coeffs(ComplexScalar a, int N, int count,
                                       const KernelConfig& cfg = default_kernel_config())
{
    if (N < 1)
        throw contract_error("shifted_coeffs: N must be at least 1");
    if (detail::is_integer(a))
        throw domain_error("shifted_coeffs: a must not be an integer");
    detail::check_count(count, 1, "shifted_coeffs");

    const double sign_N = (N % 2 == 0) ? 1.0 : -1.0;
    const ComplexScalar p1 = (double(N) + 1.0 + a) / 2.0;
    const ComplexScalar p2 = (double(N) + 2.0 + a) / 2.0;
    const ComplexScalar m1 = (double(N) + 1.0 - a) / 2.0;
    const ComplexScalar m2 = (double(N) + 2.0 - a) / 2.0;

    std::vector<ComplexScalar> b(static_cast<std::size_t>(count));
    b[0] = sign_N / (4.0 * pi * I) *
           (digamma(p1, cfg) - digamma(p2, cfg) - digamma(m1, cfg) + digamma(m2, cfg));
    for (int n = 1; n < count; ++n) {
        const ComplexScalar s(n + 1.0, 0.0);
        const double sign_n = (n % 2 == 0) ? 1.0 : -1.0;
        const ComplexScalar bracket = hurwitz_zeta(s, p2, cfg) - hurwitz_zeta(s, p1, cfg) +
                                      sign_n * (hurwitz_zeta(s, m1, cfg) - hurwitz_zeta(s, m2, cfg));
        b[n] = sign_N / (std::ldexp(pi, n + 2) * I) * bracket;
    }
    return CoefficientTable(a, N, std::move(b), CoefficientMethod::stable_zeta);
}

// b_{n,N} = b_n + (i / 2 pi) sum_{m=-N}^{N} (-1)^m (a+m)^{-n-1}, evaluated in
// 100-digit arithmetic because b_n and b_{n,N} differ by many orders of magnitude.
inline CoefficientTable shifted_coeffs_direct(ComplexScalar a, int N, int count)
{
    using detail::mp_complex;
    using detail::mp_real;
    if (N < 1)
        throw contract_error("shifted_coeffs_direct: N must be at least 1");
    if (detail::is_integer(a))
        throw domain_error("shifted_coeffs_direct: a must not be an integer");
    detail::check_count(count, 1, "shifted_coeffs_direct");

    const mp_real pi_r = boost::math::constants::pi<mp_real>();
    const mp_complex am(mp_real(a.real()), mp_real(a.imag()));
    const mp_complex i_unit(mp_real(0), mp_real(1));
    const mp_complex b0 = mp_complex(1) / (mp_real(2) * i_unit * sin(pi_r * am));
    const mp_complex b1 = mp_real(2) * pi_r * i_unit * b0 * b0 * cos(pi_r * am);
    const std::vector<mp_complex> b = detail::g_recurrence(b0, b1, pi_r, std::max(count, 2));

    std::vector<mp_complex> inv;
    for (int m = -N; m <= N; ++m)
        inv.push_back(mp_complex(1) / (am + mp_real(m)));
    std::vector<mp_complex> power = inv;

    const mp_complex factor = i_unit / (mp_real(2) * pi_r);
    std::vector<ComplexScalar> out(static_cast<std::size_t>(count));
    for (int n = 0; n < count; ++n) {
        ComplexNeumaierSum<mp_real> acc;
        acc.add(b[n]);
        for (int m = -N; m <= N; ++m) {
            const std::size_t k = static_cast<std::size_t>(m + N);
            const mp_complex term = factor * power[k];
            acc.add((m % 2 == 0) ? term : mp_complex(-term));
            power[k] *= inv[k];
        }
        out[n] = detail::to_double(mp_complex(acc.real(), acc.imag()));
    }
    return CoefficientTable(a, N, std::move(out), CoefficientMethod::direct_sum);
}

// Coefficient B_n of the logarithmic series of the comparison expansion.
inline ComplexScalar fl_coeffs_B(ComplexScalar s, ComplexScalar a, int n,
                                 const KernelConfig& cfg = default_kernel_config())
{
    if (n < 0)
        throw contract_error("fl_coeffs_B: n must be non-negative");
    if (is_nonpositive_integer(a))
        throw domain_error("fl_coeffs_B: a must not be a non-positive integer");
    if (n == 0)
        return 0.5 * (digamma((a + 1.0) / 2.0, cfg) - digamma(a / 2.0, cfg));
    // n! binom(s-1, n) is the falling factorial (s-1)(s-2)...(s-n)
    ComplexScalar falling(1.0, 0.0);
    for (int k = 1; k <= n; ++k)
        falling *= s - double(k);
    const ComplexScalar sn(n + 1.0, 0.0);
    return falling / std::ldexp(1.0, n + 1) * (hurwitz_zeta(sn, a / 2.0, cfg) - hurwitz_zeta(sn, (a + 1.0) / 2.0, cfg));
}

// Process-wide memo of coefficient tables, keyed by (a, N, count).
// Entries are immutable once inserted.
class CoefficientCache
{
public:
    std::shared_ptr<const CoefficientTable> taylor(ComplexScalar a, int count)
    {
        return lookup(a, -1, count, [&] { return taylor_coeffs_g(a, count); });
    }

    std::shared_ptr<const CoefficientTable> shifted(ComplexScalar a, int N, int count)
    {
        return lookup(a, N, count, [&] { return shifted_coeffs(a, N, count); });
    }

    std::size_t size() const
    {
        std::lock_guard<std::mutex> lock(mutex_);
        return tables_.size();
    }

private:
    using Key = std::tuple<double, double, int, int>;

    template <typename Make>
    std::shared_ptr<const CoefficientTable> lookup(ComplexScalar a, int N, int count, Make make)
    {
        const Key key{a.real(), a.imag(), N, count};
        {
            std::lock_guard<std::mutex> lock(mutex_);
            if (auto it = tables_.find(key); it != tables_.end())
                return it->second;
        }
        auto table = std::make_shared<const CoefficientTable>(make());
        std::lock_guard<std::mutex> lock(mutex_);
        return tables_.emplace(key, std::move(table)).first->second;
    }

    mutable std::mutex mutex_;
    std::map<Key, std::shared_ptr<const CoefficientTable>> tables_;
};

inline CoefficientCache& coefficient_cache()
{
    static CoefficientCache cache;
    return cache;
}

} // namespace lerch
