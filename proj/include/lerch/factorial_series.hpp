#pragma once

// Convergent factorial-type expansion of the branch-point contribution
//
//   B(z, s, a) = e^{i pi a} (2 pi i)^{s-1} (-z)^{-a} sum_{n>=0} q^n / (q-1)^{n+1} p_n(x, s),
//
// with q = e^{2 pi i a} and x = 1/2 - ln(-z) / (2 pi i), and
//
//   p_n(x, s) = (e^{-2 pi i s} - 1) int_0^inf e^{-x tau} tau^{-s} (1 - e^{-tau})^n dtau.

#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <vector>

#include "lerch/engines.hpp"
#include "lerch/errors.hpp"
#include "lerch/kernel.hpp"
#include "lerch/point.hpp"

namespace lerch {

// Finite binomial form, valid for every s by continuation.
inline ComplexScalar p_n_direct(ComplexScalar x, ComplexScalar s, int n)
{
    if (n < 0)
        throw contract_error("p_n_direct: n must be non-negative");
    using CL = std::complex<long double>;
    const CL sl(s.real(), s.imag());
    ComplexNeumaierSum<long double> acc;
    long double binom = 1.0L;
    for (int m = 0; m <= n; ++m) {
        const CL xm = CL(x.real(), x.imag()) + (long double)m;
        if (xm.imag() == 0.0L && xm.real() <= 0.0L)
            throw domain_error("p_n_direct: x + m on the branch cut");
        const CL t = binom * std::exp((sl - 1.0L) * std::log(xm));
        acc.add(m % 2 == 0 ? t : -t);
        binom = binom * (long double)(n - m) / (long double)(m + 1);
    }
    const ComplexScalar pref = -2.0 * pi * I * std::exp(-pi * I * s) * rgamma(s);
    return pref * ComplexScalar(double(acc.real()), double(acc.imag()));
}

// Rearranged form whose terms have the size of the result; needs |x| > n.
inline ComplexScalar p_n_stable(ComplexScalar x, ComplexScalar s, int n)
{
    if (n < 0)
        throw contract_error("p_n_stable: n must be non-negative");
    if (!(std::abs(x) > double(n)))
        throw domain_error("p_n_stable: requires |x| > n");
    ComplexNeumaierSum<double> acc;
    const ComplexScalar alpha = double(n) - s + 1.0;
    const ComplexScalar c(double(n + 1), 0.0);
    double fact_m = 1.0;  // m!
    for (int m = 0; m <= n; ++m) {
        if (m > 0)
            fact_m *= double(m);
        // m^n with 0^0 = 1
        const double mn = (m == 0) ? (n == 0 ? 1.0 : 0.0) : std::pow(double(m), double(n));
        if (mn == 0.0)
            continue;
        double fact_nm = 1.0;
        for (int k = 2; k <= n - m; ++k)
            fact_nm *= double(k);
        const double w = mn / (fact_m * fact_nm);
        const ComplexScalar f = gauss_2f1_unit_b(alpha, c, -double(m) / x);
        acc.add((m % 2 == 0 ? w : -w) * f);
    }
    const ComplexScalar pref = -2.0 * pi * I * std::exp(-pi * I * s) * rgamma(s - double(n)) *
                               std::exp((s - double(n) - 1.0) * std::log(x));
    return pref * ComplexScalar(acc.real(), acc.imag());
}

// The defining integral, convergent for Re s < n + 1 and Re x > 0.
inline quad::QuadResult<ComplexScalar> p_n_integral(ComplexScalar x, ComplexScalar s, int n)
{
    if (n < 0)
        throw contract_error("p_n_integral: n must be non-negative");
    if (!(x.real() > 0.0))
        throw domain_error("p_n_integral: requires Re x > 0");
    if (!(s.real() < double(n) + 1.0))
        throw domain_error("p_n_integral: requires Re s < n + 1");

    auto f = [&](double tau) -> ComplexScalar {
        const double lg = std::log(-std::expm1(-tau));
        return std::exp(-x * tau - s * std::log(tau) + double(n) * lg);
    };
    const double t_end = (45.0 + std::max(0.0, -s.real()) * std::log(50.0 + std::abs(s))) / x.real() + 2.0;
    const double cuts[] = {0.0, 1.0, 4.0, 16.0, std::max(t_end, 17.0)};
    quad::QuadResult<ComplexScalar> out;
    out.converged = true;
    for (int i = 0; i + 1 < 5; ++i) {
        if (cuts[i] >= t_end)
            break;
        const auto seg = quad::tanh_sinh(f, cuts[i], std::min(cuts[i + 1], t_end), 1e-15, 1e-300, 11);
        out.value += seg.value;
        out.error += seg.error;
        out.levels = std::max(out.levels, seg.levels);
        out.converged = out.converged && seg.converged;
    }
    const ComplexScalar pref = std::exp(-2.0 * pi * I * s) - 1.0;
    out.value *= pref;
    out.error *= std::abs(pref);
    return out;
}

inline ComplexScalar p_n(ComplexScalar x, ComplexScalar s, int n)
{
    if (std::abs(x) > double(n) + 2.0)
        return p_n_stable(x, s, n);
    if (n <= 8 || s.real() >= double(n) + 1.0 || !(x.real() > 0.0))
        return p_n_direct(x, s, n);
    return p_n_integral(x, s, n).value;
}

struct FactorialSeriesState
{
    ComplexScalar x;
    ComplexScalar s;
    ComplexScalar a;
    ComplexScalar partial;
    int n_terms = 0;
    double last_term_mag = 0.0;
};

// One summed term. When Im ln(-z) > 0 the series is summed for the conjugate
// point, and partial refers to that sum.
struct FactorialTraceRow
{
    int n = 0;
    double term_mag = 0.0;
    ComplexScalar partial;
};

inline ComplexScalar factorial_x(ComplexScalar L)
{
    return 0.5 - L / (2.0 * pi * I);
}

// Sums B until five consecutive terms fall below tol, or max_terms terms.
inline FactorialSeriesState factorial_series_B(const LerchPoint& p, double tol, int max_terms,
                                               std::vector<FactorialTraceRow>* trace = nullptr)
{
    validate(p);
    if (!(std::abs(p.z) > 1.0))
        throw domain_error("factorial_series_B: requires |z| > 1");
    if (!(p.a.real() > 0.0))
        throw domain_error("factorial_series_B: requires Re a > 0");
    if (max_terms < 0)
        throw contract_error("factorial_series_B: max_terms must be non-negative");
    const double frac = std::abs(p.a.real() - std::round(p.a.real()));
    if (frac < 1e-6 && std::abs(p.a.imag()) < 1e-6)
        throw conditioning_error("factorial_series_B: e^{2 pi i a} too close to 1");

    const ComplexScalar L0 = log_neg_z(p.z, p.cut_side).value;
    const bool flip = L0.imag() > 0.0;
    const LerchPoint q_pt = flip ? conjugate(p) : p;
    const ComplexScalar L = flip ? std::conj(L0) : L0;
    const ComplexScalar s = q_pt.s, a = q_pt.a;

    const ComplexScalar q = std::exp(2.0 * pi * I * a);
    const ComplexScalar ratio = q / (q - 1.0);
    if (!(std::abs(ratio) < 1.0))
        throw domain_error("factorial_series_B: |q/(q-1)| >= 1, the series does not converge");

    FactorialSeriesState st;
    st.x = factorial_x(L);
    st.s = s;
    st.a = a;
    const ComplexScalar pref = std::exp(pi * I * a) * std::exp((s - 1.0) * std::log(2.0 * pi * I)) *
                               std::exp(-a * L) / (q - 1.0);

    ComplexNeumaierSum<double> acc;
    ComplexScalar rn(1.0, 0.0);
    int quiet = 0;
    if (std::isfinite(tol)) {
        for (int n = 0; n < max_terms; ++n) {
            const ComplexScalar term = pref * rn * p_n(st.x, s, n);
            acc.add(term);
            st.n_terms = n + 1;
            st.last_term_mag = std::abs(term);
            if (trace)
                trace->push_back({n, st.last_term_mag, ComplexScalar(acc.real(), acc.imag())});
            quiet = st.last_term_mag < tol ? quiet + 1 : 0;
            if (quiet >= 5)
                break;
            rn *= ratio;
        }
    }
    st.partial = {acc.real(), acc.imag()};
    if (flip) {
        // B is not conjugate-symmetric because the residue series is not; go through Phi
        const ComplexScalar res_c = engine_detail::residue_series(q_pt.z, q_pt.s, q_pt.a).value;
        const ComplexScalar res = engine_detail::residue_series(p.z, p.s, p.a).value;
        st.x = std::conj(st.x);
        st.s = p.s;
        st.a = p.a;
        st.partial = std::conj(st.partial + res_c) - res;
    }
    return st;
}

// Phi = B + residue series, with B from the factorial expansion.
inline EngineReport eval_factorial_B(const LerchPoint& p, double tol = 1e-12, int max_terms = 500)
{
    const FactorialSeriesState st = factorial_series_B(p, tol, max_terms);
    const auto res = engine_detail::residue_series(p.z, p.s, p.a);
    EngineReport rep;
    rep.engine = EngineKind::factorial;
    rep.value = st.partial + res.value;
    rep.n_terms = st.n_terms;
    rep.abs_err_estimate = st.n_terms == 0 ? std::numeric_limits<double>::infinity() : 5.0 * st.last_term_mag + res.tail;
    if (st.n_terms > 0)
        rep.warnings.push_back({"heuristic", "five-term quiet window stopping rule, no error bound"});
    if (std::isfinite(tol) && st.n_terms >= max_terms)
        rep.warnings.push_back({"accuracy", "factorial series reached max_terms without a quiet window"});
    return rep;
}

inline EngineReport eval_factorial_B(ComplexScalar z, ComplexScalar s, ComplexScalar a, double tol, int max_terms)
{
    return eval_factorial_B(LerchPoint{z, s, a}, tol, max_terms);
}

} // namespace lerch
