#pragma once

// Evaluation strategies for Phi(z, s, a) and the dispatcher eval_auto.
//
// Notation used throughout: L = ln(-z) from log_neg_z, (-z)^t = exp(t L).
// For |z| > 1, Phi = B + I with the branch-point contribution B and the
// residue series I = -sum_{n>=1} z^{-n} (a-n)^{-s}, where (a-n)^{-s} is taken
// in the t-plane branch arg in (-pi/2, 3pi/2].

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "lerch/coefficients.hpp"
#include "lerch/errors.hpp"
#include "lerch/kernel.hpp"
#include "lerch/oracle.hpp"
#include "lerch/point.hpp"

namespace lerch {

enum class EngineKind { direct, near_one, integer_s, main_theorem, symmetric_igamma, fl_expansion, factorial, oracle };

inline const char* to_string(EngineKind e) noexcept
{
    switch (e) {
    case EngineKind::direct: return "direct";
    case EngineKind::near_one: return "near-one";
    case EngineKind::integer_s: return "integer-s";
    case EngineKind::main_theorem: return "main";
    case EngineKind::symmetric_igamma: return "symmetric";
    case EngineKind::fl_expansion: return "fl";
    case EngineKind::factorial: return "factorial";
    case EngineKind::oracle: return "oracle";
    }
    return "?";
}

inline std::optional<EngineKind> parse_engine(const std::string& name)
{
    for (EngineKind e : {EngineKind::direct, EngineKind::near_one, EngineKind::integer_s, EngineKind::main_theorem,
                         EngineKind::symmetric_igamma, EngineKind::fl_expansion, EngineKind::factorial,
                         EngineKind::oracle})
        if (name == to_string(e))
            return e;
    return std::nullopt;
}

struct Warning
{
    std::string tag;
    std::string message;

    bool operator==(const Warning&) const = default;
};

struct EngineReport
{
    ComplexScalar value;
    double abs_err_estimate = 0.0;
    int n_terms = 0;
    int m_terms = 0;
    EngineKind engine = EngineKind::direct;
    std::vector<Warning> warnings;

    bool has_warning(const std::string& tag) const
    {
        return std::any_of(warnings.begin(), warnings.end(), [&](const Warning& w) { return w.tag == tag; });
    }
};

namespace engine_detail {

inline void require_large_z(const LerchPoint& p, const char* who)
{
    if (!(std::abs(p.z) > 1.0))
        throw domain_error(std::string(who) + ": needs |z| > 1");
    if (!(p.a.real() > 0.0))
        throw domain_error(std::string(who) + ": needs Re a > 0");
    if (detail::is_integer(p.a))
        throw domain_error(std::string(who) + ": a must not be an integer");
}

// Upper bound on the tail sum_{m>n} |z|^m |(a+m)^{-s}| once Re(a+n+1) > 0,
// or +inf when the bound is not yet available.
inline double power_series_tail(double rz, ComplexScalar s, ComplexScalar a, int n)
{
    const ComplexScalar next = a + double(n + 1);
    if (!(next.real() > 0.0))
        return std::numeric_limits<double>::infinity();
    const double grow = std::pow(1.0 + 1.0 / next.real(), std::max(0.0, -s.real()));
    const double q = rz * grow;
    if (q >= 1.0)
        return std::numeric_limits<double>::infinity();
    return std::pow(rz, n + 1) * std::pow(std::abs(next), -s.real()) * std::exp(pi * std::abs(s.imag()) / 2) /
           (1.0 - q);
}

// z^n Gamma(s, (a+n)L) / ((a+n)^s Gamma(s)) written as
// (-1)^n (-z)^{-a} L^{s-1} S((a+n)L) / ((a+n) Gamma(s)), S(w) = e^w w^{1-s} Gamma(s, w),
// with arg w = arg_t(a+n) + arg L so that powers of (a+n) and L combine.
inline ComplexScalar igamma_term(long long n, ComplexScalar s, ComplexScalar a, ComplexScalar L,
                                 ComplexScalar prefactor)
{
    const ComplexScalar c = a + double(n);
    const double theta = arg_t(c) + std::arg(L);
    const ComplexScalar S = scaled_upper_gamma(s, std::abs(c) * std::abs(L), theta);
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    return sign * prefactor * S / c;
}

// -sum_{n>=1} z^{-n} (a-n)^{-s} until terms fall below rel * |sum|.
struct ResidueSum
{
    ComplexScalar value;
    double tail = 0.0;
    int terms = 0;
};

inline ResidueSum residue_series(ComplexScalar z, ComplexScalar s, ComplexScalar a, double rel = 1e-17,
                                 int max_terms = 100000)
{
    ComplexNeumaierSum<double> acc;
    const ComplexScalar zinv = 1.0 / z;
    const double rzinv = std::abs(zinv);
    ComplexScalar zn = 1.0;
    ResidueSum out;
    for (int n = 1; n <= max_terms; ++n) {
        zn *= zinv;
        const ComplexScalar term = -zn * pow_t(a - double(n), -s);
        acc.add(term);
        out.terms = n;
        // |(n-a)^{-s}| grows at most by (1 + 1/|n+1-a|)^{max(0,-Re s)} per step
        const double base = std::abs(double(n + 1) - a);
        if (double(n + 1) > a.real()) {
            const double q = rzinv * std::pow(1.0 + 1.0 / base, std::max(0.0, -s.real()));
            if (q < 1.0) {
                const double bound = std::pow(rzinv, n + 1) * std::pow(base, -s.real()) *
                                     std::exp(1.5 * pi * std::abs(s.imag())) / (1.0 - q);
                const ComplexScalar sum(acc.real(), acc.imag());
                if (bound <= rel * std::max(std::abs(sum), 1e-300)) {
                    out.value = sum;
                    out.tail = bound;
                    return out;
                }
            }
        }
    }
    throw accuracy_error("residue_series: term cap", std::abs(zn));
}

inline bool near_integer(ComplexScalar s, double tol, long long* S = nullptr)
{
    const double r = std::round(s.real());
    if (std::abs(s - r) <= tol) {
        if (S)
            *S = static_cast<long long>(r);
        return true;
    }
    return false;
}

} // namespace engine_detail

// Partial sums of sum_{n>=0} z^n (a+n)^{-s}, |z| < 1.
inline EngineReport eval_series_direct(const LerchPoint& p, double tol = 1e-17)
{
    validate(p);
    const double rz = std::abs(p.z);
    if (!(rz < 1.0))
        throw domain_error("eval_series_direct: needs |z| < 1");
    EngineReport rep;
    rep.engine = EngineKind::direct;
    ComplexNeumaierSum<double> acc;
    ComplexScalar zn(1.0, 0.0);
    constexpr int cap = 1000000;
    for (int n = 0; n < cap; ++n) {
        acc.add(zn * std::exp(-p.s * std::log(p.a + double(n))));
        rep.n_terms = n + 1;
        if (rz == 0.0) {
            rep.abs_err_estimate = 0.0;
            break;
        }
        zn *= p.z;
        const double bound = engine_detail::power_series_tail(rz, p.s, p.a, n);
        if (bound < tol) {
            rep.abs_err_estimate = bound;
            break;
        }
        if (n + 1 == cap)
            throw accuracy_error("eval_series_direct: term cap", bound);
    }
    rep.value = {acc.real(), acc.imag()};
    return rep;
}

// Gamma(1-s) z^{-a} (-ln z)^{s-1} + z^{-a} sum_{n=0}^{n_max} zeta(s-n, a) (ln z)^n / n!
inline EngineReport eval_near_one(const LerchPoint& p, int n_max = 200,
                                  const KernelConfig& cfg = default_kernel_config())
{
    validate(p);
    if (long long S; engine_detail::near_integer(p.s, 0.0, &S) && S >= 1)
        throw domain_error("eval_near_one: s must not be a positive integer");
    if (p.z == ComplexScalar(0.0, 0.0))
        throw domain_error("eval_near_one: z = 0");
    ComplexScalar lz = std::log(p.z);
    if (on_cut(p.z))
        lz = {std::log(p.z.real()), p.cut_side == CutSide::above ? 0.0 : -0.0};
    if (!(std::abs(lz) < 2 * pi))
        throw domain_error("eval_near_one: needs |ln z| < 2 pi");

    EngineReport rep;
    rep.engine = EngineKind::near_one;
    const ComplexScalar za = std::exp(-p.a * lz);

    ComplexScalar singular(0.0, 0.0);
    if (lz != ComplexScalar(0.0, 0.0)) {
        // -ln z on the cut side: arg -pi above, +pi below
        ComplexScalar mlz = -lz;
        ComplexScalar log_mlz = std::log(mlz);
        if (on_cut(p.z))
            log_mlz = {std::log(std::abs(lz)), p.cut_side == CutSide::above ? -pi : pi};
        singular = gamma(1.0 - p.s, cfg) * std::exp((p.s - 1.0) * log_mlz);
    }

    ComplexNeumaierSum<double> acc;
    ComplexScalar power(1.0, 0.0);  // (ln z)^n / n!
    int quiet = 0;
    double last = 0.0;
    for (int n = 0; n <= n_max; ++n) {
        const ComplexScalar term = hurwitz_zeta(p.s - double(n), p.a, cfg) * power;
        acc.add(term);
        rep.n_terms = n + 1;
        last = std::abs(term);
        const double scale = std::abs(ComplexScalar(acc.real(), acc.imag()) + singular);
        quiet = (last <= 1e-17 * scale) ? quiet + 1 : 0;
        if (quiet >= 3 || lz == ComplexScalar(0.0, 0.0))
            break;
        power *= lz / double(n + 1);
    }
    const ComplexScalar series(acc.real(), acc.imag());
    rep.value = za * (singular + series);
    rep.abs_err_estimate = std::abs(za) * (last + 1e-16 * std::abs(series));
    if (quiet < 3 && lz != ComplexScalar(0.0, 0.0))
        rep.warnings.push_back({"cap", "near-one series stopped at n_max = " + std::to_string(n_max)});
    return rep;
}

// Smallest N_tail whose geometric tail bound for the integer-s residue sum is <= bound.
inline int integer_s_tail_terms(const LerchPoint& p, long long S, double bound)
{
    const double rz = std::abs(p.z);
    for (int N = 1; N < 100000; ++N) {
        const double b = std::pow(rz, -N - 1.0) * std::pow(std::abs(double(N + 1) - p.a), -double(S)) / (1.0 - 1.0 / rz);
        if (b <= bound && double(N + 1) > p.a.real())
            return N;
    }
    throw cap_error("integer_s_tail_terms: no admissible N_tail");
}

// Closed form for integer s = S and |z| > 1.
inline EngineReport eval_integer_s_large_z(const LerchPoint& p, long long S, int N_tail)
{
    validate(p);
    if (p.s != ComplexScalar(double(S), 0.0))
        throw contract_error("eval_integer_s_large_z: s must equal the integer S");
    engine_detail::require_large_z(p, "eval_integer_s_large_z");
    if (N_tail < 0)
        throw contract_error("eval_integer_s_large_z: N_tail must be non-negative");

    const ComplexScalar L = log_neg_z(p.z, p.cut_side).value;
    EngineReport rep;
    rep.engine = EngineKind::integer_s;
    rep.n_terms = N_tail;

    ComplexNeumaierSum<double> acc;
    if (S >= 1) {
        if (S > coefficient_cap)
            throw cap_error("eval_integer_s_large_z: S above the coefficient cap");
        const auto b = coefficient_cache().taylor(p.a, std::max<int>(2, static_cast<int>(S)));
        const ComplexScalar pref = 2.0 * pi * I * std::exp(-p.a * L);
        for (long long n = 0; n < S; ++n) {
            // 1 / (Gamma(S-n) L^{n-S+1}) = L^{S-1-n} / (S-1-n)!
            ComplexScalar t = pref * (*b)[static_cast<std::size_t>(n)];
            for (long long k = 1; k <= S - 1 - n; ++k)
                t *= L / double(k);
            acc.add(t);
        }
        rep.m_terms = static_cast<int>(S);
    }
    const double sign = (S % 2 == 0) ? 1.0 : -1.0;  // e^{-pi i S}
    const ComplexScalar zinv = 1.0 / p.z;
    ComplexScalar zn(1.0, 0.0);
    for (int n = 1; n <= N_tail; ++n) {
        zn *= zinv;
        acc.add(-sign * zn * ipow(double(n) - p.a, -S));
    }
    rep.value = {acc.real(), acc.imag()};
    const double rz = std::abs(p.z);
    rep.abs_err_estimate =
        std::pow(rz, -N_tail - 1.0) * std::pow(std::abs(double(N_tail + 1) - p.a), -double(S)) / (1.0 - 1.0 / rz);
    return rep;
}

// M = max(1, round(|(N+1-a) L| + Re s - 1)), ties to even.
inline int choose_optimal_M(const LerchPoint& p, int N)
{
    const ComplexScalar L = log_neg_z(p.z, p.cut_side).value;
    if (!(std::abs(L) > 1.0))
        throw contract_error("choose_optimal_M: needs |ln(-z)| > 1");
    if (!(double(N) > p.a.real()))
        throw contract_error("choose_optimal_M: needs N > Re a");
    const double x = std::abs((double(N) + 1.0 - p.a) * L) + p.s.real() - 1.0;
    return std::max(1, static_cast<int>(std::nearbyint(x)));
}

// |(-z)^{-a}| |Gamma(M-s+1)| |M-s+1|^{1/2} / |(N+1-a) L|^{Re(M-s+1)}
inline double remainder_estimate(const LerchPoint& p, int N, int M)
{
    const ComplexScalar L = log_neg_z(p.z, p.cut_side).value;
    const ComplexScalar m = double(M) - p.s + 1.0;
    const double log_est = -(p.a * L).real() + log_gamma(m).real() + 0.5 * std::log(std::abs(m)) -
                           m.real() * std::log(std::abs((double(N) + 1.0 - p.a) * L));
    return std::exp(log_est);
}

// Terms of (2 pi i / (-z)^a) sum_m c_m / (Gamma(s-m) L^{m-s+1}) with c_m = b_{m,N}
// (N >= 1) or the unsubtracted b_m (N = -1).
inline std::vector<ComplexScalar> m_series_terms(const LerchPoint& p, int N, int count)
{
    const ComplexScalar L = log_neg_z(p.z, p.cut_side).value;
    const auto coeffs = (N >= 1) ? coefficient_cache().shifted(p.a, N, std::max(count, 1))
                                 : coefficient_cache().taylor(p.a, std::max(count, 2));
    std::vector<ComplexScalar> out;
    ComplexScalar lead = 2.0 * pi * I * std::exp(-p.a * L + (p.s - 1.0) * std::log(L));
    ComplexScalar rg = rgamma(p.s);
    for (int m = 0; m < count; ++m) {
        out.push_back(lead * (*coeffs)[static_cast<std::size_t>(m)] * rg);
        rg *= p.s - double(m) - 1.0;
        lead /= L;
    }
    return out;
}

// Resummed large-z expansion with N pole terms and M terms of the shifted series
// (M from choose_optimal_M unless given).
inline EngineReport eval_main_theorem(const LerchPoint& p, int N, std::optional<int> M_override = std::nullopt)
{
    validate(p);
    engine_detail::require_large_z(p, "eval_main_theorem");
    if (N < 1 || !(double(N) > p.a.real()))
        throw contract_error("eval_main_theorem: needs N >= 1 and N > Re a");
    if (is_nonpositive_integer(p.s))
        throw contract_error("eval_main_theorem: s must not be a non-positive integer");
    const int M = M_override ? *M_override : choose_optimal_M(p, N);
    if (M < 0 || M > coefficient_cap)
        throw cap_error("eval_main_theorem: M outside [0, " + std::to_string(coefficient_cap) + "]");

    const ComplexScalar L = log_neg_z(p.z, p.cut_side).value;
    const ComplexScalar rg_s = rgamma(p.s);
    EngineReport rep;
    rep.engine = EngineKind::main_theorem;
    rep.n_terms = N;
    rep.m_terms = M;

    ComplexNeumaierSum<double> acc;
    const ComplexScalar pref = std::exp(-p.a * L + (p.s - 1.0) * std::log(L)) * rg_s;
    for (int n = 0; n <= N; ++n)
        acc.add(engine_detail::igamma_term(n, p.s, p.a, L, pref));

    if (M > 0) {
        const auto terms = m_series_terms(p, N, M);
        for (const ComplexScalar& t : terms) {
            if (!is_finite(t)) {
                rep.warnings.push_back({"underflow", "1/Gamma(s-m) term not finite, treated as 0"});
                continue;
            }
            acc.add(t);
        }
    }

    // -(L^s / Gamma(s)) sum_{n=1}^{N} z^{-n} P*(s, (a-n) L)
    const ComplexScalar Ls = std::exp(p.s * std::log(L));
    const ComplexScalar zinv = 1.0 / p.z;
    ComplexScalar zn(1.0, 0.0);
    for (int n = 1; n <= N; ++n) {
        zn *= zinv;
        acc.add(-Ls * rg_s * zn * lower_gamma_star(p.s, (p.a - double(n)) * L));
    }

    rep.value = {acc.real(), acc.imag()};
    const double rz = std::abs(p.z);
    rep.abs_err_estimate = remainder_estimate(p, N, std::max(M, 1)) +
                           std::pow(rz, -N - 1.0) * std::pow(std::abs(double(N) + 1.0 - p.a), -p.s.real());
    return rep;
}

// Symmetric sums sum_{n=-N}^{N} z^n Gamma(s,(a+n)L)/((a+n)^s Gamma(s)) for B, accelerated
// by repeated averaging of consecutive partial sums, plus the residue series.
inline EngineReport eval_symmetric_igamma(const LerchPoint& p, int N_max = 400, double tol = 1e-12)
{
    validate(p);
    engine_detail::require_large_z(p, "eval_symmetric_igamma");
    if (is_nonpositive_integer(p.s))
        throw domain_error("eval_symmetric_igamma: Gamma(s) must be finite");
    constexpr int levels = 4;
    constexpr int min_N = 8;

    const ComplexScalar L = log_neg_z(p.z, p.cut_side).value;
    const ComplexScalar pref = std::exp(-p.a * L + (p.s - 1.0) * std::log(L)) * rgamma(p.s);

    EngineReport rep;
    rep.engine = EngineKind::symmetric_igamma;

    std::vector<ComplexScalar> partial;
    ComplexNeumaierSum<double> acc;
    acc.add(engine_detail::igamma_term(0, p.s, p.a, L, pref));
    partial.emplace_back(acc.real(), acc.imag());

    auto accelerated = [&]() {
        std::vector<ComplexScalar> row(partial.end() - (levels + 1), partial.end());
        for (int j = 0; j < levels; ++j)
            for (std::size_t k = 0; k + 1 < row.size() - j; ++k)
                row[k] = 0.5 * (row[k] + row[k + 1]);
        return row[0];
    };

    ComplexScalar prev_acc(0.0, 0.0), cur_acc(0.0, 0.0);
    double increment = std::numeric_limits<double>::infinity();
    int N = 0;
    for (N = 1; N <= N_max; ++N) {
        acc.add(engine_detail::igamma_term(N, p.s, p.a, L, pref));
        acc.add(engine_detail::igamma_term(-N, p.s, p.a, L, pref));
        partial.emplace_back(acc.real(), acc.imag());
        if (static_cast<int>(partial.size()) < levels + 2)
            continue;
        cur_acc = accelerated();
        if (static_cast<int>(partial.size()) > levels + 2) {
            increment = std::abs(cur_acc - prev_acc);
            if (N >= min_N && increment < tol)
                break;
        }
        prev_acc = cur_acc;
    }
    rep.n_terms = std::min(N, N_max);
    if (N > N_max)
        rep.warnings.push_back({"accuracy", "N_max reached, last increment " + std::to_string(increment)});

    const auto I_sum = engine_detail::residue_series(p.z, p.s, p.a);
    rep.value = cur_acc + I_sum.value;
    rep.abs_err_estimate = increment + I_sum.tail;
    return rep;
}

// Branch-point part alone, as summed by eval_symmetric_igamma.
inline ComplexScalar symmetric_branch_part(const LerchPoint& p, int N_max = 400, double tol = 1e-12)
{
    const EngineReport r = eval_symmetric_igamma(p, N_max, tol);
    return r.value - engine_detail::residue_series(p.z, p.s, p.a).value;
}

// Comparison expansion: (1/Gamma(s)) sum_{n=1}^{n_z} A_n z^{-n}
//   + (L^s / ((-z)^a Gamma(s))) sum_{n=0}^{n_log-1} B_n L^{-n-1},
// with A_n = (Gamma(s,(a-n)L) - Gamma(s)) / (a-n)^s = -L^s P*(s, (a-n)L).
inline EngineReport eval_fl_expansion(const LerchPoint& p, int n_z_terms, int n_log_terms)
{
    validate(p);
    engine_detail::require_large_z(p, "eval_fl_expansion");
    if (is_nonpositive_integer(p.s))
        throw domain_error("eval_fl_expansion: s must not be a non-positive integer");
    if (n_z_terms < 0 || n_log_terms < 0)
        throw contract_error("eval_fl_expansion: term counts must be non-negative");
    const ComplexScalar L = log_neg_z(p.z, p.cut_side).value;
    const ComplexScalar rg = rgamma(p.s);
    const ComplexScalar Ls = std::exp(p.s * std::log(L));

    EngineReport rep;
    rep.engine = EngineKind::fl_expansion;
    rep.n_terms = n_z_terms;
    rep.m_terms = n_log_terms;
    ComplexNeumaierSum<double> acc;
    const ComplexScalar zinv = 1.0 / p.z;
    ComplexScalar zn(1.0, 0.0);
    for (int n = 1; n <= n_z_terms; ++n) {
        zn *= zinv;
        acc.add(-Ls * rg * zn * lower_gamma_star(p.s, (p.a - double(n)) * L));
    }
    const ComplexScalar lead = Ls * std::exp(-p.a * L) * rg;
    ComplexScalar Lpow = 1.0 / L;
    for (int n = 0; n <= n_log_terms; ++n) {
        const ComplexScalar t = lead * fl_coeffs_B(p.s, p.a, n) * Lpow;
        if (n == n_log_terms) {
            rep.abs_err_estimate = std::abs(t);
            break;
        }
        acc.add(t);
        Lpow /= L;
    }
    rep.value = {acc.real(), acc.imag()};
    return rep;
}

// Magnitudes of the log-series terms of eval_fl_expansion, n = 0..count-1.
inline std::vector<double> fl_log_term_magnitudes(const LerchPoint& p, int count)
{
    const ComplexScalar L = log_neg_z(p.z, p.cut_side).value;
    const ComplexScalar lead = std::exp(p.s * std::log(L) - p.a * L) * rgamma(p.s);
    std::vector<double> out;
    ComplexScalar Lpow = 1.0 / L;
    for (int n = 0; n < count; ++n) {
        out.push_back(std::abs(lead * fl_coeffs_B(p.s, p.a, n) * Lpow));
        Lpow /= L;
    }
    return out;
}

inline EngineReport oracle_report(const LerchPoint& p)
{
    const ReferenceValue r = reference_value(p);
    EngineReport rep;
    rep.engine = EngineKind::oracle;
    rep.value = r.value;
    rep.abs_err_estimate = r.err_bar;
    if (!r.accepted())
        rep.warnings.push_back({"accuracy", std::string("reference error bar above 1e-10 (") + to_string(r.method) + ")"});
    return rep;
}

// Dispatcher.
inline EngineReport eval_auto(const LerchPoint& p, double target_tol = 1e-12)
{
    validate(p);
    const double rz = std::abs(p.z);
    const double e = std::exp(1.0);

    auto finish = [&](EngineReport rep) {
        if (rep.abs_err_estimate > target_tol && !rep.has_warning("accuracy"))
            rep.warnings.push_back({"accuracy", "estimate " + std::to_string(rep.abs_err_estimate) + " above target"});
        return rep;
    };

    if (rz <= 0.9)
        return finish(eval_series_direct(p, std::min(target_tol, 1e-17)));

    long long S = 0;
    const bool integer_s = engine_detail::near_integer(p.s, 1e-12, &S);
    const bool large_ok = p.a.real() > 0.0 && !detail::is_integer(p.a);

    if (rz < e) {
        const bool near_one_ok = !(integer_s && S >= 1) && std::abs(std::log(p.z)) < 2 * pi;
        if (near_one_ok) {
            try {
                return finish(eval_near_one(p));
            } catch (const error&) {
            }
        }
        return finish(oracle_report(p));
    }

    if (!large_ok)
        return finish(oracle_report(p));

    if (integer_s) {
        LerchPoint q = p;
        q.s = ComplexScalar(double(S), 0.0);
        const int N_tail = integer_s_tail_terms(q, S, std::min(target_tol, 1e-13) * 1e-2);
        return finish(eval_integer_s_large_z(q, S, N_tail));
    }

    // z^N must stay representable for the pole terms
    const int N_overflow = static_cast<int>(280.0 / std::log10(rz));
    const int N_hi = std::min({40, static_cast<int>(std::floor(rz)) - 1, N_overflow});
    std::vector<int> schedule;
    for (int N = static_cast<int>(std::ceil(p.a.real())) + 2; N <= N_hi; N *= 2)
        schedule.push_back(N);
    if (!schedule.empty() && schedule.back() != N_hi)
        schedule.push_back(N_hi);

    std::optional<EngineReport> best;
    for (int N : schedule) {
        try {
            EngineReport r = eval_main_theorem(p, N);
            if (!best || r.abs_err_estimate < best->abs_err_estimate)
                best = r;
            if (r.abs_err_estimate <= target_tol)
                return finish(r);
        } catch (const error&) {
            break;
        }
    }
    try {
        EngineReport sym = eval_symmetric_igamma(p, 400, target_tol);
        if (!best || sym.abs_err_estimate < best->abs_err_estimate)
            best = sym;
    } catch (const error&) {
    }
    if (!best)
        return finish(oracle_report(p));
    return finish(*best);
}

} // namespace lerch
