// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance [--known-failure K ...]
//
// Exit status 0 when the set of failing criteria equals the set given with
// --known-failure, 1 otherwise (so a known failure that starts passing is
// reported too).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <boost/math/quadrature/exp_sinh.hpp>

#include "lerch/coefficients.hpp"
#include "lerch/engines.hpp"
#include "lerch/factorial_series.hpp"
#include "lerch/oracle.hpp"

using lerch::ComplexScalar;
using lerch::LerchPoint;
using lerch::pi;

namespace {

const ComplexScalar I(0.0, 1.0);
const ComplexScalar s34(0.75, 0.0);
const ComplexScalar a03(0.3, 0.0);

struct Outcome
{
    bool pass = true;
    std::ostringstream detail;

    // records a sub-check; the first failing one is named in the detail
    void check(bool ok, const std::string& what)
    {
        if (!ok && pass)
            detail << "failed: " << what << "; ";
        pass = pass && ok;
    }
};

double rel_err(ComplexScalar got, ComplexScalar want)
{
    return std::abs(got - want) / std::abs(want);
}

std::string sci(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", x);
    return buf;
}

// ---------------------------------------------------------------- 1

void table_reproduction(Outcome& o)
{
    struct Row { ComplexScalar z, phi, approx; int M; double scaled; };
    const Row rows[] = {
        {{-5.0, 0.0}, {1.3421782, 0.0}, {1.3421692, 0.0}, 9, 0.140},
        {{-10.0, 0.0}, {1.0889334, 0.0}, {1.0889332, 0.0}, 13, 0.158},
        {{0.0, 10.0}, {0.98125249, 0.54864116}, {0.98125270, 0.54864133}, 16, 0.269},
        {{10.0, 0.01}, {0.52526675, 1.04285831}, {0.52526654, 1.04285810}, 22, 0.297},
    };
    auto close = [](ComplexScalar x, ComplexScalar y) {
        return std::abs(x.real() - y.real()) <= 5e-8 && std::abs(x.imag() - y.imag()) <= 5e-8;
    };
    for (const auto& r : rows) {
        const LerchPoint p{r.z, s34, a03};
        const ComplexScalar ref = lerch::reference_value(p).value;
        const ComplexScalar approx = lerch::eval_main_theorem(p, 5).value;
        const int M = lerch::choose_optimal_M(p, 5);
        const double scaled = std::pow(std::abs(r.z), 6) * std::abs(ref - approx);
        std::ostringstream tag;
        tag << "z=" << r.z;
        o.check(close(ref, r.phi), tag.str() + " reference");
        o.check(close(approx, r.approx), tag.str() + " approximation");
        o.check(M == r.M, tag.str() + " M_opt");
        o.check(std::abs(scaled - r.scaled) <= 0.01, tag.str() + " scaled remainder");
        o.detail << "M=" << M << " scaled=" << std::round(scaled * 1000) / 1000 << " ";
    }
}

// ---------------------------------------------------------------- 2

void error_scaling(Outcome& o)
{
    double worst = 0.0;
    for (int k = 0; k <= 3; ++k) {
        const LerchPoint p{{-5.0 * std::ldexp(1.0, k), 0.0}, s34, a03};
        const double scaled =
            std::pow(std::abs(p.z), 6) * std::abs(lerch::reference_value(p).value - lerch::eval_main_theorem(p, 5).value);
        o.check(scaled < 1.0, "k=" + std::to_string(k));
        worst = std::max(worst, scaled);
    }
    o.detail << "max scaled remainder " << worst;
}

// ---------------------------------------------------------------- 3

void integer_s(Outcome& o)
{
    double worst = 0.0;
    for (long long S : {-2, -1, 0, 1, 2, 3}) {
        for (ComplexScalar z : {ComplexScalar(-5, 0), ComplexScalar(-10, 0), ComplexScalar(0, 10)}) {
            const LerchPoint p{z, {double(S), 0.0}, a03};
            const auto r = lerch::eval_integer_s_large_z(p, S, lerch::integer_s_tail_terms(p, S, 1e-12));
            const double err = std::abs(r.value - lerch::reference_value(p).value);
            worst = std::max(worst, err);
            o.check(err <= 1e-9, "S=" + std::to_string(S));
        }
    }
    double worst_geo = 0.0;
    for (ComplexScalar z : {ComplexScalar(-5, 0), ComplexScalar(-10, 0), ComplexScalar(0, 10)}) {
        const LerchPoint p{z, {0.0, 0.0}, a03};
        const auto r = lerch::eval_integer_s_large_z(p, 0, lerch::integer_s_tail_terms(p, 0, 1e-15));
        worst_geo = std::max(worst_geo, std::abs(r.value - 1.0 / (1.0 - z)));
    }
    o.check(worst_geo <= 1e-13, "S=0 geometric");
    o.detail << "max |integer_s - reference| " << sci(worst) << ", S=0 vs 1/(1-z) " << sci(worst_geo);
}

// ---------------------------------------------------------------- 4

void oracle_coherence(Outcome& o)
{
    std::mt19937_64 rng(101);
    {
        std::uniform_real_distribution<double> rad(0.0, 0.9), ang(-pi, pi), sr(0.5, 3.0), si(-1.0, 1.0), ar(0.5, 3.0);
        double worst = 0.0;
        for (int i = 0; i < 25; ++i) {
            const ComplexScalar z = std::polar(rad(rng), ang(rng));
            const ComplexScalar s(sr(rng), si(rng)), a(ar(rng), 0.0);
            const double d = std::abs(lerch::quad_integral(z, s, a).value - lerch::hp_series(z, s, a).value);
            worst = std::max(worst, d);
        }
        o.check(worst <= 1e-10, "series vs quadrature");
        o.detail << "series vs quadrature " << sci(worst) << ", ";
    }
    {
        std::uniform_real_distribution<double> rad(5.0, 50.0), ang(-pi + 0.1, pi - 0.1), sr(0.3, 2.5), si(-1.0, 1.0),
            ar(0.2, 2.0);
        double worst = 0.0;
        for (int i = 0; i < 30; ++i) {
            const ComplexScalar z = std::polar(rad(rng), ang(rng));
            const ComplexScalar s(sr(rng), si(rng)), a(ar(rng), 0.0);
            const ComplexScalar lhs = lerch::eval_auto({z, s, a}).value;
            const ComplexScalar rhs = std::pow(a, -s) + z * lerch::reference_value({z, s, a + 1.0}).value;
            worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
        }
        o.check(worst <= 1e-8, "contiguous relation");
        o.detail << "contiguous relation (dispatcher vs oracle) " << sci(worst);
    }
}

// ---------------------------------------------------------------- 5

std::vector<ComplexScalar> cauchy_taylor(ComplexScalar a, double r, int count, int nodes)
{
    using CL = std::complex<long double>;
    const long double pil = 3.14159265358979323846264338327950288L;
    const CL al(a.real(), a.imag());
    std::vector<CL> acc(static_cast<std::size_t>(count));
    for (int k = 0; k < nodes; ++k) {
        const CL t = std::polar<long double>(r, 2 * pil * k / nodes);
        const CL g = CL(0, 1) / (2.0L * std::sin(pil * (t - al)));
        CL tn = 1.0L;
        for (int n = 0; n < count; ++n) {
            acc[n] += g / tn;
            tn *= t;
        }
    }
    std::vector<ComplexScalar> out;
    for (const CL& c : acc)
        out.emplace_back(double(c.real() / nodes), double(c.imag() / nodes));
    return out;
}

void coefficient_integrity(Outcome& o)
{
    std::mt19937_64 rng(55);
    std::uniform_real_distribution<double> re(0.1, 0.9), im(-0.5, 0.5);
    double worst_c = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        const ComplexScalar a(re(rng), im(rng));
        const double rho = std::min(std::abs(a), std::abs(a - 1.0));
        const auto t = lerch::taylor_coeffs_g(a, 21);
        const auto c = cauchy_taylor(a, 0.7 * rho, 21, 2048);
        for (int n = 0; n <= 20; ++n)
            worst_c = std::max(worst_c, rel_err(t[n], c[n]));
    }
    o.check(worst_c <= 1e-8, "recurrence vs Cauchy integral");

    double worst_d = 0.0;
    for (ComplexScalar a : {ComplexScalar(0.3, 0.0), ComplexScalar(0.62, 0.25), ComplexScalar(1.4, -0.3)}) {
        for (int N : {1, 5, 10}) {
            const auto st = lerch::shifted_coeffs(a, N, 31);
            const auto di = lerch::shifted_coeffs_direct(a, N, 31);
            for (int n = 0; n <= 30; ++n)
                worst_d = std::max(worst_d, rel_err(st[n], di[n]));
        }
    }
    o.check(worst_d <= 1e-10, "dual-path b_{n,N}");

    double worst_t = 0.0;
    for (int N : {1, 5}) {
        const auto t = lerch::shifted_coeffs(a03, N, 61);
        const ComplexScalar limit = I * ((N % 2 == 0) ? 1.0 : -1.0) / (2 * pi);
        const ComplexScalar base = a03 - double(N) - 1.0;
        const double d40 = rel_err(t[40] * std::pow(base, 41.0), limit);
        const double d60 = rel_err(t[60] * std::pow(base, 61.0), limit);
        o.check(d40 < 0.02 && d60 < 0.02 && d60 <= d40, "tail law N=" + std::to_string(N));
        worst_t = std::max({worst_t, d40, d60});
    }
    o.detail << "Cauchy " << sci(worst_c) << ", dual path " << sci(worst_d) << ", tail law (N=1,5) "
             << sci(worst_t);
}

// ---------------------------------------------------------------- 6

void factorial_series(Outcome& o)
{
    const auto r = lerch::eval_factorial_B({-5.0, 0.0}, s34, a03, 1e-10, 500);
    const double err = std::abs(r.value - lerch::reference_value({{-5.0, 0.0}, s34, a03}).value);
    o.check(err <= 1e-7 && r.n_terms <= 500, "Phi at z=-5");

    double worst = 0.0;
    for (ComplexScalar x : {ComplexScalar(12.0, 3.0), ComplexScalar(1.0, 12.0), ComplexScalar(-15.0, 2.0),
                            ComplexScalar(30.0, 0.0)}) {
        for (int n = 0; n <= 6; ++n)
            worst = std::max(worst, rel_err(lerch::p_n_stable(x, s34, n), lerch::p_n_direct(x, s34, n)));
    }
    o.check(worst <= 1e-10, "p_n direct vs stable");

    auto gap = [](double x) {
        const int n = 4;
        const ComplexScalar p = lerch::p_n_stable({x, 0.0}, s34, n);
        const ComplexScalar scale = (std::exp(-2.0 * pi * I * s34) - 1.0) * lerch::gamma(double(n) + 1.0 - s34) *
                                    std::pow(ComplexScalar(x, 0.0), s34 - double(n) - 1.0);
        return std::abs(p / scale - 1.0);
    };
    const double g50 = gap(50.0), g200 = gap(200.0);
    o.check(g200 < g50, "asymptotic ratio drift");

    boost::math::quadrature::exp_sinh<double> q;
    const double x = 3.7;
    const double beta = q.integrate([&](double t) { return std::exp(-x * t) * std::pow(-std::expm1(-t), 4.0); }, 1e-14);
    const double closed = 24.0 / (x * (x + 1) * (x + 2) * (x + 3) * (x + 4));
    o.check(std::abs(beta - closed) <= 1e-10, "Beta identity");

    o.detail << "z=-5 error " << sci(err) << " in " << r.n_terms << " terms, direct vs stable " << sci(worst)
             << ", ratio gap " << sci(g50) << " -> " << sci(g200) << ", Beta " << sci(std::abs(beta - closed));
}

// ---------------------------------------------------------------- 7

void divergence(Outcome& o)
{
    {
        const auto terms = lerch::m_series_terms({{-5.0, 0.0}, s34, a03}, -1, 31);
        std::vector<double> mags;
        for (const auto& t : terms)
            mags.push_back(std::abs(t));
        const auto idx = std::min_element(mags.begin(), mags.begin() + 30) - mags.begin();
        o.check(idx > 0 && idx < 30 && mags[30] > 10 * mags[idx], "unsubtracted series growth");
        o.detail << "unsubtracted min at m=" << idx << ", |t30|/min=" << sci(mags[30] / mags[idx]) << "; ";
    }
    {
        const auto mags = lerch::fl_log_term_magnitudes({{-5.0, 0.0}, s34, a03}, 30);
        const auto idx = std::min_element(mags.begin(), mags.end()) - mags.begin();
        o.check(idx > 0 && idx < 29, "log-series interior minimum");
        o.detail << "log-series min at k=" << idx << "; ";
    }
    {
        const LerchPoint p{{-10.0, 0.0}, s34, a03};
        const int N = 5;
        const ComplexScalar B = lerch::symmetric_branch_part(p, 400, 1e-14);
        const ComplexScalar residue = lerch::engine_detail::residue_series(p.z, p.s, p.a).value;
        const ComplexScalar exact_m = B + residue - lerch::eval_main_theorem(p, N, 0).value;
        const auto terms = lerch::m_series_terms(p, N, 30);
        ComplexScalar partial(0.0, 0.0);
        std::vector<double> err;
        for (const auto& t : terms) {
            partial += t;
            err.push_back(std::abs(partial - exact_m));
        }
        const auto best = std::min_element(err.begin(), err.end()) - err.begin();
        const int M_best = static_cast<int>(best) + 1;
        const int M_opt = lerch::choose_optimal_M(p, N);
        o.check(std::abs(M_best - M_opt) <= 2, "m-landscape minimum within 2 of M_opt");
        o.detail << "m-landscape error minimum at M=" << M_best << " (" << sci(err[best]) << "), rule M=" << M_opt << " ("
                 << sci(err[M_opt - 1]) << ")";
    }
}

// ---------------------------------------------------------------- 8

void kernel_identities(Outcome& o)
{
    double w_ref = 0.0, w_ig = 0.0, w_hz = 0.0, w_dg = 0.0;
    std::mt19937_64 rng(808);
    {
        std::uniform_real_distribution<double> u(-10.0, 10.0), v(-3.0, 3.0);
        for (int n = 0; n < 60;) {
            const ComplexScalar s(u(rng), v(rng));
            if (std::abs(s) > 10.0 || lerch::distance_to_integer(s) < 0.1)
                continue;
            w_ref = std::max(w_ref, std::abs(lerch::gamma(s) * lerch::gamma(1.0 - s) * lerch::sinpi(s) / pi - 1.0));
            ++n;
        }
    }
    {
        std::uniform_real_distribution<double> sre(-8.0, 15.0), sim(-5.0, 5.0), wr(0.05, 120.0), wa(-2.8, 2.8);
        for (int n = 0; n < 60;) {
            const ComplexScalar s(sre(rng), sim(rng));
            const ComplexScalar w = std::polar(wr(rng), wa(rng));
            if (lerch::distance_to_integer(s) < 0.05)
                continue;
            const ComplexScalar lhs = lerch::upper_incomplete_gamma(s + 1.0, w);
            const ComplexScalar a = s * lerch::upper_incomplete_gamma(s, w);
            const ComplexScalar b = std::pow(w, s) * std::exp(-w);
            w_ig = std::max(w_ig, std::abs(lhs - a - b) / std::max({std::abs(lhs), std::abs(a), std::abs(b)}));
            ++n;
        }
    }
    {
        std::uniform_real_distribution<double> sre(-25.0, 25.0), sim(-10.0, 10.0), are(0.05, 6.0), aim(-2.0, 2.0);
        for (int n = 0; n < 60;) {
            const ComplexScalar s(sre(rng), sim(rng)), a(are(rng), aim(rng));
            if (std::abs(s - 1.0) < 0.1 || std::abs(s) > 30.0)
                continue;
            const ComplexScalar z0 = lerch::hurwitz_zeta(s, a), z1 = lerch::hurwitz_zeta(s, a + 1.0);
            const ComplexScalar p = std::pow(a, -s);
            w_hz = std::max(w_hz, std::abs(z0 - z1 - p) / std::max({std::abs(z0), std::abs(z1), std::abs(p)}));
            ++n;
        }
    }
    {
        std::uniform_real_distribution<double> re(-30.0, 60.0), im(-20.0, 20.0);
        for (int n = 0; n < 60;) {
            const ComplexScalar a(re(rng), im(rng));
            if (lerch::distance_to_integer(a) < 0.05)
                continue;
            const ComplexScalar d = lerch::digamma(a + 1.0) - lerch::digamma(a) - 1.0 / a;
            w_dg = std::max(w_dg, std::abs(d) / std::max(1.0, std::abs(lerch::digamma(a))));
            ++n;
        }
    }
    o.check(w_ref <= 1e-12, "gamma reflection");
    o.check(w_ig <= 1e-11, "incomplete gamma recurrence");
    o.check(w_hz <= 1e-11, "Hurwitz recurrence");
    o.check(w_dg <= 1e-12, "digamma recurrence");
    o.detail << "60 points each: reflection " << sci(w_ref) << ", incomplete gamma " << sci(w_ig) << ", Hurwitz "
             << sci(w_hz) << ", digamma " << sci(w_dg);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Acceptance criteria, one PASS/FAIL line each"};
    std::vector<int> known;
    app.add_option("--known-failure", known, "criterion expected to fail");
    CLI11_PARSE(app, argc, argv);

    const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria = {
        {"table reproduction", table_reproduction},
        {"error scaling along z = -5 * 2^k", error_scaling},
        {"integer-s exactness", integer_s},
        {"oracle coherence", oracle_coherence},
        {"coefficient integrity", coefficient_integrity},
        {"factorial series", factorial_series},
        {"divergence demonstrations", divergence},
        {"kernel identities", kernel_identities},
    };

    const auto start = std::chrono::steady_clock::now();
    std::set<int> failed;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            criteria[i].second(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << "exception: " << e.what();
        }
        const int id = static_cast<int>(i) + 1;
        if (!o.pass)
            failed.insert(id);
        std::printf("%s %d %s: %s\n", o.pass ? "PASS" : "FAIL", id, criteria[i].first, o.detail.str().c_str());
        std::fflush(stdout);
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%zu/%zu criteria passed in %.1f s\n", criteria.size() - failed.size(), criteria.size(), secs);

    const std::set<int> expected(known.begin(), known.end());
    if (failed != expected) {
        for (int k : expected)
            if (!failed.count(k))
                std::printf("criterion %d was listed as a known failure but passed\n", k);
        return 1;
    }
    if (!failed.empty())
        std::printf("failures match the documented known failures\n");
    return 0;
}
