#include <cmath>
#include <complex>
#include <random>

#include <gtest/gtest.h>

#include "lerch/oracle.hpp"

using lerch::ComplexScalar;
using lerch::CutSide;
using lerch::pi;

namespace {

using CL = std::complex<long double>;

double rel_err(ComplexScalar got, ComplexScalar want)
{
    return std::abs(got - want) / std::abs(want);
}

// sum_{n>=0} z^n (a+n)^{-s} in long double, for |z| < 1
ComplexScalar series_long(ComplexScalar z, ComplexScalar s, ComplexScalar a, int terms = 4000)
{
    const CL zl(z.real(), z.imag()), sl(s.real(), s.imag()), al(a.real(), a.imag());
    CL acc = 0.0L, zn = 1.0L;
    for (int n = 0; n < terms; ++n) {
        acc += zn * std::exp(-sl * std::log(al + (long double)n));
        zn *= zl;
    }
    return {double(acc.real()), double(acc.imag())};
}

// Phi(z, -2, a) = (z d/dz + a)^2 1/(1-z)
ComplexScalar phi_s_minus_two(ComplexScalar z, ComplexScalar a)
{
    const ComplexScalar w = 1.0 - z;
    return z / (w * w) + 2.0 * z * z / (w * w * w) + 2.0 * a * z / (w * w) + a * a / w;
}

TEST(QuadIntegral, OriginGivesLeadingTerm)
{
    const auto r = lerch::quad_integral({0.0, 0.0}, {0.75, 0.0}, {0.3, 0.0});
    EXPECT_EQ(r.method, lerch::ReferenceMethod::quadrature);
    EXPECT_LT(rel_err(r.value, std::pow(0.3, -0.75)), 1e-12);
    EXPECT_LE(r.err_bar, 1e-10);
}

TEST(QuadIntegral, AlternatingBasel)
{
    const auto r = lerch::quad_integral({-1.0, 0.0}, {2.0, 0.0}, {1.0, 0.0});
    EXPECT_LT(std::abs(r.value - pi * pi / 12), 1e-13);
    EXPECT_TRUE(r.accepted());
}

TEST(QuadIntegral, MatchesDirectSeries)
{
    const ComplexScalar z(0.5, 0.0), s(2.5, 0.0), a(1.7, 0.0);
    const auto r = lerch::quad_integral(z, s, a);
    EXPECT_LT(std::abs(r.value - series_long(z, s, a)), 1e-11);
}

TEST(QuadIntegral, Preconditions)
{
    EXPECT_THROW(lerch::quad_integral({10.0, 0.0}, {0.75, 0.0}, {0.3, 0.0}), lerch::domain_error);
    EXPECT_THROW(lerch::quad_integral({-5.0, 0.0}, {-0.5, 0.0}, {0.3, 0.0}), lerch::domain_error);
    EXPECT_THROW(lerch::quad_integral({-5.0, 0.0}, {0.75, 0.0}, {-0.3, 0.0}), lerch::domain_error);
}

TEST(ReferenceValue, ComparisonTableRows)
{
    struct Row { ComplexScalar z, want; };
    // printed reference column, with two more digits from an independent 40-digit evaluation
    const Row rows[] = {
        {{-5.0, 0.0}, {1.342178173, 0.0}},
        {{-10.0, 0.0}, {1.088933402, 0.0}},
        {{0.0, 10.0}, {0.98125249, 0.5486411629}},
        {{10.0, 0.01}, {0.5252667468, 1.042858312}},
    };
    for (const auto& r : rows) {
        const auto ref = lerch::reference_value({r.z, {0.75, 0.0}, {0.3, 0.0}});
        EXPECT_TRUE(ref.accepted()) << r.z << " err_bar=" << ref.err_bar;
        EXPECT_NEAR(ref.value.real(), r.want.real(), 5e-9) << r.z;
        EXPECT_NEAR(ref.value.imag(), r.want.imag(), 5e-9) << r.z;
    }
}

TEST(ReferenceValue, SmallArgumentUsesSeries)
{
    const lerch::LerchPoint p{{0.3, -0.4}, {1.5, 2.0}, {0.8, 0.0}};
    const auto ref = lerch::reference_value(p);
    EXPECT_EQ(ref.method, lerch::ReferenceMethod::hp_series);
    EXPECT_LT(rel_err(ref.value, series_long(p.z, p.s, p.a)), 1e-14);
}

TEST(ReferenceValue, QuadratureAgainstSeriesOnRandomInteriorPoints)
{
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> rad(0.0, 0.9), ang(-pi, pi), sr(0.5, 3.0), si(-1.0, 1.0), ar(0.5, 3.0);
    for (int i = 0; i < 25; ++i) {
        const ComplexScalar z = std::polar(rad(rng), ang(rng));
        const ComplexScalar s(sr(rng), si(rng)), a(ar(rng), 0.0);
        const auto q = lerch::quad_integral(z, s, a);
        const auto h = lerch::hp_series(z, s, a);
        EXPECT_LT(std::abs(q.value - h.value), 1e-10) << z << " " << s << " " << a;
    }
}

TEST(ReferenceValue, KeyholeAgainstSeriesForSmallAndNegativeS)
{
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> rad(0.1, 0.9), ang(-pi, pi), sr(-4.0, 0.45), si(-1.0, 1.0), ar(0.2, 3.0);
    for (int i = 0; i < 25; ++i) {
        const ComplexScalar z = std::polar(rad(rng), ang(rng));
        const ComplexScalar s(sr(rng), si(rng)), a(ar(rng), 0.0);
        const auto k = lerch::oracle_detail::integral_reference(z, s, a, CutSide::above);
        EXPECT_EQ(k.method, lerch::ReferenceMethod::hp_continuation);
        const ComplexScalar want = series_long(z, s, a, 20000);
        EXPECT_LT(std::abs(k.value - want), 1e-10 * std::max(1.0, std::abs(want))) << z << " " << s << " " << a;
    }
}

TEST(ReferenceValue, OperatorClosedFormAtNegativeIntegerS)
{
    for (ComplexScalar z : {ComplexScalar(0.0, 10.0), ComplexScalar(-5.0, 0.0), ComplexScalar(3.0, -4.0)}) {
        const ComplexScalar a(0.3, 0.0);
        const auto ref = lerch::reference_value({z, {-2.0, 0.0}, a});
        EXPECT_LT(rel_err(ref.value, phi_s_minus_two(z, a)), 1e-11) << z;
    }
}

TEST(ReferenceValue, ContiguousRelation)
{
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> rad(1.2, 30.0), ang(-pi + 0.05, pi - 0.05), sr(-2.5, 3.0), si(-1.0, 1.0),
        ar(0.1, 2.0);
    for (int i = 0; i < 20; ++i) {
        const ComplexScalar z = std::polar(rad(rng), ang(rng));
        const ComplexScalar s(sr(rng), si(rng)), a(ar(rng), 0.0);
        const auto r0 = lerch::reference_value({z, s, a});
        const auto r1 = lerch::reference_value({z, s, a + 1.0});
        const ComplexScalar rhs = std::pow(a, -s) + z * r1.value;
        const double bar = r0.err_bar + std::abs(z) * r1.err_bar + 1e-15 * std::abs(rhs);
        EXPECT_LT(std::abs(r0.value - rhs), 10 * bar + 1e-13) << z << " " << s << " " << a;
    }
}

TEST(ReferenceValue, NegativeRealPartOfAIsShifted)
{
    const lerch::LerchPoint p{{-5.0, 0.0}, {0.75, 0.0}, {-1.7, 0.0}};
    const auto ref = lerch::reference_value(p);
    const auto shifted = lerch::reference_value({p.z, p.s, p.a + 2.0});
    const ComplexScalar want = std::pow(ComplexScalar(-1.7, 0.0), -p.s) + p.z * std::pow(ComplexScalar(-0.7, 0.0), -p.s) +
                               p.z * p.z * shifted.value;
    EXPECT_LT(rel_err(ref.value, want), 1e-12);
}

TEST(ReferenceValue, CutSideLimits)
{
    const ComplexScalar s(0.75, 0.0), a(0.3, 0.0);
    const auto above = lerch::reference_value({{10.0, 0.0}, s, a, CutSide::above});
    const auto below = lerch::reference_value({{10.0, 0.0}, s, a, CutSide::below});
    EXPECT_LT(std::abs(above.value - std::conj(below.value)), 1e-12);
    const ComplexScalar jump = above.value - below.value;
    EXPECT_GT(std::abs(jump), 0.1);

    ComplexScalar prev_jump;
    for (double eps : {1e-6, 1e-7}) {
        const auto up = lerch::reference_value({{10.0, eps}, s, a});
        const auto down = lerch::reference_value({{10.0, -eps}, s, a});
        EXPECT_LT(std::abs(up.value - above.value), 10 * eps);
        EXPECT_LT(std::abs(down.value - below.value), 10 * eps);
        const ComplexScalar j = up.value - down.value;
        if (eps == 1e-7) {
            EXPECT_LT(rel_err(j, prev_jump), 1e-3);
        }
        prev_jump = j;
    }
}

TEST(ReferenceValue, UnsupportedPoint)
{
    EXPECT_THROW(lerch::reference_value({{1.0, 0.0}, {0.5, 0.0}, {0.3, 0.0}}), lerch::domain_error);
    EXPECT_THROW(lerch::reference_value({{-5.0, 0.0}, {0.5, 0.0}, {-2.0, 0.0}}), lerch::domain_error);
}

} // namespace
