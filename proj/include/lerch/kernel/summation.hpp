#pragma once

#include <cmath>
#include <complex>

#ifdef __FAST_MATH__
#error "compensated summation is meaningless under -ffast-math"
#endif

namespace lerch {

// Neumaier summation for a real type.
template <typename Real>
class NeumaierSum
{
public:
    void add(const Real& x)
    {
        using std::abs;
        const Real t = sum_ + x;
        if (abs(sum_) >= abs(x))
            carry_ += (sum_ - t) + x;
        else
            carry_ += (x - t) + sum_;
        sum_ = t;
    }

    Real value() const { return sum_ + carry_; }

private:
    Real sum_{0};
    Real carry_{0};
};

// Componentwise Neumaier summation for complex values.
template <typename Real>
class ComplexNeumaierSum
{
public:
    template <typename C>
    void add(const C& z)
    {
        re_.add(z.real());
        im_.add(z.imag());
    }

    Real real() const { return re_.value(); }
    Real imag() const { return im_.value(); }

private:
    NeumaierSum<Real> re_, im_;
};

// Unevaluated sum hi + lo with |lo| <= ulp(hi)/2.
struct DoubleDouble
{
    double hi = 0.0;
    double lo = 0.0;

    static DoubleDouble two_sum(double a, double b) noexcept
    {
        const double s = a + b;
        const double bb = s - a;
        const double err = (a - (s - bb)) + (b - bb);
        return {s, err};
    }

    static DoubleDouble two_prod(double a, double b) noexcept
    {
        const double p = a * b;
        return {p, std::fma(a, b, -p)};
    }

    friend DoubleDouble operator+(DoubleDouble a, DoubleDouble b) noexcept
    {
        DoubleDouble s = two_sum(a.hi, b.hi);
        DoubleDouble t = two_sum(a.lo, b.lo);
        s.lo += t.hi;
        s = two_sum(s.hi, s.lo);
        s.lo += t.lo;
        return two_sum(s.hi, s.lo);
    }

    friend DoubleDouble operator-(DoubleDouble a) noexcept { return {-a.hi, -a.lo}; }
    friend DoubleDouble operator-(DoubleDouble a, DoubleDouble b) noexcept { return a + (-b); }

    friend DoubleDouble operator*(DoubleDouble a, DoubleDouble b) noexcept
    {
        DoubleDouble p = two_prod(a.hi, b.hi);
        p.lo += a.hi * b.lo + a.lo * b.hi;
        return two_sum(p.hi, p.lo);
    }

    double to_double() const noexcept { return hi + lo; }
};

struct ComplexDoubleDouble
{
    DoubleDouble re, im;

    static ComplexDoubleDouble from(std::complex<double> z) noexcept
    {
        return {{z.real(), 0.0}, {z.imag(), 0.0}};
    }

    friend ComplexDoubleDouble operator+(const ComplexDoubleDouble& a, const ComplexDoubleDouble& b) noexcept
    {
        return {a.re + b.re, a.im + b.im};
    }

    friend ComplexDoubleDouble operator*(const ComplexDoubleDouble& a, const ComplexDoubleDouble& b) noexcept
    {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }

    std::complex<double> to_complex() const noexcept { return {re.to_double(), im.to_double()}; }
};

} // namespace lerch
