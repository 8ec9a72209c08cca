#pragma once

#include <cmath>
#include <complex>

#include "lerch/config.hpp"
#include "lerch/errors.hpp"
#include "lerch/kernel/complex.hpp"

namespace lerch {

// 2F1(alpha, 1; c; x) = sum_k (alpha)_k / (c)_k x^k for |x| < 1.
inline ComplexScalar gauss_2f1_unit_b(ComplexScalar alpha, ComplexScalar c, ComplexScalar x,
                                      const KernelConfig& cfg = default_kernel_config())
{
    if (std::abs(x) >= 1.0)
        throw domain_error("gauss_2f1_unit_b: |x| >= 1");
    if (is_nonpositive_integer(c))
        throw pole_error("gauss_2f1_unit_b: c is a non-positive integer", static_cast<long long>(c.real()));
    ComplexScalar term(1.0, 0.0);
    ComplexScalar sum = term;
    if (x == ComplexScalar(0.0, 0.0))
        return sum;
    for (int k = 0; k < cfg.hyp2f1_max_iter; ++k) {
        const ComplexScalar ratio = (alpha + double(k)) / (c + double(k)) * x;
        term *= ratio;
        sum += term;
        if (term == ComplexScalar(0.0, 0.0))
            return sum;
        if (std::abs(ratio) < 1.0 && std::abs(term) <= cfg.hyp2f1_rel_tol * std::abs(sum))
            return sum;
    }
    throw accuracy_error("gauss_2f1_unit_b: iteration cap", std::abs(term));
}

} // namespace lerch
