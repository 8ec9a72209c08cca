#pragma once

namespace lerch {

// Tolerances and iteration caps used by the special-function kernels.
// Every kernel entry point takes one of these by const reference and
// defaults to default_kernel_config().
struct KernelConfig
{
    // Upper incomplete gamma: power series when |w| < |s| + series_margin,
    // continued fraction otherwise.
    double igamma_series_margin = 4.0;
    double igamma_rel_tol = 1e-16;
    int igamma_max_iter = 5000;

    // Hurwitz zeta: shift a until Re a >= max(zeta_min_shift, |s| + zeta_shift_pad),
    // then Euler-Maclaurin with zeta_bernoulli_terms corrections.
    double zeta_min_shift = 10.0;
    double zeta_shift_pad = 10.0;
    int zeta_bernoulli_terms = 12;
    // Below this real part of s the Hermite integral is used instead.
    double zeta_hermite_below = -2.0;

    // Gamma: Stirling series after shifting to Re s >= gamma_shift.
    double gamma_shift = 12.0;

    // Digamma: recurrence up to Re a >= digamma_shift, then asymptotic series.
    double digamma_shift = 10.0;

    // 2F1(alpha, 1; gamma; x) partial sums.
    double hyp2f1_rel_tol = 1e-14;
    int hyp2f1_max_iter = 10000;

    // Scaled incomplete gamma used by the series engines: asymptotic series
    // above this modulus.
    double scaled_igamma_asymptotic_from = 35.0;
};

inline const KernelConfig& default_kernel_config() noexcept
{
    static const KernelConfig cfg{};
    return cfg;
}

} // namespace lerch
