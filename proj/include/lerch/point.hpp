#pragma once

#include <cmath>
#include <complex>

#include "lerch/errors.hpp"
#include "lerch/kernel/complex.hpp"

namespace lerch {

// Parameter triple for Phi(z, s, a). cut_side selects the boundary value
// when z lies on the cut [1, inf).
struct LerchPoint
{
    ComplexScalar z;
    ComplexScalar s;
    ComplexScalar a;
    CutSide cut_side = CutSide::above;
};

inline bool on_cut(ComplexScalar z) noexcept
{
    return z.imag() == 0.0 && z.real() >= 1.0;
}

// The same point seen from the other half plane: conj Phi(z, s, a) = Phi(conj z, conj s, conj a)
// with the cut side flipped.
inline LerchPoint conjugate(const LerchPoint& p) noexcept
{
    return {std::conj(p.z), std::conj(p.s), std::conj(p.a),
            p.cut_side == CutSide::above ? CutSide::below : CutSide::above};
}

// Checks the conditions shared by every evaluation path.
inline void validate(const LerchPoint& p)
{
    if (!is_finite(p.z) || !is_finite(p.s) || !is_finite(p.a))
        throw domain_error("LerchPoint: non-finite component");
    if (is_nonpositive_integer(p.a))
        throw domain_error("LerchPoint: a must not be a non-positive integer");
    if (p.z == ComplexScalar(1.0, 0.0) && p.s.real() <= 1.0)
        throw domain_error("LerchPoint: z = 1 is a branch point for Re s <= 1");
}

} // namespace lerch
