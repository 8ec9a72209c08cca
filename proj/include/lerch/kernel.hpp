#pragma once

#include "lerch/config.hpp"
#include "lerch/errors.hpp"
#include "lerch/kernel/complex.hpp"
#include "lerch/kernel/gamma.hpp"
#include "lerch/kernel/hypergeometric.hpp"
#include "lerch/kernel/incomplete_gamma.hpp"
#include "lerch/kernel/quadrature.hpp"
#include "lerch/kernel/summation.hpp"
#include "lerch/kernel/zeta.hpp"
