#pragma once

#include "kgheun/errors.hpp"

namespace kgheun {

/// e^{i pi p}, exact for real half-integer p.
Complex exp_i_pi(Complex p);

/// Principal z^p, with z^0 = 1 for every z (including 0).
Complex pow_z(Complex z, Complex p);

/// (z - 1)^p on the branch used throughout the library.
///
/// For Re z < 1 this is e^{i pi p} (1 - z)^p, i.e. the principal value
/// continued from the upper half plane onto the unit interval, so that the
/// real segment (0, 1) is an interior point set independent of the sign of a
/// vanishing imaginary part. For Re z >= 1 it is the principal value.
Complex pow_zm1(Complex z, Complex p);

/// z^n for integer n by repeated multiplication.
Complex int_pow(Complex z, int n);

}  // namespace kgheun
