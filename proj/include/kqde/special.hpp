#pragma once
// Complex Gamma function in double precision.

#include "kqde/scalar.hpp"

namespace kq {

// log Gamma(z) on the principal sheet of the Lanczos representation; only its
// exponential is branch independent. Throws std::domain_error at the poles.
cplx log_gamma(cplx z);
// Gamma(z); throws std::domain_error at z = 0, -1, -2, ...
cplx gamma_fn(cplx z);
// 1/Gamma(z), an entire function (exactly zero at the poles of Gamma)
cplx rgamma(cplx z);

// distance from x to the nearest integer (for pole and Omega guards)
double dist_to_integer(cplx x);

}  // namespace kq
