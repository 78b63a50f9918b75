#include "kqde/special.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace kq {

namespace {

// Lanczos approximation with g = 7, 9 terms; relative error about 1e-15 for Re z >= 1/2
constexpr double kG = 7.0;
constexpr std::array<double, 9> kCoef = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

cplx lanczos_log(cplx z) {
    z -= 1.0;
    cplx x = kCoef[0];
    for (int i = 1; i < 9; ++i) x += kCoef[i] / (z + static_cast<double>(i));
    cplx t = z + kG + 0.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

bool at_pole(cplx z) {
    return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

}  // namespace

double dist_to_integer(cplx x) { return std::abs(x - std::round(x.real())); }

cplx log_gamma(cplx z) {
    if (at_pole(z)) throw std::domain_error("Gamma pole at a non-positive integer");
    if (z.real() < 0.5) {
        // reflection: Gamma(z) Gamma(1 - z) = pi / sin(pi z)
        const double pi = std::numbers::pi;
        return std::log(pi) - std::log(std::sin(pi * z)) - lanczos_log(1.0 - z);
    }
    return lanczos_log(z);
}

cplx gamma_fn(cplx z) {
    if (at_pole(z)) throw std::domain_error("Gamma pole at a non-positive integer");
    if (z.real() < 0.5) {
        const double pi = std::numbers::pi;
        return pi / (std::sin(pi * z) * std::exp(lanczos_log(1.0 - z)));
    }
    return std::exp(lanczos_log(z));
}

cplx rgamma(cplx z) {
    if (at_pole(z)) return 0.0;
    if (z.real() < 0.5) {
        const double pi = std::numbers::pi;
        return std::sin(pi * z) * std::exp(lanczos_log(1.0 - z)) / pi;
    }
    return std::exp(-lanczos_log(z));
}

}  // namespace kq
