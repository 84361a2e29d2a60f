#include "raneylab/specfun.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace raneylab {

namespace {

constexpr double kPi = std::numbers::pi;

// Lanczos, g = 7, 9 terms.
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

bool is_nonpositive_integer(Complex z) {
    if (z.imag() != 0.0) return false;
    double re = z.real();
    return re <= 0.0 && re == std::floor(re);
}

// log(sin(pi z)) without overflow for large |Im z|.
Complex log_sin_pi(Complex z) {
    const Complex i(0.0, 1.0);
    double im = z.imag();
    if (im > 5.0) {
        // sin(pi z) = -e^{-i pi z} (1 - e^{2 i pi z}) / (2 i); the correction
        // term is at most e^{-10 pi}, so plain log is exact enough.
        return -i * kPi * z + std::log(1.0 - std::exp(Complex(0, 2.0 * kPi) * z)) +
               Complex(-std::log(2.0), kPi / 2.0);
    }
    if (im < -5.0) {
        return i * kPi * z + std::log(1.0 - std::exp(Complex(0, -2.0 * kPi) * z)) +
               Complex(-std::log(2.0), -kPi / 2.0);
    }
    return std::log(std::sin(kPi * z));
}

Complex log_gamma_right(Complex z) {
    // Re z >= 1/2.
    Complex acc = kLanczos[0];
    for (int k = 1; k < 9; ++k) acc += kLanczos[k] / (z - 1.0 + static_cast<double>(k));
    Complex t = z + 6.5;  // g + 1/2
    return 0.5 * std::log(2.0 * kPi) + (z - 0.5) * std::log(t) - t + std::log(acc);
}

}  // namespace

Complex log_gamma(Complex z) {
    if (is_nonpositive_integer(z)) {
        throw std::domain_error("log_gamma pole at non-positive integer " + std::to_string(z.real()));
    }
    if (z.real() >= 0.5) return log_gamma_right(z);
    // Reflection: log Gamma(z) = log pi - log sin(pi z) - log Gamma(1 - z).
    return std::log(kPi) - log_sin_pi(z) - log_gamma_right(1.0 - z);
}

Complex gamma(Complex z) {
    Complex lg = log_gamma(z);
    if (lg.real() > 700.0) throw std::overflow_error("gamma overflow");
    return std::exp(lg);
}

}  // namespace raneylab
