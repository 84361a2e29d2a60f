#pragma once

#include <complex>

namespace raneylab {

using Complex = std::complex<double>;

/// Principal branch of log Gamma(z). Throws std::domain_error at the poles
/// (non-positive integers). Lanczos approximation, reflection for Re z < 1/2.
Complex log_gamma(Complex z);

/// Gamma(z) = exp(log_gamma(z)). Throws std::overflow_error when
/// Re log_gamma exceeds the double exponent range.
Complex gamma(Complex z);

}  // namespace raneylab
