#pragma once

#include <functional>

namespace raneylab {

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long evaluations = 0;
};

using Integrand = std::function<double(double)>;

/// Integrable endpoint singularities: f ~ (x-a)^{ga} near a, (b-x)^{gb} near b.
struct EndpointExponents {
    double ga = 0.0;
    double gb = 0.0;
};

/// Adaptive Gauss-Legendre integration of f over [a, b]. Endpoint power
/// singularities (exponents > -1) are removed by substitution before the
/// adaptive panels run. Throws std::runtime_error when the evaluation budget
/// is exhausted before the tolerance is met.
QuadResult integrate(const Integrand& f, double a, double b, double tol,
                     EndpointExponents exps = {});

/// PV integral of f(y)/(y-s) over [a, b], a < s < b, by singularity
/// subtraction with panels kept symmetric about s. exps describes endpoint
/// power behavior of f itself and is applied to the outer panels.
QuadResult pv_integrate(const Integrand& f, double a, double b, double s, double tol,
                        EndpointExponents exps = {});

}  // namespace raneylab
