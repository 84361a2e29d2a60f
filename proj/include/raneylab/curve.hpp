#pragma once

#include "raneylab/params.hpp"
#include "raneylab/specfun.hpp"

#include <map>
#include <memory>
#include <vector>

namespace raneylab {

/// Polynomial form of the Green's-function equation: v^A - z v^B + z = 0
/// with v = w^{1/d}, w = zG, where A/d = p/r and B/d = 1/r in lowest
/// common-denominator form.
struct CurveModel {
    RaneyParams params;
    long A = 0;  // > B
    long B = 0;  // >= 1
    long d = 1;
    double L = 0.0;
    double z_ref = 0.0;  // 10 L, physical root selected nearest 1 there
};

CurveModel make_curve_model(const RaneyParams& params);

/// Jacobi Muttalib-Borodin curve z(w-1)(w+1/theta)^theta = w^{theta+1}, integer theta.
struct JacobiCurveModel {
    long theta = 1;
    double z_ref = 10.0;
};

JacobiCurveModel make_jacobi_curve_model(long theta);

struct DensityProfile {
    RaneyParams params;
    std::vector<double> grid;    // increasing, in (0, L)
    std::vector<double> values;  // >= 0
    SupportEdge edge;
    double endpoint_exponent_at_zero = 0.0;  // log-log slope estimate
    double endpoint_exponent_at_one = 0.5;   // power at the upper edge
    double mass = 0.0;                       // quadrature mass
    double trapezoid_mass = 0.0;             // plain trapezoid over the grid
};

/// w = zG(z) on the physical branch (w -> 1 as z -> infinity), by root
/// continuation from z_ref. Throws std::runtime_error on continuation failure.
Complex physical_root(const CurveModel& model, Complex z);
Complex physical_root(const JacobiCurveModel& model, Complex z);

/// rho(x) = -(1/pi) Im[w(x+i0)/x]: delta-offset Richardson extrapolation
/// followed by a Newton polish of the boundary root at delta = 0.
double density(const CurveModel& model, double x);
double density(const JacobiCurveModel& model, double x);

/// Boundary-root evaluator that walks along the real axis, reusing the
/// previously computed root as the Newton seed. Not thread-safe; create one
/// per thread over a shared (immutable) model.
class DensityEvaluator {
public:
    explicit DensityEvaluator(const CurveModel& model);
    explicit DensityEvaluator(const JacobiCurveModel& model);
    double operator()(double x);

private:
    struct Impl;
    std::shared_ptr<Impl> impl_;
};

/// Density sampled on a cosine-clustered grid; npoints >= 16.
DensityProfile sample_density(const CurveModel& model, int npoints);

/// n-th moment of the density over its natural support, matched against
/// raney_exact in tests. tol is relative.
double density_moment(const CurveModel& model, long n, double tol);

/// Integral int_0^1 x^n rho_J(x) dx for the Jacobi curve density.
double jacobi_density_moment(const JacobiCurveModel& model, long n, double tol);

/// Lower support edge of the Jacobi density, located by bisection scan for
/// vanishing Im G.
double jacobi_support_lower(const JacobiCurveModel& model);

/// Small-x density exponent r/p - 1 (from w ~ z^{r/p} at the origin).
double origin_exponent(const CurveModel& model);

}  // namespace raneylab
