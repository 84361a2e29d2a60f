#pragma once

#include "raneylab/curve.hpp"
#include "raneylab/wienerhopf.hpp"

#include <cstdint>
#include <memory>
#include <vector>

namespace raneylab {

/// Pair interaction kernel
///   k(y, y') = log|y - y'| + Re sum_{p=0}^{q-1} w^p Log(y^{1/theta} - w^p y'^{1/theta}),
/// w = exp(2 pi i / q), principal Log. Real-valued and symmetric.
double pair_kernel(double theta, long q, double y, double yp);

/// One-body potential V(y) = (1/L) sum_l c_l (L y)^{(1+lq)/theta} on [0,1].
double potential_value(const PotentialSpec& spec, double y);

struct ResidualReport {
    std::vector<double> y_points;
    std::vector<double> residuals;  // raw signed values, never clipped
    double tolerance = 0.0;
    bool pass() const;
};

/// Monotone cubic (Fritsch-Carlson) interpolant of a density profile on
/// [0, 1], with power-law extrapolation beyond the end grid points using the
/// profile's endpoint exponents.
class UnitProfile {
public:
    explicit UnitProfile(const DensityProfile& profile);
    double operator()(double y) const;

private:
    struct Data;
    std::shared_ptr<const Data> data_;
};

/// Rescale a natural-support profile (grid in (0, L)) to unit support with
/// unit mass: y = x/L, value -> L * value.
DensityProfile rescale_to_unit(const DensityProfile& profile);

/// Signed LHS - RHS of the y-multiplied singular integral equation
///   PV int rho/(1 - y'/y) + (q/theta) PV int (y'/y)^{(q-1)/theta} rho / (1 - (y'/y)^{q/theta})
///     = (1/L) sum_l ((1+lq) c_l / theta) (L y)^{(1+lq)/theta}
/// at 0 < y < 1 for a unit-support, unit-mass profile. The second kernel's
/// pole at y' = y is removed by subtracting rho(y) y/(y - y'), whose PV
/// integral is added back in closed form.
double equilibrium_residual(const DensityProfile& profile, double theta, long q,
                            const PotentialSpec& spec, double y);

ResidualReport equilibrium_report(const DensityProfile& profile, double theta, long q,
                                  const PotentialSpec& spec, const std::vector<double>& ys,
                                  double tolerance);

/// Field-free residual PV int rho/(y-y') +
/// (q/theta) PV int (y'/y)^{(q-1)/theta} (1/y) rho / (1 - (y'/y)^{q/theta}).
double jacobi_residual(const DensityProfile& profile, double theta, long q, double y);

/// E = int V rho_s - (1/2) int int rho_s rho_s' k(y,y') with rho_s = rho/L
/// (the moment normalization); V = 0 when spec.c is empty.
double energy(const DensityProfile& profile, double theta, long q, const PotentialSpec& spec);

/// Mass-preserving, support-preserving random perturbation: a smooth bump
/// pair of equal +/- trapezoid mass, scaled so the values stay >= 0.
/// amplitude 0 returns the profile unchanged.
DensityProfile perturb(const DensityProfile& profile, double amplitude, std::uint64_t seed);

}  // namespace raneylab
