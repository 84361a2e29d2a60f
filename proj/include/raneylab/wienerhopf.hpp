#pragma once

#include "raneylab/params.hpp"
#include "raneylab/specfun.hpp"

#include <vector>

namespace raneylab {

/// Kernel K and factors K+/K- of the scaled integral equation, with
/// t = theta/q throughout and c = -((1+t)log(1+t) - t log t) = -log L.
struct WHFactorization {
    double theta = 1.0;  // > 0
    long q = 1;          // >= 1
    double c = 0.0;
    SupportEdge edge;
    double t() const { return theta / static_cast<double>(q); }
};

WHFactorization make_wh(double theta, long q);

/// K(z) = -pi i sinh(pi(z(1+t) - i(q-1)/q)) / (sinh(pi z) sinh(pi(z t - i(q-1)/q))).
Complex kernel_K(const WHFactorization& wh, Complex z);

Complex factor_plus(const WHFactorization& wh, Complex z);
Complex factor_minus(const WHFactorization& wh, Complex z);
Complex log_factor_plus(const WHFactorization& wh, Complex z);
Complex log_factor_minus(const WHFactorization& wh, Complex z);

/// |numeric PV Fourier transform of the difference kernel - kernel_K(z)|.
double fourier_kernel_check(double theta, long q, Complex z);

struct AsymptoticRatios {
    // With C = (t/(1+t))^{1/q - 1/2} (the q = 1 case is sqrt(t/(1+t))):
    double minus_ratio = 0.0;  // |K-(z) / ((z/sqrt(2pi)) C sqrt(i/z))|
    double plus_ratio = 0.0;   // |K+(z) / (z sqrt(2pi) C sqrt(-i/z))|
};

/// Ratios of K-(z), K+(z) to their large-|z| Stirling forms along a ray.
std::vector<AsymptoticRatios> asymptotic_check(const WHFactorization& wh, double ray_angle,
                                               const std::vector<double>& radii);

/// A = -(L^{1/theta-1}/i) K-(-i/theta); equals i/(L theta).
Complex residue_A(const WHFactorization& wh);

/// L^{n+1} int_0^1 rho x^n dx via the closed form; equals
/// raney_exact((theta/q+1, 1/q), n).
double moment_wh(const WHFactorization& wh, long n);

/// One-body potential coefficients for the (theta/q+1, m+1/q) family.
struct PotentialSpec {
    Rational theta;
    long q = 1;
    long m = 0;
    double L = 0.0;
    std::vector<double> c;        // c_{l,q}^{(m)}, l = 0..m
    std::vector<double> alpha;    // alpha_l
    std::vector<bool> c_pole;     // true where the defining gamma ratio degenerates
    bool validity_warning = false;  // m > (theta-1)/q + 1
};

PotentialSpec potential_coefficients(const Rational& theta, long q, long m);

/// Q(z) = (1/L) prod_{u<m}(1 - i(theta+q)z/(qu+1)) / prod_{u<=m}(1 - i theta z/(qu+1)).
Complex Q_function(const PotentialSpec& spec, Complex z);

/// Partial-fraction form sum_l alpha_l / (1 - i theta z/(1+lq)); equals Q_function.
Complex Q_partial_fraction(const PotentialSpec& spec, Complex z);

/// L^{n+1} int rho x^n = L^{n+1} Q(in)/K+(in); equals
/// raney_exact((theta/q+1, m+1/q), n).
double raney_moment_general(const PotentialSpec& spec, long n);

/// Jacobi-family moment m_n^J = 1/K+(in) = A^{-n} C(pn+r, n).
double jacobi_moment_wh(const JacobiParams& jp, long n);

}  // namespace raneylab
