#include "raneylab/curve.hpp"

#include "raneylab/quad.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

namespace raneylab {

namespace {

constexpr double kPi = std::numbers::pi;

// Generic algebraic curve: P_z(v) = sum_k coeffs(z)[k] v^k, physical branch
// selected nearest v = 1 at z_ref; observable is w = v^wpow.
struct AlgebraicCurve {
    std::function<std::vector<Complex>(Complex)> coeffs;
    double z_ref = 0.0;
    long wpow = 1;
    double support_hi = 0.0;  // path arcs are raised above this scale
};

Complex horner(const std::vector<Complex>& c, Complex v) {
    Complex acc = c.back();
    for (size_t k = c.size() - 1; k-- > 0;) acc = acc * v + c[k];
    return acc;
}

Complex horner_deriv(const std::vector<Complex>& c, Complex v) {
    Complex acc = static_cast<double>(c.size() - 1) * c.back();
    for (size_t k = c.size() - 1; k-- > 1;) acc = acc * v + static_cast<double>(k) * c[k];
    return acc;
}

// All roots via companion-matrix eigenvalues, one Newton polish step each.
std::vector<Complex> poly_roots(const std::vector<Complex>& coeffs) {
    long deg = static_cast<long>(coeffs.size()) - 1;
    while (deg > 0 && std::abs(coeffs[deg]) == 0.0) --deg;
    if (deg < 1) throw std::runtime_error("poly_roots: degenerate polynomial");
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(deg, deg);
    for (long i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
    for (long i = 0; i < deg; ++i) comp(i, deg - 1) = -coeffs[i] / coeffs[deg];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, /*computeEigenvectors=*/false);
    std::vector<Complex> roots(deg);
    for (long i = 0; i < deg; ++i) {
        Complex v = es.eigenvalues()(i);
        for (int it = 0; it < 2; ++it) {
            Complex dp = horner_deriv(coeffs, v);
            if (std::abs(dp) == 0.0) break;
            v -= horner(coeffs, v) / dp;
        }
        roots[i] = v;
    }
    return roots;
}

// Nearest root to v, plus the gap to the second-nearest.
std::pair<Complex, double> nearest_root(const std::vector<Complex>& roots, Complex v) {
    double best = 1e300, second = 1e300;
    Complex chosen = roots.front();
    for (const Complex& r : roots) {
        double dist = std::abs(r - v);
        if (dist < best) {
            second = best;
            best = dist;
            chosen = r;
        } else if (dist < second) {
            second = dist;
        }
    }
    return {chosen, second - best < 0 ? 0.0 : second};
}

Complex track_segment(const AlgebraicCurve& curve, Complex v, Complex z0, Complex z1, int depth) {
    if (depth > 60) {
        throw std::runtime_error("physical_root: continuation failed near z = (" +
                                 std::to_string(z1.real()) + ", " + std::to_string(z1.imag()) + ")");
    }
    auto roots = poly_roots(curve.coeffs(z1));
    auto [chosen, second_gap] = nearest_root(roots, v);
    double motion = std::abs(chosen - v);
    // Large relative motion means the nearest root is not necessarily the
    // continuation of v (e.g. a fast-diverging branch leaves a stationary
    // root closest); bisect until the step is genuinely continuous.
    bool discontinuous = motion > 0.2 * (1.0 + std::abs(v));
    if (motion > 1e-12 && (discontinuous || second_gap < 10.0 * motion)) {
        Complex zm = 0.5 * (z0 + z1);
        Complex vm = track_segment(curve, v, z0, zm, depth + 1);
        return track_segment(curve, vm, zm, z1, depth + 1);
    }
    return chosen;
}

Complex track_path(const AlgebraicCurve& curve, Complex v, Complex z0, Complex z1, int base_steps = 32) {
    for (int k = 1; k <= base_steps; ++k) {
        Complex za = z0 + (z1 - z0) * (static_cast<double>(k - 1) / base_steps);
        Complex zb = z0 + (z1 - z0) * (static_cast<double>(k) / base_steps);
        v = track_segment(curve, v, za, zb, 0);
    }
    return v;
}

Complex reference_root(const AlgebraicCurve& curve) {
    auto roots = poly_roots(curve.coeffs(Complex(curve.z_ref, 0.0)));
    return nearest_root(roots, Complex(1.0, 0.0)).first;
}

// Continuation from z_ref to z, arcing over (or under) the cut through
// Im = +-H rather than crossing [0, support_hi].
Complex continue_to(const AlgebraicCurve& curve, Complex z) {
    if (z == Complex(0.0, 0.0)) throw std::invalid_argument("physical_root: z = 0");
    Complex v = reference_root(curve);
    Complex zr(curve.z_ref, 0.0);
    if (z.imag() == 0.0 && z.real() > curve.support_hi) {
        return track_path(curve, v, zr, z);
    }
    double sign = z.imag() < 0.0 ? -1.0 : 1.0;
    double height = sign * std::max(0.5 * curve.support_hi, 2.0 * std::abs(z.imag()));
    Complex way(z.real(), height);
    v = track_path(curve, v, zr, way);
    return track_path(curve, v, way, z);
}

struct BoundaryRoot {
    Complex v;
    bool ok = false;
};

// Newton at real z = x from a near-boundary seed; picks the Im(w) <= 0 member
// of the conjugate pair.
BoundaryRoot newton_boundary(const AlgebraicCurve& curve, double x, Complex seed) {
    auto coeffs = curve.coeffs(Complex(x, 0.0));
    Complex v = seed;
    bool converged = false;
    for (int it = 0; it < 60; ++it) {
        Complex p = horner(coeffs, v);
        Complex dp = horner_deriv(coeffs, v);
        if (std::abs(dp) == 0.0) break;
        Complex step = p / dp;
        v -= step;
        if (std::abs(step) < 1e-15 * (1.0 + std::abs(v))) {
            converged = true;
            break;
        }
    }
    if (!converged && std::abs(horner(coeffs, v)) > 1e-10 * (1.0 + std::abs(x))) return {v, false};
    if (std::imag(std::pow(v, curve.wpow)) > 0.0) v = std::conj(v);
    return {v, true};
}

double rho_from_w(Complex w, Complex z) { return -std::imag(w / z) / kPi; }

// delta-offset evaluation with Richardson extrapolation and Newton polish.
double density_at(const AlgebraicCurve& curve, double x) {
    if (!(x > 0.0)) throw std::invalid_argument("density: require x > 0");
    const double scale = curve.support_hi;
    const double d1 = 1e-6 * scale, d2 = 5e-7 * scale, d3 = 2.5e-7 * scale;
    Complex z1(x, d1), z2(x, d2), z3(x, d3);
    Complex v1 = continue_to(curve, z1);
    Complex v2 = track_path(curve, v1, z1, z2, 4);
    Complex v3 = track_path(curve, v2, z2, z3, 4);
    double r1 = rho_from_w(std::pow(v1, curve.wpow), z1);
    double r2 = rho_from_w(std::pow(v2, curve.wpow), z2);
    double r3 = rho_from_w(std::pow(v3, curve.wpow), z3);
    double rich = (4.0 * (2.0 * r3 - r2) - (2.0 * r2 - r1)) / 3.0;

    BoundaryRoot polished = newton_boundary(curve, x, v3);
    if (polished.ok && std::abs(polished.v - v3) < 1e-2 * (1.0 + std::abs(v3))) {
        double rho = rho_from_w(std::pow(polished.v, curve.wpow), Complex(x, 0.0));
        if (rho < 0.0 && rho > -1e-10) rho = 0.0;
        return rho;
    }
    return rich;
}

AlgebraicCurve raney_curve(const CurveModel& m) {
    AlgebraicCurve curve;
    long A = m.A, B = m.B;
    curve.coeffs = [A, B](Complex z) {
        std::vector<Complex> c(A + 1, Complex(0.0, 0.0));
        c[0] = z;
        c[B] = -z;
        c[A] += 1.0;
        return c;
    };
    curve.z_ref = m.z_ref;
    curve.wpow = m.d;
    curve.support_hi = m.L;
    return curve;
}

AlgebraicCurve jacobi_curve(const JacobiCurveModel& m) {
    long theta = m.theta;
    // z (w - 1)(w + 1/theta)^theta - w^{theta+1}
    std::vector<double> base(theta + 2, 0.0);  // coefficients of (w-1)(w+1/theta)^theta
    std::vector<double> binom(theta + 1, 0.0);
    binom[0] = 1.0;
    for (long k = 1; k <= theta; ++k) {
        for (long j = k; j > 0; --j) binom[j] += binom[j - 1];
    }
    std::vector<double> pw(theta + 1);
    for (long k = 0; k <= theta; ++k) pw[k] = binom[k] * std::pow(1.0 / theta, theta - k);
    for (long k = 0; k <= theta; ++k) {
        base[k + 1] += pw[k];
        base[k] -= pw[k];
    }
    AlgebraicCurve curve;
    curve.coeffs = [base, theta](Complex z) {
        std::vector<Complex> c(theta + 2);
        for (long k = 0; k <= theta + 1; ++k) c[k] = z * base[k];
        c[theta + 1] -= 1.0;
        return c;
    };
    curve.z_ref = m.z_ref;
    curve.wpow = 1;
    curve.support_hi = 1.0;
    return curve;
}

}  // namespace

CurveModel make_curve_model(const RaneyParams& params) {
    CurveModel m;
    m.params = params;
    Rational pr = params.p / params.r;
    Rational ir = Rational(1) / params.r;
    BigInt d = boost::multiprecision::lcm(rat_den(pr), rat_den(ir));
    m.d = d.convert_to<long>();
    m.A = (rat_num(pr) * (d / rat_den(pr))).convert_to<long>();
    m.B = (rat_num(ir) * (d / rat_den(ir))).convert_to<long>();
    if (!(m.A > m.B && m.B >= 1)) throw std::domain_error("curve exponents require A > B >= 1");
    m.L = support_edge(params).L;
    m.z_ref = 10.0 * m.L;
    return m;
}

JacobiCurveModel make_jacobi_curve_model(long theta) {
    if (theta < 1) throw std::domain_error("Jacobi curve requires integer theta >= 1");
    JacobiCurveModel m;
    m.theta = theta;
    m.z_ref = 10.0;
    return m;
}

Complex physical_root(const CurveModel& model, Complex z) {
    Complex v = continue_to(raney_curve(model), z);
    return std::pow(v, model.d);
}

Complex physical_root(const JacobiCurveModel& model, Complex z) {
    return continue_to(jacobi_curve(model), z);
}

double density(const CurveModel& model, double x) { return density_at(raney_curve(model), x); }

double density(const JacobiCurveModel& model, double x) {
    if (!(x > 0.0 && x < 1.0)) throw std::invalid_argument("jacobi density: require 0 < x < 1");
    return density_at(jacobi_curve(model), x);
}

struct DensityEvaluator::Impl {
    AlgebraicCurve curve;
    std::map<double, Complex> roots;  // x -> boundary v

    double eval(double x) {
        if (!(x > 0.0)) throw std::invalid_argument("density: require x > 0");
        const double scale = curve.support_hi;
        Complex seed;
        bool have_seed = false;
        if (!roots.empty()) {
            auto it = roots.lower_bound(x);
            double best = 1e300;
            if (it != roots.end() && std::abs(it->first - x) < best) {
                best = std::abs(it->first - x);
                seed = it->second;
            }
            if (it != roots.begin()) {
                auto prev = std::prev(it);
                if (std::abs(prev->first - x) < best) {
                    best = std::abs(prev->first - x);
                    seed = prev->second;
                }
            }
            have_seed = best <= 0.02 * scale;
        }
        if (have_seed) {
            BoundaryRoot b = newton_boundary(curve, x, seed);
            double im_old = std::abs(std::imag(std::pow(seed, curve.wpow)));
            double im_new = std::abs(std::imag(std::pow(b.v, curve.wpow)));
            bool collapse = im_new < 0.2 * im_old && im_old > 1e-9;
            if (b.ok && !collapse && std::abs(b.v - seed) < 0.5 * (1.0 + std::abs(seed))) {
                roots[x] = b.v;
                return std::max(rho_from_w(std::pow(b.v, curve.wpow), Complex(x, 0.0)), 0.0);
            }
        }
        // Full continuation fallback (also the first evaluation).
        Complex v3 = continue_to(curve, Complex(x, 2.5e-7 * scale));
        BoundaryRoot b = newton_boundary(curve, x, v3);
        if (b.ok && std::abs(b.v - v3) < 1e-2 * (1.0 + std::abs(v3))) {
            roots[x] = b.v;
            return std::max(rho_from_w(std::pow(b.v, curve.wpow), Complex(x, 0.0)), 0.0);
        }
        return density_at(curve, x);
    }
};

DensityEvaluator::DensityEvaluator(const CurveModel& model) : impl_(std::make_shared<Impl>()) {
    impl_->curve = raney_curve(model);
}

DensityEvaluator::DensityEvaluator(const JacobiCurveModel& model) : impl_(std::make_shared<Impl>()) {
    impl_->curve = jacobi_curve(model);
}

double DensityEvaluator::operator()(double x) { return impl_->eval(x); }

double origin_exponent(const CurveModel& model) {
    return to_double(model.params.r / model.params.p) - 1.0;
}

DensityProfile sample_density(const CurveModel& model, int npoints) {
    if (npoints < 16) throw std::invalid_argument("sample_density: npoints >= 16 required");
    DensityProfile prof;
    prof.params = model.params;
    prof.edge.L = model.L;
    prof.grid.resize(npoints);
    prof.values.resize(npoints);
    for (int j = 0; j < npoints; ++j) {
        double s = static_cast<double>(j + 1) / (npoints + 1);
        double t = std::sin(kPi * s / 2.0);
        prof.grid[j] = model.L * t * t;
    }
    DensityEvaluator rho(model);
    for (int j = 0; j < npoints; ++j) prof.values[j] = rho(prof.grid[j]);

    // Trapezoid mass with power-law end caps.
    double mass = 0.0;
    for (int j = 0; j + 1 < npoints; ++j) {
        mass += 0.5 * (prof.values[j] + prof.values[j + 1]) * (prof.grid[j + 1] - prof.grid[j]);
    }
    double g0 = origin_exponent(model);
    mass += prof.grid.front() * prof.values.front() / (g0 + 1.0);
    mass += (model.L - prof.grid.back()) * prof.values.back() * (2.0 / 3.0);
    prof.trapezoid_mass = mass;

    QuadResult q = integrate([&rho](double x) { return rho(x); }, 0.0, model.L, 1e-9, {g0, 0.5});
    prof.mass = q.value;

    // Exponent at zero: log-log slope over the smallest decade with >= 8 points.
    int lo = 0;
    int hi = 0;
    for (lo = 0; lo < npoints; ++lo) {
        hi = lo;
        while (hi + 1 < npoints && prof.grid[hi + 1] <= 10.0 * prof.grid[lo]) ++hi;
        if (hi - lo + 1 >= 8) break;
    }
    if (lo < npoints && hi > lo) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int n = 0;
        for (int j = lo; j <= hi; ++j) {
            if (prof.values[j] <= 0.0) continue;
            double lx = std::log(prof.grid[j]);
            double ly = std::log(prof.values[j]);
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
            ++n;
        }
        if (n >= 2) prof.endpoint_exponent_at_zero = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    }
    return prof;
}

double density_moment(const CurveModel& model, long n, double tol) {
    if (n < 0) throw std::invalid_argument("density_moment: n >= 0 required");
    DensityEvaluator rho(model);
    double g0 = origin_exponent(model);
    auto f = [&rho, n](double x) { return std::pow(x, static_cast<double>(n)) * rho(x); };
    EndpointExponents exps{g0 + n, 0.5};
    double coarse = integrate(f, 0.0, model.L, 1e-4, exps).value;
    return integrate(f, 0.0, model.L, tol * std::max(1.0, std::abs(coarse)), exps).value;
}

double jacobi_density_moment(const JacobiCurveModel& model, long n, double tol) {
    DensityEvaluator rho(model);
    double g0 = -static_cast<double>(model.theta) / (model.theta + 1.0);
    auto f = [&rho, n](double x) { return std::pow(x, static_cast<double>(n)) * rho(x); };
    EndpointExponents exps{g0 + n, -0.5};
    double coarse = integrate(f, 0.0, 1.0, 1e-4, exps).value;
    return integrate(f, 0.0, 1.0, tol * std::max(1.0, std::abs(coarse)), exps).value;
}

double jacobi_support_lower(const JacobiCurveModel& model) {
    DensityEvaluator rho(model);
    double x = 0.4;
    double last_positive = 0.4;
    for (int k = 0; k < 30; ++k) {
        if (rho(x) > 1e-9) {
            last_positive = x;
            x *= 0.5;
        } else {
            return 0.5 * (x + last_positive);
        }
    }
    return 0.0;
}

}  // namespace raneylab
