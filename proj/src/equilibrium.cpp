#include "raneylab/equilibrium.hpp"

#include "raneylab/quad.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <limits>
#include <random>
#include <stdexcept>

namespace raneylab {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

double pair_kernel(double theta, long q, double y, double yp) {
    double Y = std::pow(y, 1.0 / theta);
    double Yp = std::pow(yp, 1.0 / theta);
    // Symmetric part of the q-fold interaction: sum_p Re(w^p) log|Y - w^p Y'|.
    // For q <= 2 (where w^p is real) this equals Re sum_p w^p Log(Y - w^p Y'),
    // and it is exactly symmetric in (y, y') for every q; only the symmetric
    // part enters the quadratic energy form.
    double acc = 0.0;
    for (long p = 0; p < q; ++p) {
        double phi = 2.0 * kPi * p / q;
        Complex w = std::exp(Complex(0.0, phi));
        acc += std::cos(phi) * std::log(std::abs(Y - w * Yp));
    }
    return std::log(std::abs(y - yp)) + acc;
}

double potential_value(const PotentialSpec& spec, double y) {
    double th = to_double(spec.theta);
    double acc = 0.0;
    for (long l = 0; l <= spec.m; ++l) {
        acc += spec.c[l] * std::pow(spec.L * y, (1.0 + l * spec.q) / th);
    }
    return acc / spec.L;
}

namespace {

// Prefer the exact small-y exponent r/p - 1 when the profile knows its family
// parameters; otherwise trust the stored (fitted or caller-set) estimate.
double analytic_exponent_at_zero(const DensityProfile& profile) {
    if (profile.params.p > 1) {
        return to_double(profile.params.r / profile.params.p) - 1.0;
    }
    return profile.endpoint_exponent_at_zero;
}

}  // namespace

bool ResidualReport::pass() const {
    for (double r : residuals) {
        if (!(std::abs(r) <= tolerance)) return false;
    }
    return true;
}

// The interpolant works on the smooth prefactor W(y) = rho(y) y^{-ga}
// (1-y)^{-gb}, so the endpoint power behavior is represented exactly and the
// cubic only has to follow a gently varying function.
struct UnitProfile::Data {
    std::vector<double> y, v, d;  // nodes, prefactor values, Hermite slopes
    double ga = 0.0, gb = 0.5;    // endpoint power exponents
};

UnitProfile::UnitProfile(const DensityProfile& profile) {
    const auto& ys = profile.grid;
    const auto& vs = profile.values;
    size_t n = ys.size();
    if (n < 4 || vs.size() != n) throw std::invalid_argument("UnitProfile: need >= 4 grid points");
    if (!(ys.front() > 0.0 && ys.back() < 1.0)) {
        throw std::invalid_argument("UnitProfile: grid must lie inside (0, 1)");
    }
    auto data = std::make_shared<Data>();
    data->y = ys;
    data->ga = analytic_exponent_at_zero(profile);
    data->gb = profile.endpoint_exponent_at_one;
    data->v.resize(n);
    for (size_t i = 0; i < n; ++i) {
        data->v[i] = vs[i] * std::pow(ys[i], -data->ga) * std::pow(1.0 - ys[i], -data->gb);
    }

    // Fritsch-Carlson monotone cubic slopes.
    std::vector<double> h(n - 1), delta(n - 1);
    for (size_t i = 0; i + 1 < n; ++i) {
        h[i] = ys[i + 1] - ys[i];
        if (!(h[i] > 0.0)) throw std::invalid_argument("UnitProfile: grid must increase");
        delta[i] = (data->v[i + 1] - data->v[i]) / h[i];
    }
    std::vector<double>& d = data->d;
    d.assign(n, 0.0);
    d[0] = delta[0];
    d[n - 1] = delta[n - 2];
    for (size_t i = 1; i + 1 < n; ++i) {
        d[i] = (delta[i - 1] * h[i] + delta[i] * h[i - 1]) / (h[i - 1] + h[i]);
    }
    for (size_t i = 0; i + 1 < n; ++i) {
        if (delta[i] == 0.0) {
            d[i] = d[i + 1] = 0.0;
            continue;
        }
        double a = d[i] / delta[i];
        double b = d[i + 1] / delta[i];
        if (a < 0.0) {
            d[i] = 0.0;
            a = 0.0;
        }
        if (b < 0.0) {
            d[i + 1] = 0.0;
            b = 0.0;
        }
        double r = a * a + b * b;
        if (r > 9.0) {
            double tau = 3.0 / std::sqrt(r);
            d[i] = tau * a * delta[i];
            d[i + 1] = tau * b * delta[i];
        }
    }
    data_ = std::move(data);
}

double UnitProfile::operator()(double yq) const {
    const Data& dt = *data_;
    const auto& y = dt.y;
    const auto& v = dt.v;
    size_t n = y.size();
    if (yq <= 0.0 || yq >= 1.0) {
        double g = yq <= 0.0 ? dt.ga : dt.gb;
        if (g > 0.0) return 0.0;
        if (g < 0.0) return std::numeric_limits<double>::infinity();
        return yq <= 0.0 ? v.front() : v.back();
    }
    double w;
    if (yq <= y.front()) {
        w = v.front();
    } else if (yq >= y.back()) {
        w = v.back();
    } else {
        size_t hi = std::upper_bound(y.begin(), y.end(), yq) - y.begin();
        size_t lo = hi - 1;
        double h = y[hi] - y[lo];
        double t = (yq - y[lo]) / h;
        double t2 = t * t, t3 = t2 * t;
        w = v[lo] * (2 * t3 - 3 * t2 + 1) + h * dt.d[lo] * (t3 - 2 * t2 + t) +
            v[hi] * (-2 * t3 + 3 * t2) + h * dt.d[hi] * (t3 - t2);
    }
    return w * std::pow(yq, dt.ga) * std::pow(1.0 - yq, dt.gb);
}

DensityProfile rescale_to_unit(const DensityProfile& profile) {
    DensityProfile out = profile;
    double L = profile.edge.L;
    if (!(L > 0.0)) throw std::invalid_argument("rescale_to_unit: profile has no support edge");
    for (double& x : out.grid) x /= L;
    for (double& val : out.values) val *= L;
    out.edge.L = 1.0;
    return out;
}

namespace {

// Integral over [0,1] of the second (q-fold) kernel applied to rho, with the
// simple pole at y' = y subtracted and its PV integral restored in closed
// form. a = (q-1)/theta, b = q/theta; the subtracted term is rho(y) y/(y-y').
double second_kernel_integral(const Integrand& rho, double theta, long q, double y,
                              EndpointExponents exps, double tol) {
    const double a = (q - 1.0) / theta;
    const double b = q / theta;
    const double ry = rho(y);
    auto reg = [&](double yp) {
        double u = (yp - y) / y;
        double ryp = rho(yp);
        if (std::abs(u) >= 0.1) {
            // Far from the pole: direct form, stable down to yp -> 0.
            double ratio = yp / y;
            return b * std::pow(ratio, a) * ryp / (1.0 - std::pow(ratio, b)) + ry / u;
        }
        if (std::abs(u) < 1e-6) {
            if (u == 0.0) {
                double h = 1e-7 * y;
                double slope = (rho(y + h) - rho(y - h)) / (2.0 * h);
                return -y * slope - (a - 0.5 * (b - 1.0)) * ry;
            }
            return -(ryp - ry) / u - (a - 0.5 * (b - 1.0)) * ryp;
        }
        double lp = std::log1p(u);
        return b * std::exp(a * lp) * ryp / (-std::expm1(b * lp)) + ry / u;
    };
    QuadResult r = integrate(reg, 0.0, 1.0, tol, exps);
    return r.value + ry * y * std::log(y / (1.0 - y));
}

EndpointExponents profile_exponents(const DensityProfile& profile) {
    auto clamp = [](double g) { return g > 0.0 ? 0.0 : std::max(g, -0.95); };
    return {clamp(analytic_exponent_at_zero(profile)), clamp(profile.endpoint_exponent_at_one)};
}

}  // namespace

double equilibrium_residual(const DensityProfile& profile, double theta, long q,
                            const PotentialSpec& spec, double y) {
    if (!(y > 0.0 && y < 1.0)) throw std::domain_error("equilibrium_residual: require 0 < y < 1");
    UnitProfile rho(profile);
    const double L = spec.L;
    auto rho_s = [&](double yp) { return rho(yp) / L; };
    EndpointExponents exps = profile_exponents(profile);

    double term1 = -y * pv_integrate(rho_s, 0.0, 1.0, y, 1e-7, exps).value;
    double term2 = second_kernel_integral(rho_s, theta, q, y, exps, 1e-7);

    double th = to_double(spec.theta);
    double rhs = 0.0;
    for (long l = 0; l <= spec.m; ++l) {
        rhs += (1.0 + l * spec.q) * spec.c[l] / th * std::pow(L * y, (1.0 + l * spec.q) / th);
    }
    rhs /= L;
    return term1 + term2 - rhs;
}

ResidualReport equilibrium_report(const DensityProfile& profile, double theta, long q,
                                  const PotentialSpec& spec, const std::vector<double>& ys,
                                  double tolerance) {
    ResidualReport rep;
    rep.y_points = ys;
    rep.tolerance = tolerance;
    rep.residuals.reserve(ys.size());
    for (double y : ys) rep.residuals.push_back(equilibrium_residual(profile, theta, q, spec, y));
    return rep;
}

double jacobi_residual(const DensityProfile& profile, double theta, long q, double y) {
    if (!(y > 0.0 && y < 1.0)) throw std::domain_error("jacobi_residual: require 0 < y < 1");
    UnitProfile rho(profile);
    EndpointExponents exps = profile_exponents(profile);
    auto f = [&](double yp) { return rho(yp); };
    double first = -pv_integrate(f, 0.0, 1.0, y, 1e-7, exps).value;  // PV int rho/(y - y')
    double second = second_kernel_integral(rho, theta, q, y, exps, 1e-7) / y;
    return first + second;
}

double energy(const DensityProfile& profile, double theta, long q, const PotentialSpec& spec) {
    UnitProfile rho(profile);
    const double L = spec.L > 0.0 ? spec.L : 1.0;
    EndpointExponents exps = profile_exponents(profile);
    auto rho_s = [&](double yp) { return rho(yp) / L; };

    double one_body = 0.0;
    if (!spec.c.empty()) {
        one_body = integrate([&](double yp) { return potential_value(spec, yp) * rho_s(yp); }, 0.0,
                             1.0, 1e-8, exps)
                       .value;
    }

    // (1/2) int int rho rho' k = int_0^1 rho(y) [int_0^y k(y,y') rho(y') dy'] dy
    // by symmetry; the inner integrand has a log singularity at y' = y handled
    // by adaptive bisection toward that endpoint.
    auto inner = [&](double y) {
        auto g = [&](double yp) { return pair_kernel(theta, q, y, yp) * rho_s(yp); };
        return integrate(g, 0.0, y, 1e-9, {exps.ga, 0.0}).value;
    };
    double pair = integrate([&](double y) { return rho_s(y) * inner(y); }, 0.0, 1.0, 1e-6,
                            {exps.ga, exps.gb})
                      .value;
    return one_body - pair;
}

DensityProfile perturb(const DensityProfile& profile, double amplitude, std::uint64_t seed) {
    if (amplitude == 0.0) return profile;
    const auto& g = profile.grid;
    size_t n = g.size();
    if (n < 8) throw std::invalid_argument("perturb: profile too coarse");

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> center(0.15, 0.85);
    std::uniform_real_distribution<double> width(0.08, 0.15);
    double lo = g.front(), hi = g.back(), span = hi - lo;
    double m1 = lo + span * center(rng), w1 = span * width(rng);
    double m2 = lo + span * center(rng), w2 = span * width(rng);

    auto bump = [&](double x, double m, double w) {
        double t = (x - lo) / span;
        double shape = t * (1.0 - t);
        double u = (x - m) / w;
        return std::exp(-u * u) * shape * shape;
    };
    std::vector<double> b1(n), b2(n);
    for (size_t i = 0; i < n; ++i) {
        b1[i] = bump(g[i], m1, w1);
        b2[i] = bump(g[i], m2, w2);
    }
    auto trapz = [&](const std::vector<double>& v) {
        double s = 0.0;
        for (size_t i = 0; i + 1 < n; ++i) s += 0.5 * (v[i] + v[i + 1]) * (g[i + 1] - g[i]);
        return s;
    };
    double mass1 = trapz(b1), mass2 = trapz(b2);
    if (mass1 <= 0.0 || mass2 <= 0.0) return profile;

    double peak = 0.0;
    for (double v : profile.values) peak = std::max(peak, v);
    std::vector<double> delta(n);
    double limit = 1.0;
    for (size_t i = 0; i < n; ++i) {
        delta[i] = b1[i] / mass1 - b2[i] / mass2;
        double cand = amplitude * peak * delta[i];
        if (profile.values[i] + cand < 0.0) {
            limit = std::min(limit, -profile.values[i] / cand);
        }
    }
    double scale = amplitude * peak * 0.999 * limit;

    DensityProfile out = profile;
    for (size_t i = 0; i < n; ++i) out.values[i] = profile.values[i] + scale * delta[i];
    return out;
}

}  // namespace raneylab
