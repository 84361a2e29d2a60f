#include "raneylab/wienerhopf.hpp"

#include "raneylab/exact.hpp"
#include "raneylab/quad.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace raneylab {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);

}  // namespace

WHFactorization make_wh(double theta, long q) {
    if (!(theta > 0.0)) throw std::domain_error("theta must be positive");
    if (q < 1) throw std::domain_error("q must be a positive integer");
    WHFactorization wh;
    wh.theta = theta;
    wh.q = q;
    double t = wh.t();
    wh.c = -((1.0 + t) * std::log(1.0 + t) - t * std::log(t));
    double p = t + 1.0;
    wh.edge.L = std::exp(p * std::log(p) - (p - 1.0) * std::log(p - 1.0));
    return wh;
}

Complex kernel_K(const WHFactorization& wh, Complex z) {
    double t = wh.t();
    double shift = static_cast<double>(wh.q - 1) / wh.q;
    Complex s1 = std::sinh(kPi * z);
    Complex s2 = std::sinh(kPi * (z * t - kI * shift));
    if (std::abs(s1) < 1e-13 || std::abs(s2) < 1e-13) {
        throw std::domain_error("kernel_K: evaluation at (or too near) a pole");
    }
    return -kPi * kI * std::sinh(kPi * (z * (1.0 + t) - kI * shift)) / (s1 * s2);
}

Complex log_factor_plus(const WHFactorization& wh, Complex z) {
    double t = wh.t();
    double iq = 1.0 / wh.q;
    return log_gamma(1.0 - kI * z) + log_gamma(iq - kI * z * t) -
           log_gamma(iq - kI * z * (1.0 + t)) + kI * wh.c * z;
}

Complex log_factor_minus(const WHFactorization& wh, Complex z) {
    double t = wh.t();
    double shift = static_cast<double>(wh.q - 1) / wh.q;
    return kI * wh.c * z + log_gamma(kI * z * (1.0 + t) + shift) - log_gamma(kI * z) -
           log_gamma(kI * z * t + shift);
}

Complex factor_plus(const WHFactorization& wh, Complex z) { return std::exp(log_factor_plus(wh, z)); }
Complex factor_minus(const WHFactorization& wh, Complex z) { return std::exp(log_factor_minus(wh, z)); }

double fourier_kernel_check(double theta, long q, Complex z) {
    WHFactorization wh = make_wh(theta, q);
    const double a = static_cast<double>(q - 1) / theta;
    const double b = static_cast<double>(q) / theta;
    const double qt = static_cast<double>(q) / theta;
    const double kappa = 1.0 + (q == 1 ? 1.0 / theta : 0.0);

    // Difference kernel minus its double pole at the origin:
    // s(t) = 1/(1-e^t) + (q/theta) e^{at}/(1-e^{bt}) + 2/t, regular at t = 0.
    auto s_reg = [&](double t) {
        double s1 = 1.0 / t - 1.0 / std::expm1(t);
        double s2 = 1.0 / t - qt * std::exp(a * t) / std::expm1(b * t);
        return s1 + s2;
    };

    // Folded integrand: g(t)e^{itz} + (g(-t)-kappa)e^{-itz} with the pole pair
    // recombined into -4i sin(tz)/t.
    auto folded = [&](double t) -> Complex {
        Complex ep = std::exp(kI * t * z);
        Complex em = std::exp(-kI * t * z);
        Complex osc = (t == 0.0) ? Complex(0.0, -4.0) * z : Complex(0.0, -4.0) * std::sin(t * z) / t;
        return s_reg(t) * ep + (s_reg(-t) - kappa) * em + osc;
    };

    double rate_pos = std::min(1.0, 1.0 / theta);
    double rate_neg = q == 1 ? std::min(1.0, 1.0 / theta) : std::min(1.0, (q - 1.0) / theta);
    double T = 50.0 / std::min(rate_pos, rate_neg);

    double re = integrate([&](double t) { return folded(t).real(); }, 0.0, T, 1e-9).value;
    double im = integrate([&](double t) { return folded(t).imag(); }, 0.0, T, 1e-9).value;
    Complex numeric = Complex(re, im) + kappa / (kI * z);
    return std::abs(numeric - kernel_K(wh, z));
}

std::vector<AsymptoticRatios> asymptotic_check(const WHFactorization& wh, double ray_angle,
                                               const std::vector<double>& radii) {
    double t = wh.t();
    std::vector<AsymptoticRatios> out;
    out.reserve(radii.size());
    // Stirling constant (t/(1+t))^{1/q - 1/2}; reduces to sqrt(t/(1+t)) at q=1.
    double cexp = 1.0 / wh.q - 0.5;
    for (double r : radii) {
        Complex z = r * std::exp(kI * ray_angle);
        Complex base = std::log(z) + cexp * std::log(t / (1.0 + t));
        Complex log_asym_minus = base - 0.5 * std::log(2.0 * kPi) + 0.5 * std::log(kI / z);
        Complex log_asym_plus = base + 0.5 * std::log(2.0 * kPi) + 0.5 * std::log(-kI / z);
        AsymptoticRatios ar;
        ar.minus_ratio = std::abs(std::exp(log_factor_minus(wh, z) - log_asym_minus));
        ar.plus_ratio = std::abs(std::exp(log_factor_plus(wh, z) - log_asym_plus));
        out.push_back(ar);
    }
    return out;
}

Complex residue_A(const WHFactorization& wh) {
    double L = wh.edge.L;
    Complex lk = log_factor_minus(wh, -kI / wh.theta);
    return kI * std::exp((1.0 / wh.theta - 1.0) * std::log(L) + lk);
}

double moment_wh(const WHFactorization& wh, long n) {
    if (n < 0) throw std::invalid_argument("moment order must be non-negative");
    double t = wh.t();
    double iq = 1.0 / wh.q;
    Complex lg = log_gamma(Complex(n * (1.0 + t) + iq)) - log_gamma(Complex(n + 1.0)) -
                 log_gamma(Complex(n * t + iq));
    return std::exp(lg.real()) / (wh.theta * n + 1.0);
}

PotentialSpec potential_coefficients(const Rational& theta, long q, long m) {
    if (theta <= 0) throw std::domain_error("theta must be positive");
    if (q < 1 || m < 0) throw std::domain_error("require q >= 1 and m >= 0");
    PotentialSpec spec;
    spec.theta = theta;
    spec.q = q;
    spec.m = m;
    spec.L = make_wh(to_double(theta), q).edge.L;
    spec.validity_warning = Rational(m) > (theta - 1) / q + 1;

    spec.c.resize(m + 1);
    spec.alpha.resize(m + 1);
    spec.c_pole.assign(m + 1, false);
    for (long l = 0; l <= m; ++l) {
        long n = m - l;
        Rational x = Rational(1 + l * q) / theta;
        // Gamma ratio Gamma(x)/Gamma(x+1-n) reduced to a finite form: 1/x for
        // n = 0, else the product over x-j; a zero factor marks the
        // Gamma(1+l-m+x) pole of the closed form.
        Rational prod(1);
        if (n == 0) {
            prod = 1 / x;
        } else {
            for (long j = 1; j <= n - 1; ++j) prod *= (x - j);
        }
        Rational fact(1);
        for (long j = 2; j <= n; ++j) fact *= j;
        Rational cl = Rational(1 + m * q, 1 + l * q) * prod / fact;
        if (n % 2 == 1) cl = -cl;
        if (prod == 0) spec.c_pole[l] = true;
        spec.c[l] = to_double(cl);

        // alpha_l from the product representation, exact in rationals.
        Rational zfac = Rational(1 + q * l) / theta;  // -iz at the pole
        Rational num(1);
        for (long u = 0; u < m; ++u) num *= (1 - (theta + q) * zfac / (q * u + 1));
        Rational den(1);
        for (long u = 0; u <= m; ++u) {
            if (u == l) continue;
            den *= (1 - Rational(1 + q * l, q * u + 1));
        }
        spec.alpha[l] = to_double(num / den) / spec.L;
    }
    return spec;
}

Complex Q_function(const PotentialSpec& spec, Complex z) {
    double th = to_double(spec.theta);
    Complex num(1.0, 0.0), den(1.0, 0.0);
    for (long u = 0; u < spec.m; ++u) num *= 1.0 - kI * (th + spec.q) * z / (spec.q * u + 1.0);
    for (long u = 0; u <= spec.m; ++u) den *= 1.0 - kI * th * z / (spec.q * u + 1.0);
    return num / (den * spec.L);
}

Complex Q_partial_fraction(const PotentialSpec& spec, Complex z) {
    double th = to_double(spec.theta);
    Complex acc(0.0, 0.0);
    for (long l = 0; l <= spec.m; ++l) {
        acc += spec.alpha[l] / (1.0 - kI * th * z / (1.0 + l * spec.q));
    }
    return acc;
}

double raney_moment_general(const PotentialSpec& spec, long n) {
    if (n < 0) throw std::invalid_argument("moment order must be non-negative");
    double th = to_double(spec.theta);
    WHFactorization wh = make_wh(th, spec.q);
    double logq = std::log(Q_function(spec, kI * static_cast<double>(n)).real());
    Complex lkp = log_factor_plus(wh, kI * static_cast<double>(n));
    return std::exp((n + 1.0) * std::log(spec.L) + logq - lkp.real());
}

double jacobi_moment_wh(const JacobiParams& jp, long n) {
    if (n < 0) throw std::invalid_argument("moment order must be non-negative");
    WHFactorization wh = make_wh(to_double(jp.theta), jp.q);
    return std::exp(-log_factor_plus(wh, kI * static_cast<double>(n)).real());
}

}  // namespace raneylab
