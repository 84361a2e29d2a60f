// End-to-end acceptance checks. Each numbered check prints a single PASS or
// FAIL line with the measured quantity; the exit status is the number of
// failed checks.

#include "raneylab/curve.hpp"
#include "raneylab/equilibrium.hpp"
#include "raneylab/exact.hpp"
#include "raneylab/params.hpp"
#include "raneylab/rmt.hpp"
#include "raneylab/wienerhopf.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

using namespace raneylab;

namespace {

constexpr double kPi = std::numbers::pi;
using Clock = std::chrono::steady_clock;

struct Check {
    const char* name;
    std::function<bool(std::string&)> run;
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

// 1. Closed-form kernel moments vs exact values over the base family grid.
bool check_moments_base(std::string& detail) {
    double worst = 0.0;
    for (long theta : {1L, 2L, 3L}) {
        for (long q : {1L, 2L, 3L}) {
            auto wh = make_wh(static_cast<double>(theta), q);
            auto params = make_params_family(Rational(theta), q, 0);
            for (long n = 0; n <= 10; ++n) {
                double exact = to_double(raney_exact(params, n));
                worst = std::max(worst, std::abs(moment_wh(wh, n) - exact) / exact);
            }
        }
    }
    detail = "max rel dev " + fmt(worst);
    return worst <= 1e-10;
}

// 2. General-family moments via Q/K+ vs exact values.
bool check_moments_general(std::string& detail) {
    double worst = 0.0;
    int cases = 0;
    for (long theta : {1L, 2L}) {
        for (long q : {1L, 2L}) {
            for (long m : {0L, 1L, 2L}) {
                auto spec = potential_coefficients(Rational(theta), q, m);
                if (spec.validity_warning) continue;
                ++cases;
                auto params = make_params_family(Rational(theta), q, m);
                for (long n = 0; n <= 8; ++n) {
                    double exact = to_double(raney_exact(params, n));
                    worst = std::max(worst,
                                     std::abs(raney_moment_general(spec, n) - exact) / exact);
                }
            }
        }
    }
    detail = std::to_string(cases) + " families, max rel dev " + fmt(worst);
    return worst <= 1e-9 && cases >= 6;
}

// 3. Factorization identity and the Fourier-integral form of the kernel.
bool check_factorization(std::string& detail) {
    SplitMix64 rng{314159};
    double worst_fact = 0.0, worst_fourier = 0.0;
    for (long theta : {1L, 2L, 3L}) {
        for (long q : {1L, 2L, 3L}) {
            auto wh = make_wh(static_cast<double>(theta), q);
            double s = (q - 1.0) / q;
            double band = 0.3 * (1.0 - s) + 0.05;
            for (int i = 0; i < 20; ++i) {
                Complex z(4.0 * rng.uniform() - 2.0, band * (2.0 * rng.uniform() - 1.0));
                Complex lhs = kernel_K(wh, z);
                Complex rhs = factor_plus(wh, z) / factor_minus(wh, z);
                worst_fact = std::max(worst_fact, std::abs(lhs - rhs) / std::abs(lhs));
            }
            for (double re : {-0.9, 0.3, 1.7}) {
                worst_fourier = std::max(
                    worst_fourier,
                    fourier_kernel_check(static_cast<double>(theta), q, Complex(re, 0.03)));
            }
        }
    }
    detail = "factorization " + fmt(worst_fact) + ", fourier " + fmt(worst_fourier);
    return worst_fact <= 1e-10 && worst_fourier <= 1e-6;
}

// 4. Density vs the closed form and quadrature moments vs exact values.
bool check_density(std::string& detail) {
    auto mp = make_curve_model(make_params(Rational(2), Rational(1)));
    auto profile = sample_density(mp, 200);
    double worst_abs = 0.0;
    for (size_t i = 0; i < profile.grid.size(); ++i) {
        double x = profile.grid[i];
        double closed = std::sqrt((4.0 - x) / x) / (2.0 * kPi);
        worst_abs = std::max(worst_abs, std::abs(profile.values[i] - closed));
    }

    double worst_rel = 0.0;
    for (auto pr : {std::pair<Rational, Rational>{2, 1}, {3, 1}, {Rational(3, 2), Rational(1, 2)}}) {
        auto params = make_params(pr.first, pr.second);
        auto model = make_curve_model(params);
        for (long n = 0; n <= 6; ++n) {
            double exact = to_double(raney_exact(params, n));
            worst_rel = std::max(worst_rel,
                                 std::abs(density_moment(model, n, 1e-8) - exact) / exact);
        }
    }
    detail = "max abs dev " + fmt(worst_abs) + ", max moment rel dev " + fmt(worst_rel);
    return worst_abs <= 1e-8 && worst_rel <= 1e-6;
}

// 5. Residuals of the singular integral equation for the computed densities.
bool check_equilibrium(std::string& detail) {
    double worst = 0.0;
    const std::vector<double> ys{0.25, 0.5, 0.75};
    struct Fam {
        long theta, q, m;
    };
    for (Fam f : {Fam{1, 1, 0}, Fam{2, 1, 0}, Fam{1, 2, 0}, Fam{1, 1, 1}}) {
        auto params = make_params_family(Rational(f.theta), f.q, f.m);
        auto model = make_curve_model(params);
        auto unit = rescale_to_unit(sample_density(model, 400));
        auto spec = potential_coefficients(Rational(f.theta), f.q, f.m);
        for (double y : ys) {
            worst = std::max(worst, std::abs(equilibrium_residual(
                                        unit, static_cast<double>(f.theta), f.q, spec, y)));
        }
    }

    // Field-free arcsine check.
    DensityProfile arc;
    arc.params = make_params(Rational(2), Rational(1));
    arc.edge.L = 1.0;
    arc.endpoint_exponent_at_zero = -0.5;
    arc.endpoint_exponent_at_one = -0.5;
    const int n = 400;
    for (int j = 0; j < n; ++j) {
        double s = std::sin(0.5 * kPi * (j + 1.0) / (n + 1.0));
        double y = s * s;
        arc.grid.push_back(y);
        arc.values.push_back(1.0 / (kPi * std::sqrt(y * (1.0 - y))));
    }
    double worst_arc = 0.0;
    for (double y : ys) {
        worst_arc = std::max(worst_arc, std::abs(jacobi_residual(arc, 1.0, 1, y)));
    }
    detail = "max residual " + fmt(worst) + ", arcsine " + fmt(worst_arc);
    return worst <= 1e-3 && worst_arc <= 1e-3;
}

// 6. The computed density minimizes the energy among seeded perturbations.
bool check_energy_minimality(std::string& detail) {
    double worst_drop = std::numeric_limits<double>::infinity();
    struct Fam {
        long theta, q;
    };
    for (Fam f : {Fam{1, 1}, Fam{2, 1}, Fam{1, 2}}) {
        auto params = make_params_family(Rational(f.theta), f.q, 0);
        auto model = make_curve_model(params);
        auto unit = rescale_to_unit(sample_density(model, 400));
        auto spec = potential_coefficients(Rational(f.theta), f.q, 0);
        double base = energy(unit, static_cast<double>(f.theta), f.q, spec);
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            auto pert = perturb(unit, 0.05, seed);
            double dE = energy(pert, static_cast<double>(f.theta), f.q, spec) - base;
            worst_drop = std::min(worst_drop, dE);
        }
    }
    detail = "min energy change " + fmt(worst_drop) + " over 30 perturbations";
    return worst_drop >= -1e-6;
}

// 7. Coefficient specialization at m = 1 and the partial-fraction identity.
bool check_coefficients(std::string& detail) {
    for (long q : {1L, 2L, 3L}) {
        for (long theta : {1L, 2L, 3L}) {
            auto spec = potential_coefficients(Rational(theta), q, 1);
            if (spec.c[0] != -(1.0 + static_cast<double>(q))) {
                detail = "c_0 mismatch";
                return false;
            }
            if (spec.c[1] != static_cast<double>(theta) / (1.0 + static_cast<double>(q))) {
                detail = "c_1 mismatch";
                return false;
            }
        }
    }
    SplitMix64 rng{161803};
    double worst = 0.0;
    for (long q : {1L, 2L}) {
        auto spec = potential_coefficients(Rational(2), q, 2);
        for (int i = 0; i < 10; ++i) {
            Complex z(4.0 * rng.uniform() - 2.0, 4.0 * rng.uniform() - 2.0);
            Complex a = Q_function(spec, z);
            Complex b = Q_partial_fraction(spec, z);
            worst = std::max(worst, std::abs(a - b) / (1.0 + std::abs(a)));
        }
    }
    detail = "m=1 exact, partial fraction dev " + fmt(worst);
    return worst <= 1e-12;
}

// 8. Hard-edge family: kernel moments vs binomial closed form, and the
// theta = 1 curve density vs the arcsine law.
bool check_hard_edge(std::string& detail) {
    double worst = 0.0;
    for (long theta : {1L, 2L, 3L}) {
        for (long q : {1L, 2L, 3L}) {
            auto jp = make_jacobi_params(Rational(theta), q);
            for (long n = 0; n <= 10; ++n) {
                double expect = binomial_moment(jp, n).moment;
                worst = std::max(worst, std::abs(jacobi_moment_wh(jp, n) - expect) /
                                            std::abs(expect));
            }
        }
    }

    auto model = make_jacobi_curve_model(1);
    DensityEvaluator rho(model);
    double worst_density = 0.0;
    for (int i = 0; i <= 18; ++i) {
        double x = 0.05 + 0.05 * i;
        double closed = 1.0 / (kPi * std::sqrt(x * (1.0 - x)));
        worst_density = std::max(worst_density, std::abs(rho(x) - closed));
    }
    detail = "moment rel dev " + fmt(worst) + ", arcsine density dev " + fmt(worst_density);
    return worst <= 1e-10 && worst_density <= 1e-6;
}

// 9. Monte Carlo over matrix products vs the model moments and CDF.
bool check_monte_carlo(std::string& detail) {
    const int N = 150;
    const long trials = 667;  // >= 1e5 scaled eigenvalues
    double worst_moment = 0.0, ks1 = 0.0;
    for (int M : {1, 2}) {
        auto run = run_mc(N, M, trials, 20240901 + M);
        auto params = make_params(Rational(M + 1), Rational(1));
        auto model = make_curve_model(params);
        auto rep = compare_to_density(run, model, 50, 4);
        for (const auto& row : rep.moments) {
            if (row.n == 0) continue;
            worst_moment = std::max(worst_moment,
                                    std::abs(row.empirical - row.exact) / row.exact);
        }
        if (M == 1) ks1 = rep.ks_distance;
    }
    detail = "max moment rel dev " + fmt(worst_moment) + ", KS(M=1) " + fmt(ks1);
    return worst_moment <= 0.02 && ks1 < 0.02;
}

// 10. Large-argument asymptotics of the kernel factors.
bool check_asymptotics(std::string& detail) {
    double worst = 0.0;
    for (double theta : {1.0, 3.0}) {
        auto wh = make_wh(theta, 1);
        auto ratios = asymptotic_check(wh, -kPi / 4.0, {1.0e3});
        worst = std::max(worst, std::abs(ratios[0].minus_ratio - 1.0));
        worst = std::max(worst, std::abs(ratios[0].plus_ratio - 1.0));
    }
    detail = "max |ratio - 1| " + fmt(worst);
    return worst < 0.01;
}

}  // namespace

int main() {
    std::vector<Check> checks{
        {"exact vs closed-form kernel moments", check_moments_base},
        {"general-family moments", check_moments_general},
        {"kernel factorization and Fourier form", check_factorization},
        {"density correctness", check_density},
        {"equilibrium residuals", check_equilibrium},
        {"energy minimality", check_energy_minimality},
        {"potential coefficients", check_coefficients},
        {"hard-edge moments and density", check_hard_edge},
        {"monte carlo vs model density", check_monte_carlo},
        {"kernel factor asymptotics", check_asymptotics},
    };

    int failures = 0;
    for (size_t i = 0; i < checks.size(); ++i) {
        auto start = Clock::now();
        std::string detail;
        bool ok = false;
        try {
            ok = checks[i].run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(Clock::now() - start).count();
        std::printf("%s  %2zu. %s: %s (%.1f s)\n", ok ? "PASS" : "FAIL", i + 1, checks[i].name,
                    detail.c_str(), secs);
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    return failures;
}
