#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "raneylab/curve.hpp"
#include "raneylab/equilibrium.hpp"
#include "raneylab/params.hpp"
#include "raneylab/wienerhopf.hpp"

#include <cmath>
#include <numbers>

using namespace raneylab;

namespace {

constexpr double kPi = std::numbers::pi;

// Unit-support Marchenko-Pastur profile rho(y) = (2/pi) sqrt((1-y)/y).
DensityProfile mp_unit_profile(int n) {
    DensityProfile prof;
    prof.params = make_params(Rational(2), Rational(1));
    prof.edge.L = 1.0;
    prof.endpoint_exponent_at_zero = -0.5;
    prof.endpoint_exponent_at_one = 0.5;
    for (int j = 0; j < n; ++j) {
        double s = std::sin(0.5 * kPi * (j + 1.0) / (n + 1.0));
        double y = s * s;
        prof.grid.push_back(y);
        prof.values.push_back((2.0 / kPi) * std::sqrt((1.0 - y) / y));
    }
    return prof;
}

DensityProfile arcsine_profile(int n) {
    DensityProfile prof = mp_unit_profile(n);
    prof.endpoint_exponent_at_one = -0.5;
    for (int j = 0; j < n; ++j) {
        prof.values[j] = 1.0 / (kPi * std::sqrt(prof.grid[j] * (1.0 - prof.grid[j])));
    }
    return prof;
}

}  // namespace

TEST_CASE("pair kernel closed forms and symmetry") {
    // q = 1: k(y, y') = 2 log|y - y'|.
    CHECK(pair_kernel(1.0, 1, 0.3, 0.7) == doctest::Approx(2.0 * std::log(0.4)).epsilon(1e-13));

    // q = 2: log|y-y'| + log|Y-Y'| - log(Y+Y') with Y = y^{1/theta}.
    double theta = 2.0, y = 0.37, yp = 0.81;
    double Y = std::pow(y, 1.0 / theta), Yp = std::pow(yp, 1.0 / theta);
    double expect = std::log(std::abs(y - yp)) + std::log(std::abs(Y - Yp) / (Y + Yp));
    CHECK(pair_kernel(theta, 2, y, yp) == doctest::Approx(expect).epsilon(1e-12));

    // Symmetry and realness for q = 3, 4.
    for (long q : {3L, 4L}) {
        CHECK(pair_kernel(2.0, q, 0.2, 0.9) == doctest::Approx(pair_kernel(2.0, q, 0.9, 0.2)));
        CHECK(std::isfinite(pair_kernel(2.0, q, 0.2, 0.9)));
    }
}

TEST_CASE("one-body potential closed form") {
    // theta = q = 1, m = 0: V(y) = (1/L) c_0 (L y) = y.
    auto spec = potential_coefficients(Rational(1), 1, 0);
    for (double y : {0.1, 0.5, 0.9}) {
        CHECK(potential_value(spec, y) == doctest::Approx(y).epsilon(1e-12));
    }
}

TEST_CASE("closed-form Marchenko-Pastur profile satisfies the integral equation") {
    auto prof = mp_unit_profile(400);
    auto spec = potential_coefficients(Rational(1), 1, 0);
    for (double y : {0.25, 0.5, 0.75}) {
        CHECK(std::abs(equilibrium_residual(prof, 1.0, 1, spec, y)) < 1e-6);
    }
}

TEST_CASE("residual report") {
    auto prof = mp_unit_profile(300);
    auto spec = potential_coefficients(Rational(1), 1, 0);
    auto report = equilibrium_report(prof, 1.0, 1, spec, {0.3, 0.6}, 1e-3);
    REQUIRE(report.residuals.size() == 2);
    CHECK(report.pass());
    auto strict = equilibrium_report(prof, 1.0, 1, spec, {0.3}, 1e-16);
    CHECK_FALSE(strict.pass());
}

TEST_CASE("weightless equation: arcsine density") {
    auto arc = arcsine_profile(400);
    for (double y : {0.3, 0.5, 0.8}) {
        CHECK(std::abs(jacobi_residual(arc, 1.0, 1, y)) < 1e-3);
    }
}

TEST_CASE("profile interpolation follows the closed form") {
    auto model = make_curve_model(make_params(Rational(2), Rational(1)));
    auto unit = rescale_to_unit(sample_density(model, 300));
    UnitProfile interp(unit);
    for (double y : {0.07, 0.31, 0.55, 0.83, 0.97}) {
        double expect = (2.0 / kPi) * std::sqrt((1.0 - y) / y);
        CHECK(interp(y) == doctest::Approx(expect).epsilon(2e-4));
    }
}

TEST_CASE("rescale to unit support") {
    auto model = make_curve_model(make_params(Rational(2), Rational(1)));
    auto natural = sample_density(model, 100);
    auto unit = rescale_to_unit(natural);
    CHECK(unit.edge.L == doctest::Approx(1.0));
    CHECK(unit.grid.back() < 1.0);
    CHECK(unit.grid.front() == doctest::Approx(natural.grid.front() / 4.0));
    CHECK(unit.values.front() == doctest::Approx(natural.values.front() * 4.0));
    CHECK(std::abs(unit.trapezoid_mass - natural.trapezoid_mass) < 1e-12);
}

TEST_CASE("perturbation preserves mass, support and positivity") {
    auto model = make_curve_model(make_params(Rational(2), Rational(1)));
    auto unit = rescale_to_unit(sample_density(model, 200));
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        auto pert = perturb(unit, 0.05, seed);
        REQUIRE(pert.grid.size() == unit.grid.size());
        CHECK(std::abs(pert.trapezoid_mass - unit.trapezoid_mass) < 1e-10);
        bool changed = false;
        for (size_t i = 0; i < pert.values.size(); ++i) {
            CHECK(pert.values[i] >= 0.0);
            if (std::abs(pert.values[i] - unit.values[i]) > 1e-12) changed = true;
        }
        CHECK(changed);
        // Deterministic in the seed.
        auto again = perturb(unit, 0.05, seed);
        CHECK(again.values == pert.values);
    }
    auto same = perturb(unit, 0.0, 9);
    CHECK(same.values == unit.values);
}

TEST_CASE("energy is finite and increases under perturbation") {
    auto model = make_curve_model(make_params(Rational(2), Rational(1)));
    auto unit = rescale_to_unit(sample_density(model, 300));
    auto spec = potential_coefficients(Rational(1), 1, 0);
    double base = energy(unit, 1.0, 1, spec);
    CHECK(std::isfinite(base));
    auto pert = perturb(unit, 0.05, 4);
    CHECK(energy(pert, 1.0, 1, spec) > base - 1e-6);
}
