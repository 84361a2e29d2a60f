#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "raneylab/curve.hpp"
#include "raneylab/exact.hpp"
#include "raneylab/params.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

using namespace raneylab;

namespace {
constexpr double kPi = std::numbers::pi;

double mp_density(double x) { return std::sqrt((4.0 - x) / x) / (2.0 * kPi); }
double arcsine_density(double x) { return 1.0 / (kPi * std::sqrt(x * (1.0 - x))); }
}  // namespace

TEST_CASE("curve model exponents") {
    auto mp = make_curve_model(make_params(Rational(2), Rational(1)));
    CHECK(mp.A == 2);
    CHECK(mp.B == 1);
    CHECK(mp.L == doctest::Approx(4.0).epsilon(1e-14));

    auto half = make_curve_model(make_params(Rational(3, 2), Rational(1, 2)));
    CHECK(half.A == 3);
    CHECK(half.B == 2);

    auto fc3 = make_curve_model(make_params(Rational(3), Rational(1)));
    CHECK(fc3.A == 3);
    CHECK(fc3.B == 1);
}

TEST_CASE("physical root solves the curve and normalizes at infinity") {
    auto model = make_curve_model(make_params(Rational(3), Rational(2)));
    for (Complex z : {Complex(8.0, 3.0), Complex(-5.0, 1.0), Complex(0.2, 4.0)}) {
        Complex w = physical_root(model, z);
        Complex v = std::pow(w, 1.0 / model.d);
        Complex resid = std::pow(v, model.A) - z * std::pow(v, model.B) + z;
        CHECK(std::abs(resid) < 1e-9 * (1.0 + std::abs(z)));
    }
    Complex far = physical_root(model, Complex(1e6, 0.0));
    CHECK(std::abs(far - 1.0) < 1e-3);
}

TEST_CASE("density matches closed forms") {
    auto mp = make_curve_model(make_params(Rational(2), Rational(1)));
    CHECK(density(mp, 2.0) == doctest::Approx(0.159154943091895336).epsilon(1e-10));
    CHECK(density(mp, 1.0) == doctest::Approx(mp_density(1.0)).epsilon(1e-10));
    CHECK(density(mp, 3.9) == doctest::Approx(mp_density(3.9)).epsilon(1e-8));

    // (3, 1): reference values from the cubic w^3 - x w + x = 0 solved in
    // arbitrary precision.
    auto fc3 = make_curve_model(make_params(Rational(3), Rational(1)));
    CHECK(density(fc3, 1.0) == doctest::Approx(0.178979127488028463).epsilon(1e-10));
    CHECK(density(fc3, 4.0) == doctest::Approx(0.040493137951167063).epsilon(1e-10));
}

TEST_CASE("density evaluator agrees with pointwise density") {
    auto model = make_curve_model(make_params(Rational(3), Rational(1)));
    DensityEvaluator rho(model);
    for (double x : {0.1, 0.5, 1.0, 3.0, 6.0}) {
        CHECK(rho(x) == doctest::Approx(density(model, x)).epsilon(1e-8));
    }
}

TEST_CASE("sampled profile") {
    auto model = make_curve_model(make_params(Rational(2), Rational(1)));
    auto profile = sample_density(model, 200);
    CHECK(profile.grid.size() == 200);
    CHECK(std::abs(profile.mass - 1.0) < 1e-6);
    for (size_t i = 0; i + 1 < profile.grid.size(); ++i) {
        CHECK(profile.grid[i] < profile.grid[i + 1]);
        CHECK(profile.values[i] >= 0.0);
    }
    CHECK(profile.grid.front() > 0.0);
    CHECK(profile.grid.back() < profile.edge.L);
    // Soft-edge exponent near the upper endpoint.
    CHECK(profile.endpoint_exponent_at_one == doctest::Approx(0.5).epsilon(0.2));

    CHECK_THROWS_AS(sample_density(model, 8), std::invalid_argument);
}

TEST_CASE("density moments match exact Raney values") {
    auto params = make_params(Rational(2), Rational(1));
    auto model = make_curve_model(params);
    for (long n : {0L, 1L, 3L}) {
        double exact = to_double(raney_exact(params, n));
        CHECK(density_moment(model, n, 1e-9) == doctest::Approx(exact).epsilon(1e-8));
    }
}

TEST_CASE("origin exponent") {
    CHECK(origin_exponent(make_curve_model(make_params(Rational(2), Rational(1)))) ==
          doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(origin_exponent(make_curve_model(make_params(Rational(3), Rational(1)))) ==
          doctest::Approx(-2.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("integer-theta hard-edge curve: theta = 1 is the arcsine law") {
    auto model = make_jacobi_curve_model(1);
    for (double x : {0.1, 0.3, 0.5, 0.9}) {
        CHECK(density(model, x) == doctest::Approx(arcsine_density(x)).epsilon(1e-8));
    }
    CHECK(jacobi_support_lower(model) < 1e-6);
    // m_1 = C(2, 1)/4 = 1/2 and m_2 = C(4, 2)/16 = 3/8.
    CHECK(jacobi_density_moment(model, 1, 1e-8) == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(jacobi_density_moment(model, 2, 1e-8) == doctest::Approx(0.375).epsilon(1e-6));
}

TEST_CASE("integer-theta hard-edge curve: theta = 2") {
    auto model = make_jacobi_curve_model(2);
    // The support fills (0, 1): the curve's only finite branch points sit at
    // z = 0 and z = 1.
    CHECK(jacobi_support_lower(model) < 1e-6);
    // Unit mass and the first binomial moment C(3, 1) (4/27) = 4/9.
    CHECK(jacobi_density_moment(model, 0, 1e-8) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(jacobi_density_moment(model, 1, 1e-8) == doctest::Approx(4.0 / 9.0).epsilon(1e-6));
    // Reference values from the cubic (z-1)w^3 - (3z/4)w - z/4 = 0 solved in
    // arbitrary precision.
    CHECK(density(model, 0.1) == doctest::Approx(0.34335088 / (0.1 * std::numbers::pi)).epsilon(1e-6));
    CHECK(density(model, 0.5) == doctest::Approx(0.90366975 / (0.5 * std::numbers::pi)).epsilon(1e-6));
    // Inverse-square-root blowup at the upper edge.
    double near = 1.0 - 1e-5;
    double asym = std::sqrt(0.75 / (near * near * (1.0 - near))) / std::numbers::pi;
    CHECK(density(model, near) == doctest::Approx(asym).epsilon(1e-3));
}
