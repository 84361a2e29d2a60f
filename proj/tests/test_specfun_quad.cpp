#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "raneylab/quad.hpp"
#include "raneylab/specfun.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

using namespace raneylab;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("log gamma against reference values") {
    // Reference values computed with 30-digit arbitrary-precision arithmetic.
    Complex a = log_gamma(Complex(3.0, 1.0));
    CHECK(a.real() == doctest::Approx(0.500369347195166503).epsilon(1e-12));
    CHECK(a.imag() == doctest::Approx(0.947405451930721228).epsilon(1e-12));

    CHECK(log_gamma(Complex(0.5, 0.0)).real() ==
          doctest::Approx(0.572364942924700087).epsilon(1e-12));
    CHECK(log_gamma(Complex(0.5, 0.0)).imag() == doctest::Approx(0.0));

    CHECK(gamma(Complex(0.25, 0.0)).real() ==
          doctest::Approx(3.625609908221908312).epsilon(1e-12));

    // Reflection region.
    Complex g = gamma(Complex(-1.5, 0.5));
    CHECK(g.real() == doctest::Approx(0.937916662787885051).epsilon(1e-11));
    CHECK(g.imag() == doctest::Approx(0.349205668147804869).epsilon(1e-11));
}

TEST_CASE("log gamma functional identities") {
    for (Complex z : {Complex(0.3, 0.7), Complex(-2.2, 1.3), Complex(5.0, -3.0)}) {
        // Recurrence Gamma(z+1) = z Gamma(z).
        Complex lhs = gamma(z + Complex(1.0, 0.0));
        Complex rhs = z * gamma(z);
        CHECK(std::abs(lhs - rhs) / std::abs(lhs) < 1e-12);
        // Conjugate symmetry.
        Complex c = log_gamma(std::conj(z));
        CHECK(std::abs(c - std::conj(log_gamma(z))) < 1e-12 * (1.0 + std::abs(c)));
    }
    // Reflection Gamma(z) Gamma(1-z) = pi / sin(pi z).
    Complex z(0.3, -0.4);
    Complex prod = gamma(z) * gamma(Complex(1.0, 0.0) - z);
    Complex expect = kPi / std::sin(kPi * z);
    CHECK(std::abs(prod - expect) / std::abs(expect) < 1e-12);
}

TEST_CASE("log gamma poles") {
    CHECK_THROWS_AS(log_gamma(Complex(0.0, 0.0)), std::domain_error);
    CHECK_THROWS_AS(log_gamma(Complex(-3.0, 0.0)), std::domain_error);
}

TEST_CASE("adaptive integration") {
    auto r = integrate([](double y) { return y * y; }, 0.0, 1.0, 1e-12);
    CHECK(r.value == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(r.evaluations > 0);

    auto osc = integrate([](double y) { return std::sin(40.0 * y); }, 0.0, kPi, 1e-10);
    CHECK(osc.value == doctest::Approx((1.0 - std::cos(40.0 * kPi)) / 40.0).epsilon(1e-8));

    CHECK_THROWS_AS(integrate([](double) { return 0.0; }, 1.0, 0.0, 1e-8), std::invalid_argument);
}

TEST_CASE("endpoint power singularities") {
    // int_0^1 y^{-1/2} (1-y)^{1/2} dy = B(1/2, 3/2) = pi/2.
    auto beta = integrate([](double y) { return std::sqrt((1.0 - y) / y); }, 0.0, 1.0, 1e-10,
                          {-0.5, 0.5});
    CHECK(beta.value == doctest::Approx(kPi / 2.0).epsilon(1e-9));

    // int_0^1 y^{-0.9} dy = 10.
    auto hard = integrate([](double y) { return std::pow(y, -0.9); }, 0.0, 1.0, 1e-9, {-0.9, 0.0});
    CHECK(hard.value == doctest::Approx(10.0).epsilon(1e-8));

    CHECK_THROWS_AS(integrate([](double) { return 0.0; }, 0.0, 1.0, 1e-8, {-1.0, 0.0}),
                    std::invalid_argument);
}

TEST_CASE("principal value integration") {
    // PV int_0^1 y^2/(y - 0.3) dy, reference from arbitrary-precision quadrature.
    auto pv = pv_integrate([](double y) { return y * y; }, 0.0, 1.0, 0.3, 1e-12);
    CHECK(pv.value == doctest::Approx(0.876256807434848325).epsilon(1e-10));

    // Constant numerator: PV int_0^1 dy/(y - s) = log((1-s)/s).
    auto flat = pv_integrate([](double) { return 1.0; }, 0.0, 1.0, 0.4, 1e-12);
    CHECK(flat.value == doctest::Approx(std::log(1.5)).epsilon(1e-11));

    // Hilbert transform of the arcsine density vanishes inside the support.
    auto arcsine = pv_integrate(
        [](double y) { return 1.0 / (kPi * std::sqrt(y * (1.0 - y))); }, 0.0, 1.0, 0.4, 1e-8,
        {-0.5, -0.5});
    CHECK(std::abs(arcsine.value) < 1e-7);

    CHECK_THROWS_AS(pv_integrate([](double) { return 1.0; }, 0.0, 1.0, 1.5, 1e-8),
                    std::invalid_argument);
}
