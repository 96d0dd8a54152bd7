#include <doctest.h>

#include "oracles.hpp"

#include <kelvin/kernel.hpp>

using namespace kelvin;
using oracle::rel;

namespace {

double kernel_oracle(double x, double tau) {
    const double w = 2.0 * std::pow(4.0 * x, 0.25);
    return std::norm(oracle::bessel_k_trapezoid(Complex(0.0, 2.0 * tau), w * std::polar(1.0, pi / 4.0), 1e-3, 14.0));
}

}  // namespace

TEST_CASE("definition matches the trapezoid oracle") {
    for (double x : {0.1, 1.0, 3.0, 10.0})
        for (double t : {0.0, 0.5, 2.0}) CHECK(rel(kernel_definition(x, t).value, kernel_oracle(x, t)) < 1e-10);
}

TEST_CASE("reference values") {
    // mpmath, 20 digits
    CHECK(rel(kernel_definition(1.0, 0.5).value, 0.0075272360178691162249) < 1e-13);
    CHECK(rel(kernel_definition(2.0, 0.0).value, 0.0038126387727371444069) < 1e-13);
    CHECK(rel(kernel_at(1e-4, 1.0).value, 0.034131892641497811802) < 1e-9);
}

TEST_CASE("three representations agree") {
    for (double x : {0.5, 2.0})
        for (double t : {0.0, 1.0, 5.0}) {
            double d = kernel_definition(x, t).value;
            CHECK(rel(kernel_mellin_barnes(x, t).value, d) < 1e-9);
            CHECK(rel(kernel_fourier_cosine(x, t).value, d) < 1e-9);
        }
}

TEST_CASE("kernel is even in tau") {
    CHECK(kernel_definition(1.5, -0.7).value == kernel_definition(1.5, 0.7).value);
}

TEST_CASE("jet derivatives against finite differences of the oracle") {
    const double x = 1.3, t = 0.8, h = 1e-3;
    KernelJet j = kernel_jet(x, t);
    double f[5];
    for (int k = -2; k <= 2; ++k) f[k + 2] = kernel_oracle(x + k * h, t);
    double d1 = (f[0] - 8 * f[1] + 8 * f[3] - f[4]) / (12 * h);
    double d2 = (-f[0] + 16 * f[1] - 30 * f[2] + 16 * f[3] - f[4]) / (12 * h * h);
    CHECK(rel(j.d[0], f[2]) < 1e-10);
    CHECK(rel(j.d[1], d1) < 1e-7);
    CHECK(rel(j.d[2], d2) < 1e-5);
    KernelSlope s = kernel_with_slope(x, t);
    CHECK(rel(s.dx, d1) < 1e-7);
}

TEST_CASE("ODE and operator residuals are small") {
    for (double x : {0.2, 1.0, 7.0}) {
        KernelJet j = kernel_jet(x, 1.5);
        CHECK(std::abs(ode_residual(j)) < 1e-9);
        CHECK(std::abs(operator_form_residual(j)) < 1e-9);
    }
}

TEST_CASE("invalid arguments") {
    CHECK_THROWS_AS(kernel_definition(0.0, 1.0), NumericError);
    CHECK_THROWS_AS(kernel_definition(-1.0, 1.0), NumericError);
    CHECK_THROWS_AS(kernel_mellin_barnes(1.0, 1.0, ContourSpec{-0.5, 40.0, 16}), NumericError);
}
