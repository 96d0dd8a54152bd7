#include <doctest.h>

#include "oracles.hpp"

#include <kelvin/quadrature.hpp>
#include <kelvin/specfun.hpp>

using namespace kelvin;
using oracle::rel;

namespace {
const Tolerance tight{1e-15, 1e-12, 30};
}

TEST_CASE("decaying engine on closed forms") {
    auto r1 = integrate_decaying<double>([](double y) { return std::exp(-y); }, tight);
    CHECK(std::abs(r1.value - 1.0) < 1e-12);
    auto r2 = integrate_decaying<double>([](double y) { return std::exp(-y * y); }, tight);
    CHECK(std::abs(r2.value - std::sqrt(pi) / 2) < 1e-12);
    auto r3 = integrate_decaying<double>([](double y) { return bessel_k(0.0, y).real(); },
                                         Tolerance{1e-13, 1e-10, 30});
    CHECK(std::abs(r3.value - pi / 2) < 1e-9);
    CHECK(r1.err_estimate <= 1e-11);
}

TEST_CASE("decaying engine handles algebraic endpoint behaviour") {
    auto r = integrate_decaying<double>([](double y) { return std::pow(y, -0.7) * std::exp(-y); }, tight);
    CHECK(rel(r.value, cgamma(0.3).real()) < 1e-10);
}

TEST_CASE("decaying engine rejects non-finite integrands") {
    CHECK_THROWS_AS(integrate_decaying<double>([](double) { return std::nan(""); }, tight), NumericError);
}

TEST_CASE("fourier cosine engine") {
    auto e = [](double u) { return std::exp(-u); };
    CHECK(std::abs(integrate_fourier_cosine<double>(e, 0.0, tight).value - 1.0) < 1e-12);
    CHECK(std::abs(integrate_fourier_cosine<double>(e, 1.0, tight).value - 0.5) < 1e-11);
    auto g = [](double u) { return std::exp(-u * u); };
    CHECK(std::abs(integrate_fourier_cosine<double>(g, 2.0, tight).value -
                   std::sqrt(pi) / 2 * std::exp(-1.0)) < 1e-12);
    // High frequency on a slow envelope exercises the half-period summation.
    auto slow = [](double u) { return 1.0 / (1.0 + u * u); };
    auto r = integrate_fourier_cosine<double>(slow, 30.0, Tolerance{1e-13, 1e-9, 30});
    CHECK(std::abs(r.value - pi / 2 * std::exp(-30.0)) < 1e-11);
}

TEST_CASE("vertical contour engine: Mellin inversion of the exponential") {
    ContourSpec spec{1.0, 60.0, 24};
    for (double x : {1.0, 2.0}) {
        auto h = [x](Complex s) { return cgamma(s) * std::pow(x, -s); };
        auto r = integrate_vertical_contour(h, spec, tight);
        CHECK(std::abs(r.value - std::exp(-x)) < 1e-12);
        CHECK(std::abs(r.value.imag()) <= r.err_estimate + 1e-300);
    }
}

TEST_CASE("vertical contour engine: squared Macdonald function on a left line") {
    double tau = 1.0, x = 1.0;
    const Complex i(0, 1);
    auto h = [&](Complex s) {
        return std::exp(log_gamma(i * tau - s) + log_gamma(-s - i * tau) + log_gamma(-s) -
                        log_gamma(0.5 - s)) * std::pow(x, -s);
    };
    auto r = integrate_vertical_contour(h, ContourSpec{-0.5, 40.0, 20}, tight);
    Complex k = bessel_k(Complex(0, tau), 1.0 / std::sqrt(x));
    CHECK(rel(std::sqrt(pi) / 2.0 * r.value, k * k) < 1e-9);
}

TEST_CASE("vertical contour engine reports an insufficient truncation height") {
    auto h = [](Complex s) { return cgamma(s); };
    CHECK_THROWS_AS(integrate_vertical_contour(h, ContourSpec{1.0, 3.0, 4}, tight), NumericError);
}

TEST_CASE("linearity and tolerance monotonicity") {
    auto f = [](double y) { return std::exp(-y) * std::cos(y); };
    auto g = [](double y) { return std::exp(-2 * y * y); };
    Tolerance t{1e-13, 1e-10, 30};
    double a = 2.5, b = -0.75;
    auto lin = integrate_decaying<double>([&](double y) { return a * f(y) + b * g(y); }, t).value;
    double sep = a * integrate_decaying<double>(f, t).value + b * integrate_decaying<double>(g, t).value;
    CHECK(std::abs(lin - sep) < 2e-10 * std::abs(sep));
    double exact = 0.5;
    double loose = std::abs(integrate_decaying<double>(f, Tolerance{1e-6, 1e-5, 30}).value - exact);
    double strict = std::abs(integrate_decaying<double>(f, Tolerance{1e-7, 1e-6, 30}).value - exact);
    CHECK(strict <= loose + 1e-16);
}
