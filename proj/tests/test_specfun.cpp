#include <doctest.h>

#include "oracles.hpp"

#include <kelvin/specfun.hpp>

#include <random>

using namespace kelvin;
using oracle::rel;

TEST_CASE("gamma at integers and the reflection oracle") {
    CHECK(rel(cgamma(1.0), Complex(1.0)) < 1e-14);
    CHECK(rel(cgamma(5.0), Complex(24.0)) < 1e-14);
    Complex g = cgamma(Complex(1.0, 2.0));
    CHECK(rel(std::norm(g), 2.0 * pi / std::sinh(2.0 * pi)) < 1e-13);
    CHECK(rel(cgamma(0.5), Complex(std::sqrt(pi))) < 1e-14);
    CHECK(rel(cgamma(-0.5), Complex(-2.0 * std::sqrt(pi))) < 1e-14);
}

TEST_CASE("gamma poles are reported") {
    CHECK_THROWS_AS(cgamma(0.0), NumericError);
    CHECK_THROWS_AS(cgamma(-3.0), NumericError);
    CHECK(rgamma(-2.0) == Complex(0.0));
}

TEST_CASE("log gamma agrees with an independent Stirling series") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-40.0, 40.0);
    int n = 0;
    while (n < 200) {
        Complex z(u(rng), u(rng));
        if (std::abs(z) > 50.0) continue;
        if (z.real() < 0 && std::abs(z.imag()) < 0.5) continue;
        ++n;
        Complex a = cgamma(z), b = std::exp(oracle::log_gamma_stirling(z));
        CHECK(rel(a, b) < 1e-13);
    }
}

TEST_CASE("gamma recurrence, reflection and duplication on random points") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-20.0, 20.0);
    for (int k = 0; k < 100; ++k) {
        Complex z(u(rng), u(rng));
        if (std::abs(z) > 20.0 || std::abs(z.imag()) < 1e-3) continue;
        CHECK(rel(cgamma(z + 1.0), z * cgamma(z)) < 1e-12);
        Complex s = 0.5 * z;
        Complex dup = cgamma(s) * cgamma(s + 0.5) * std::pow(Complex(2.0), 2.0 * s - 1.0) / std::sqrt(pi);
        CHECK(rel(cgamma(2.0 * s), dup) < 1e-11);
    }
    for (double t = 0.1; t <= 10.0; t += 0.1) {
        double v = std::norm(cgamma(Complex(0.0, t))) * t * std::sinh(pi * t) / pi;
        CHECK(std::abs(v - 1.0) < 1e-11);
    }
}

TEST_CASE("beta function") {
    CHECK(rel(cbeta(0.5, 0.5), Complex(pi)) < 1e-14);
    CHECK(rel(cbeta(1.0, 1.0), Complex(1.0)) < 1e-14);
    CHECK(rel(cbeta(2.0, 3.0), Complex(1.0 / 12.0)) < 1e-14);
}

TEST_CASE("besselK closed forms and oracle") {
    CHECK(rel(bessel_k(0.5, 1.0), Complex(std::sqrt(pi / 2.0) * std::exp(-1.0))) < 1e-12);
    CHECK(rel(bessel_k(0.0, 1.0), Complex(0.42102443824070833)) < 1e-12);
    Complex nu(0.3, 4.0), z(0.7, 1.1);
    CHECK(bessel_k(nu, z) == bessel_k(-nu, z));
    CHECK(rel(bessel_k(nu, z), oracle::bessel_k_trapezoid(nu, z)) < 1e-10);
    Complex a = std::polar(1.5, pi / 4);
    CHECK(rel(bessel_k(Complex(0, 6.0), a), oracle::bessel_k_trapezoid(Complex(0, 6.0), a)) < 1e-10);
    CHECK_THROWS_AS(bessel_k(0.0, Complex(-1.0, 0.0)), NumericError);
}

TEST_CASE("besselK at the edge of the supported envelope") {
    Complex nu(0.0, 20.0), z(0.05, 0.0);
    Complex v = bessel_k(nu, z);
    Complex o = oracle::bessel_k_trapezoid(nu, z, 5e-4, 9.0);
    CHECK(std::abs(v - o) < 1e-10 * std::abs(bessel_k(0.0, z)));
}

TEST_CASE("besselI closed forms and the Wronskian oracle") {
    CHECK(rel(bessel_i(0.0, 1e-9), Complex(1.0)) < 1e-15);
    CHECK(rel(bessel_i(0.5, 1.0), Complex(std::sqrt(2.0 / pi) * std::sinh(1.0))) < 1e-14);
    CHECK(rel(bessel_i(-2.0, 1.3), bessel_i(2.0, 1.3)) < 1e-15);
    for (Complex nu : {Complex(0, 2.0), Complex(0, 0.5), Complex(0.25, 3.0)}) {
        for (Complex z : {std::polar(1.0, pi / 4), Complex(2.0, -0.5), std::polar(6.0, -pi / 4)}) {
            Complex i0 = bessel_i(nu, z), i1 = bessel_i(nu + 1.0, z);
            Complex di = i1 + nu / z * i0;
            auto k = bessel_k_jet(nu, z);
            Complex w = i0 * k.derivative - di * k.value;
            CHECK(rel(w, -1.0 / z) < 1e-10);
        }
    }
    CHECK_THROWS_AS(bessel_i(0.0, 31.0), NumericError);
}

TEST_CASE("kelvin K pair is positive, even and matches the oracle product") {
    double v = kelvin_k_pair_sq(0.5, 2.0);
    Complex a = std::polar(2.0, pi / 4);
    Complex o = oracle::bessel_k_trapezoid(Complex(0, 1.0), a) *
                oracle::bessel_k_trapezoid(Complex(0, 1.0), std::conj(a));
    CHECK(v > 0.0);
    CHECK(rel(v, o.real()) < 1e-10);
    CHECK(kelvin_k_pair_sq(1.0, 1.3) == kelvin_k_pair_sq(-1.0, 1.3));
    Complex p = kelvin_k_pair_product(2.0, 0.8);
    CHECK(std::abs(p.imag()) <= 1e-10 * std::abs(p.real()));
    CHECK(rel(kelvin_k_pair_sq(0.0, 1.0), std::norm(bessel_k(0.0, std::polar(1.0, pi / 4)))) < 1e-12);
}

TEST_CASE("kelvin I pair: two routes agree and the imaginary part is odd in tau") {
    for (double tau : {0.0, 0.5, 1.0, 3.0}) {
        for (double x : {0.3, 1.0, 4.0, 12.0}) {
            Complex a = kelvin_i_pair_sq(tau, x);
            Complex b = kelvin_i_pair_hyper(tau, x).value;
            CHECK(rel(a, b) < 1e-8);
            Complex neg = kelvin_i_pair_hyper(Complex(-tau, 0.0), x).value;
            CHECK(std::abs(neg - std::conj(a)) < 1e-9 * std::abs(a));
        }
    }
    Complex z0 = kelvin_i_pair_sq(0.0, 2.0);
    CHECK(std::abs(z0.imag()) <= 1e-10 * std::abs(z0));
    CHECK(rel(kelvin_i_pair_sq(0.0, 1e-8), Complex(1.0)) < 1e-14);
}

TEST_CASE("kelvin I pair derivative matches a centred difference") {
    Complex tau(0.7, -0.3);
    for (double w : {0.5, 2.0, 9.0}) {
        double h = 1e-5 * w;
        Complex fd = (kelvin_i_pair_hyper(tau, w + h).value - kelvin_i_pair_hyper(tau, w - h).value) / (2 * h);
        CHECK(rel(kelvin_i_pair_hyper(tau, w).d_arg, fd) < 1e-7);
    }
}

TEST_CASE("0F3 series") {
    CHECK(hyper0f3(0.3, 1.2, 2.0, 0.0) == Complex(1.0));
    double z = 1e-3;
    CHECK(rel(hyper0f3(1.0, 1.0, 1.0, z), Complex(1.0 + z + z * z / 16.0 + z * z * z / 1296.0)) < 1e-15);
    CHECK_THROWS_AS(hyper0f3(-1.0, 1.0, 1.0, 0.5), NumericError);
}

TEST_CASE("0F3 two-term form of the index integral equals the Kelvin form") {
    for (double tau : {0.3, 0.5, 1.2}) {
        for (double x : {0.5, 1.0, 3.0}) {
            const Complex i(0, 1);
            double sh = std::sinh(2 * pi * tau);
            Complex t1 = 2 * std::sqrt(pi) * std::pow(Complex(x), i * tau - 1.0) /
                         (tau * sh * cgamma(2.0 * i * tau)) *
                         hyper0f3(0.5 + i * tau, 1.0 + i * tau, 1.0 + 2.0 * i * tau, x / 4);
            Complex lhs = t1 + std::conj(t1);
            double w = 2 * std::pow(x, 0.25);
            Complex k1 = -8 * std::sqrt(pi) * tau * cgamma(2.0 * i * tau) / (x * sh) *
                         kelvin_i_pair_sq(tau, w);
            Complex rhs = k1 + std::conj(k1);
            CHECK(rel(lhs, rhs) < 1e-7);
        }
    }
}

TEST_CASE("inversion kernel point") {
    CHECK(inversion_kernel_point(0.0, 1.7) == doctest::Approx(0.0).epsilon(1e-15));
    double r1 = inversion_kernel_point(1e-3, 2.0) / 1e-3;
    double r2 = inversion_kernel_point(1e-4, 2.0) / 1e-4;
    CHECK(std::abs(r1 - r2) < 1e-4 * std::abs(r2));
    const Complex i(0, 1);
    double direct = (cgamma(1.0 + i) * kelvin_i_pair_hyper(0.5, 2.0).value).imag();
    CHECK(std::abs(inversion_kernel_point(0.5, 2.0) - direct) < 1e-10 * std::abs(direct));
}
