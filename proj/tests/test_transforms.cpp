#include <doctest.h>

#include "oracles.hpp"

#include <kelvin/kernel.hpp>
#include <kelvin/quadrature.hpp>
#include <kelvin/transforms.hpp>

using namespace kelvin;
using oracle::rel;

namespace {

std::vector<double> grid(double a, double b, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
    return v;
}

const TestFunction exp1{{1.0}, {1.0}};

}  // namespace

TEST_CASE("test function fixture") {
    TestFunction f = make_test_function({1.0, 2.0, 3.0});
    REQUIRE(f.coefficients.size() == 3);
    CHECK(std::abs(mellin(f, 1.0)) < 1e-13);
    const double h = 1e-4;
    CHECK(std::abs((mellin(f, 1.0 + h) - mellin(f, 1.0 - h)).real() / (2 * h)) < 1e-7);
    CHECK(f.l1_norm() == doctest::Approx(1.0).epsilon(1e-12));
    // weighted norm at p = 2, ν = 1/2 is (∫f²)^{1/2}
    double direct = 0;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) direct += f.coefficients[i] * f.coefficients[j] / (f.rates[i] + f.rates[j]);
    CHECK(f.weighted_norm(0.5, 2.0) == doctest::Approx(std::sqrt(direct)).epsilon(1e-12));

    CHECK_THROWS_AS(make_test_function({1.0, 2.0}), NumericError);
    CHECK_THROWS_AS(make_test_function({1.0, 1.0, 2.0}), NumericError);
    CHECK_THROWS_AS(make_test_function({1.0, -2.0, 3.0}), NumericError);
}

TEST_CASE("mellin transforms") {
    CHECK(rel(mellin(exp1, Complex(3.0)), Complex(2.0)) < 1e-14);
    Complex s(0.5, 2.0);
    CHECK(rel(mellin(TestFunction{{1.0}, {2.0}}, s), std::exp(oracle::log_gamma_stirling(s)) * std::pow(2.0, -s)) < 1e-12);
}

TEST_CASE("norm bound constants") {
    CHECK(norm_bound_f({0.5, 2.0}) == doctest::Approx(std::sqrt(6.0) * pi / 64.0).epsilon(1e-14));
    CHECK(norm_bound_g(0.5) == doctest::Approx(pi / 16.0).epsilon(1e-10));
    CHECK_THROWS_AS(norm_bound_f({0.5, 0.5}), NumericError);
}

TEST_CASE("forward F of exp(-x) against reference values") {
    // mpmath quadrature of the definition
    CHECK(rel(forward_f_at(exp1, 0.5).real(), 0.025209904971009244128) < 1e-10);
    CHECK(rel(forward_f_at(exp1, 1.0).real(), 0.0077727566224735000311) < 1e-10);
    CHECK(rel(forward_f_direct([](double x) { return std::exp(-x); }, 1.0), 0.0077727566224735000311) < 1e-9);
    CHECK(rel(forward_f_composition(exp1, 1.0), 0.0077727566224735000311) < 1e-9);
}

TEST_CASE("forward F of samples") {
    auto g = grid(0.0, 40.0, 801);
    std::vector<double> v;
    for (double x : g) v.push_back(std::exp(-x));
    auto ff = forward_f(SampledFunction(g, v), {1.0});
    // natural spline end conditions cost O(h²) near x = 0
    CHECK(rel(ff.values()[0], 0.0077727566224735000311) < 5e-5);
}

TEST_CASE("forward F continues off the real axis") {
    TestFunction f = make_test_function({1.0, 2.0, 3.0});
    auto c = continue_forward_f(f);
    CHECK(rel(c.at(Complex(1.0)), forward_f_at(f, 1.0)) < 1e-14);
    // Ff is even and real on the real axis, so Ff(conj τ) = conj Ff(τ)
    Complex t = std::polar(1.2, -pi / 6.0);
    CHECK(rel(c.at(std::conj(t)), std::conj(c.at(t))) < 1e-9);
    // continuous where the pole at s = iτ crosses Re s = 1/2
    const double rho = std::sqrt(0.5);
    Complex a = c.at(std::polar(rho - 1e-7, -pi / 4)), b = c.at(std::polar(rho + 1e-7, -pi / 4));
    CHECK(std::abs(a - b) < 1e-5 * std::abs(a));
}

TEST_CASE("inverse F round trip") {
    TestFunction f = make_test_function({1.0, 2.0, 3.0});
    auto xs = grid(0.5, 2.0, 4);
    auto inv = inverse_f(continue_forward_f(f), xs, InversionOptions{});
    for (std::size_t k = 0; k < xs.size(); ++k) CHECK(std::abs(inv.result.values()[k] - f(xs[k])) < 1e-8);
}

TEST_CASE("inverse F from samples needs a published variant") {
    SampledFunction s(grid(0.0, 5.0, 11), std::vector<double>(11, 0.0));
    CHECK_THROWS_AS(inverse_f(s, {1.0}, InversionOptions{}), NumericError);
    InversionOptions opt;
    opt.variant = InversionVariant::Published;
    CHECK_THROWS_AS(inverse_f(s, {2.0, 1.0}, opt), NumericError);
    CHECK_THROWS_AS(inverse_f(s, {}, opt), NumericError);
}

TEST_CASE("forward G and its inverse") {
    IndexFunction g = gaussian_bump_datum();
    GTransform G{g};
    double direct = integrate_interval<double>([&](double t) { return kernel_definition(1.0, t).value * g.g(t); }, 0.0,
                                               g.support_end, Tolerance{1e-16, 1e-12, 30}, 12)
                        .value;
    CHECK(rel(G(1.0), direct) < 1e-10);
    const double h = 1e-4;
    CHECK(rel(G.slope(1.0), (G(1.0 + h) - G(1.0 - h)) / (2 * h)) < 1e-6);
    auto xs = grid(0.25, 2.0, 4);
    auto inv = inverse_g(G, xs, InversionOptions{});
    for (std::size_t k = 0; k < xs.size(); ++k) CHECK(std::abs(inv.result.values()[k] - g.g(xs[k])) < 1e-6);
}

TEST_CASE("sparse Gg samples warn") {
    SampledFunction s({0.5, 1.0, 2.0}, {1.0, 0.5, 0.25});
    auto inv = inverse_g(s, {1.0}, InversionOptions{});
    CHECK(!inv.warnings.empty());
}
