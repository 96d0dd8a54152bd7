#include <doctest.h>

#include "oracles.hpp"

#include <kelvin/bvp.hpp>

using namespace kelvin;
using oracle::rel;

TEST_CASE("sinh ratio branches") {
    for (double t : {0.0, 1e-6, 0.3, 4.0, 40.0}) {
        long double exact = t == 0 ? 0.3L / 1.1L : std::sinh(0.3L * t) / std::sinh(1.1L * t);
        CHECK(rel(sinh_ratio(0.3, 1.1, t), double(exact)) < 1e-13);
    }
    CHECK(sinh_ratio(1.0, 1.0, 500.0) == doctest::Approx(1.0));
    CHECK(std::isfinite(sinh_ratio(0.5, 6.0, 300.0)));
}

TEST_CASE("wedge parameters") {
    CHECK_NOTHROW(WedgeParams{}.validate());
    CHECK_THROWS_AS((WedgeParams{0.0, 1.0, 0.0}).validate(), NumericError);
    CHECK_THROWS_AS((WedgeParams{pi / 2, -1.0, 0.1}).validate(), NumericError);
    CHECK_THROWS_AS((WedgeParams{pi / 2, 1.0, 2.0}).validate(), NumericError);
    CHECK_THROWS_AS((WedgeParams{7.0, 1.0, 0.5}).validate(), NumericError);
}

TEST_CASE("solution against a trapezoid oracle") {
    IndexFunction g = reference_boundary_datum();
    const WedgeParams w{pi / 2, 1.0, pi / 6};
    // τ-trapezoid of the oracle kernel, Richardson-extrapolated: the integrand vanishes like τ²
    // at 0 and is negligible at the support end, so the error is O(h⁴).
    const double wk = 2.0 * std::pow(4.0 * w.r, 0.25);
    auto trap = [&](double h) {
        double s = 0.0;
        for (int i = 1; i * h < g.support_end; ++i) {
            const double t = i * h;
            double k = std::norm(oracle::bessel_k_trapezoid(Complex(0.0, 2.0 * t), wk * std::polar(1.0, pi / 4)));
            s += k * std::sinh(w.theta * t) / std::sinh(w.beta * t) * g.g(t);
        }
        return s * h;
    };
    const double ref = (16.0 * trap(0.01) - trap(0.02)) / 15.0;
    CHECK(rel(wedge_solution(g, w), ref) < 1e-8);
}

TEST_CASE("boundary values") {
    IndexFunction g = reference_boundary_datum();
    auto tr = boundary_trace(g, pi / 3, {0.5, 1.0, 4.0});
    for (double v : tr.at_zero.values()) CHECK(v == 0.0);
    auto G = forward_g(g, {0.5, 1.0, 4.0});
    for (std::size_t k = 0; k < 3; ++k) CHECK(rel(tr.at_beta.values()[k], G.values()[k]) < 1e-12);
}

TEST_CASE("PDE residual and its convergence") {
    IndexFunction g = reference_boundary_datum();
    WedgeParams w{pi / 2, 1.0, pi / 8};
    auto rep = pde_residual(g, w, default_steps(w));
    CHECK(rep.residual < 1e-5);
    auto study = residual_convergence(g, w, study_steps(w));
    REQUIRE(study.residual.size() == 3);
    CHECK(study.order > 3.5);
    CHECK_THROWS_AS(pde_residual(g, WedgeParams{pi / 2, 1.0, 0.01}, FiniteSteps{1e-2, 0.05}), NumericError);
}
