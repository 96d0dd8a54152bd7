#pragma once

#include <kelvin/sampled.hpp>
#include <kelvin/transforms.hpp>
#include <kelvin/types.hpp>

#include <array>
#include <utility>
#include <vector>

namespace kelvin {

struct WedgeParams {
    double beta = pi / 2.0;
    double r = 1.0;
    double theta = pi / 4.0;

    void validate() const;
};

// sinh(θτ)/sinh(βτ), stable for small and large βτ; θ/β at τ = 0.
double sinh_ratio(double theta, double beta, double tau);

// τ²e^{-2πτ} scaled to unit integral.
IndexFunction reference_boundary_datum();

double wedge_solution(const IndexFunction& g, const WedgeParams& w, const Tolerance& tol = transform_tolerance());
double wedge_solution(const SampledFunction& g, const WedgeParams& w, const Tolerance& tol = transform_tolerance());

struct FiniteSteps {
    double h_r;
    double h_theta;
};

FiniteSteps default_steps(const WedgeParams& w);

// Base steps for a convergence study: twice the default h_r, and an h_theta small enough
// that the 4h stencil stays inside the wedge.
FiniteSteps study_steps(const WedgeParams& w);

struct ResidualReport {
    double r = 0.0, theta = 0.0;
    double residual = 0.0;
    FiniteSteps steps{0.0, 0.0};
    // r³u_rrrr, r·u_rrθθ, (11/2)r²u_rrr, (1/2)u_rθθ, (11/2)r·u_rr, (1/2)u_r, -u
    std::array<double, 7> terms{};
};

ResidualReport pde_residual(const IndexFunction& g, const WedgeParams& w, const FiniteSteps& h,
                            ExecPolicy policy = ExecPolicy::Parallel);
ResidualReport pde_residual(const SampledFunction& g, const WedgeParams& w, const FiniteSteps& h,
                            ExecPolicy policy = ExecPolicy::Parallel);

struct ConvergenceStudy {
    std::vector<double> h_r;
    std::vector<double> residual;
    double order = 0.0;
};

// Residuals at steps h, 2h, 4h (both steps scaled together) and the least-squares log-log slope.
ConvergenceStudy residual_convergence(const IndexFunction& g, const WedgeParams& w, const FiniteSteps& h,
                                      ExecPolicy policy = ExecPolicy::Parallel);

struct BoundaryTrace {
    SampledFunction at_zero;
    SampledFunction at_beta;
};

BoundaryTrace boundary_trace(const IndexFunction& g, double beta, const std::vector<double>& r_grid,
                             const Tolerance& tol = transform_tolerance(), ExecPolicy policy = ExecPolicy::Parallel);
BoundaryTrace boundary_trace(const SampledFunction& g, double beta, const std::vector<double>& r_grid,
                             const Tolerance& tol = transform_tolerance(), ExecPolicy policy = ExecPolicy::Parallel);

}  // namespace kelvin
