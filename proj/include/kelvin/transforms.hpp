#pragma once

#include <kelvin/sampled.hpp>
#include <kelvin/types.hpp>

#include <functional>
#include <string>
#include <vector>

namespace kelvin {

// f(x) = Σ c_k e^{-λ_k x}
struct TestFunction {
    std::vector<double> coefficients;
    std::vector<double> rates;

    double operator()(double x) const;
    double l1_norm() const;
    // (∫₀^∞ |f|^p x^{νp-1} dx)^{1/p}
    double weighted_norm(double nu, double p) const;
};

struct MellinSpec {
    double nu = 0.5;
    double p = 2.0;
};

// Solves f*(1) = f*'(1) = 0 with c_1 = 1 (minimum-norm for more than three rates), then
// rescales to unit L¹ norm.
TestFunction make_test_function(const std::vector<double>& rates);

Complex mellin(const TestFunction& f, Complex s);
Complex mellin(const SampledFunction& f, Complex s, const Tolerance& tol = Tolerance{1e-14, 1e-10, 30});

double norm_bound_f(const MellinSpec& spec);
double norm_bound_g(double gamma, const ContourSpec& spec = ContourSpec{0.5, 40.0, 16});

enum class ForwardMethod { Auto, MellinBarnes, Composition, Direct };
const char* forward_method_name(ForwardMethod m);

Tolerance transform_tolerance();

// (Ff)(τ) through the Mellin-Parseval line integral; τ may be complex, in which case the
// poles of Γ(s±iτ) that cross Re s = ν contribute their residues (analytic continuation).
Complex forward_f_at(const TestFunction& f, Complex tau, const Tolerance& tol = transform_tolerance());
// (Ff)(τ) = ∫₀^∞ cos(2uτ) ∫₀^∞ K_0(4x^{1/4}cosh^{1/2}u) f(x) dx du
double forward_f_composition(const TestFunction& f, double tau, const Tolerance& tol = transform_tolerance());
// (Ff)(τ) = ∫₀^∞ 𝒦(x,τ) f(x) dx
double forward_f_direct(const std::function<double(double)>& f, double tau,
                        const Tolerance& tol = transform_tolerance());

SampledFunction forward_f(const TestFunction& f, const std::vector<double>& tau_grid,
                          const Tolerance& tol = transform_tolerance(), ForwardMethod method = ForwardMethod::Auto,
                          ExecPolicy policy = ExecPolicy::Parallel);
SampledFunction forward_f(const SampledFunction& f, const std::vector<double>& tau_grid,
                          const Tolerance& tol = transform_tolerance(), ExecPolicy policy = ExecPolicy::Parallel);

// Ff as an analytic function of τ, for inversion along rotated contours.
struct ContinuedTransform {
    std::function<Complex(Complex)> at;
};
ContinuedTransform continue_forward_f(const TestFunction& f, const Tolerance& tol = transform_tolerance());

// g on [0, support_end]; zero beyond.
struct IndexFunction {
    std::function<double(double)> g;
    double support_end = 0.0;
};
IndexFunction as_index_function(const SampledFunction& g);

// τ²e^{-τ²/(2σ²)} with unit L¹ norm, cut at 10σ.
IndexFunction gaussian_bump_datum(double sigma = 0.6);

// Gg kept in analytic form: values and x-slopes come from τ-quadrature of the kernel.
struct GTransform {
    IndexFunction g;
    Tolerance tol = transform_tolerance();

    double operator()(double x) const;
    double slope(double x) const;
};

SampledFunction forward_g(const IndexFunction& g, const std::vector<double>& x_grid,
                          const Tolerance& tol = transform_tolerance(), ExecPolicy policy = ExecPolicy::Parallel);
SampledFunction forward_g(const SampledFunction& g, const std::vector<double>& x_grid,
                          const Tolerance& tol = transform_tolerance(), ExecPolicy policy = ExecPolicy::Parallel);

enum class InversionVariant { Published, PublishedAltScaling, Corrected };
const char* variant_name(InversionVariant v);

struct InversionOptions {
    SeriesControl ctl{};
    Tolerance tol = Tolerance{1e-13, 1e-10, 30};
    InversionVariant variant = InversionVariant::Corrected;
    ExecPolicy policy = ExecPolicy::Parallel;
    double rotation = pi / 6.0;  // contour angle for the corrected F inversion
    double tau_cap = 30.0;
};

struct Inversion {
    SampledFunction result;
    std::vector<std::string> warnings;
    double tau_end = 0.0;  // where the index integral was truncated
};

// Real-axis inversion from samples; only the published variants are available here.
Inversion inverse_f(const SampledFunction& Ff, const std::vector<double>& x_grid, const InversionOptions& opt);
Inversion inverse_f(const ContinuedTransform& Ff, const std::vector<double>& x_grid, const InversionOptions& opt);

// Stieltjes inversion; the sampled overload differentiates a cubic spline.
Inversion inverse_g(const SampledFunction& Gg, const std::vector<double>& x_grid, const InversionOptions& opt);
Inversion inverse_g(const GTransform& Gg, const std::vector<double>& x_grid, const InversionOptions& opt);

}  // namespace kelvin
