#pragma once

#include <kelvin/types.hpp>

#include <array>

namespace kelvin {

enum class KernelMethod { Definition, MellinBarnes, FourierCosine };

const char* method_name(KernelMethod m);

struct KernelValue {
    double value = 0.0;
    double err_estimate = 0.0;
    KernelMethod method = KernelMethod::Definition;
};

struct KernelJet {
    double x = 0.0;
    double tau = 0.0;
    std::array<double, 5> d{};  // ∂ⁿ𝒦/∂xⁿ, n = 0..4
    double err_estimate = 0.0;
};

// Documented envelope of the three representations.
inline constexpr double kernel_x_min = 1e-3;
inline constexpr double kernel_x_max = 1e3;
inline constexpr double kernel_tau_max = 10.0;

// Contour used by default for the Mellin-Barnes route: abscissa near the saddle of the
// gamma product for large x, and a height that clears the τ-dependent plateau.
ContourSpec kernel_contour(double x, double tau);
Tolerance kernel_contour_tolerance();

KernelValue kernel_definition(double x, double tau);
KernelValue kernel_mellin_barnes(double x, double tau, const ContourSpec& spec,
                                 const Tolerance& tol = kernel_contour_tolerance());
KernelValue kernel_mellin_barnes(double x, double tau);
KernelValue kernel_fourier_cosine(double x, double tau,
                                  const Tolerance& tol = Tolerance{1e-18, 1e-11, 30});

// Canonical evaluation: Definition inside the envelope, Mellin-Barnes below kernel_x_min.
KernelValue kernel_at(double x, double tau);

// 𝒦 and ∂𝒦/∂x from the definition, differentiating K_{2iτ} under its integral sign.
struct KernelSlope {
    double value;
    double dx;
};
KernelSlope kernel_with_slope(double x, double tau);

KernelJet kernel_jet(double x, double tau, const ContourSpec& spec,
                     const Tolerance& tol = kernel_contour_tolerance());
KernelJet kernel_jet(double x, double tau);

// Fourth-order ODE residual normalized by its largest term.
double ode_residual(const KernelJet& jet);
// (d/dx x^{1/2} d/dx)((x d/dx)² + τ²)𝒦 − 𝒦/√x, normalized by its largest term.
double operator_form_residual(const KernelJet& jet);

}  // namespace kelvin
