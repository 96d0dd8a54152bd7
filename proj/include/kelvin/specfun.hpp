#pragma once

#include <kelvin/types.hpp>

namespace kelvin {

inline constexpr double series_radius = 30.0;

Complex log_gamma(Complex z);
Complex cgamma(Complex z);
// 1/Γ(z); zero at the poles of Γ.
Complex rgamma(Complex z);
Complex cbeta(Complex a, Complex b);

Tolerance bessel_k_tolerance();

Complex bessel_k(Complex order, Complex z, const Tolerance& tol = bessel_k_tolerance());

struct BesselKJet {
    Complex value;
    Complex derivative;  // d/dz
};
BesselKJet bessel_k_jet(Complex order, Complex z, const Tolerance& tol = bessel_k_tolerance());

Complex bessel_i(Complex order, Complex z, const SeriesControl& ctl = {});

// K_{2iτ}(x e^{iπ/4})·K_{2iτ}(x e^{-iπ/4}) as a complex product; the imaginary part is
// quadrature residue.
Complex kelvin_k_pair_product(double tau, double x, const Tolerance& tol = bessel_k_tolerance());
double kelvin_k_pair_sq(double tau, double x, const Tolerance& tol = bessel_k_tolerance());

// I_{2iτ}(x e^{iπ/4})·I_{2iτ}(x e^{-iπ/4}) summed from the Bessel series.
Complex kelvin_i_pair_sq(double tau, double x, const SeriesControl& ctl = {});

struct PairJet {
    Complex value;
    Complex d_arg;  // derivative with respect to the Kelvin argument
};

// Same pair through (w/2)^{4iτ}/Γ(1+2iτ)² ₀F₃(1/2+iτ,1+iτ,1+2iτ; w⁴/64); τ may be complex.
PairJet kelvin_i_pair_hyper(Complex tau, double w, const SeriesControl& ctl = {});

Complex hyper0f3(Complex a1, Complex a2, Complex a3, Complex z, const SeriesControl& ctl = {});

// Im[Γ(1+2iτ)(ber²+bei²)_{2iτ}(arg)], the inversion kernel as printed.
double inversion_kernel_point(double tau, double arg, const SeriesControl& ctl = {});

}  // namespace kelvin
