#pragma once

#include <kelvin/types.hpp>

#include <cmath>

// Reference computations used only by the tests. They avoid the library's adaptive
// machinery so that agreement means something.
namespace oracle {

using kelvin::Complex;

inline double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }
inline double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// K_ν(z) by a plain trapezoid rule on the cosh representation; the integrand is smooth and
// decays double-exponentially, so the trapezoid rule converges geometrically in 1/h.
inline Complex bessel_k_trapezoid(Complex nu, Complex z, double h = 2e-3, double ymax = 12.0) {
    Complex s = 0.5 * std::exp(-z);
    for (double y = h; y <= ymax; y += h) {
        Complex v = std::exp(-z * std::cosh(y)) * std::cosh(nu * y);
        s += v;
        if (std::abs(v) < 1e-300) break;
    }
    return s * h;
}

// Stirling series for log Γ with recurrence shift, independent of the Lanczos form.
inline Complex log_gamma_stirling(Complex z) {
    Complex shift = 0.0;
    while (std::abs(z) < 20.0 || z.real() < 10.0) {
        shift -= std::log(z);
        z += 1.0;
    }
    const double b[] = {1.0 / 12, -1.0 / 360, 1.0 / 1260, -1.0 / 1680, 1.0 / 1188,
                        -691.0 / 360360, 1.0 / 156};
    Complex zi = 1.0 / z, zi2 = zi * zi, corr = 0.0, p = zi;
    for (double c : b) {
        corr += c * p;
        p *= zi2;
    }
    return shift + (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * kelvin::pi) + corr;
}

}  // namespace oracle
