#include <kelvin/kernel.hpp>

#include <kelvin/quadrature.hpp>
#include <kelvin/specfun.hpp>

#include <algorithm>
#include <cmath>

namespace kelvin {

namespace {

void check_point(double x, double tau) {
    if (!(x > 0.0) || !std::isfinite(x)) fail(ErrorKind::Domain, "kernel: x must be positive");
    if (!std::isfinite(tau)) fail(ErrorKind::Domain, "kernel: tau must be finite");
}

double kelvin_argument(double x) { return 2.0 * std::pow(4.0 * x, 0.25); }

const double mb_norm = 1.0 / (8.0 * std::sqrt(pi));

Complex mb_density(Complex s, double tau, double logx) {
    const Complex it(0.0, tau);
    return std::exp(log_gamma(s + it) + log_gamma(s - it) + log_gamma(s) + log_gamma(s + 0.5) -
                    s * logx);
}

}  // namespace

const char* method_name(KernelMethod m) {
    switch (m) {
        case KernelMethod::Definition: return "definition";
        case KernelMethod::MellinBarnes: return "mellin-barnes";
        case KernelMethod::FourierCosine: return "fourier-cosine";
    }
    return "unknown";
}

ContourSpec kernel_contour(double x, double tau) {
    double gamma;
    if (x >= 1.0)
        gamma = std::max(0.5, std::pow(x, 0.25));
    else if (x >= 1e-2)
        gamma = 0.5;
    else
        gamma = 0.25;
    return stirling_contour(gamma, 1e-22, std::abs(tau));
}

Tolerance kernel_contour_tolerance() { return {1e-300, 1e-12, 30}; }

KernelValue kernel_definition(double x, double tau) {
    check_point(x, tau);
    Complex p = kelvin_k_pair_product(std::abs(tau), kelvin_argument(x));
    return {p.real(), std::abs(p.imag()) + 1e-13 * std::abs(p.real()), KernelMethod::Definition};
}

KernelValue kernel_mellin_barnes(double x, double tau, const ContourSpec& spec, const Tolerance& tol) {
    check_point(x, tau);
    if (!(spec.abscissa > 0.0)) fail(ErrorKind::Domain, "kernel: contour abscissa must be positive");
    const double logx = std::log(x), t = std::abs(tau);
    auto r = integrate_contour<Complex>([&](Complex s) { return mb_density(s, t, logx); }, spec, tol);
    return {r.value.real() * mb_norm, (r.err_estimate + std::abs(r.value.imag())) * mb_norm,
            KernelMethod::MellinBarnes};
}

KernelValue kernel_mellin_barnes(double x, double tau) {
    return kernel_mellin_barnes(x, tau, kernel_contour(x, tau));
}

KernelValue kernel_fourier_cosine(double x, double tau, const Tolerance& tol) {
    check_point(x, tau);
    const double c = 4.0 * std::pow(x, 0.25);
    auto envelope = [c](double u) { return bessel_k(0.0, c * std::sqrt(std::cosh(u))).real(); };
    // Beyond u where the K_0 argument reaches ~800 the envelope underflows.
    double umax = 2.0 * std::acosh(std::pow(800.0 / c, 2.0));
    auto r = integrate_fourier_cosine<double>(envelope, 2.0 * std::abs(tau), tol, DecayHint{1.0, umax});
    return {r.value, r.err_estimate, KernelMethod::FourierCosine};
}

KernelValue kernel_at(double x, double tau) {
    if (x < kernel_x_min) return kernel_mellin_barnes(x, tau);
    return kernel_definition(x, tau);
}

KernelSlope kernel_with_slope(double x, double tau) {
    check_point(x, tau);
    const double w = kelvin_argument(x);
    const Complex e = std::polar(1.0, pi / 4.0);
    const Complex nu(0.0, 2.0 * std::abs(tau));
    // The order is imaginary, so the factor at conj(a) is the conjugate of the one at a.
    auto a = bessel_k_jet(nu, w * e);
    double value = std::norm(a.value);
    double dw = 2.0 * (e * a.derivative * std::conj(a.value)).real();
    return {value, dw * w / (4.0 * x)};
}

KernelJet kernel_jet(double x, double tau, const ContourSpec& spec, const Tolerance& tol) {
    check_point(x, tau);
    if (!(spec.abscissa > 0.0)) fail(ErrorKind::Domain, "kernel: contour abscissa must be positive");
    const double logx = std::log(x), t = std::abs(tau);
    auto h = [&](Complex s) {
        Complex base = mb_density(s, t, logx);
        std::array<Complex, 5> out;
        Complex poch = 1.0;
        double xp = 1.0;
        for (int n = 0; n < 5; ++n) {
            out[n] = base * poch / xp;
            poch *= -(s + double(n));
            xp *= x;
        }
        return out;
    };
    auto r = integrate_contour<std::array<Complex, 5>>(h, spec, tol);
    KernelJet jet;
    jet.x = x;
    jet.tau = t;
    for (int n = 0; n < 5; ++n) jet.d[n] = r.value[n].real() * mb_norm;
    jet.err_estimate = r.err_estimate * mb_norm;
    return jet;
}

KernelJet kernel_jet(double x, double tau) { return kernel_jet(x, tau, kernel_contour(x, tau)); }

namespace {
double normalized(std::initializer_list<double> terms, double sum) {
    double m = 0.0;
    for (double t : terms) m = std::max(m, std::abs(t));
    return m > 0.0 ? std::abs(sum) / m : 0.0;
}
}  // namespace

double ode_residual(const KernelJet& j) {
    const double x = j.x, t2 = j.tau * j.tau;
    const double a = x * x * x * j.d[4], b = 5.5 * x * x * j.d[3], c = x * (5.5 + t2) * j.d[2],
                 d = 0.5 * (1.0 + t2) * j.d[1], e = -j.d[0];
    return normalized({a, b, c, d, e}, a + b + c + d + e);
}

double operator_form_residual(const KernelJet& j) {
    const double x = j.x, t2 = j.tau * j.tau;
    // Q = ((x d/dx)² + τ²)𝒦 = x²𝒦'' + x𝒦' + τ²𝒦
    const double q1 = x * x * j.d[3] + 3.0 * x * j.d[2] + (1.0 + t2) * j.d[1];
    const double q2 = x * x * j.d[4] + 5.0 * x * j.d[3] + (4.0 + t2) * j.d[2];
    const double rx = std::sqrt(x);
    const double a = 0.5 * q1 / rx, b = rx * q2, c = -j.d[0] / rx;
    return normalized({a, b, c}, a + b + c);
}

}  // namespace kelvin
