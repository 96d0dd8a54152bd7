#include <kelvin/specfun.hpp>

#include <kelvin/quadrature.hpp>

#include <array>
#include <cmath>
#include <string>

namespace kelvin {

namespace {

constexpr std::array<double, 14> lanczos = {
    57.1562356658629235,     -59.5979603554754912,    14.1360979747417471,
    -0.491913816097620199,   .339946499848118887e-4,  .465236289270485756e-4,
    -.983744753048795646e-4, .158088703224912494e-3,  -.210264441724104883e-3,
    .217439618115212643e-3,  -.164318106536763890e-3, .844182239838527433e-4,
    -.261908384015814087e-4, .368991826595316234e-5};

bool near_pole(Complex z) {
    if (z.real() > 0.5 || std::abs(z.imag()) > 1e-14) return false;
    return std::abs(z.real() - std::round(z.real())) <= 1e-14;
}

Complex log_gamma_right(Complex z) {
    Complex tmp = z + 5.24218750000000000;
    tmp = (z + 0.5) * std::log(tmp) - tmp;
    Complex ser = 0.999999999999997092;
    Complex y = z;
    for (double c : lanczos) {
        y += 1.0;
        ser += c / y;
    }
    return tmp + std::log(2.5066282746310005 * ser / z);
}

// log sin(πz) without overflow for large |Im z|.
Complex log_sin_pi(Complex z) {
    if (z.imag() < 0.0) return std::conj(log_sin_pi(std::conj(z)));
    const Complex i(0.0, 1.0);
    Complex e2 = std::exp(2.0 * pi * i * z);
    return -pi * i * z + std::log(0.5 * i * (1.0 - e2));
}

struct Neumaier {
    Complex sum{0.0, 0.0}, comp{0.0, 0.0};
    void add(Complex v) {
        double s[2] = {sum.real(), sum.imag()};
        double c[2] = {comp.real(), comp.imag()};
        double x[2] = {v.real(), v.imag()};
        for (int k = 0; k < 2; ++k) {
            double t = s[k] + x[k];
            if (std::abs(s[k]) >= std::abs(x[k]))
                c[k] += (s[k] - t) + x[k];
            else
                c[k] += (x[k] - t) + s[k];
            s[k] = t;
        }
        sum = {s[0], s[1]};
        comp = {c[0], c[1]};
    }
    Complex value() const { return sum + comp; }
};

// Σ_k t_k with t_{k+1} = t_k·ratio(k), t_0 = 1. `settled(k)` says the terms have passed
// their peak so a small term means the tail is negligible.
template <class Ratio, class Settled>
Complex sum_series(Ratio ratio, Settled settled, const SeriesControl& ctl, const char* what) {
    ctl.validate();
    Neumaier acc;
    Complex term = 1.0;
    acc.add(term);
    int small = 0;
    for (int k = 0; k < ctl.max_terms; ++k) {
        term *= ratio(k);
        acc.add(term);
        if (k + 1 >= ctl.min_terms && settled(k) &&
            std::abs(term) <= ctl.rel_tol * std::abs(acc.value())) {
            if (++small >= 2) return acc.value();
        } else {
            small = 0;
        }
    }
    fail(ErrorKind::Convergence, std::string(what) + ": series did not converge within max_terms");
}

}  // namespace

Complex log_gamma(Complex z) {
    if (near_pole(z)) fail(ErrorKind::Pole, "gamma: argument at a nonpositive integer");
    if (z.real() >= 0.5) return log_gamma_right(z);
    return std::log(pi) - log_sin_pi(z) - log_gamma_right(1.0 - z);
}

Complex cgamma(Complex z) { return require_finite(std::exp(log_gamma(z)), "cgamma"); }

Complex rgamma(Complex z) {
    if (near_pole(z)) return 0.0;
    return std::exp(-log_gamma(z));
}

Complex cbeta(Complex a, Complex b) {
    return require_finite(std::exp(log_gamma(a) + log_gamma(b) - log_gamma(a + b)), "cbeta");
}

Tolerance bessel_k_tolerance() { return {1e-300, 1e-13, 30}; }

namespace {

double bessel_k_cutoff(Complex order, Complex z) {
    const double eps = 1e-16;
    double base = std::log(1.0 / eps) + std::abs(order.imag()) * pi;
    double y = std::acosh(base / z.real() + 1.0);
    // A real part of the order lets cosh(νy) grow; extend the cutoff to compensate.
    for (int it = 0; it < 20 && order.real() != 0.0; ++it)
        y = std::acosh((base + std::abs(order.real()) * y) / z.real() + 1.0);
    return y;
}

int bessel_k_panels(Complex order, Complex z, double ymax) {
    double phase = std::abs(order.imag()) * ymax + std::abs(z.imag()) * std::cosh(ymax) +
                   std::abs(order.real()) * ymax;
    return 4 + static_cast<int>(std::ceil(phase / 3.0));
}

// Small |z| with sin(νπ) bounded away from zero: K from the two ascending I series.
bool use_reflection(Complex order, Complex z) {
    return std::abs(z) <= 2.0 && std::abs(std::sin(pi * order)) >= 0.5;
}

std::array<Complex, 2> bessel_i_series_jet(Complex order, Complex z) {
    const Complex q = 0.25 * z * z;
    Complex term = std::exp(order * std::log(0.5 * z)) * rgamma(order + 1.0);
    Complex value = term, slope = term * order / z;
    for (int k = 1; k < 60; ++k) {
        term *= q / (double(k) * (order + double(k)));
        value += term;
        slope += term * (order + 2.0 * k) / z;
        if (std::abs(term) <= 1e-17 * std::abs(value)) break;
    }
    return {value, slope};
}

BesselKJet bessel_k_reflection(Complex order, Complex z) {
    auto minus = bessel_i_series_jet(-order, z), plus = bessel_i_series_jet(order, z);
    const Complex c = pi / (2.0 * std::sin(pi * order));
    return {c * (minus[0] - plus[0]), c * (minus[1] - plus[1])};
}

}  // namespace

Complex bessel_k(Complex order, Complex z, const Tolerance& tol) {
    if (!(z.real() > 0.0)) fail(ErrorKind::Domain, "besselK: requires Re z > 0");
    if (use_reflection(order, z)) return require_finite(bessel_k_reflection(order, z).value, "besselK");
    double ymax = bessel_k_cutoff(order, z);
    auto f = [&](double y) { return std::exp(-z * std::cosh(y)) * std::cosh(order * y); };
    auto r = integrate_interval<Complex>(f, 0.0, ymax, tol, bessel_k_panels(order, z, ymax));
    return require_finite(r.value, "besselK");
}

BesselKJet bessel_k_jet(Complex order, Complex z, const Tolerance& tol) {
    if (!(z.real() > 0.0)) fail(ErrorKind::Domain, "besselK: requires Re z > 0");
    if (use_reflection(order, z)) {
        auto r = bessel_k_reflection(order, z);
        return {require_finite(r.value, "besselK"), require_finite(r.derivative, "besselK'")};
    }
    double ymax = bessel_k_cutoff(order, z);
    auto f = [&](double y) {
        double c = std::cosh(y);
        Complex v = std::exp(-z * c) * std::cosh(order * y);
        return std::array<Complex, 2>{v, -c * v};
    };
    auto r = integrate_interval<std::array<Complex, 2>>(f, 0.0, ymax, tol,
                                                        bessel_k_panels(order, z, ymax));
    return {require_finite(r.value[0], "besselK"), require_finite(r.value[1], "besselK'")};
}

Complex bessel_i(Complex order, Complex z, const SeriesControl& ctl) {
    if (std::abs(z) > series_radius) fail(ErrorKind::Range, "besselI: |z| exceeds the series radius");
    if (order.imag() == 0.0 && order.real() < 0.0 && order.real() == std::round(order.real()))
        order = -order;
    if (z == Complex(0.0)) {
        if (order == Complex(0.0)) return 1.0;
        if (order.real() > 0.0) return 0.0;
        fail(ErrorKind::Domain, "besselI: z = 0 requires Re order >= 0");
    }
    Complex q = 0.25 * z * z;
    Complex s = sum_series([&](int k) { return q / ((k + 1.0) * (order + (k + 1.0))); },
                           [&](int k) { return k + 1.0 > std::abs(z) * 0.5; }, ctl, "besselI");
    Complex pref = std::exp(order * std::log(0.5 * z)) * rgamma(order + 1.0);
    return require_finite(pref * s, "besselI");
}

Complex kelvin_k_pair_product(double tau, double x, const Tolerance& tol) {
    if (!(x > 0.0)) fail(ErrorKind::Domain, "kelvin pair: x must be positive");
    tau = std::abs(tau);
    const Complex a = std::polar(x, pi / 4.0);
    const Complex nu(0.0, 2.0 * tau);
    return bessel_k(nu, a, tol) * bessel_k(nu, std::conj(a), tol);
}

double kelvin_k_pair_sq(double tau, double x, const Tolerance& tol) {
    return kelvin_k_pair_product(tau, x, tol).real();
}

Complex kelvin_i_pair_sq(double tau, double x, const SeriesControl& ctl) {
    if (!(x > 0.0)) fail(ErrorKind::Domain, "kelvin pair: x must be positive");
    const Complex a = std::polar(x, pi / 4.0);
    const Complex nu(0.0, 2.0 * tau);
    return bessel_i(nu, a, ctl) * bessel_i(nu, std::conj(a), ctl);
}

Complex hyper0f3(Complex a1, Complex a2, Complex a3, Complex z, const SeriesControl& ctl) {
    for (Complex a : {a1, a2, a3})
        if (near_pole(a)) fail(ErrorKind::Pole, "0F3: denominator parameter at a nonpositive integer");
    if (std::abs(z) > series_radius * series_radius * series_radius)
        fail(ErrorKind::Range, "0F3: |z| exceeds the series guard");
    double peak = std::pow(std::abs(z), 0.25);
    return sum_series(
        [&](int n) { return z / ((n + 1.0) * (a1 + double(n)) * (a2 + double(n)) * (a3 + double(n))); },
        [&](int n) { return n + 1.0 > peak; }, ctl, "0F3");
}

PairJet kelvin_i_pair_hyper(Complex tau, double w, const SeriesControl& ctl) {
    if (!(w > 0.0)) fail(ErrorKind::Domain, "kelvin pair: argument must be positive");
    if (w > series_radius) fail(ErrorKind::Range, "kelvin pair: argument exceeds the series radius");
    ctl.validate();
    const Complex i(0.0, 1.0);
    const Complex a1 = 0.5 + i * tau, a2 = 1.0 + i * tau, a3 = 1.0 + 2.0 * i * tau;
    for (Complex a : {a1, a2, a3})
        if (near_pole(a)) fail(ErrorKind::Pole, "kelvin pair: parameter at a gamma pole");
    const double X = std::pow(w, 4) / 64.0;
    const double peak = std::pow(X, 0.25);
    const Complex mu = 4.0 * i * tau;  // exponent of w in the prefactor
    Neumaier s, ds;
    Complex c = 1.0;
    s.add(c);
    ds.add(mu);
    int small = 0;
    bool done = false;
    for (int n = 0; n < ctl.max_terms; ++n) {
        c *= X / ((n + 1.0) * (a1 + double(n)) * (a2 + double(n)) * (a3 + double(n)));
        s.add(c);
        ds.add(c * (mu + 4.0 * (n + 1.0)));
        if (n + 1 >= ctl.min_terms && n + 1.0 > peak &&
            std::abs(c) * (1.0 + std::abs(mu) + 4.0 * (n + 1.0)) <=
                ctl.rel_tol * std::min(std::abs(s.value()), std::abs(ds.value()) + std::abs(s.value()))) {
            if (++small >= 2) {
                done = true;
                break;
            }
        } else {
            small = 0;
        }
    }
    if (!done) fail(ErrorKind::Convergence, "kelvin pair: series did not converge within max_terms");
    Complex pref = std::exp(mu * std::log(0.5 * w) - 2.0 * log_gamma(1.0 + 2.0 * i * tau));
    return {require_finite(pref * s.value(), "kelvin pair"),
            require_finite(pref * ds.value() / w, "kelvin pair derivative")};
}

double inversion_kernel_point(double tau, double arg, const SeriesControl& ctl) {
    const Complex g = cgamma(Complex(1.0, 2.0 * tau));
    return (g * kelvin_i_pair_sq(tau, arg, ctl)).imag();
}

}  // namespace kelvin
