#include <kelvin/transforms.hpp>

#include <kelvin/kernel.hpp>
#include <kelvin/parallel.hpp>
#include <kelvin/quadrature.hpp>
#include <kelvin/specfun.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>

namespace kelvin {

double TestFunction::operator()(double x) const {
    double s = 0.0;
    for (std::size_t k = 0; k < rates.size(); ++k) s += coefficients[k] * std::exp(-rates[k] * x);
    return s;
}

namespace {

double exp_sum_integral(const TestFunction& f, double a, double b) {
    double s = 0.0;
    for (std::size_t k = 0; k < f.rates.size(); ++k) {
        double l = f.rates[k];
        double eb = std::isfinite(b) ? std::exp(-l * b) : 0.0;
        s += f.coefficients[k] * (std::exp(-l * a) - eb) / l;
    }
    return s;
}

// Sign changes of f on (0,∞). Beyond x_far the slowest exponential dominates.
std::vector<double> test_function_roots(const TestFunction& f) {
    double lmin = *std::min_element(f.rates.begin(), f.rates.end());
    double x_far = 200.0 / lmin;
    std::vector<double> roots;
    const int n = 20000;
    double prev_x = 0.0, prev_v = f(0.0);
    for (int i = 1; i <= n; ++i) {
        double x = x_far * std::pow(double(i) / n, 2.0);
        double v = f(x);
        if ((prev_v < 0.0 && v > 0.0) || (prev_v > 0.0 && v < 0.0)) {
            double lo = prev_x, hi = x, flo = prev_v;
            for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
                double mid = 0.5 * (lo + hi), fm = f(mid);
                if ((fm < 0.0) == (flo < 0.0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            roots.push_back(0.5 * (lo + hi));
        }
        prev_x = x;
        prev_v = v;
    }
    return roots;
}

}  // namespace

double TestFunction::l1_norm() const {
    auto roots = test_function_roots(*this);
    double total = 0.0, a = 0.0;
    for (double r : roots) {
        total += std::abs(exp_sum_integral(*this, a, r));
        a = r;
    }
    return total + std::abs(exp_sum_integral(*this, a, std::numeric_limits<double>::infinity()));
}

double TestFunction::weighted_norm(double nu, double p) const {
    if (!(p >= 1.0)) fail(ErrorKind::Domain, "weighted norm: p must be at least 1");
    if (p == 2.0 && nu == 0.5) {
        double s = 0.0;
        for (std::size_t i = 0; i < rates.size(); ++i)
            for (std::size_t j = 0; j < rates.size(); ++j)
                s += coefficients[i] * coefficients[j] / (rates[i] + rates[j]);
        return std::sqrt(s);
    }
    auto r = integrate_decaying<double>(
        [&](double x) { return std::pow(std::abs((*this)(x)), p) * std::pow(x, nu * p - 1.0); },
        Tolerance{1e-15, 1e-11, 40});
    return std::pow(r.value, 1.0 / p);
}

TestFunction make_test_function(const std::vector<double>& rates) {
    if (rates.size() < 3) fail(ErrorKind::Input, "test function: needs at least three rates");
    std::set<double> distinct;
    for (double l : rates) {
        if (!(l > 0.0) || !std::isfinite(l)) fail(ErrorKind::Input, "test function: rates must be positive");
        distinct.insert(l);
    }
    if (distinct.size() != rates.size()) fail(ErrorKind::Input, "test function: rates must be distinct");
    const std::size_t m = rates.size();
    std::vector<double> a(m), b(m);
    for (std::size_t k = 0; k < m; ++k) {
        a[k] = 1.0 / rates[k];
        b[k] = (-std::log(rates[k]) - euler_gamma) / rates[k];
    }
    // Minimum-norm c_{2..m} solving [a;b]·c = -[a_1;b_1].
    double g11 = 0, g12 = 0, g22 = 0;
    for (std::size_t k = 1; k < m; ++k) {
        g11 += a[k] * a[k];
        g12 += a[k] * b[k];
        g22 += b[k] * b[k];
    }
    double det = g11 * g22 - g12 * g12;
    if (!(std::abs(det) > 1e-12 * g11 * g22)) fail(ErrorKind::Input, "test function: degenerate rates (singular system)");
    double r1 = -a[0], r2 = -b[0];
    double y1 = (g22 * r1 - g12 * r2) / det, y2 = (g11 * r2 - g12 * r1) / det;
    TestFunction f;
    f.rates = rates;
    f.coefficients.assign(m, 0.0);
    f.coefficients[0] = 1.0;
    for (std::size_t k = 1; k < m; ++k) f.coefficients[k] = a[k] * y1 + b[k] * y2;
    double norm = f.l1_norm();
    for (auto& c : f.coefficients) c /= norm;
    return f;
}

namespace {

Complex mellin_closed(const TestFunction& f, Complex s) {
    Complex sum = 0.0;
    for (std::size_t k = 0; k < f.rates.size(); ++k)
        sum += f.coefficients[k] * std::exp(-s * std::log(f.rates[k]));
    return cgamma(s) * sum;
}

}  // namespace

Complex mellin(const TestFunction& f, Complex s) {
    if (!(s.real() > 0.0)) fail(ErrorKind::Domain, "mellin: Re s must be positive for a test function");
    return mellin_closed(f, s);
}

Complex mellin(const SampledFunction& f, Complex s, const Tolerance& tol) {
    if (!(s.real() > 0.0)) fail(ErrorKind::Domain, "mellin: Re s must be positive for sampled data");
    if (!f.decay_rate()) {
        auto r = integrate_interval<Complex>([&](double x) { return f(x) * std::pow(x, s - 1.0); }, 0.0,
                                             f.grid().back(), tol, 16);
        return r.value;
    }
    return integrate_decaying<Complex>([&](double x) { return f(x) * std::pow(x, s - 1.0); }, tol).value;
}

double norm_bound_f(const MellinSpec& spec) {
    const double nu = spec.nu, p = spec.p;
    if (!(nu < 1.0) || !(p >= 1.0)) fail(ErrorKind::Domain, "norm bound F: requires nu < 1 and p >= 1");
    const double a = 4.0 * (1.0 - nu);
    const double betas = cbeta(1.0 - nu, 1.0 - nu).real() * cbeta(2.0 * (1.0 - nu), 2.0 * (1.0 - nu)).real();
    if (p == 1.0) return std::pow(4.0, nu - 3.0) * std::pow(a / std::exp(1.0), a) * betas;
    const double q = p / (p - 1.0);
    return std::pow(4.0, nu - 3.0 + 1.0 / q) * std::pow(q, 4.0 * (nu - 1.0)) *
           std::exp(std::lgamma(a * q) / q) * betas;
}

double norm_bound_g(double gamma, const ContourSpec& spec) {
    if (!(gamma > 0.0)) fail(ErrorKind::Domain, "norm bound G: gamma must be positive");
    ContourSpec line = spec;
    line.abscissa = gamma;
    auto r = integrate_contour<Complex>([](Complex s) { return Complex(std::norm(cgamma(s))); }, line,
                                        Tolerance{1e-300, 1e-12, 30});
    const double arc = 2.0 * pi * r.value.real();
    return std::pow(4.0, -gamma) / (8.0 * pi) * cbeta(gamma, gamma).real() * arc;
}

const char* forward_method_name(ForwardMethod m) {
    switch (m) {
        case ForwardMethod::Auto: return "auto";
        case ForwardMethod::MellinBarnes: return "mellin-barnes";
        case ForwardMethod::Composition: return "composition";
        case ForwardMethod::Direct: return "direct";
    }
    return "unknown";
}

Tolerance transform_tolerance() { return {1e-300, 1e-11, 30}; }

namespace {

// Γ(s)Γ(1/2+s) f*(1-s) / (8√π) for the test function, via Γ(s)Γ(1-s) in log form.
Complex parseval_weight(const TestFunction& f, Complex s) {
    Complex sum = 0.0;
    for (std::size_t k = 0; k < f.rates.size(); ++k)
        sum += f.coefficients[k] * std::exp((s - 1.0) * std::log(f.rates[k]));
    return std::exp(log_gamma(s) + log_gamma(s + 0.5) + log_gamma(1.0 - s)) * sum / (8.0 * std::sqrt(pi));
}

}  // namespace

Complex forward_f_at(const TestFunction& f, Complex tau, const Tolerance& tol) {
    const Complex i(0.0, 1.0);
    const Complex it = i * tau;
    // Poles of Γ(s∓iτ) sit at ±iτ - k; keep the line away from the ones that cross it.
    auto crossing_distance = [&](double nu) {
        double d = 1.0;
        for (int sign : {1, -1}) {
            double re = (double(sign) * it).real();
            for (int k = 0; re - k > -0.5; ++k) d = std::min(d, std::abs(re - k - nu));
        }
        return d;
    };
    double nu = 0.5;
    for (double cand : {0.3, 0.7})
        if (crossing_distance(cand) > crossing_distance(nu) + 0.05) nu = cand;
    ContourSpec spec{nu, std::abs(tau.real()) + 24.0, 8 + static_cast<int>(std::abs(tau.real()))};
    auto line = integrate_contour<Complex>(
        [&](Complex s) {
            return std::exp(log_gamma(s + it) + log_gamma(s - it)) * parseval_weight(f, s);
        },
        spec, tol);
    Complex value = line.value;
    for (int sign : {1, -1}) {
        Complex pole0 = double(sign) * it;
        for (int k = 0; (pole0 - double(k)).real() > nu; ++k) {
            Complex s = pole0 - double(k);
            value += std::exp(log_gamma(2.0 * pole0 - double(k)) - std::lgamma(k + 1.0)) *
                     (k % 2 ? -1.0 : 1.0) * parseval_weight(f, s);
        }
    }
    return require_finite(value, "forward F");
}

namespace {

constexpr double panel_width = 0.25;

struct Nodes {
    std::vector<double> at, weight;
};

Nodes panel_nodes(double lo, double hi) {
    const auto& r = detail::gauss15();
    Nodes n;
    double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
    for (int k = 0; k < 15; ++k) {
        n.at.push_back(c + h * r.node[k]);
        n.weight.push_back(h * r.weight[k]);
    }
    return n;
}

double bessel_k0(double z) {
    if (z > 700.0) return 0.0;
    if (z > 2.0) {
        // Trapezoid on ∫₀^∞ e^{-z cosh t} dt converges geometrically in 1/h for this analytic integrand.
        const double h = 0.2;
        double sum = 0.5 * std::exp(-z);
        for (int k = 1; k < 200; ++k) {
            double term = std::exp(-z * std::cosh(k * h));
            sum += term;
            if (term < 1e-18 * sum) break;
        }
        return h * sum;
    }
    const double q = 0.25 * z * z;
    double term = 1.0, i0 = 1.0, tail = 0.0, harmonic = 0.0;
    for (int k = 1; k < 40; ++k) {
        term *= q / (double(k) * k);
        harmonic += 1.0 / k;
        i0 += term;
        tail += term * harmonic;
        if (term * harmonic < 1e-18 * std::abs(tail)) break;
    }
    return -(std::log(0.5 * z) + euler_gamma) * i0 + tail;
}

}  // namespace

namespace {

// Inner integral ∫ K_0(c x^{1/4}) f(x) dx for every u node, shared by all τ.
struct CompositionTable {
    std::vector<double> u, weight, profile;

    double at(double tau) const {
        std::vector<double> terms(u.size());
        for (std::size_t k = 0; k < u.size(); ++k) terms[k] = weight[k] * profile[k] * std::cos(2.0 * tau * u[k]);
        return pairwise_sum(terms);
    }
};

CompositionTable composition_table(const TestFunction& f, double tau_max, ExecPolicy policy) {
    // In y = x^{1/4}, f(y⁴) is below 1e-17 of its scale past y_end. Panels are graded
    // towards y = 0, where K_0(cy) concentrates once c is large.
    const double lmin = *std::min_element(f.rates.begin(), f.rates.end());
    const double y_end = std::pow(40.0 / lmin, 0.25);
    std::vector<double> ys, yw;
    auto add_panel = [&](double lo, double hi) {
        Nodes n = panel_nodes(lo, hi);
        ys.insert(ys.end(), n.at.begin(), n.at.end());
        yw.insert(yw.end(), n.weight.begin(), n.weight.end());
    };
    const double first = y_end / 16.0;
    add_panel(0.0, first * std::ldexp(1.0, -14));
    for (int k = 14; k > 0; --k) add_panel(first * std::ldexp(1.0, -k), first * std::ldexp(1.0, -k + 1));
    for (int k = 1; k < 16; ++k) add_panel(first * k, first * (k + 1));
    std::vector<double> fy(ys.size());
    for (std::size_t j = 0; j < ys.size(); ++j) {
        const double y2 = ys[j] * ys[j];
        fy[j] = yw[j] * f(y2 * y2) * 4.0 * y2 * ys[j];
    }
    // The profile decays like e^{-2u}; panels resolve cos(2τu) up to tau_max.
    const double u_end = 20.0;
    const double width = std::min(0.25, 1.5 / std::max(tau_max, 1e-300));
    const int panels = static_cast<int>(std::ceil(u_end / width));
    CompositionTable t;
    for (int p = 0; p < panels; ++p) {
        Nodes n = panel_nodes(u_end * p / panels, u_end * (p + 1) / panels);
        t.u.insert(t.u.end(), n.at.begin(), n.at.end());
        t.weight.insert(t.weight.end(), n.weight.begin(), n.weight.end());
    }
    t.profile = map_indices(
        t.u.size(),
        [&](std::size_t k) {
            const double c = 4.0 * std::sqrt(std::cosh(t.u[k]));
            std::vector<double> terms(ys.size());
            for (std::size_t j = 0; j < ys.size(); ++j) terms[j] = bessel_k0(c * ys[j]) * fy[j];
            return pairwise_sum(terms);
        },
        policy);
    return t;
}

}  // namespace

double forward_f_composition(const TestFunction& f, double tau, const Tolerance&) {
    return composition_table(f, std::abs(tau), ExecPolicy::Serial).at(tau);
}

double forward_f_direct(const std::function<double(double)>& f, double tau, const Tolerance& tol) {
    auto r = integrate_decaying<double>([&](double x) { return kernel_definition(x, tau).value * f(x); },
                                        Tolerance{1e-300, tol.rel_tol, tol.max_subdivisions});
    return r.value;
}

SampledFunction forward_f(const TestFunction& f, const std::vector<double>& tau_grid, const Tolerance& tol,
                          ForwardMethod method, ExecPolicy policy) {
    if (method == ForwardMethod::Composition) {
        double tau_max = 0.0;
        for (double t : tau_grid) tau_max = std::max(tau_max, std::abs(t));
        auto table = composition_table(f, tau_max, policy);
        std::vector<double> values(tau_grid.size());
        for (std::size_t j = 0; j < tau_grid.size(); ++j) values[j] = table.at(tau_grid[j]);
        return SampledFunction(tau_grid, values);
    }
    auto values = map_indices(
        tau_grid.size(),
        [&](std::size_t j) {
            const double tau = tau_grid[j];
            switch (method) {
                case ForwardMethod::Direct: return forward_f_direct([&](double x) { return f(x); }, tau, tol);
                default: return forward_f_at(f, tau, tol).real();
            }
        },
        policy);
    return SampledFunction(tau_grid, values);
}

SampledFunction forward_f(const SampledFunction& f, const std::vector<double>& tau_grid, const Tolerance& tol,
                          ExecPolicy policy) {
    auto values = map_indices(
        tau_grid.size(), [&](std::size_t j) { return forward_f_direct([&](double x) { return f(x); }, tau_grid[j], tol); },
        policy);
    return SampledFunction(tau_grid, values);
}

ContinuedTransform continue_forward_f(const TestFunction& f, const Tolerance& tol) {
    return {[f, tol](Complex tau) { return forward_f_at(f, tau, tol); }};
}

IndexFunction gaussian_bump_datum(double sigma) {
    if (!(sigma > 0.0)) fail(ErrorKind::Input, "gaussian_bump_datum: sigma must be positive");
    const double norm = sigma * sigma * sigma * std::sqrt(pi / 2.0);
    return {[=](double t) { return t * t * std::exp(-t * t / (2.0 * sigma * sigma)) / norm; }, 10.0 * sigma};
}

IndexFunction as_index_function(const SampledFunction& g) {
    double end = std::max(g.grid().back(), std::min(g.effective_end(1e-17), kernel_tau_max + 2.0));
    return {[g](double t) { return g(t); }, end};
}

namespace {

template <class K>
double g_quadrature(const IndexFunction& g, const Tolerance& tol, K&& kernel) {
    if (!(g.support_end > 0.0)) return 0.0;
    int panels = std::max(2, static_cast<int>(std::ceil(g.support_end / 0.5)));
    return integrate_interval<double>([&](double t) { return kernel(t) * g.g(t); }, 0.0, g.support_end,
                                      Tolerance{1e-300, tol.rel_tol, tol.max_subdivisions}, panels)
        .value;
}

}  // namespace

double GTransform::operator()(double x) const {
    return g_quadrature(g, tol, [x](double t) { return kernel_at(x, t).value; });
}

double GTransform::slope(double x) const {
    return g_quadrature(g, tol, [x](double t) { return kernel_with_slope(x, t).dx; });
}

SampledFunction forward_g(const IndexFunction& g, const std::vector<double>& x_grid, const Tolerance& tol,
                          ExecPolicy policy) {
    GTransform G{g, tol};
    auto values = map_indices(x_grid.size(), [&](std::size_t j) { return G(x_grid[j]); }, policy);
    return SampledFunction(x_grid, values);
}

SampledFunction forward_g(const SampledFunction& g, const std::vector<double>& x_grid, const Tolerance& tol,
                          ExecPolicy policy) {
    return forward_g(as_index_function(g), x_grid, tol, policy);
}

const char* variant_name(InversionVariant v) {
    switch (v) {
        case InversionVariant::Published: return "published";
        case InversionVariant::PublishedAltScaling: return "published-alt-scaling";
        case InversionVariant::Corrected: return "corrected";
    }
    return "unknown";
}

namespace {

// Kelvin argument for the inversion kernel at x and its derivative in x.
std::pair<double, double> kernel_argument(double x, InversionVariant v) {
    if (v == InversionVariant::PublishedAltScaling) {
        double w = 2.0 * std::sqrt(x);
        return {w, 1.0 / std::sqrt(x)};
    }
    double w = 2.0 * std::pow(4.0 * x, 0.25);
    return {w, w / (4.0 * x)};
}

void check_x_grid(const std::vector<double>& xs) {
    if (xs.empty()) fail(ErrorKind::Input, "inversion: x grid is empty");
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!(xs[i] >= 0.0) || !std::isfinite(xs[i])) fail(ErrorKind::Input, "inversion: x grid must be nonnegative");
        if (i > 0 && !(xs[i] > xs[i - 1])) fail(ErrorKind::Input, "inversion: x grid must be strictly increasing");
    }
}

Inversion published_f(const std::function<double(double)>& Ff, double tau_end, const std::vector<double>& xs,
                      const InversionOptions& opt) {
    check_x_grid(xs);
    for (double x : xs)
        if (!(x > 0.0)) fail(ErrorKind::Input, "inverse F: x must be positive");
    std::vector<double> acc(xs.size(), 0.0);
    int quiet = 0;
    double lo = 0.0;
    bool truncated = false;
    while (lo < tau_end) {
        double hi = std::min(tau_end, lo + panel_width);
        Nodes n = panel_nodes(lo, hi);
        std::vector<double> fv(15);
        double weighted = 0.0;
        for (int k = 0; k < 15; ++k) {
            fv[k] = Ff(n.at[k]);
            weighted = std::max(weighted, n.at[k] * std::exp(pi * n.at[k]) * std::abs(fv[k]));
        }
        auto part = map_indices(
            xs.size(),
            [&](std::size_t j) {
                auto [w, dw] = kernel_argument(xs[j], opt.variant);
                double s = 0.0;
                for (int k = 0; k < 15; ++k) {
                    const double tau = n.at[k];
                    Complex g = cgamma(Complex(1.0, 2.0 * tau));
                    Complex dp = kelvin_i_pair_hyper(tau, w, opt.ctl).d_arg * dw;
                    s += n.weight[k] * (g * dp).imag() * fv[k] * tau;
                }
                return s;
            },
            opt.policy);
        for (std::size_t j = 0; j < xs.size(); ++j) acc[j] += part[j];
        lo = hi;
        if (weighted < opt.tol.abs_tol) {
            if (++quiet >= 3) {
                truncated = true;
                break;
            }
        } else {
            quiet = 0;
        }
    }
    Inversion out;
    for (auto& a : acc) a *= -16.0 / pi;
    out.result = SampledFunction(xs, acc);
    out.tau_end = lo;
    if (!truncated)
        out.warnings.push_back("tail divergence: tau*exp(pi*tau)*|Ff| has not decayed below abs_tol by tau=" +
                               std::to_string(lo));
    return out;
}

Inversion corrected_f(const ContinuedTransform& Ff, const std::vector<double>& xs, const InversionOptions& opt) {
    check_x_grid(xs);
    for (double x : xs)
        if (!(x > 0.0)) fail(ErrorKind::Input, "inverse F: x must be positive");
    const Complex dir = std::polar(1.0, -opt.rotation);
    std::vector<double> acc(xs.size(), 0.0), peak(xs.size(), 0.0);
    int quiet = 0;
    double lo = 0.0;
    bool settled = false;
    while (lo < opt.tau_cap) {
        double hi = lo + panel_width;
        Nodes n = panel_nodes(lo, hi);
        auto fv = map_indices(15, [&](std::size_t k) { return Ff.at(n.at[k] * dir); }, opt.policy);
        auto part = map_indices(
            xs.size(),
            [&](std::size_t j) {
                auto [w, dw] = kernel_argument(xs[j], InversionVariant::Published);
                double s = 0.0;
                for (int k = 0; k < 15; ++k) {
                    Complex tau = n.at[k] * dir;
                    Complex dp = kelvin_i_pair_hyper(tau, w, opt.ctl).d_arg * dw;
                    s += n.weight[k] * (dir * tau * fv[k] * dp).imag();
                }
                return s;
            },
            opt.policy);
        bool small = true;
        for (std::size_t j = 0; j < xs.size(); ++j) {
            acc[j] += part[j];
            peak[j] = std::max(peak[j], std::abs(acc[j]));
            if (std::abs(part[j]) > std::max(opt.tol.abs_tol, opt.tol.rel_tol * peak[j])) small = false;
        }
        lo = hi;
        if (small && lo > 1.0) {
            if (++quiet >= 3) {
                settled = true;
                break;
            }
        } else {
            quiet = 0;
        }
    }
    Inversion out;
    for (auto& a : acc) a *= -16.0 / pi;
    out.result = SampledFunction(xs, acc);
    out.tau_end = lo;
    if (!settled) out.warnings.push_back("rotated-contour integral did not settle by rho=" + std::to_string(lo));
    return out;
}

Inversion g_inversion(const std::function<double(double)>& slope, const std::vector<double>& xs,
                      const InversionOptions& opt, double t_end = std::numeric_limits<double>::infinity()) {
    check_x_grid(xs);
    const bool alt = opt.variant == InversionVariant::PublishedAltScaling;
    // Integrate over v = log w. Below w = 1e-8 the oscillatory tail is negligible for smooth
    // g; above the series radius the integrand is below double precision.
    const double w_end = alt ? 2.0 * std::sqrt(t_end) : std::pow(64.0 * t_end, 0.25);
    const double v_lo = std::log(1e-8), v_hi = std::log(std::min(series_radius, w_end));
    // P oscillates in v at frequency 4x; keep under about two periods per panel.
    const double width = std::min(1.0, 2.0 / std::max(xs.back(), 1e-300));
    const int panels = static_cast<int>(std::ceil((v_hi - v_lo) / width));
    std::vector<double> vs, wts;
    for (int p = 0; p < panels; ++p) {
        Nodes n = panel_nodes(v_lo + (v_hi - v_lo) * p / panels, v_lo + (v_hi - v_lo) * (p + 1) / panels);
        vs.insert(vs.end(), n.at.begin(), n.at.end());
        wts.insert(wts.end(), n.weight.begin(), n.weight.end());
    }
    // dG/dv = G'(t)·dt/dv with t = w⁴/64 (or w²/4 for the alternate scaling).
    auto dG = map_indices(
        vs.size(),
        [&](std::size_t k) {
            double w = std::exp(vs[k]);
            double t = alt ? 0.25 * w * w : std::pow(w, 4) / 64.0;
            return slope(t) * (alt ? 2.0 : 4.0) * t;
        },
        opt.policy);
    auto values = map_indices(
        xs.size(),
        [&](std::size_t j) {
            const double x = xs[j];
            if (x == 0.0) return 0.0;
            const Complex g = cgamma(Complex(1.0, 2.0 * x));
            std::vector<double> terms(vs.size());
            for (std::size_t k = 0; k < vs.size(); ++k) {
                Complex p = kelvin_i_pair_hyper(x, std::exp(vs[k]), opt.ctl).value;
                double kern = opt.variant == InversionVariant::Corrected ? p.imag() : (g * p).imag();
                terms[k] = wts[k] * kern * dG[k];
            }
            double sign = opt.variant == InversionVariant::Corrected ? 1.0 : -1.0;
            return sign * 16.0 * x / pi * pairwise_sum(terms);
        },
        opt.policy);
    Inversion out;
    out.result = SampledFunction(xs, values);
    out.tau_end = std::exp(v_hi);
    return out;
}

}  // namespace

Inversion inverse_f(const SampledFunction& Ff, const std::vector<double>& xs, const InversionOptions& opt) {
    if (opt.variant == InversionVariant::Corrected)
        fail(ErrorKind::Input,
             "inverse F: the corrected kernel needs the analytic continuation of Ff; samples on the real axis "
             "support only the published variants");
    double end = std::min(Ff.effective_end(1e-30), opt.tau_cap);
    return published_f([&](double t) { return Ff(t); }, end, xs, opt);
}

Inversion inverse_f(const ContinuedTransform& Ff, const std::vector<double>& xs, const InversionOptions& opt) {
    if (opt.variant == InversionVariant::Corrected) return corrected_f(Ff, xs, opt);
    return published_f([&](double t) { return Ff.at(Complex(t, 0.0)).real(); }, opt.tau_cap, xs, opt);
}

Inversion inverse_g(const SampledFunction& Gg, const std::vector<double>& xs, const InversionOptions& opt) {
    // Beyond the samples there is nothing to differentiate: truncate at the last grid point.
    auto out = g_inversion([&](double t) { return Gg.derivative(t); }, xs, opt, Gg.grid().back());
    if (Gg.size() < 8) out.warnings.push_back("derivative quality: fewer than 8 samples of Gg");
    if (Gg.grid().front() > 1e-3 || Gg.grid().back() < 100.0)
        out.warnings.push_back("derivative quality: Gg grid does not cover t in [1e-3, 100]");
    return out;
}

Inversion inverse_g(const GTransform& Gg, const std::vector<double>& xs, const InversionOptions& opt) {
    // One fixed τ-rule shared by every t node.
    const double end = Gg.g.support_end;
    const int panels = std::max(1, static_cast<int>(std::ceil(end / panel_width)));
    std::vector<double> taus, gw;
    for (int p = 0; p < panels; ++p) {
        Nodes n = panel_nodes(end * p / panels, end * (p + 1) / panels);
        for (int k = 0; k < 15; ++k) {
            taus.push_back(n.at[k]);
            gw.push_back(n.weight[k] * Gg.g.g(n.at[k]));
        }
    }
    return g_inversion(
        [&](double t) {
            std::vector<double> terms(taus.size());
            for (std::size_t k = 0; k < taus.size(); ++k)
                terms[k] = gw[k] == 0.0 ? 0.0 : gw[k] * kernel_with_slope(t, taus[k]).dx;
            return pairwise_sum(terms);
        },
        xs, opt);
}

}  // namespace kelvin
