#include <kelvin/bvp.hpp>

#include <kelvin/kernel.hpp>
#include <kelvin/parallel.hpp>
#include <kelvin/quadrature.hpp>

#include <algorithm>
#include <cmath>

namespace kelvin {

void WedgeParams::validate() const {
    if (!(beta > 0.0 && beta < 2.0 * pi)) fail(ErrorKind::Domain, "wedge: beta must lie in (0, 2*pi)");
    if (!(r > 0.0) || !std::isfinite(r)) fail(ErrorKind::Domain, "wedge: r must be positive");
    if (!(theta >= 0.0 && theta <= beta)) fail(ErrorKind::Domain, "wedge: theta must lie in [0, beta]");
}

double sinh_ratio(double theta, double beta, double tau) {
    tau = std::abs(tau);
    const double bt = beta * tau;
    if (bt < 1e-4) {
        const double t2 = tau * tau;
        return theta / beta * (1.0 + (theta * theta - beta * beta) * t2 / 6.0);
    }
    if (bt > 30.0)
        return std::exp((theta - beta) * tau) * -std::expm1(-2.0 * theta * tau) / -std::expm1(-2.0 * bt);
    return std::sinh(theta * tau) / std::sinh(bt);
}

IndexFunction reference_boundary_datum() {
    const double a = 2.0 * pi;
    const double scale = a * a * a / 2.0;
    // Below 1e-17 of the peak past τ = 8.
    return {[=](double t) { return scale * t * t * std::exp(-a * t); }, 8.0};
}

double wedge_solution(const IndexFunction& g, const WedgeParams& w, const Tolerance& tol) {
    w.validate();
    GTransform G{{[&](double t) { return sinh_ratio(w.theta, w.beta, t) * g.g(t); }, g.support_end}, tol};
    return G(w.r);
}

double wedge_solution(const SampledFunction& g, const WedgeParams& w, const Tolerance& tol) {
    return wedge_solution(as_index_function(g), w, tol);
}

FiniteSteps default_steps(const WedgeParams& w) {
    return {std::max(1e-2 * w.r, 1e-3), std::min(w.beta / 20.0, 0.05)};
}

FiniteSteps study_steps(const WedgeParams& w) {
    w.validate();
    const FiniteSteps d = default_steps(w);
    const double room = std::min(w.theta, w.beta - w.theta);
    return {2.0 * d.h_r, std::min(d.h_theta, 0.99 * room / 8.0)};
}

namespace {

// Composite GL15 on [0, support_end], shared by every stencil node.
struct TauRule {
    std::vector<double> tau, weight;
};

TauRule tau_rule(const IndexFunction& g) {
    const auto& r = detail::gauss15();
    const int panels = std::max(1, static_cast<int>(std::ceil(g.support_end / 0.5)));
    TauRule rule;
    for (int p = 0; p < panels; ++p) {
        double lo = g.support_end * p / panels, hi = g.support_end * (p + 1) / panels;
        double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
        for (int k = 0; k < 15; ++k) {
            double t = c + h * r.node[k];
            rule.tau.push_back(t);
            rule.weight.push_back(h * r.weight[k] * g.g(t));
        }
    }
    return rule;
}

// Fourth-order central differences on offsets -3..3 (index 0 is -3).
double d1(const std::array<double, 7>& f, double h) { return (f[1] - 8.0 * f[2] + 8.0 * f[4] - f[5]) / (12.0 * h); }
double d2(const std::array<double, 7>& f, double h) {
    return (-f[1] + 16.0 * f[2] - 30.0 * f[3] + 16.0 * f[4] - f[5]) / (12.0 * h * h);
}
double d3(const std::array<double, 7>& f, double h) {
    return (f[0] - 8.0 * f[1] + 13.0 * f[2] - 13.0 * f[4] + 8.0 * f[5] - f[6]) / (8.0 * h * h * h);
}
double d4(const std::array<double, 7>& f, double h) {
    return (-f[0] + 12.0 * f[1] - 39.0 * f[2] + 56.0 * f[3] - 39.0 * f[4] + 12.0 * f[5] - f[6]) / (6.0 * h * h * h * h);
}

}  // namespace

ResidualReport pde_residual(const IndexFunction& g, const WedgeParams& w, const FiniteSteps& h, ExecPolicy policy) {
    w.validate();
    if (!(h.h_r > 0.0) || !(h.h_theta > 0.0)) fail(ErrorKind::Input, "residual: steps must be positive");
    if (w.r - 3.0 * h.h_r <= 0.0) fail(ErrorKind::Domain, "residual: r stencil leaves r > 0");
    if (w.theta - 2.0 * h.h_theta < 0.0 || w.theta + 2.0 * h.h_theta > w.beta)
        fail(ErrorKind::Domain, "residual: theta stencil leaves the wedge");
    const TauRule rule = tau_rule(g);
    const std::size_t n = rule.tau.size();
    // Kernel rows at the seven r nodes; θ enters only through the sinh ratio.
    auto rows = map_indices(
        7 * n,
        [&](std::size_t k) {
            const double r = w.r + (double(k / n) - 3.0) * h.h_r;
            return rule.weight[k % n] == 0.0 ? 0.0 : kernel_definition(r, rule.tau[k % n]).value;
        },
        policy);
    // u[j][i]: θ offset j-2 (five nodes), r offset i-3.
    std::array<std::array<double, 7>, 5> u{};
    for (int j = 0; j < 5; ++j) {
        const double theta = w.theta + (j - 2) * h.h_theta;
        std::vector<double> ratio(n);
        for (std::size_t k = 0; k < n; ++k) ratio[k] = rule.weight[k] * sinh_ratio(theta, w.beta, rule.tau[k]);
        for (int i = 0; i < 7; ++i) {
            std::vector<double> terms(n);
            for (std::size_t k = 0; k < n; ++k) terms[k] = rows[i * n + k] * ratio[k];
            u[j][i] = pairwise_sum(terms);
        }
    }
    // θ second derivative of each r column.
    std::array<double, 7> utt{};
    const double ht2 = h.h_theta * h.h_theta;
    for (int i = 0; i < 7; ++i)
        utt[i] = (-u[0][i] + 16.0 * u[1][i] - 30.0 * u[2][i] + 16.0 * u[3][i] - u[4][i]) / (12.0 * ht2);
    const auto& c = u[2];
    const double r = w.r, hr = h.h_r;
    ResidualReport out;
    out.r = w.r;
    out.theta = w.theta;
    out.steps = h;
    out.terms = {r * r * r * d4(c, hr),      r * d2(utt, hr), 5.5 * r * r * d3(c, hr), 0.5 * d1(utt, hr),
                 5.5 * r * d2(c, hr), 0.5 * d1(c, hr), -c[3]};
    double sum = 0.0, scale = 0.0;
    for (double t : out.terms) {
        sum += t;
        scale = std::max(scale, std::abs(t));
    }
    out.residual = scale > 0.0 ? std::abs(sum) / scale : 0.0;
    return out;
}

ResidualReport pde_residual(const SampledFunction& g, const WedgeParams& w, const FiniteSteps& h, ExecPolicy policy) {
    return pde_residual(as_index_function(g), w, h, policy);
}

ConvergenceStudy residual_convergence(const IndexFunction& g, const WedgeParams& w, const FiniteSteps& h,
                                      ExecPolicy policy) {
    ConvergenceStudy s;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (double m : {1.0, 2.0, 4.0}) {
        auto rep = pde_residual(g, w, {h.h_r * m, h.h_theta * m}, policy);
        s.h_r.push_back(h.h_r * m);
        s.residual.push_back(rep.residual);
        double x = std::log(h.h_r * m), y = std::log(std::max(rep.residual, 1e-300));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    s.order = (3.0 * sxy - sx * sy) / (3.0 * sxx - sx * sx);
    return s;
}

BoundaryTrace boundary_trace(const IndexFunction& g, double beta, const std::vector<double>& r_grid,
                             const Tolerance& tol, ExecPolicy policy) {
    WedgeParams probe{beta, 1.0, 0.0};
    probe.validate();
    auto top = map_indices(
        r_grid.size(), [&](std::size_t i) { return wedge_solution(g, WedgeParams{beta, r_grid[i], beta}, tol); },
        policy);
    auto bottom = map_indices(
        r_grid.size(), [&](std::size_t i) { return wedge_solution(g, WedgeParams{beta, r_grid[i], 0.0}, tol); },
        policy);
    return {SampledFunction(r_grid, bottom), SampledFunction(r_grid, top)};
}

BoundaryTrace boundary_trace(const SampledFunction& g, double beta, const std::vector<double>& r_grid,
                             const Tolerance& tol, ExecPolicy policy) {
    return boundary_trace(as_index_function(g), beta, r_grid, tol, policy);
}

}  // namespace kelvin
