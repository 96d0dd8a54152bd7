#include <kelvin/quadrature.hpp>

#include <cmath>
#include <string>

namespace kelvin {

void SeriesControl::validate() const {
    if (!(rel_tol > 0.0 && rel_tol < 1.0)) fail(ErrorKind::Input, "series rel_tol must lie in (0,1)");
    if (min_terms < 1 || max_terms < 1 || min_terms > max_terms)
        fail(ErrorKind::Input, "series term limits must satisfy 1 <= min_terms <= max_terms");
}

void Tolerance::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) fail(ErrorKind::Input, "tolerances must be positive");
    if (max_subdivisions < 1) fail(ErrorKind::Input, "max_subdivisions must be at least 1");
}

void ContourSpec::validate() const {
    if (!(half_height > 0.0)) fail(ErrorKind::Input, "contour half_height must be positive");
    if (panels < 1) fail(ErrorKind::Input, "contour panels must be at least 1");
    if (!std::isfinite(abscissa)) fail(ErrorKind::Input, "contour abscissa must be finite");
}

namespace detail {

const GaussRule& gauss15() {
    static const GaussRule rule = [] {
        GaussRule r{};
        const int n = 15;
        for (int i = 0; i < n; ++i) {
            double x = std::cos(pi * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= n; ++k) {
                    double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-16) break;
            }
            r.node[i] = x;
            r.weight[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        return r;
    }();
    return rule;
}

template <class T>
T wynn_impl(const std::vector<T>& s, double& error) {
    const std::size_t n = s.size();
    if (n < 3) {
        error = n >= 2 ? std::abs(s[n - 1] - s[n - 2]) : 1e300;
        return s.back();
    }
    T best = s.back();
    double best_err = std::abs(s[n - 1] - s[n - 2]);
    std::vector<T> prev(n + 1, T(0.0)), cur(s);
    for (std::size_t k = 1; k < n; ++k) {
        std::vector<T> next(n - k);
        bool broke = false;
        for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
            T d = cur[i + 1] - cur[i];
            if (std::abs(d) == 0.0) {
                broke = true;
                break;
            }
            next[i] = prev[i + 1] + T(1.0) / d;
        }
        if (broke) break;
        if (k % 2 == 0 && next.size() >= 2) {
            double e = std::abs(next.back() - next[next.size() - 2]);
            if (e < best_err && std::isfinite(e)) {
                best_err = e;
                best = next.back();
            }
        }
        prev = std::move(cur);
        cur = std::move(next);
    }
    error = best_err;
    return best;
}

double wynn_epsilon(const std::vector<double>& partial, double& error) {
    return wynn_impl(partial, error);
}

Complex wynn_epsilon(const std::vector<Complex>& partial, double& error) {
    return wynn_impl(partial, error);
}

}  // namespace detail

ContourSpec stirling_contour(double gamma, double abs_tol, double shift) {
    if (!(abs_tol > 0.0)) fail(ErrorKind::Input, "stirling_contour: abs_tol must be positive");
    auto bound = [&](double t) { return 10.0 * std::exp(-2.0 * pi * t) * std::pow(t, 4.0 * gamma - 1.5); };
    double t = 1.0;
    while (bound(t) >= abs_tol && t < 1e4) t += 0.25;
    ContourSpec spec;
    spec.abscissa = gamma;
    spec.half_height = t + std::max(0.0, shift);
    spec.panels = std::max(4, static_cast<int>(std::ceil(spec.half_height / 2.0)));
    return spec;
}

QuadResult integrate_vertical_contour(const std::function<Complex(Complex)>& h,
                                      const ContourSpec& spec, const Tolerance& tol) {
    return integrate_contour<Complex>(h, spec, tol);
}

}  // namespace kelvin
