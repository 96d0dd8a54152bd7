#pragma once

#include <kelvin/types.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace kelvin {

namespace detail {

struct GaussRule {
    std::array<double, 15> node;
    std::array<double, 15> weight;
};

const GaussRule& gauss15();

inline double qnorm(double v) { return std::abs(v); }
inline double qnorm(Complex v) { return std::abs(v); }
template <std::size_t N>
double qnorm(const std::array<Complex, N>& v) {
    double m = 0.0;
    for (const auto& e : v) m = std::max(m, std::abs(e));
    return m;
}

inline bool qfinite(double v) { return std::isfinite(v); }
inline bool qfinite(Complex v) { return finite(v); }
template <std::size_t N>
bool qfinite(const std::array<Complex, N>& v) {
    for (const auto& e : v)
        if (!finite(e)) return false;
    return true;
}

template <class V>
V qzero() { return V{}; }

template <class V>
V& qadd(V& a, const V& b) { a += b; return a; }
template <std::size_t N>
std::array<Complex, N>& qadd(std::array<Complex, N>& a, const std::array<Complex, N>& b) {
    for (std::size_t i = 0; i < N; ++i) a[i] += b[i];
    return a;
}

template <class V>
V qscale(V a, double s) { return a * s; }
template <std::size_t N>
std::array<Complex, N> qscale(std::array<Complex, N> a, double s) {
    for (auto& e : a) e *= s;
    return a;
}

template <class V>
V qsub(V a, const V& b) { return a - b; }
template <std::size_t N>
std::array<Complex, N> qsub(std::array<Complex, N> a, const std::array<Complex, N>& b) {
    for (std::size_t i = 0; i < N; ++i) a[i] -= b[i];
    return a;
}

template <class V>
struct Panel {
    double a, b;
    V value;
    double abs_value;
};

// Gauss-Legendre on [a,b]; abs_value accumulates the integral of |f| for roundoff control.
template <class V, class F>
Panel<V> gl_panel(F& f, double a, double b, long& evals) {
    const auto& r = gauss15();
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    V sum = qzero<V>();
    double asum = 0.0;
    for (int i = 0; i < 15; ++i) {
        V y = f(c + h * r.node[i]);
        if (!qfinite(y)) fail(ErrorKind::Convergence, "integrand returned a non-finite value");
        qadd(sum, qscale(y, r.weight[i]));
        asum += r.weight[i] * qnorm(y);
    }
    evals += 15;
    return {a, b, qscale(sum, h), asum * std::abs(h)};
}

template <class V>
V pairwise_sum(const std::vector<V>& xs, std::size_t lo, std::size_t hi) {
    if (hi - lo == 0) return qzero<V>();
    if (hi - lo == 1) return xs[lo];
    std::size_t mid = lo + (hi - lo) / 2;
    V left = pairwise_sum(xs, lo, mid);
    return qadd(left, pairwise_sum(xs, mid, hi));
}

}  // namespace detail

template <class V>
V pairwise_sum(const std::vector<V>& xs) {
    return detail::pairwise_sum(xs, 0, xs.size());
}

// Globally adaptive Gauss-Legendre on [a,b]. A segment's value is the sum of its two
// halves; its error is the difference against the unsplit rule.
template <class V, class F>
BasicQuadResult<V> integrate_interval(F&& f, double a, double b, const Tolerance& tol,
                                      int initial_panels = 1) {
    tol.validate();
    struct Seg {
        double a, b;
        V value, left, right;
        double err, abs_value;
        int depth;
    };
    long evals = 0;
    auto make = [&](double lo, double hi, const V& whole, int depth) {
        double mid = 0.5 * (lo + hi);
        auto l = detail::gl_panel<V>(f, lo, mid, evals);
        auto r = detail::gl_panel<V>(f, mid, hi, evals);
        V both = l.value;
        detail::qadd(both, r.value);
        return Seg{lo,    hi, both, l.value, r.value, detail::qnorm(detail::qsub(both, whole)),
                   l.abs_value + r.abs_value, depth};
    };
    std::vector<Seg> segs;
    initial_panels = std::max(1, initial_panels);
    for (int k = 0; k < initial_panels; ++k) {
        double lo = a + (b - a) * k / initial_panels;
        double hi = (k + 1 == initial_panels) ? b : a + (b - a) * (k + 1) / initial_panels;
        auto whole = detail::gl_panel<V>(f, lo, hi, evals);
        segs.push_back(make(lo, hi, whole.value, 0));
    }
    constexpr double eps = std::numeric_limits<double>::epsilon();
    const std::size_t max_segments = 20000;
    while (true) {
        V total = detail::qzero<V>();
        double err = 0.0, absint = 0.0;
        for (const auto& s : segs) {
            detail::qadd(total, s.value);
            err += s.err;
            absint += s.abs_value;
        }
        double target = std::max(tol.abs_tol, tol.rel_tol * detail::qnorm(total));
        if (err <= target || err <= 64.0 * eps * absint) break;
        std::size_t worst = segs.size();
        double worst_err = -1.0;
        for (std::size_t i = 0; i < segs.size(); ++i) {
            if (segs[i].depth < tol.max_subdivisions && segs[i].err > worst_err) {
                worst_err = segs[i].err;
                worst = i;
            }
        }
        if (worst == segs.size() || segs.size() >= max_segments) {
            fail(ErrorKind::Convergence,
                 "adaptive quadrature exhausted its subdivision budget (err " +
                     std::to_string(err) + ", target " + std::to_string(target) + ")");
        }
        Seg s = segs[worst];
        double mid = 0.5 * (s.a + s.b);
        segs[worst] = make(s.a, mid, s.left, s.depth + 1);
        segs.push_back(make(mid, s.b, s.right, s.depth + 1));
    }
    std::sort(segs.begin(), segs.end(), [](const Seg& x, const Seg& y) { return x.a < y.a; });
    std::vector<V> vals;
    vals.reserve(segs.size());
    double err = 0.0;
    for (const auto& s : segs) {
        vals.push_back(s.value);
        err += s.err;
    }
    return {pairwise_sum(vals), err, evals};
}

struct DecayHint {
    double scale = 1.0;  // panel size near which the integrand changes character
    double upper = std::numeric_limits<double>::infinity();  // known cutoff, if any
};

// Semi-infinite integral over geometrically growing panels in both directions from
// hint.scale; tails are closed once panel contributions decay below the target.
template <class V, class F>
BasicQuadResult<V> integrate_decaying(F&& f, const Tolerance& tol, DecayHint hint = {}) {
    tol.validate();
    if (std::isfinite(hint.upper)) return integrate_interval<V>(f, 0.0, hint.upper, tol, 8);
    const double a = hint.scale;
    Tolerance panel_tol{tol.abs_tol * 0.05, tol.rel_tol * 0.5, tol.max_subdivisions};
    std::vector<V> parts;
    double err = 0.0;
    long evals = 0;
    auto core = integrate_interval<V>(f, 0.5 * a, a, panel_tol, 2);
    parts.push_back(core.value);
    err += core.err_estimate;
    evals += core.evaluations;
    double running = detail::qnorm(core.value);

    auto sweep = [&](bool outward) {
        double prev = -1.0;
        int quiet = 0;
        double lo = outward ? a : 0.25 * a, hi = outward ? 2.0 * a : 0.5 * a;
        for (int k = 0; k < 1100; ++k) {
            auto p = integrate_interval<V>(f, lo, hi, panel_tol, 2);
            parts.push_back(p.value);
            err += p.err_estimate;
            evals += p.evaluations;
            double mag = detail::qnorm(p.value);
            running = std::max(running, detail::qnorm(pairwise_sum(parts)));
            double target = std::max(tol.abs_tol, tol.rel_tol * running);
            if (prev >= 0.0 && mag < prev && mag <= 0.1 * target) {
                double r = mag / prev;
                double tail = r < 1.0 ? mag * r / (1.0 - r) : mag;
                if (++quiet >= 2 && tail <= 0.1 * target) {
                    err += tail;
                    return;
                }
            } else if (mag == 0.0 && prev == 0.0) {
                return;
            } else {
                quiet = 0;
            }
            prev = mag;
            if (outward) {
                lo = hi;
                hi *= 2.0;
            } else {
                hi = lo;
                lo *= 0.5;
                if (hi < 1e-300) return;
            }
        }
        fail(ErrorKind::Convergence, "decaying integrand did not decay over the panel sweep");
    };
    sweep(false);
    sweep(true);
    return {pairwise_sum(parts), err, evals};
}

namespace detail {
double wynn_epsilon(const std::vector<double>& partial, double& error);
Complex wynn_epsilon(const std::vector<Complex>& partial, double& error);
}  // namespace detail

// ∫₀^∞ g(u)cos(ωu)du. Low frequencies relative to the envelope decay use the decaying
// engine; high frequencies sum half-period integrals between zeros of the cosine and
// accelerate the partial sums with Wynn's epsilon algorithm.
template <class V, class G>
BasicQuadResult<V> integrate_fourier_cosine(G&& g, double omega, const Tolerance& tol,
                                            DecayHint hint = {}) {
    tol.validate();
    if (!(omega >= 0.0)) fail(ErrorKind::Domain, "fourier-cosine: omega must be nonnegative");
    auto f = [&](double u) { return detail::qscale(V(g(u)), std::cos(omega * u)); };
    double g1 = detail::qnorm(V(g(1.0))), g2 = detail::qnorm(V(g(2.0)));
    double u_decay = (g1 > 0.0 && g2 > 0.0 && g1 > g2) ? 1.0 / std::log(g1 / g2) : 1e300;
    if (omega <= 8.0 / std::max(u_decay, 1e-300) || omega == 0.0) {
        return integrate_decaying<V>(f, tol, hint);
    }
    Tolerance panel_tol{tol.abs_tol * 0.01, tol.rel_tol * 0.1, tol.max_subdivisions};
    const double half = pi / omega;
    std::vector<V> terms;
    std::vector<V> partial;
    double err = 0.0;
    long evals = 0;
    V acc = detail::qzero<V>();
    double lo = 0.0, hi = 0.5 * half;
    int quiet = 0;
    double est_err = 0.0;
    for (int k = 0; k < 4000; ++k) {
        auto p = integrate_interval<V>(f, lo, hi, panel_tol, 1);
        evals += p.evaluations;
        err += p.err_estimate;
        detail::qadd(acc, p.value);
        terms.push_back(p.value);
        partial.push_back(acc);
        double target = std::max(tol.abs_tol, tol.rel_tol * detail::qnorm(acc));
        if (detail::qnorm(p.value) <= 0.01 * target) {
            if (++quiet >= 3) {
                est_err = detail::qnorm(p.value);
                return {pairwise_sum(terms), err + est_err, evals};
            }
        } else {
            quiet = 0;
        }
        if constexpr (std::is_same_v<V, double> || std::is_same_v<V, Complex>) {
            if (partial.size() >= 8 && partial.size() % 2 == 0) {
                double werr = 0.0;
                V w = detail::wynn_epsilon(partial, werr);
                if (werr <= 0.1 * target) return {w, err + werr, evals};
            }
        }
        lo = hi;
        hi += half;
    }
    fail(ErrorKind::Convergence, "fourier-cosine: Longman summation did not converge");
}

// Smallest T with 10·e^{-2πT}T^{4γ-3/2} < abs_tol, then shifted by `shift`.
ContourSpec stirling_contour(double gamma, double abs_tol, double shift = 0.0);

// (1/(2πi))∫_{γ-iT}^{γ+iT} h(s)ds, evaluated as (1/2π)∫₀^T [h(γ+it)+h(γ-it)]dt. The
// truncation error is estimated from the integrand's decay rate at T and added to the
// error estimate; if it exceeds the tolerance the height is insufficient.
template <class V, class H>
BasicQuadResult<V> integrate_contour(H&& h, const ContourSpec& spec, const Tolerance& tol) {
    spec.validate();
    tol.validate();
    const double g = spec.abscissa;
    auto q = [&](double t) {
        V a = h(Complex(g, t));
        return detail::qadd(a, h(Complex(g, -t)));
    };
    Tolerance inner{tol.abs_tol * 2.0 * pi, tol.rel_tol, tol.max_subdivisions};
    auto r = integrate_interval<V>(q, 0.0, spec.half_height, inner, spec.panels);
    const double T = spec.half_height;
    double qT = detail::qnorm(q(T)), qprev = detail::qnorm(q(T - 0.5));
    double truncation = 0.0;
    if (qT > 0.0) truncation = qprev > qT ? qT * 0.5 / std::log(qprev / qT) : qT * T;
    BasicQuadResult<V> out;
    out.value = detail::qscale(r.value, 1.0 / (2.0 * pi));
    truncation /= 2.0 * pi;
    out.err_estimate = r.err_estimate / (2.0 * pi) + truncation;
    out.evaluations = r.evaluations + 4;
    double target = std::max(tol.abs_tol, tol.rel_tol * detail::qnorm(out.value));
    if (truncation > target) {
        fail(ErrorKind::Convergence, "contour truncation error " + std::to_string(truncation) +
                                         " exceeds tolerance; increase half_height");
    }
    return out;
}


QuadResult integrate_vertical_contour(const std::function<Complex(Complex)>& h,
                                      const ContourSpec& spec, const Tolerance& tol);

}  // namespace kelvin
