#include <kelvin/sampled.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace kelvin {

std::optional<double> fit_decay_rate(const std::vector<double>& grid, const std::vector<double>& values,
                                     std::size_t count) {
    if (grid.size() < count || count < 2) return std::nullopt;
    const std::size_t start = grid.size() - count;
    double sign = values[start] >= 0.0 ? 1.0 : -1.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = start; i < grid.size(); ++i) {
        if (values[i] == 0.0 || values[i] * sign < 0.0) return std::nullopt;
        double y = std::log(std::abs(values[i]));
        sx += grid[i];
        sy += y;
        sxx += grid[i] * grid[i];
        sxy += grid[i] * y;
    }
    double n = static_cast<double>(count);
    double denom = n * sxx - sx * sx;
    if (denom <= 0.0) return std::nullopt;
    double slope = (n * sxy - sx * sy) / denom;
    if (!(slope < 0.0)) return std::nullopt;
    return -slope;
}

SampledFunction::SampledFunction(std::vector<double> grid, std::vector<double> values, Interpolation interp,
                                 std::optional<double> decay_rate)
    : grid_(std::move(grid)), values_(std::move(values)), interp_(interp) {
    if (grid_.size() != values_.size()) fail(ErrorKind::Input, "sampled function: grid/value length mismatch");
    if (grid_.empty()) fail(ErrorKind::Input, "sampled function: needs at least one sample");
    for (std::size_t i = 0; i < grid_.size(); ++i) {
        if (!std::isfinite(grid_[i]) || !std::isfinite(values_[i]))
            fail(ErrorKind::Input, "sampled function: non-finite entry at row " + std::to_string(i + 1));
        if (grid_[i] < 0.0) fail(ErrorKind::Input, "sampled function: negative grid value at row " + std::to_string(i + 1));
        if (i > 0 && !(grid_[i] > grid_[i - 1]))
            fail(ErrorKind::Input, "sampled function: grid not strictly increasing at row " + std::to_string(i + 1));
    }
    if (decay_rate) {
        if (!(*decay_rate > 0.0)) fail(ErrorKind::Input, "sampled function: decay rate must be positive");
        rate_ = decay_rate;
    } else {
        rate_ = fit_decay_rate(grid_, values_);
        fitted_ = rate_.has_value();
    }
    const std::size_t n = grid_.size();
    second_.assign(n, 0.0);
    if (interp_ == Interpolation::CubicSpline && n >= 3) {
        // Natural spline: tridiagonal solve for the second derivatives.
        std::vector<double> c(n, 0.0), d(n, 0.0);
        for (std::size_t i = 1; i + 1 < n; ++i) {
            double h0 = grid_[i] - grid_[i - 1], h1 = grid_[i + 1] - grid_[i];
            double a = h0 / 6.0, b = (h0 + h1) / 3.0, cc = h1 / 6.0;
            double r = (values_[i + 1] - values_[i]) / h1 - (values_[i] - values_[i - 1]) / h0;
            double m = b - a * c[i - 1];
            c[i] = cc / m;
            d[i] = (r - a * d[i - 1]) / m;
        }
        for (std::size_t i = n - 2; i >= 1; --i) {
            second_[i] = d[i] - c[i] * second_[i + 1];
            if (i == 1) break;
        }
    }
}

std::size_t SampledFunction::segment(double x) const {
    auto it = std::upper_bound(grid_.begin(), grid_.end(), x);
    std::size_t i = static_cast<std::size_t>(it - grid_.begin());
    if (i == 0) return 0;
    return std::min(i - 1, grid_.size() - 2);
}

double SampledFunction::operator()(double x) const {
    if (grid_.size() == 1 && x <= grid_.back()) return values_[0];
    if (x > grid_.back()) {
        if (!rate_) return 0.0;
        return values_.back() * std::exp(-*rate_ * (x - grid_.back()));
    }
    std::size_t i = segment(x);
    double h = grid_[i + 1] - grid_[i];
    double a = (grid_[i + 1] - x) / h, b = (x - grid_[i]) / h;
    double v = a * values_[i] + b * values_[i + 1];
    if (interp_ == Interpolation::CubicSpline)
        v += ((a * a * a - a) * second_[i] + (b * b * b - b) * second_[i + 1]) * h * h / 6.0;
    return v;
}

double SampledFunction::derivative(double x) const {
    if (grid_.size() == 1 && x <= grid_.back()) return 0.0;
    if (x > grid_.back()) {
        if (!rate_) return 0.0;
        return -*rate_ * values_.back() * std::exp(-*rate_ * (x - grid_.back()));
    }
    std::size_t i = segment(x);
    double h = grid_[i + 1] - grid_[i];
    double a = (grid_[i + 1] - x) / h, b = (x - grid_[i]) / h;
    double d = (values_[i + 1] - values_[i]) / h;
    if (interp_ == Interpolation::CubicSpline)
        d += (-(3.0 * a * a - 1.0) * second_[i] + (3.0 * b * b - 1.0) * second_[i + 1]) * h / 6.0;
    return d;
}

double SampledFunction::effective_end(double rel) const {
    if (!rate_) return grid_.back();
    return grid_.back() + std::log(1.0 / rel) / *rate_;
}

SampledFunction SampledFunction::scaled(double factor) const {
    std::vector<double> v(values_);
    for (auto& e : v) e *= factor;
    return SampledFunction(grid_, v, interp_, rate_);
}

}  // namespace kelvin
