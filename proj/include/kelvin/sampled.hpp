#pragma once

#include <kelvin/types.hpp>

#include <optional>
#include <vector>

namespace kelvin {

enum class Interpolation { CubicSpline, PiecewiseLinear };

// Samples on a strictly increasing nonnegative grid. Beyond the last point the function
// follows an exponential tail v_n·e^{-rate(x-x_n)}; the rate is supplied or fitted from the
// last five samples. Below the first point the first interpolation piece is extended.
class SampledFunction {
public:
    SampledFunction() = default;
    SampledFunction(std::vector<double> grid, std::vector<double> values,
                    Interpolation interp = Interpolation::CubicSpline,
                    std::optional<double> decay_rate = std::nullopt);

    const std::vector<double>& grid() const { return grid_; }
    const std::vector<double>& values() const { return values_; }
    Interpolation interpolation() const { return interp_; }
    // Tail rate in use; nullopt means no usable tail (the function is taken as 0 beyond).
    std::optional<double> decay_rate() const { return rate_; }
    bool decay_fitted() const { return fitted_; }
    std::size_t size() const { return grid_.size(); }

    double operator()(double x) const;
    double derivative(double x) const;

    // Where the tail has fallen below `rel` of the last sample.
    double effective_end(double rel = 1e-17) const;

    SampledFunction scaled(double factor) const;

private:
    std::size_t segment(double x) const;

    std::vector<double> grid_, values_, second_;
    Interpolation interp_ = Interpolation::CubicSpline;
    std::optional<double> rate_;
    bool fitted_ = false;
};

// Fits log|v| against x over the last `count` points; nullopt when the samples change sign,
// vanish, or do not decay.
std::optional<double> fit_decay_rate(const std::vector<double>& grid, const std::vector<double>& values,
                                     std::size_t count = 5);

}  // namespace kelvin
