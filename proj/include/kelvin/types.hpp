#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace kelvin {

using Complex = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double euler_gamma = 0.57721566490153286061;

enum class ErrorKind { Pole, Domain, Range, Convergence, Input };

class NumericError : public std::runtime_error {
public:
    NumericError(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
    throw NumericError(kind, what);
}

struct SeriesControl {
    double rel_tol = 1e-15;
    int max_terms = 600;
    int min_terms = 3;

    void validate() const;
};

struct Tolerance {
    double abs_tol = 1e-14;
    double rel_tol = 1e-11;
    int max_subdivisions = 24;

    void validate() const;
    Tolerance tightened(double factor) const {
        return {abs_tol / factor, rel_tol / factor, max_subdivisions};
    }
};

struct ContourSpec {
    double abscissa = 0.5;
    double half_height = 40.0;
    int panels = 16;

    void validate() const;
};

template <class V>
struct BasicQuadResult {
    V value{};
    double err_estimate = 0.0;
    long evaluations = 0;
};

using QuadResult = BasicQuadResult<Complex>;

enum class ExecPolicy { Serial, Parallel };

inline bool finite(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

inline Complex require_finite(Complex z, const char* where) {
    if (!finite(z)) fail(ErrorKind::Range, std::string(where) + ": non-finite result");
    return z;
}

}  // namespace kelvin
