#pragma once

#include <kelvin/types.hpp>

#include <exception>
#include <vector>

namespace kelvin {

// Sets the worker count used by ExecPolicy::Parallel (0 keeps the OpenMP default).
void set_worker_count(int n);
int worker_count();

// out[i] = f(i). Each index is computed independently, so the result does not depend on the
// policy or the thread count. The exception raised at the lowest index is rethrown.
template <class F>
auto map_indices(std::size_t n, F&& f, ExecPolicy policy) -> std::vector<decltype(f(std::size_t{0}))> {
    using R = decltype(f(std::size_t{0}));
    std::vector<R> out(n);
    if (policy == ExecPolicy::Serial) {
        for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
        return out;
    }
    std::vector<std::exception_ptr> errors(n);
    const long count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < count; ++i) {
        try {
            out[i] = f(static_cast<std::size_t>(i));
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

}  // namespace kelvin
