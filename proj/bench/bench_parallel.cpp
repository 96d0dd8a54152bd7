#include <benchmark/benchmark.h>

#include <kelvin/bvp.hpp>
#include <kelvin/kernel.hpp>
#include <kelvin/parallel.hpp>
#include <kelvin/transforms.hpp>

using namespace kelvin;

namespace {

ExecPolicy policy_of(const benchmark::State& s) { return s.range(0) ? ExecPolicy::Parallel : ExecPolicy::Serial; }

void kernel_grid(benchmark::State& state) {
    const double xs[] = {0.1, 0.5, 1.0, 2.0, 10.0}, ts[] = {0.0, 0.5, 1.0, 2.0, 5.0};
    for (auto _ : state) {
        auto v = map_indices(25, [&](std::size_t k) { return kernel_mellin_barnes(xs[k / 5], ts[k % 5]).value; },
                             policy_of(state));
        benchmark::DoNotOptimize(v);
    }
}

void forward_f_grid(benchmark::State& state) {
    TestFunction f = make_test_function({1.0, 2.0, 3.0});
    std::vector<double> taus;
    for (int k = 0; k <= 16; ++k) taus.push_back(0.5 * k);
    for (auto _ : state)
        benchmark::DoNotOptimize(forward_f(f, taus, transform_tolerance(), ForwardMethod::MellinBarnes, policy_of(state)));
}

void forward_g_grid(benchmark::State& state) {
    IndexFunction g = gaussian_bump_datum();
    std::vector<double> xs;
    for (int k = 0; k < 16; ++k) xs.push_back(0.1 * std::pow(1.5, k));
    for (auto _ : state) benchmark::DoNotOptimize(forward_g(g, xs, transform_tolerance(), policy_of(state)));
}

void inverse_f_points(benchmark::State& state) {
    TestFunction f = make_test_function({1.0, 2.0, 3.0});
    InversionOptions opt;
    opt.policy = policy_of(state);
    for (auto _ : state) benchmark::DoNotOptimize(inverse_f(continue_forward_f(f), {0.5, 1.0, 1.5, 2.0}, opt));
}

void pde_residual_point(benchmark::State& state) {
    IndexFunction g = reference_boundary_datum();
    WedgeParams w{pi / 2.0, 1.0, pi / 4.0};
    for (auto _ : state) benchmark::DoNotOptimize(pde_residual(g, w, default_steps(w), policy_of(state)));
}

}  // namespace

// Argument 0 = serial reference, 1 = OpenMP.
BENCHMARK(kernel_grid)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(forward_f_grid)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(forward_g_grid)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(inverse_f_points)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(pde_residual_point)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime()->Iterations(1);

BENCHMARK_MAIN();
