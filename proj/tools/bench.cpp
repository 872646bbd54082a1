#include <chrono>
#include <cstdio>
#include <vector>

#include "latflow/cf.hpp"
#include "latflow/critical.hpp"
#include "latflow/dani.hpp"
#include "latflow/experiments.hpp"
#include "latflow/flow.hpp"
#include "latflow/norms.hpp"

using namespace latflow;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(const char* name, double serial_s, double parallel_s) {
    std::printf("%-24s %10.3fs %10.3fs %8.2fx\n", name, serial_s, parallel_s,
                parallel_s > 0.0 ? serial_s / parallel_s : 0.0);
}

}  // namespace

// Times each parallel kernel against its serial reference on a fixed workload.
int main() {
    std::printf("%-24s %11s %11s %9s\n", "kernel", "serial", "parallel", "speedup");

    {
        const NormDescriptor norm = NormDescriptor::lp(3.0);
        auto t0 = std::chrono::steady_clock::now();
        const CriticalResult a = critical_determinant_serial(norm, 20000);
        const double ts = seconds_since(t0);
        t0 = std::chrono::steady_clock::now();
        const CriticalResult b = critical_determinant(norm, 20000);
        const double tp = seconds_since(t0);
        report("critical_determinant", ts, tp);
        if (a.value != b.value) std::printf("  MISMATCH: %.17g vs %.17g\n", a.value, b.value);
    }

    {
        const AlphaCF alpha = AlphaCF::from_double(0.64872127070012815);
        const NormDescriptor norm = NormDescriptor::euclidean(2);
        std::vector<double> grid;
        for (int i = 0; i <= 400000; ++i) grid.push_back(1e-4 * i);
        auto t0 = std::chrono::steady_clock::now();
        const auto a = trajectory_delta_serial(alpha, norm, 0.8660254037844386, grid);
        const double ts = seconds_since(t0);
        t0 = std::chrono::steady_clock::now();
        const auto b = trajectory_delta(alpha, norm, 0.8660254037844386, grid);
        const double tp = seconds_since(t0);
        report("trajectory_delta", ts, tp);
        for (size_t i = 0; i < a.size(); ++i)
            if (a[i].delta != b[i].delta) {
                std::printf("  MISMATCH at grid index %zu\n", i);
                break;
            }
    }

    {
        const PsiSpec psi = PsiSpec::log_gap(1.0);
        const std::vector<double> windows{10.0, 20.0};
        auto t0 = std::chrono::steady_clock::now();
        const ZeroOneReport a = zero_one_experiment_serial(psi, 300, windows, 7);
        const double ts = seconds_since(t0);
        t0 = std::chrono::steady_clock::now();
        const ZeroOneReport b = zero_one_experiment(psi, 300, windows, 7);
        const double tp = seconds_since(t0);
        report("zero_one_experiment", ts, tp);
        for (size_t i = 0; i < a.windows.size(); ++i)
            if (a.windows[i].hits != b.windows[i].hits) {
                std::printf("  MISMATCH in window %zu\n", i);
                break;
            }
    }

    return 0;
}
