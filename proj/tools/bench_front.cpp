// Compares the OpenMP grid kernel against the serial reference on the
// DSW and dynamic DTLZ2 instances and checks they agree exactly.

#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "dmop/pareto.hpp"
#include "dmop/problems.hpp"

using namespace dmop;

namespace {

double seconds(std::chrono::steady_clock::time_point a,
               std::chrono::steady_clock::time_point b) {
    return std::chrono::duration<double>(b - a).count();
}

void bench(const char* name, const DynamicProblem& problem, std::size_t grid) {
    auto t0 = std::chrono::steady_clock::now();
    FrontSnapshot serial = brute_force_front_serial(problem, 0.0, grid);
    auto t1 = std::chrono::steady_clock::now();
    FrontSnapshot parallel = brute_force_front(problem, 0.0, grid);
    auto t2 = std::chrono::steady_clock::now();

    bool match = serial.pos == parallel.pos && serial.pof == parallel.pof;
    double ts = seconds(t0, t1), tp = seconds(t1, t2);
    std::printf("%-16s grid=%zu front=%zu serial=%.3fs omp=%.3fs speedup=%.2fx %s\n", name, grid,
                serial.pos.size(), ts, tp, ts / tp, match ? "match" : "MISMATCH");
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
    std::printf("openmp: disabled (serial build)\n");
#endif
    bench("dsw", dsw_make(DswConfig{}), 701);
    Dtlz2DynConfig dtlz;
    dtlz.p = 2; // 3 decision variables
    bench("dtlz2-dynamic", dtlz2_dynamic_make(dtlz), 151);
    return 0;
}
