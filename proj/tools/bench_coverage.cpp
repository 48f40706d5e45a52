// Benchmark: serial vs OpenMP coverage sweep, and the transvection-orbit
// census kernel. The two paths must produce identical reports; timings show
// what the parallel sweep buys on multi-core hosts.

#include <chrono>
#include <cstring>
#include <iostream>

#include "hklat/certifier.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace hklat;
using Clock = std::chrono::steady_clock;

namespace {

double ms_since(Clock::time_point t0) {
    return std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - t0).count() / 1000.0;
}

void bench_coverage_sweep(int n, const Int& bound) {
    auto t0 = Clock::now();
    CoverageReport serial = coverage(Family::K3Hilb, n, bound, ExecPolicy::Serial);
    double t_serial = ms_since(t0);

    t0 = Clock::now();
    CoverageReport parallel = coverage(Family::K3Hilb, n, bound, ExecPolicy::Parallel);
    double t_parallel = ms_since(t0);

    json js, jp;
    to_json(js, serial, true);
    to_json(jp, parallel, true);
    const char* match = js.dump() == jp.dump() ? "identical" : "MISMATCH";

    std::printf("coverage  n=%-2d bound=%-4s orbits=%-4lld serial=%9.2fms  parallel=%9.2fms  reports %s\n", n,
                bound.get_str().c_str(), serial.orbits_total(), t_serial, t_parallel, match);
}

void bench_census(long k, long box, long bound) {
    IntegerLattice l = direct_sum({lattice_U(), lattice_U(), lattice_rank1(Int(k))});
    std::vector<Vec> seeds = primitive_box_vectors(l, box);

    auto t0 = Clock::now();
    OrbitCensus serial = orbit_census(l, seeds, bound, ExecPolicy::Serial);
    double t_serial = ms_since(t0);

    t0 = Clock::now();
    OrbitCensus parallel = orbit_census(l, seeds, bound, ExecPolicy::Parallel);
    double t_parallel = ms_since(t0);

    const char* match = (serial.reached_pairs == parallel.reached_pairs &&
                         serial.components == parallel.components &&
                         serial.states_explored == parallel.states_explored)
                            ? "identical"
                            : "MISMATCH";

    std::printf("census    U2+<%ld> box=%ld bound=%ld seeds=%zu states=%lld serial=%9.2fms  parallel=%9.2fms  %s\n",
                k, box, bound, seeds.size(), serial.states_explored, t_serial, t_parallel, match);
}

}  // namespace

int main(int argc, char** argv) {
    bool quick = argc > 1 && std::strcmp(argv[1], "--quick") == 0;
#ifdef _OPENMP
    std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without openmp; parallel path runs serially\n");
#endif

    if (quick) {
        bench_coverage_sweep(2, Int(20));
        bench_census(-2, 2, 8);
        return 0;
    }

    for (int n : {4, 7, 10}) bench_coverage_sweep(n, Int(100));
    bench_census(-2, 3, 12);
    bench_census(-4, 3, 12);
    return 0;
}
