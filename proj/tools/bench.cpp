// Compares the parallel kernels against their serial references.
#include <omp.h>

#include <chrono>
#include <cstdio>

#include "nlgf/solvers.hpp"

using namespace nlgf;

namespace {

template <typename F>
double timed(F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration_cast<std::chrono::duration<double>>(t1 - t0).count();
}

void row(const char* name, double serial, double parallel, bool same) {
    std::printf("%-34s %9.3fs %9.3fs %6.2fx  %s\n", name, serial, parallel,
                serial / std::max(parallel, 1e-9), same ? "results match" : "MISMATCH");
}

} // namespace

int main() {
    std::printf("threads: %d\n", omp_get_max_threads());
    std::printf("%-34s %10s %10s %7s\n", "kernel", "serial", "parallel", "speedup");

    {
        Game g = pauli_basis_game(3);
        Strategy s = pauli_basis_strategy(3);
        double vs = 0, vp = 0;
        double ts = timed([&] { vs = eval_value_serial(g, s); });
        double tp = timed([&] { vp = eval_value(g, s); });
        row("value evaluation (basis test n=3)", ts, tp, vs == vp);
    }
    {
        Game g = magic_square_game();
        SolveReport rs, rp;
        double tp = timed([&] { rp = classical_value_exact(g); });
        omp_set_num_threads(1);
        double ts = timed([&] { rs = classical_value_exact(g); });
        omp_set_num_threads(omp_get_num_procs());
        row("classical search (magic square)", ts, tp, rs.value_exact == rp.value_exact);
    }
    {
        LowerBoundOptions opt;
        opt.dim = 2;
        opt.restarts = 24;
        opt.iters = 3;
        SolveReport rs, rp;
        double tp = timed([&] { rp = quantum_lower_bound(reject_game(), opt); });
        opt.threads = 1;
        double ts = timed([&] { rs = quantum_lower_bound(reject_game(), opt); });
        row("lower-bound restarts (reject)", ts, tp, rs.value == rp.value);
    }
    return 0;
}
