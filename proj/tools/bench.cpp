// Compares the serial reference paths against the OpenMP runners on the
// three parallel surfaces: the identity suite, value grids, and quadrature.
// Reductions are order-fixed, so both paths must agree bit for bit.

#include <chrono>
#include <cstdio>
#include <vector>

#include "dappell/identities.hpp"
#include "dappell/integrals.hpp"

using namespace dappell;

namespace {

double seconds(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <typename F>
double timed(const F& f)
{
    const auto t0 = std::chrono::steady_clock::now();
    f();
    return seconds(t0);
}

void report(const char* name, double serial, double parallel, bool identical)
{
    std::printf("%-24s serial %8.3f s   parallel %8.3f s   speedup %5.2fx   %s\n", name,
                serial, parallel, serial / parallel,
                identical ? "bit-identical" : "VALUES DIFFER");
}

} // namespace

int main(int argc, char** argv)
{
    const int count = argc > 1 ? std::atoi(argv[1]) : 40;
    std::printf("threads available: %d\n", max_threads(ExecPolicy::Parallel));

    // identity suite
    {
        DrawPolicy serial_policy;
        serial_policy.count = count;
        serial_policy.exec = ExecPolicy::Serial;
        DrawPolicy parallel_policy = serial_policy;
        parallel_policy.exec = ExecPolicy::Parallel;
        Report rs, rp;
        const double ts = timed([&] { rs = run_suite(serial_policy, all_families()); });
        const double tp = timed([&] { rp = run_suite(parallel_policy, all_families()); });
        rs.wall_ms = rp.wall_ms = 0;
        report("identity suite", ts, tp, rs == rp);
    }

    // value grid
    {
        const int n = 120;
        Appell1Params base{1.2, 0.8, 1.1, 2.3, 0.0, 0.0, 0, 0, 0.0, 0.0};
        auto grid = [&](ExecPolicy exec) {
            std::vector<cplx> out(static_cast<size_t>(n) * n);
#pragma omp parallel for schedule(dynamic) if (exec == ExecPolicy::Parallel)
            for (int idx = 0; idx < n * n; ++idx) {
                Appell1Params p = base;
                p.x = -0.45 + 0.9 * (idx / n) / (n - 1.0);
                p.y = -0.45 + 0.9 * (idx % n) / (n - 1.0);
                out[static_cast<size_t>(idx)] = eval_f1_d1(p).value;
            }
            return out;
        };
        std::vector<cplx> vs, vp;
        const double ts = timed([&] { vs = grid(ExecPolicy::Serial); });
        const double tp = timed([&] { vp = grid(ExecPolicy::Parallel); });
        report("value grid 120x120", ts, tp, vs == vp);
    }

    // quadrature
    {
        Appell1Params p{1.3, 0.9, 1.4, 3.3, 5.0, 4.0, 1, 1, 0.25, 0.2};
        QuadratureOptions qs;
        qs.exec = ExecPolicy::Serial;
        QuadratureOptions qp;
        qp.exec = ExecPolicy::Parallel;
        cplx vs, vp;
        const double ts = timed([&] {
            for (int i = 0; i < 10; ++i)
                vs = eval_integral(IntegralForm::EulerSimplex, p, qs).value;
        });
        const double tp = timed([&] {
            for (int i = 0; i < 10; ++i)
                vp = eval_integral(IntegralForm::EulerSimplex, p, qp).value;
        });
        report("simplex quadrature x10", ts, tp, vs == vp);
    }
    return 0;
}
