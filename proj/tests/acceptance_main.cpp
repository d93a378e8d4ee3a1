// Acceptance suite: every criterion from the project contract, one pass/fail
// line each, at the stated tolerances and runtime bounds.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include "dappell/identities.hpp"
#include "dappell/integrals.hpp"
#include "dappell/report.hpp"
#include "oracles.hpp"

using namespace dappell;

namespace {

int failures = 0;

void line(int criterion, bool pass, const std::string& what)
{
    std::printf("[%s] criterion %2d: %s\n", pass ? "PASS" : "FAIL", criterion,
                what.c_str());
    if (!pass)
        ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::mt19937_64 rng(0xA11CE5);

cplx rand_cplx(double lo, double hi, double im)
{
    std::uniform_real_distribution<double> re(lo, hi), imd(-im, im);
    return {re(rng), imd(rng)};
}

cplx rand_arg(double lo, double hi)
{
    std::uniform_real_distribution<double> r(lo, hi), th(0.0, 2.0 * M_PI);
    const double rr = r(rng), t = th(rng);
    return {rr * std::cos(t), rr * std::sin(t)};
}

// suite wrapper: all listed families pass and worst residual meets the bound
bool suite_passes(const std::vector<IdentityFamily>& fams, int count, Regime regime,
                  double bound, double* worst_out = nullptr, std::uint64_t seed = 42)
{
    DrawPolicy policy;
    policy.count = count;
    policy.seed = seed;
    policy.regime = regime;
    const Report rep = run_suite(policy, fams);
    double worst = 0.0;
    bool ok = rep.all_pass();
    for (const FamilyReport& f : rep.families) {
        worst = std::max(worst, f.worst_residual);
        if (f.worst_residual > bound)
            ok = false;
    }
    if (worst_out)
        *worst_out = worst;
    return ok;
}

char fmt_buf[256];
std::string fmt(const char* pattern, double v, double t)
{
    std::snprintf(fmt_buf, sizeof fmt_buf, pattern, v, t);
    return fmt_buf;
}

void criterion_1()
{
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    std::uniform_int_distribution<long> kl(0, 12), kd(1, 3), md(0, 8);
    bool ok = true;
    for (int i = 0; i < 1000; ++i) {
        const cplx u = rand_cplx(-3.0, 3.0, 2.0);
        const long kk = kl(rng), ll = kl(rng);
        auto track = [&](cplx got, cplx want) {
            const double res = std::abs(got - want) / (std::abs(want) + 1.0);
            worst = std::max(worst, res);
            if (res > 1e-11)
                ok = false;
        };
        // (u)_{k+l} = (u)_k (u+k)_l
        track(pochhammer(u, kk + ll),
              pochhammer(u, kk) * pochhammer(u + static_cast<double>(kk), ll));
        // (u)_k = (-1)^k (1-u-k)_k
        const double sgn = kk % 2 == 0 ? 1.0 : -1.0;
        track(pochhammer(u, kk), sgn * pochhammer(1.0 - u - static_cast<double>(kk), kk));
        // (u)_{k-l} = (-1)^l (u)_k / (1-u-k)_l, l <= k
        const long l2 = std::min(kk, ll);
        const cplx den = pochhammer(1.0 - u - static_cast<double>(kk), l2);
        if (std::abs(den) > 1e-6) {
            const double sg2 = l2 % 2 == 0 ? 1.0 : -1.0;
            track(pochhammer(u, kk - l2), sg2 * pochhammer(u, kk) / den);
        }
        // factorization of the signed discrete factor
        const long m = md(rng), k = kd(rng);
        const cplx t = rand_cplx(-4.0, 4.0, 2.0);
        const cplx direct = discrete_pochhammer(t, m, k);
        if (std::abs(direct) > 0.0)
            track(discrete_pochhammer_factorized(t, m, k), direct);
    }
    // (-k)_l = (-1)^l k!/(k-l)! exactly in integer arithmetic
    for (long k = 0; k <= 10 && ok; ++k)
        for (long l = 0; l <= k; ++l) {
            long long want = (l % 2 == 0) ? 1 : -1;
            for (long i = k - l + 1; i <= k; ++i)
                want *= i;
            if (pochhammer(cplx(static_cast<double>(-k), 0.0), l) !=
                cplx(static_cast<double>(want), 0.0))
                ok = false;
        }
    const double dt = seconds_since(t0);
    ok = ok && dt < 1.0;
    line(1, ok, fmt("Pochhammer identity suite, 1000 draws: worst %.2e (<= 1e-11), %.2f s (< 1 s)", worst, dt));
}

void criterion_2()
{
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    const bool ok = suite_passes(
        {IdentityFamily::Reduction3_3, IdentityFamily::Reduction3_4,
         IdentityFamily::Reduction3_5, IdentityFamily::Reduction3_6,
         IdentityFamily::Reduction7_1, IdentityFamily::Sec8SpecialCases},
        200, Regime::Terminating, 1e-10, &worst);
    const double dt = seconds_since(t0);
    line(2, ok && dt < 30.0,
         fmt("reduction suite, 200 draws each: worst %.2e (<= 1e-10), %.2f s (< 30 s)", worst, dt));
}

void criterion_3()
{
    double worst_t = 0.0, worst_c = 0.0;
    const bool term = suite_passes(
        {IdentityFamily::DiffEq1_15, IdentityFamily::DiffEq1_16, IdentityFamily::DiffEq3rd,
         IdentityFamily::DiffEq7_6, IdentityFamily::DiffEq7_7, IdentityFamily::DiffEq7_8},
        50, Regime::Terminating, 1e-9, &worst_t);
    const bool classical =
        suite_passes({IdentityFamily::DiffEq7_8}, 50, Regime::Classical, 1e-9, &worst_c);
    line(3, term && classical,
         fmt("difference-equation residuals, 50 draws each: worst %.2e terminating, %.2e classical (<= 1e-9)",
             worst_t, worst_c));
}

void criterion_4()
{
    double worst = 0.0;
    bool ok = true;
    for (int i = 0; i < 100; ++i) {
        std::uniform_int_distribution<long> kd(1, 3), td(0, 4);
        Appell1Params p;
        p.a = rand_cplx(0.5, 3.0, 1.0);
        p.b1 = rand_cplx(0.5, 3.0, 1.0);
        p.b2 = rand_cplx(0.5, 3.0, 1.0);
        p.c = rand_cplx(1.5, 4.0, 1.0);
        p.k1 = kd(rng);
        p.k2 = kd(rng);
        p.t1 = static_cast<double>(3 * p.k1 + td(rng));
        p.t2 = static_cast<double>(3 * p.k2 + td(rng));
        p.x = rand_arg(0.05, 0.35);
        p.y = rand_arg(0.05, 0.35);

        // weighted series against the numeric lattice operator
        OperatorExpr theta_t;
        theta_t *= make_factor(0.0, {{1.0, OperatorAtom::BigThetaT1}});
        const cplx via_weight = apply_weighted(p, theta_t).value;
        const cplx via_shift = theta_t_numeric(p, TSlot::T1);
        const double res_t = std::abs(via_weight - via_shift) /
                             (std::abs(via_weight) + std::abs(via_shift) + 1.0);

        // weighted series against the termwise x-derivative of the
        // terminating polynomial (coefficients collected independently)
        OperatorExpr theta_x;
        theta_x *= make_factor(0.0, {{1.0, OperatorAtom::ThetaX}});
        const cplx via_weight_x = apply_weighted(p, theta_x).value;
        const long mb = static_cast<long>(std::llround(p.t1.real())) / p.k1;
        const long nb = static_cast<long>(std::llround(p.t2.real())) / p.k2;
        cplx via_poly = 0.0;
        for (long m = 1; m <= mb; ++m) {
            oracles::lcplx coef = 0.0L;
            for (long n = 0; n <= nb; ++n)
                coef += oracles::f1_d1_coeff(p, m, n) * oracles::ipow(oracles::to_l(p.y), n);
            via_poly += static_cast<double>(m) * oracles::to_d(coef) *
                        std::pow(p.x, static_cast<double>(m));
        }
        const double res_x = std::abs(via_weight_x - via_poly) /
                             (std::abs(via_weight_x) + std::abs(via_poly) + 1.0);
        worst = std::max({worst, res_t, res_x});
        if (res_t > 1e-8 || res_x > 1e-8)
            ok = false;
    }
    line(4, ok,
         fmt("operator cross-implementation, 100 terminating draws: worst %.2e (<= 1e-8)", worst, 0));
}

void criterion_5()
{
    double worst = 0.0;
    const bool ok = suite_passes(
        {IdentityFamily::DeltaFormula4_1, IdentityFamily::DeltaFormula4_2,
         IdentityFamily::ThetaPower, IdentityFamily::PhiPower, IdentityFamily::PartialXB1,
         IdentityFamily::PartialYB2, IdentityFamily::PartialXA, IdentityFamily::PartialYA,
         IdentityFamily::PartialXC, IdentityFamily::PartialYC, IdentityFamily::F2ThetaPower,
         IdentityFamily::F2PhiPower, IdentityFamily::F2PartialXB1,
         IdentityFamily::F2PartialYB2, IdentityFamily::F2PartialXA,
         IdentityFamily::F2PartialYA, IdentityFamily::F2PartialXC,
         IdentityFamily::F2PartialYC},
        30, Regime::Terminating, 1e-9, &worst);
    line(5, ok,
         fmt("differential/difference formula suite, 30 draws per formula: worst %.2e (<= 1e-9)", worst, 0));
}

void criterion_6()
{
    double worst_f = 0.0, worst_i = 0.0;
    const bool finite = suite_passes(
        {IdentityFamily::FiniteSum5_1, IdentityFamily::FiniteSum5_2,
         IdentityFamily::F2FiniteSum1, IdentityFamily::F2FiniteSum2},
        50, Regime::Terminating, 1e-10, &worst_f);
    const bool infinite = suite_passes(
        {IdentityFamily::InfSum56, IdentityFamily::InfSumB1, IdentityFamily::InfSumB2,
         IdentityFamily::F2InfSumA, IdentityFamily::F2InfSumB1, IdentityFamily::F2InfSumB2},
        50, Regime::Terminating, 1e-8, &worst_i);
    line(6, finite && infinite,
         fmt("summation suite: finite worst %.2e (<= 1e-10), infinite worst %.2e (<= 1e-8)",
             worst_f, worst_i));
}

void criterion_7()
{
    double worst = 0.0;
    const bool ok = suite_passes(
        {IdentityFamily::Recursion6_aPlus, IdentityFamily::Recursion6_aMinus,
         IdentityFamily::Recursion6_b1Plus, IdentityFamily::Recursion6_b1Minus,
         IdentityFamily::Recursion6_b2Plus, IdentityFamily::Recursion6_b2Minus,
         IdentityFamily::Recursion6_cMinus, IdentityFamily::F2Recursion_aPlus,
         IdentityFamily::F2Recursion_aMinus, IdentityFamily::F2Recursion_b1Plus,
         IdentityFamily::F2Recursion_b1Minus, IdentityFamily::F2Recursion_cMinus},
        30, Regime::Terminating, 1e-9, &worst);
    line(7, ok, fmt("recursion suite, 30 terminating draws each: worst %.2e (<= 1e-9)", worst, 0));
}

void criterion_8()
{
    const bool counts = catalogue_size(RelationCatalogue::ContiguousDiff8) == 8 &&
                        catalogue_size(RelationCatalogue::RecursionDiff28) == 28 &&
                        catalogue_size(RelationCatalogue::ContiguousDelta8) == 8 &&
                        catalogue_size(RelationCatalogue::RecursionDelta28) == 28 &&
                        catalogue_size(RelationCatalogue::F2ContiguousDiff8) == 8 &&
                        catalogue_size(RelationCatalogue::F2RecursionDiff28) == 28 &&
                        catalogue_size(RelationCatalogue::F2ContiguousDelta8) == 8 &&
                        catalogue_size(RelationCatalogue::F2RecursionDelta22) == 22;
    double worst = 0.0;
    const bool ok = suite_passes(
        {IdentityFamily::ContiguousDiff8, IdentityFamily::RecursionDiff28,
         IdentityFamily::ContiguousDelta8, IdentityFamily::RecursionDelta28,
         IdentityFamily::F2ContiguousDiff8, IdentityFamily::F2RecursionDiff28,
         IdentityFamily::F2ContiguousDelta8, IdentityFamily::F2RecursionDelta22},
        20, Regime::Terminating, 1e-9, &worst);
    line(8, counts && ok,
         fmt("relation catalogues 8+28/8+28 and mirrors 8+28/8+22, 20 draws each: worst %.2e (<= 1e-9)",
             worst, 0));
}

void criterion_9()
{
    const auto rows = run_integral_suite(12, 42);
    bool ok = true;
    double worst_euler = 0.0, worst_laplace = 0.0;
    for (const auto& row : rows) {
        if (row.fail > 0 || row.pass == 0)
            ok = false;
        (row.tolerance < 5e-7 ? worst_euler : worst_laplace) =
            std::max(row.tolerance < 5e-7 ? worst_euler : worst_laplace,
                     row.worst_residual);
    }
    line(9, ok,
         fmt("integral suite, 12 draws per representation: Euler worst %.2e (<= 1e-7), Laplace/crosscheck worst %.2e (<= 1e-6)",
             worst_euler, worst_laplace));
}

void criterion_10()
{
    double worst = 0.0;
    const bool ok = suite_passes(
        {IdentityFamily::DegenerationPhi1First, IdentityFamily::DegenerationPhi2First,
         IdentityFamily::DegenerationPhi3First, IdentityFamily::DegenerationPhi1Second,
         IdentityFamily::DegenerationPhi2Second, IdentityFamily::DegenerationPhi3Second},
        20, Regime::Terminating, 0.0, &worst);
    line(10, ok,
         fmt("degeneration suite, 20 draws each: halving ratios within [1.5, 2.5] (worst excess %.2e)",
             worst, 0));
}

void criterion_11()
{
    bool ok = true;
    std::uniform_int_distribution<long> kd(1, 3);
    for (int i = 0; i < 50; ++i) {
        Appell1Params p;
        p.a = rand_cplx(0.5, 3.0, 1.0);
        p.b1 = rand_cplx(0.5, 3.0, 1.0);
        p.b2 = rand_cplx(0.5, 3.0, 1.0);
        p.c = rand_cplx(1.5, 4.0, 1.0);
        p.k1 = kd(rng);
        p.k2 = 0;
        std::uniform_real_distribution<double> frac(0.1, 0.9);
        p.t1 = cplx(3.0 + frac(rng), 0.0); // noninteger lattice variable
        p.t2 = 1.0;
        p.x = rand_arg(0.1, 0.35);
        p.y = rand_arg(0.0, 0.2);
        for (long scale : {1L, 2L, 4L}) {
            SeriesOptions opts;
            opts.max_diagonal *= scale;
            const auto r = eval_f1_d1(p, opts);
            if (r.verdict != Verdict::DivergenceSuspected)
                ok = false;
        }
    }
    line(11, ok,
         "divergence soundness, 50 formal draws: flagged at every budget up to 4x, never convergent");
}

void criterion_12()
{
    const auto t0 = std::chrono::steady_clock::now();
    const std::string out = "acceptance_verify.json";
    const std::string cmd = std::string(DAPPELL_CLI_PATH) +
                            " verify --regime terminating --count 50 --seed 42 --output json > " +
                            out;
    const int raw = std::system(cmd.c_str());
    const int code = WEXITSTATUS(raw);
    const double dt = seconds_since(t0);
    bool round_trip = false;
    try {
        std::ifstream in(out);
        std::stringstream ss;
        ss << in.rdbuf();
        const Report rep = report_from_json(ss.str());
        round_trip = report_from_json(report_to_json(rep)) == rep && rep.all_pass();
    } catch (const std::exception&) {
        round_trip = false;
    }
    line(12, code == 0 && dt < 300.0 && round_trip,
         fmt("end-to-end verify (count 50, seed 42): exit 0 in %.1f s (< 300 s), JSON report round-trips",
             dt, 0));
}

} // namespace

int main()
{
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    criterion_12();
    std::printf(failures == 0 ? "acceptance: all criteria satisfied\n"
                              : "acceptance: %d criteria failed\n",
                failures);
    return failures == 0 ? 0 : 1;
}
