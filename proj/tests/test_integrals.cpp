#include "doctest.h"

#include <cmath>
#include <random>

#include "dappell/integrals.hpp"

using namespace dappell;

namespace {

std::mt19937_64 rng(3131);

cplx rand_cplx(double re_lo, double re_hi, double im_max)
{
    std::uniform_real_distribution<double> re(re_lo, re_hi), im(-im_max, im_max);
    return {re(rng), im(rng)};
}

cplx rand_arg(double max_abs)
{
    std::uniform_real_distribution<double> r(0.05, max_abs), th(0.0, 2.0 * M_PI);
    const double rr = r(rng), t = th(rng);
    return {rr * std::cos(t), rr * std::sin(t)};
}

double resid(cplx a, cplx b)
{
    return std::abs(a - b) / (std::abs(a) + std::abs(b) + 1.0);
}

Appell1Params classical_draw()
{
    Appell1Params p;
    p.a = rand_cplx(0.5, 3.0, 0.8);
    p.b1 = rand_cplx(0.5, 3.0, 0.8);
    p.b2 = rand_cplx(0.5, 3.0, 0.8);
    p.c = p.a + rand_cplx(0.5, 3.0, 0.8); // keeps Re(c-a) > 0
    p.t1 = rand_cplx(-1.0, 1.0, 0.5);
    p.t2 = rand_cplx(-1.0, 1.0, 0.5);
    p.k1 = p.k2 = 0;
    p.x = rand_arg(0.5);
    p.y = rand_arg(0.5);
    return p;
}

Appell1Params terminating_draw()
{
    std::uniform_int_distribution<long> kd(1, 2), td(0, 3);
    Appell1Params p;
    p.a = rand_cplx(0.5, 3.0, 0.8);
    p.b1 = rand_cplx(0.5, 3.0, 0.8);
    p.b2 = rand_cplx(0.5, 3.0, 0.8);
    p.c = p.a + rand_cplx(0.5, 3.0, 0.8);
    p.k1 = kd(rng);
    p.k2 = kd(rng);
    p.t1 = static_cast<double>(3 * p.k1 + td(rng));
    p.t2 = static_cast<double>(3 * p.k2 + td(rng));
    p.x = rand_arg(0.35);
    p.y = rand_arg(0.35);
    return p;
}

} // namespace

TEST_CASE("gauss rules: polynomial exactness and gamma moments")
{
    std::vector<double> x, w;
    gauss_legendre(20, x, w);
    double s = 0.0, s7 = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        s += w[i];
        s7 += w[i] * std::pow(x[i], 8);
    }
    CHECK(std::abs(s - 2.0) < 1e-14);
    CHECK(std::abs(s7 - 2.0 / 9.0) < 1e-14);

    gauss_laguerre(120, x, w);
    double s0 = 0.0, s3 = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        s0 += w[i];
        s3 += w[i] * x[i] * x[i] * x[i];
    }
    CHECK(std::abs(s0 - 1.0) < 1e-12);
    CHECK(std::abs(s3 - 6.0) < 1e-11 * 6.0);
    // noninteger moments converge only algebraically on the bare rule (the
    // reason the Laplace forms use the split evaluator instead)
    for (double sg : {1.3, 2.5, 3.8}) {
        double acc = 0.0;
        for (size_t i = 0; i < x.size(); ++i)
            acc += w[i] * std::pow(x[i], sg - 1.0);
        CHECK(std::abs(acc - std::tgamma(sg)) < 1e-3 * std::tgamma(sg));
        CHECK(std::abs(acc - std::tgamma(sg)) > 1e-10 * std::tgamma(sg));
    }
}

TEST_CASE("Euler1: antiderivative fixed point and beta normalization")
{
    // a=1, c=2, b1=b2=1, x=y=1/2, all k=0: integral of (1-u/2)^{-2} = 2
    Appell1Params p{1.0, 1.0, 1.0, 2.0, 0.5, 0.5, 0, 0, 0.5, 0.5};
    auto r = eval_integral(IntegralForm::Euler1, p);
    CHECK(std::abs(r.value - 2.0) < 1e-9);
    CHECK(r.tail_estimate <= 1e-9 * 2.0);

    // x = y = 0: the kernel integrates to exactly 1
    Appell1Params z{1.3, 1.0, 1.0, 2.9, 0.5, 0.5, 0, 0, 0.0, 0.0};
    CHECK(std::abs(eval_integral(IntegralForm::Euler1, z).value - 1.0) < 1e-10);
}

TEST_CASE("Euler1 equals the series on classical and terminating draws")
{
    for (int i = 0; i < 6; ++i) {
        Appell1Params p = classical_draw();
        const cplx series = eval_f1_d1(p).value;
        const cplx integral = eval_integral(IntegralForm::Euler1, p).value;
        CHECK(std::abs(series - integral) < 1e-7 * (1.0 + std::abs(series)));
    }
    for (int i = 0; i < 6; ++i) {
        Appell1Params p = terminating_draw();
        const cplx series = eval_f1_d1(p).value;
        const cplx integral = eval_integral(IntegralForm::Euler1, p).value;
        CHECK(std::abs(series - integral) < 1e-7 * (1.0 + std::abs(series)));
    }
}

TEST_CASE("EulerSimplex equals the series under its preconditions")
{
    for (int i = 0; i < 4; ++i) {
        Appell1Params p = terminating_draw();
        p.c = p.b1 + p.b2 + rand_cplx(0.5, 2.0, 0.5);
        const cplx series = eval_f1_d1(p).value;
        const cplx integral = eval_integral(IntegralForm::EulerSimplex, p).value;
        CHECK(std::abs(series - integral) < 1e-7 * (1.0 + std::abs(series)));
    }
    // classical spot check
    Appell1Params p{1.2, 0.9, 1.1, 3.0, 0.0, 0.0, 0, 0, 0.3, 0.2};
    const cplx series = eval_f1_d1(p).value;
    const cplx integral = eval_integral(IntegralForm::EulerSimplex, p).value;
    CHECK(std::abs(series - integral) < 1e-7 * (1.0 + std::abs(series)));
}

TEST_CASE("Laplace forms equal the series on terminating draws")
{
    for (int i = 0; i < 3; ++i) {
        Appell1Params p = terminating_draw();
        p.a = rand_cplx(1.0, 3.0, 0.8); // keeps u^{a-1} quadrature-friendly
        p.b1 = rand_cplx(1.0, 3.0, 0.8);
        p.b2 = rand_cplx(1.0, 3.0, 0.8);
        p.c = p.a + rand_cplx(0.5, 2.0, 0.5);
        const cplx series = eval_f1_d1(p).value;
        for (auto form : {IntegralForm::LaplaceA, IntegralForm::LaplaceB1,
                          IntegralForm::LaplaceB2}) {
            const cplx integral = eval_integral(form, p).value;
            CHECK(std::abs(series - integral) < 1e-6 * (1.0 + std::abs(series)));
        }
    }
}

TEST_CASE("LaplaceT forms: classical limit and mutual crosscheck")
{
    for (int i = 0; i < 3; ++i) {
        Appell1Params p = classical_draw();
        p.t1 = rand_cplx(-3.5, -1.5, 0.5); // Re(-t) > 0, noninteger
        p.t2 = rand_cplx(-3.5, -1.5, 0.5);
        const double cross = crosscheck_integral(IntegralForm::LaplaceT1,
                                                 IntegralForm::LaplaceT2, p);
        CHECK(cross < 1e-6);
        // identical forms give a zero residual
        CHECK(crosscheck_integral(IntegralForm::LaplaceT1, IntegralForm::LaplaceT1, p) ==
              0.0);
        // k -> 0 limit agrees with the classical series
        const cplx classical = eval_classical_f1(p.a, p.b1, p.b2, p.c, p.x, p.y).value;
        const cplx t1val = eval_integral(IntegralForm::LaplaceT1, p).value;
        CHECK(resid(t1val, classical) < 1e-6);
    }
    Appell1Params bad = classical_draw();
    bad.t1 = 2.0; // integer
    CHECK_THROWS_AS(eval_integral(IntegralForm::LaplaceT1, bad), DomainError);
    bad.t1 = -2.5;
    bad.k1 = 1;
    CHECK_THROWS_AS(eval_integral(IntegralForm::LaplaceT1, bad), DomainError);
}

TEST_CASE("LaplaceB1 against LaplaceB2 under the axis swap")
{
    Appell1Params p = terminating_draw();
    p.b1 = rand_cplx(1.0, 3.0, 0.5);
    p.b2 = rand_cplx(1.0, 3.0, 0.5);
    const cplx vb1 = eval_integral(IntegralForm::LaplaceB1, p).value;
    Appell1Params swapped{p.a, p.b2, p.b1, p.c, p.t2, p.t1, p.k2, p.k1, p.y, p.x};
    const cplx vb2 = eval_integral(IntegralForm::LaplaceB2, swapped).value;
    CHECK(resid(vb1, vb2) < 1e-7);
}

TEST_CASE("second-family forms equal the series")
{
    std::uniform_int_distribution<long> kd(1, 2), td(0, 3);
    for (int i = 0; i < 3; ++i) {
        Appell2Params p;
        p.a = rand_cplx(1.0, 3.0, 0.8);
        p.b1 = rand_cplx(1.0, 3.0, 0.8);
        p.b2 = rand_cplx(1.0, 3.0, 0.8);
        p.c = p.a + rand_cplx(0.5, 2.0, 0.5);
        p.k = kd(rng);
        p.t = static_cast<double>(3 * p.k + td(rng));
        p.x = rand_arg(0.3);
        p.y = rand_arg(0.3);
        const cplx series = eval_f1_d2(p).value;
        const cplx euler = eval_integral(IntegralForm::F2Euler1, p).value;
        CHECK(std::abs(series - euler) < 1e-7 * (1.0 + std::abs(series)));
        for (auto form : {IntegralForm::F2LaplaceA, IntegralForm::F2LaplaceB1,
                          IntegralForm::F2LaplaceB2}) {
            const cplx integral = eval_integral(form, p).value;
            CHECK(std::abs(series - integral) < 1e-6 * (1.0 + std::abs(series)));
        }
        Appell2Params s = p;
        s.c = s.b1 + s.b2 + rand_cplx(0.5, 2.0, 0.5);
        const cplx simplex_series = eval_f1_d2(s).value;
        const cplx simplex = eval_integral(IntegralForm::F2EulerSimplex, s).value;
        CHECK(std::abs(simplex_series - simplex) < 1e-7 * (1.0 + std::abs(simplex_series)));
    }
    // F2LaplaceT at k = 0 against the classical function
    Appell2Params p;
    p.a = 1.4;
    p.b1 = 0.9;
    p.b2 = 1.2;
    p.c = 2.6;
    p.k = 0;
    p.t = -2.3;
    p.x = 0.25;
    p.y = 0.2;
    const cplx classical = eval_classical_f1(p.a, p.b1, p.b2, p.c, p.x, p.y).value;
    CHECK(resid(eval_integral(IntegralForm::F2LaplaceT, p).value, classical) < 1e-6);
}

TEST_CASE("panel doubling stays within the target tolerance")
{
    Appell1Params p = classical_draw();
    QuadratureOptions q64;
    QuadratureOptions q128;
    q128.panels = 128;
    const cplx a = eval_integral(IntegralForm::Euler1, p, q64).value;
    const cplx b = eval_integral(IntegralForm::Euler1, p, q128).value;
    CHECK(std::abs(a - b) <= q64.target_tol * (1.0 + std::abs(a)));
}

TEST_CASE("serial and parallel quadrature agree bitwise")
{
    Appell1Params p = classical_draw();
    QuadratureOptions qs;
    qs.exec = ExecPolicy::Serial;
    QuadratureOptions qp;
    qp.exec = ExecPolicy::Parallel;
    const cplx a = eval_integral(IntegralForm::Euler1, p, qs).value;
    const cplx b = eval_integral(IntegralForm::Euler1, p, qp).value;
    CHECK(a == b);
}

TEST_CASE("family mismatch and precondition errors")
{
    Appell1Params p = classical_draw();
    CHECK_THROWS_AS(eval_integral(IntegralForm::F2Euler1, p), OperatorMismatchError);
    Appell1Params bad = p;
    bad.a = -0.5;
    CHECK_THROWS_AS(eval_integral(IntegralForm::Euler1, bad), DomainError);
    Appell1Params bad2 = p;
    bad2.c = bad2.a - 1.0;
    CHECK_THROWS_AS(eval_integral(IntegralForm::Euler1, bad2), DomainError);
}
