#include "doctest.h"

#include <cmath>
#include <random>

#include "dappell/functions.hpp"
#include "oracles.hpp"

using namespace dappell;

namespace {

std::mt19937_64 rng(512);

cplx rand_cplx(double re_lo, double re_hi, double im_max)
{
    std::uniform_real_distribution<double> re(re_lo, re_hi), im(-im_max, im_max);
    return {re(rng), im(rng)};
}

cplx rand_arg(double max_abs)
{
    std::uniform_real_distribution<double> r(0.02, max_abs), th(0.0, 2.0 * M_PI);
    const double rr = r(rng), t = th(rng);
    return {rr * std::cos(t), rr * std::sin(t)};
}

double rel(cplx got, cplx want)
{
    return std::abs(got - want) / std::max(1e-300, std::abs(want));
}

} // namespace

TEST_CASE("f1_d1: terminating hand example 1 + 2x + 2x^2")
{
    Appell1Params p{1.0, 1.0, 0.7, 1.0, 2.0, 5.0, 1, 0, 0.5, 0.0};
    auto r = eval_f1_d1(p);
    CHECK(r.verdict == Verdict::Terminated);
    CHECK(rel(r.value, 2.5) < 1e-14);
}

TEST_CASE("f1_d1: x = y = 0 and classical geometric reduction")
{
    Appell1Params p0{1.0, 1.0, 1.0, 1.0, 2.0, 2.0, 1, 1, 0.0, 0.0};
    CHECK(eval_f1_d1(p0).value == cplx(1.0));

    // k1 = k2 = 0 with a = b1 = c: reduces to 1/(1-x)
    Appell1Params p{1.0, 1.0, 1.0, 1.0, 0.0, 0.0, 0, 0, 0.25, 0.0};
    auto r = eval_f1_d1(p);
    CHECK(r.verdict == Verdict::Converged);
    CHECK(rel(r.value, 4.0 / 3.0) < 1e-11);
}

TEST_CASE("f1_d2: two-term hand example")
{
    Appell2Params p{1.0, 1.0, 0.9, 1.0, 1.0, 1, 0.5, 0.0};
    auto r = eval_f1_d2(p);
    CHECK(r.verdict == Verdict::Terminated);
    CHECK(rel(r.value, 1.5) < 1e-14);
}

TEST_CASE("f1_d2: k = 0 equals classical F1")
{
    for (int i = 0; i < 40; ++i) {
        Appell2Params p;
        p.a = rand_cplx(0.5, 3.0, 1.0);
        p.b1 = rand_cplx(0.5, 3.0, 1.0);
        p.b2 = rand_cplx(0.5, 3.0, 1.0);
        p.c = rand_cplx(1.5, 4.0, 1.0);
        p.t = rand_cplx(-2.0, 2.0, 1.0);
        p.k = 0;
        p.x = rand_arg(0.5);
        p.y = rand_arg(0.5);
        const cplx classical =
            eval_classical_f1(p.a, p.b1, p.b2, p.c, p.x, p.y).value;
        CHECK(rel(eval_f1_d2(p).value, classical) < 1e-10);
    }
}

TEST_CASE("f1_d1: k1 = k2 = 0 equals classical F1 on random draws")
{
    for (int i = 0; i < 60; ++i) {
        Appell1Params p;
        p.a = rand_cplx(0.5, 3.0, 1.0);
        p.b1 = rand_cplx(0.5, 3.0, 1.0);
        p.b2 = rand_cplx(0.5, 3.0, 1.0);
        p.c = rand_cplx(1.5, 4.0, 1.0);
        p.t1 = rand_cplx(-2.0, 2.0, 1.0);
        p.t2 = rand_cplx(-2.0, 2.0, 1.0);
        p.k1 = p.k2 = 0;
        p.x = rand_arg(0.5);
        p.y = rand_arg(0.5);
        const cplx classical =
            eval_classical_f1(p.a, p.b1, p.b2, p.c, p.x, p.y).value;
        CHECK(rel(eval_f1_d1(p).value, classical) < 1e-10);
    }
}

TEST_CASE("f1_d1: symmetry under axis exchange")
{
    for (int i = 0; i < 30; ++i) {
        Appell1Params p;
        p.a = rand_cplx(0.5, 3.0, 1.0);
        p.b1 = rand_cplx(0.5, 3.0, 1.0);
        p.b2 = rand_cplx(0.5, 3.0, 1.0);
        p.c = rand_cplx(1.5, 4.0, 1.0);
        p.t1 = 4.0;
        p.t2 = 6.0;
        p.k1 = 1;
        p.k2 = 2;
        p.x = rand_arg(0.35);
        p.y = rand_arg(0.35);
        Appell1Params q{p.a, p.b2, p.b1, p.c, p.t2, p.t1, p.k2, p.k1, p.y, p.x};
        // the swap relabels terms; only the in-diagonal addition order moves,
        // so agreement is at machine level rather than bit level
        const cplx lhs = eval_f1_d1(p).value, rhs = eval_f1_d1(q).value;
        CHECK(std::abs(lhs - rhs) <= 1e-13 * (std::abs(lhs) + std::abs(rhs)));
    }
}

TEST_CASE("f1_d1: y = 0 collapses to the discrete pFq of the m-series")
{
    Appell1Params p{1.4, 0.9, 2.0, 2.1, 6.0, 3.0, 2, 1, {0.3, 0.1}, 0.0};
    const cplx left = eval_f1_d1(p).value;
    const cplx right =
        eval_discrete_pfq({p.a, p.b1}, {p.c}, p.t1, p.k1, p.x).value;
    CHECK(rel(left, right) < 1e-12);
}

TEST_CASE("discrete pFq: examples")
{
    CHECK(eval_discrete_pfq({1.5}, {}, 2.0, 1, 0.0).value == cplx(1.0));
    // k = 0 classical: 2F1(1,1;1;0.5) = 2
    auto r = eval_discrete_pfq({1.0, 1.0}, {1.0}, 0.7, 0, 0.5);
    CHECK(rel(r.value, 2.0) < 1e-11);
    // 1F0(1; -; 3, 1, x) = 1 + 3x + 6x^2 + 6x^3
    const cplx x = 0.4;
    auto t = eval_discrete_pfq({1.0}, {}, 3.0, 1, x);
    CHECK(t.verdict == Verdict::Terminated);
    const cplx want = 1.0 + 3.0 * x + 6.0 * x * x + 6.0 * x * x * x;
    CHECK(rel(t.value, want) < 1e-14);
}

TEST_CASE("2f1: closed forms")
{
    CHECK(rel(eval_2f1(1.0, 2.0, 2.0, 0.5).value, 2.0) < 1e-11);
    CHECK(rel(eval_2f1(1.0, 1.0, 1.0, 0.5).value, 2.0) < 1e-11);
    CHECK_THROWS_AS(eval_2f1(1.0, 1.0, 1.0, 1.2), DomainError);
    CHECK_THROWS_AS(eval_2f1(1.0, 1.0, -2.0, 0.2), PoleError);
    // terminating polynomial allows |z| >= 1
    CHECK(rel(eval_2f1(-2.0, 1.0, 1.0, 2.0).value, 1.0 - 2.0 * 2.0 + 4.0) < 1e-13);
}

TEST_CASE("classical F1: closed-form point and brute-force oracle")
{
    CHECK(rel(eval_classical_f1(1.0, 1.0, 1.0, 2.0, 0.5, 0.5).value, 2.0) < 1e-11);
    // F1(a,b1,b2;c;x,0) = 2F1(a,b1;c;x)
    const cplx a = rand_cplx(0.5, 2.5, 1.0), b1 = rand_cplx(0.5, 2.5, 1.0),
               b2 = rand_cplx(0.5, 2.5, 1.0), c = rand_cplx(1.5, 3.5, 1.0);
    CHECK(rel(eval_classical_f1(a, b1, b2, c, 0.4, 0.0).value,
              eval_2f1(a, b1, c, 0.4).value) < 1e-11);

    Appell1Params p{a, b1, b2, c, 0.0, 0.0, 0, 0, 0.3, 0.2};
    const cplx brute = oracles::brute_f1_d1(p, 60, 60);
    CHECK(rel(eval_classical_f1(a, b1, b2, c, p.x, p.y).value, brute) < 1e-11);
}

TEST_CASE("classical F2, F3, F4 reference points")
{
    // y = 0 collapses all of them onto 2F1
    const cplx a = 1.3, b = 0.8, c = 2.1;
    CHECK(rel(eval_classical_f2(a, b, 1.0, c, 1.5, 0.4, 0.0).value,
              eval_2f1(a, b, c, 0.4).value) < 1e-11);
    CHECK(rel(eval_classical_f3(a, 1.0, b, 1.0, c, 0.4, 0.0).value,
              eval_2f1(a, b, c, 0.4).value) < 1e-11);
    CHECK(rel(eval_classical_f4(a, b, c, 1.7, 0.2, 0.0).value,
              eval_2f1(a, b, c, 0.2).value) < 1e-11);
    CHECK_THROWS_AS(eval_classical_f2(a, b, 1.0, c, 1.5, 0.6, 0.5), DomainError);
    CHECK_THROWS_AS(eval_classical_f4(a, b, c, 1.7, 0.3, 0.3), DomainError);
}

TEST_CASE("Kampe de Feriet: exponential product and region records")
{
    KdFSpec empty;
    auto r = eval_kdf(empty, 0.2, 0.1);
    CHECK(r.region == RegionClass::Inside);
    CHECK(rel(r.value, std::exp(0.3)) < 1e-12);
    CHECK(eval_kdf(empty, 0.0, 0.0).value == cplx(1.0));

    // one joint upper over one joint lower with two x-uppers: case (ii) border
    KdFSpec s;
    s.upper_joint = {cplx(1.0)};
    s.upper_x = {cplx(1.0)};
    s.upper_y = {cplx(1.0)};
    s.lower_joint = {cplx(2.0)};
    CHECK(kdf_region(s, 0.4, 0.3) == RegionClass::Inside);
    CHECK(kdf_region(s, 1.2, 0.3) == RegionClass::Outside);
    CHECK(kdf_region(s, 1.0, 0.3) == RegionClass::Boundary);
}

TEST_CASE("Kampe de Feriet: printed reduction of the first discrete form")
{
    // k1 = 1, k2 = 0 with terminating t1
    for (int i = 0; i < 25; ++i) {
        Appell1Params p;
        p.a = rand_cplx(0.5, 3.0, 1.0);
        p.b1 = rand_cplx(0.5, 3.0, 1.0);
        p.b2 = rand_cplx(0.5, 3.0, 1.0);
        p.c = rand_cplx(1.5, 4.0, 1.0);
        p.t1 = 4.0;
        p.t2 = rand_cplx(-1.0, 1.0, 1.0);
        p.k1 = 1;
        p.k2 = 0;
        p.x = rand_arg(0.35);
        p.y = rand_arg(0.35);
        KdFSpec s;
        s.upper_joint = {p.a};
        s.upper_x = {p.b1, -p.t1};
        s.upper_y = {p.b2};
        s.lower_joint = {p.c};
        const cplx kdf = eval_kdf(s, -p.x, p.y).value;
        CHECK(rel(eval_f1_d1(p).value, kdf) < 1e-10);
    }
}

TEST_CASE("Humbert variants: brute-force values and unit at origin")
{
    HumbertVariant phi2{HumbertFamily::Phi2, HumbertForm::First};
    Appell1Params p{9.9, 1.0, 1.0, 1.0, 0.0, 0.0, 0, 0, 0.3, 0.0};
    auto r = eval_humbert(phi2, p);
    // brute force: sum (b1)_m (b2)_n / ((c)_{m+n} m! n!) x^m y^n over 60 diagonals
    oracles::lcplx brute = 0.0L;
    for (long m = 0; m <= 60; ++m)
        for (long n = 0; n <= 60 - m; ++n)
            brute += oracles::poch(1.0L, m) * oracles::poch(1.0L, n) /
                     (oracles::poch(1.0L, m + n) * oracles::factorial(m) *
                      oracles::factorial(n)) *
                     oracles::ipow(oracles::to_l(p.x), m) * oracles::ipow(oracles::to_l(p.y), n);
    CHECK(rel(r.value, oracles::to_d(brute)) < 1e-12);

    for (auto fam : {HumbertFamily::Phi1, HumbertFamily::Phi2, HumbertFamily::Phi3}) {
        Appell1Params q{1.2, 0.8, 1.1, 2.0, 3.0, 4.0, 1, 1, 0.0, 0.0};
        CHECK(eval_humbert({fam, HumbertForm::First}, q).value == cplx(1.0));
        Appell2Params q2{1.2, 0.8, 1.1, 2.0, 3.0, 1, 0.0, 0.0};
        CHECK(eval_humbert({fam, HumbertForm::Second}, q2).value == cplx(1.0));
    }
}

TEST_CASE("section-8 special cases share the oracle bit-for-bit")
{
    Appell1Params p{1.3, 0.7, 1.9, 2.4, 4.0, 5.0, 2, 2, {0.2, 0.1}, {0.15, -0.05}};
    CHECK(eval_f1_d1_equal_k(p.a, p.b1, p.b2, p.c, p.t1, p.t2, 2, p.x, p.y).value ==
          eval_f1_d1(p).value);
    Appell1Params q{1.3, 0.7, 1.9, 2.4, 6.0, 6.0, 1, 2, {0.2, 0.1}, {0.15, -0.05}};
    CHECK(eval_f1_d1_equal_t(q.a, q.b1, q.b2, q.c, 6.0, 1, 2, q.x, q.y).value ==
          eval_f1_d1(q).value);
}

TEST_CASE("degeneration probes")
{
    Appell1Params base{1.4, 0.9, 1.2, 2.2, 4.0, 5.0, 1, 1, 0.25, 0.2};

    // x = y = 0: both sides are exactly 1 for every epsilon
    Appell1Params origin = base;
    origin.x = origin.y = 0.0;
    for (auto fam : {HumbertFamily::Phi1, HumbertFamily::Phi2, HumbertFamily::Phi3})
        CHECK(degeneration_error({1e-2, {fam, HumbertForm::First}}, origin) == 0.0);

    // error decays first order in epsilon
    for (auto fam : {HumbertFamily::Phi1, HumbertFamily::Phi2, HumbertFamily::Phi3}) {
        const double e1 = degeneration_error({1e-1, {fam, HumbertForm::First}}, base);
        const double e2 = degeneration_error({5e-2, {fam, HumbertForm::First}}, base);
        const double e3 = degeneration_error({2.5e-2, {fam, HumbertForm::First}}, base);
        CHECK(e1 / e2 > 1.6);
        CHECK(e1 / e2 < 2.4);
        CHECK(e2 / e3 > 1.6);
        CHECK(e2 / e3 < 2.4);
    }

    CHECK_THROWS_AS(
        degeneration_error({1e-9, {HumbertFamily::Phi1, HumbertForm::First}}, base),
        DomainError);
}

TEST_CASE("degeneration: discrete and classical routes compute the same error")
{
    // all ks zero: the probe through the discrete machinery must match the
    // same quantity assembled from the classical series
    Appell1Params base{1.1, 0.8, 1.3, 2.0, 0.0, 0.0, 0, 0, 0.2, 0.15};
    const double eps = 1e-6;
    const double via_discrete =
        degeneration_error({eps, {HumbertFamily::Phi2, HumbertForm::First}}, base);
    const cplx sub = eval_classical_f1(1.0 / eps, base.b1, base.b2, base.c,
                                       eps * base.x, eps * base.y)
                         .value;
    const cplx phi2 =
        eval_humbert({HumbertFamily::Phi2, HumbertForm::First}, base).value;
    const double via_classical = std::abs(sub - phi2);
    CHECK(std::abs(via_discrete - via_classical) < 1e-12);
}

TEST_CASE("domain errors outside the region")
{
    Appell1Params p{1.0, 1.0, 1.0, 2.0, 0.5, 0.0, 0, 0, 1.2, 0.0};
    CHECK_THROWS_AS(eval_f1_d1(p), DomainError);
    Appell1Params q{1.0, 1.0, 1.0, -1.0, 0.5, 0.0, 0, 0, 0.2, 0.0};
    CHECK_THROWS_AS(eval_f1_d1(q), PoleError);
    // terminating axis admits |x| >= 1
    Appell1Params t{1.0, 1.0, 1.0, 2.0, 3.0, 0.0, 1, 0, 1.5, 0.0};
    CHECK(eval_f1_d1(t).verdict == Verdict::Terminated);
}
