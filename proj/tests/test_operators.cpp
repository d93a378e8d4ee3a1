#include "doctest.h"

#include <cmath>
#include <random>

#include "dappell/operators.hpp"
#include "oracles.hpp"

using namespace dappell;

namespace {

std::mt19937_64 rng(90210);

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

Appell1Params terminating_draw(long k1, long k2)
{
    Appell1Params p;
    p.a = rand_cplx(0.5, 3.0, 1.0);
    p.b1 = rand_cplx(0.5, 3.0, 1.0);
    p.b2 = rand_cplx(0.5, 3.0, 1.0);
    p.c = rand_cplx(1.5, 4.0, 1.0);
    std::uniform_int_distribution<long> tj(0, 4);
    p.t1 = static_cast<double>(3 * k1 + tj(rng));
    p.t2 = static_cast<double>(3 * k2 + tj(rng));
    p.k1 = k1;
    p.k2 = k2;
    p.x = rand_arg(0.35);
    p.y = rand_arg(0.35);
    return p;
}

double rel(cplx got, cplx want)
{
    return std::abs(got - want) / std::max(1e-300, std::abs(want));
}

} // namespace

TEST_CASE("compile_weight: atom images")
{
    CHECK(compile_weight(OperatorExpr::identity(), {FunctionFamily::F1D1, 1, 1, 0})(3, 4) ==
          cplx(1.0));

    // (a + theta + phi) -> a + m + n
    const cplx a{1.5, 0.25};
    OperatorExpr e;
    e *= make_factor(a, {{1.0, OperatorAtom::ThetaX}, {1.0, OperatorAtom::PhiY}});
    const TermWeight w = compile_weight(e, {FunctionFamily::F1D1, 2, 3, 0});
    CHECK(w(2, 5) == a + 7.0);

    // (1/k1 Theta_{t1} + 1/k2 Theta_{t2} + c - 1) -> m + n + c - 1
    const cplx c{2.0, -0.5};
    OperatorExpr e2;
    e2 *= make_factor(c - 1.0, {{cplx(1.0 / 2.0), OperatorAtom::BigThetaT1},
                                {cplx(1.0 / 3.0), OperatorAtom::BigThetaT2}});
    const TermWeight w2 = compile_weight(e2, {FunctionFamily::F1D1, 2, 3, 0});
    CHECK(std::abs(w2(4, 6) - (c - 1.0 + 10.0)) < 1e-15);

    // Theta_t -> (m+n) k on the joint form
    OperatorExpr e3;
    e3 *= make_factor(0.0, {{1.0, OperatorAtom::BigThetaT}});
    const TermWeight w3 = compile_weight(e3, {FunctionFamily::F1D2, 0, 0, 2});
    CHECK(w3(3, 4) == cplx(14.0));

    CHECK_THROWS_AS(compile_weight(e3, {FunctionFamily::F1D1, 1, 1, 0}),
                    OperatorMismatchError);
    CHECK_THROWS_AS(compile_weight(e2, {FunctionFamily::F1D2, 0, 0, 1}),
                    OperatorMismatchError);
}

TEST_CASE("apply_weighted: identity is the plain evaluation, bit-exact")
{
    Appell1Params p = terminating_draw(1, 2);
    CHECK(apply_weighted(p, OperatorExpr::identity()).value == eval_f1_d1(p).value);
}

TEST_CASE("apply_weighted: theta on the geometric reduction")
{
    // theta 1/(1-x) = x/(1-x)^2 = 2 at x = 1/2
    Appell1Params p{1.0, 1.0, 1.0, 1.0, 0.0, 0.0, 0, 0, 0.5, 0.0};
    OperatorExpr theta;
    theta *= make_factor(0.0, {{1.0, OperatorAtom::ThetaX}});
    CHECK(rel(apply_weighted(p, theta).value, 2.0) < 1e-10);
}

TEST_CASE("apply_weighted: contiguous relation a F(a+1) = (a+theta+phi) F")
{
    for (int i = 0; i < 30; ++i) {
        Appell1Params p = terminating_draw(1 + i % 3, 1 + (i / 3) % 3);
        OperatorExpr e;
        e *= make_factor(p.a, {{1.0, OperatorAtom::ThetaX}, {1.0, OperatorAtom::PhiY}});
        const cplx rhs = apply_weighted(p, e).value;
        Appell1Params up = p;
        up.a += 1.0;
        const cplx lhs = p.a * eval_f1_d1(up).value;
        CHECK(std::abs(lhs - rhs) <= 1e-10 * (std::abs(lhs) + std::abs(rhs) + 1.0));
    }
}

TEST_CASE("theta_t_numeric: trivial cases and the weight image")
{
    CHECK(theta_t_numeric([](cplx) { return cplx(3.5); }, 2.7) == cplx(0.0));
    const cplx t{1.3, 0.4};
    CHECK(rel(theta_t_numeric([](cplx u) { return u; }, t), t) < 1e-15);

    // Theta_{t1} F against the compiled weight m k1, terminating t1 = 4, k1 = 1
    Appell1Params p = terminating_draw(1, 1);
    p.t1 = 4.0;
    const cplx numeric = theta_t_numeric(p, TSlot::T1);
    OperatorExpr e;
    e *= make_factor(0.0, {{1.0, OperatorAtom::BigThetaT1}});
    const cplx weighted = apply_weighted(p, e).value;
    CHECK(std::abs(numeric - weighted) <=
          1e-9 * (std::abs(numeric) + std::abs(weighted) + 1.0));

    Appell2Params q{1.2, 0.9, 1.4, 2.1, 6.0, 2, 0.2, 0.15};
    const cplx num2 = theta_t_numeric(q);
    OperatorExpr e2;
    e2 *= make_factor(0.0, {{1.0, OperatorAtom::BigThetaT}});
    const cplx w2 = apply_weighted(q, e2).value;
    CHECK(std::abs(num2 - w2) <= 1e-9 * (std::abs(num2) + std::abs(w2) + 1.0));
}

TEST_CASE("Theta_t action on the signed discrete factor")
{
    // Theta_t ((-1)^{nk} (-t)_{nk}) = n k (-1)^{nk} (-t)_{nk}
    for (long k = 1; k <= 3; ++k) {
        for (long n = 0; n <= 6; ++n) {
            for (int i = 0; i < 5; ++i) {
                const cplx t = rand_cplx(-3.0, 5.0, 2.0);
                const cplx val = theta_t_numeric(
                    [&](cplx u) { return discrete_pochhammer(u, n, k); }, t);
                const cplx want =
                    static_cast<double>(n * k) * discrete_pochhammer(t, n, k);
                CHECK(std::abs(val - want) <= 1e-11 * (std::abs(want) + 1.0));
            }
        }
    }
}

TEST_CASE("delta_power: polynomial annihilation and preconditions")
{
    Appell1Params p = terminating_draw(1, 1);
    CHECK_THROWS_AS(delta_power(p, TSlot::T1, 0), DomainError);
    Appell1Params bad = p;
    bad.k1 = 2;
    CHECK_THROWS_AS(delta_power(bad, TSlot::T1, 1), DomainError);

    // r-fold difference of a degree-(r-1) polynomial vanishes under the same
    // binomial stencil
    for (int r = 1; r <= 3; ++r) {
        auto poly = [&](cplx t) {
            cplx acc = 1.0;
            for (int j = 1; j < r; ++j)
                acc += std::pow(t, j);
            return acc;
        };
        cplx delta = 0.0;
        for (int i = 0; i <= r; ++i) {
            const double sign = ((r - i) % 2 == 0) ? 1.0 : -1.0;
            delta += sign * binomial(r, i) * poly(cplx(1.6, 0.2) + static_cast<double>(i));
        }
        CHECK(std::abs(delta) < 1e-10);
    }
}

TEST_CASE("delta_power: first difference formula")
{
    for (int r = 1; r <= 3; ++r) {
        for (int i = 0; i < 10; ++i) {
            Appell1Params p = terminating_draw(1, 1 + i % 3);
            const cplx lhs = delta_power(p, TSlot::T1, r);
            Appell1Params sh = p;
            sh.a += r;
            sh.b1 += r;
            sh.c += r;
            const cplx pre = pochhammer(p.a, r) * pochhammer(p.b1, r) *
                             std::pow(p.x, r) / pochhammer(p.c, r);
            const cplx rhs = pre * eval_f1_d1(sh).value;
            CHECK(std::abs(lhs - rhs) <= 1e-9 * (std::abs(lhs) + std::abs(rhs) + 1.0));
        }
    }
}

TEST_CASE("theta power formula holds for the falling-factorial reading")
{
    for (int r = 1; r <= 3; ++r) {
        for (int i = 0; i < 8; ++i) {
            Appell1Params p = terminating_draw(1 + i % 2, 1);
            TermWeight falling;
            for (int j = 0; j < r; ++j)
                falling.factors.push_back({cplx(-j), 1.0, 0.0});
            const cplx lhs = eval_f1_d1_weighted(p, falling).value;
            Appell1Params sh = p;
            sh.a += r;
            sh.b1 += r;
            sh.c += r;
            sh.t1 -= static_cast<double>(r * p.k1);
            const double sign = (r * p.k1) % 2 == 0 ? 1.0 : -1.0;
            const cplx pre = sign * pochhammer(p.a, r) * pochhammer(p.b1, r) *
                             pochhammer(-p.t1, r * p.k1) * std::pow(p.x, r) /
                             pochhammer(p.c, r);
            const cplx rhs = pre * eval_f1_d1(sh).value;
            CHECK(std::abs(lhs - rhs) <= 1e-10 * (std::abs(lhs) + std::abs(rhs) + 1.0));
        }
    }
    // counterexample for the iterated-Euler reading at r = 2
    Appell1Params p = terminating_draw(1, 1);
    TermWeight euler2;
    euler2.factors.push_back({0.0, 1.0, 0.0});
    euler2.factors.push_back({0.0, 1.0, 0.0});
    const cplx lhs = eval_f1_d1_weighted(p, euler2).value;
    Appell1Params sh = p;
    sh.a += 2;
    sh.b1 += 2;
    sh.c += 2;
    sh.t1 -= static_cast<double>(2 * p.k1);
    const cplx pre = pochhammer(p.a, 2) * pochhammer(p.b1, 2) *
                     pochhammer(-p.t1, 2 * p.k1) * p.x * p.x / pochhammer(p.c, 2);
    const cplx rhs = pre * eval_f1_d1(sh).value;
    CHECK(std::abs(lhs - rhs) > 1e-6 * (std::abs(lhs) + std::abs(rhs)));
}

TEST_CASE("partial_power: all six shapes, both families")
{
    for (auto mode : {PartialMode::XB1, PartialMode::YB2, PartialMode::XA,
                      PartialMode::YA, PartialMode::XC, PartialMode::YC}) {
        for (int r = 0; r <= 3; ++r) {
            Appell1Params p = terminating_draw(1, 2);
            if (r == 0) {
                CHECK(partial_power(p, mode, 0) == 0.0);
                continue;
            }
            CHECK(partial_power(p, mode, r) < 1e-10);

            Appell2Params q{rand_cplx(0.5, 3.0, 1.0), rand_cplx(0.5, 3.0, 1.0),
                            rand_cplx(0.5, 3.0, 1.0), rand_cplx(1.5, 4.0, 1.0),
                            7.0,
                            2,
                            rand_arg(0.3),
                            rand_arg(0.3)};
            CHECK(partial_power(q, mode, r) < 1e-10);
        }
    }
}

TEST_CASE("partial_power: central finite-difference sanity for r = 1")
{
    // real positive arguments keep the stencil on one branch of x^{b1}
    Appell1Params p{1.4, 1.7, 1.1, 2.3, 4.0, 5.0, 1, 1, 0.3, 0.25};
    const double h = 1e-5;
    auto g = [&](double x) {
        Appell1Params q = p;
        q.x = x;
        return std::pow(cplx(x), p.b1) * eval_f1_d1(q).value;
    };
    const cplx fd = (g(p.x.real() + h) - g(p.x.real() - h)) / (2.0 * h);
    Appell1Params sh = p;
    sh.b1 += 1.0;
    const cplx exact = std::pow(p.x, p.b1 - 1.0) * p.b1 * eval_f1_d1(sh).value;
    CHECK(std::abs(fd - exact) <= 1e-5 * (std::abs(exact) + 1.0));
}

TEST_CASE("difference equations: residuals on terminating draws")
{
    for (int i = 0; i < 25; ++i) {
        Appell1Params p = terminating_draw(1 + i % 3, 1 + (i / 2) % 3);
        CHECK(diff_eq_residual_first(p) < 1e-9);
        CHECK(diff_eq_residual_second(p) < 1e-9);
        CHECK(diff_eq_residual_third(p) < 1e-9);
    }
}

TEST_CASE("difference-differential equations of the second form")
{
    std::uniform_int_distribution<long> kd(1, 3), td(0, 4);
    for (int i = 0; i < 25; ++i) {
        Appell2Params p;
        p.a = rand_cplx(0.5, 3.0, 1.0);
        p.b1 = rand_cplx(0.5, 3.0, 1.0);
        p.b2 = rand_cplx(0.5, 3.0, 1.0);
        p.c = rand_cplx(1.5, 4.0, 1.0);
        p.k = kd(rng);
        p.t = static_cast<double>(3 * p.k + td(rng));
        p.x = rand_arg(0.35);
        p.y = rand_arg(0.35);
        CHECK(diff_eq_residual_f2_theta(p) < 1e-9);
        CHECK(diff_eq_residual_f2_phi(p) < 1e-9);
        CHECK(diff_eq_residual_f2_euler(p) < 1e-9);
    }
    // the Euler equation carries no t-operators: classical regime too
    for (int i = 0; i < 25; ++i) {
        Appell2Params p;
        p.a = rand_cplx(0.5, 3.0, 1.0);
        p.b1 = rand_cplx(0.5, 3.0, 1.0);
        p.b2 = rand_cplx(0.5, 3.0, 1.0);
        p.c = rand_cplx(1.5, 4.0, 1.0);
        p.k = 0;
        p.t = rand_cplx(-1.0, 1.0, 1.0);
        p.x = rand_arg(0.35);
        p.y = rand_arg(0.35);
        CHECK(diff_eq_residual_f2_euler(p) < 1e-9);
    }
}
