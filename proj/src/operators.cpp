#include "dappell/operators.hpp"

#include <cmath>

namespace dappell {

OperatorFactor make_factor(cplx constant, std::vector<OperatorTerm> terms)
{
    return {constant, std::move(terms)};
}

double SidePair::residual() const
{
    return std::abs(lhs - rhs) / (std::abs(lhs) + std::abs(rhs) + 1.0);
}

TermWeight compile_weight(const OperatorExpr& expr, const WeightTarget& target)
{
    TermWeight w;
    for (const OperatorFactor& f : expr.factors) {
        TermWeight::Factor out;
        out.alpha = f.constant;
        out.beta = 0.0;
        out.gamma = 0.0;
        for (const OperatorTerm& t : f.terms) {
            switch (t.atom) {
            case OperatorAtom::Identity:
                out.alpha += t.coefficient;
                break;
            case OperatorAtom::ThetaX:
                out.beta += t.coefficient;
                break;
            case OperatorAtom::PhiY:
                out.gamma += t.coefficient;
                break;
            case OperatorAtom::BigThetaT1:
                if (target.family != FunctionFamily::F1D1)
                    throw OperatorMismatchError(
                        "compile_weight: Theta_{t1} only acts on the first discrete form");
                out.beta += t.coefficient * static_cast<double>(target.k1);
                break;
            case OperatorAtom::BigThetaT2:
                if (target.family != FunctionFamily::F1D1)
                    throw OperatorMismatchError(
                        "compile_weight: Theta_{t2} only acts on the first discrete form");
                out.gamma += t.coefficient * static_cast<double>(target.k2);
                break;
            case OperatorAtom::BigThetaT:
                if (target.family != FunctionFamily::F1D2)
                    throw OperatorMismatchError(
                        "compile_weight: Theta_t only acts on the second discrete form");
                out.beta += t.coefficient * static_cast<double>(target.k);
                out.gamma += t.coefficient * static_cast<double>(target.k);
                break;
            }
        }
        w.factors.push_back(out);
    }
    return w;
}

EvalResult apply_weighted(const Appell1Params& p, const OperatorExpr& expr,
                          const SeriesOptions& opts)
{
    return eval_f1_d1_weighted(p, compile_weight(expr, WeightTarget::for_params(p)), opts);
}

EvalResult apply_weighted(const Appell2Params& p, const OperatorExpr& expr,
                          const SeriesOptions& opts)
{
    return eval_f1_d2_weighted(p, compile_weight(expr, WeightTarget::for_params(p)), opts);
}

cplx theta_t_numeric(const std::function<cplx(cplx)>& f, cplx t)
{
    return t * (f(t) - f(t - 1.0));
}

cplx theta_t_numeric(const Appell1Params& p, TSlot slot, const SeriesOptions& opts)
{
    auto f = [&](cplx t) {
        Appell1Params q = p;
        (slot == TSlot::T1 ? q.t1 : q.t2) = t;
        return eval_f1_d1(q, opts).value;
    };
    return theta_t_numeric(f, slot == TSlot::T1 ? p.t1 : p.t2);
}

cplx theta_t_numeric(const Appell2Params& p, const SeriesOptions& opts)
{
    auto f = [&](cplx t) {
        Appell2Params q = p;
        q.t = t;
        return eval_f1_d2(q, opts).value;
    };
    return theta_t_numeric(f, p.t);
}

cplx delta_power(const Appell1Params& p, TSlot slot, int r, const SeriesOptions& opts)
{
    const long kslot = slot == TSlot::T1 ? p.k1 : p.k2;
    if (kslot != 1)
        throw DomainError("delta_power: the chosen t-slot requires k = 1");
    if (r < 1)
        throw DomainError("delta_power: r must be positive");
    cplx acc = 0.0;
    for (int i = 0; i <= r; ++i) {
        Appell1Params q = p;
        (slot == TSlot::T1 ? q.t1 : q.t2) += static_cast<double>(i);
        const double sign = ((r - i) % 2 == 0) ? 1.0 : -1.0;
        acc += sign * binomial(r, i) * eval_f1_d1(q, opts).value;
    }
    return acc;
}

namespace {

// rising-factorial weight prod_{j<r} (base + j + [m]/[n]/[m+n])
TermWeight rising_weight(cplx base, int r, cplx on_m, cplx on_n)
{
    TermWeight w;
    for (int j = 0; j < r; ++j)
        w.factors.push_back({base + static_cast<double>(j), on_m, on_n});
    return w;
}

cplx eval_weighted_dispatch(const Appell1Params& p, const TermWeight& w,
                            const SeriesOptions& opts)
{
    return eval_f1_d1_weighted(p, w, opts).value;
}

cplx eval_weighted_dispatch(const Appell2Params& p, const TermWeight& w,
                            const SeriesOptions& opts)
{
    return eval_f1_d2_weighted(p, w, opts).value;
}

// The six shapes differ only in which parameter is shifted, which variable
// carries the derivative, and whether the other argument rides along as x*y.
template <typename Params>
SidePair partial_power_impl(const Params& p, PartialMode mode, int r,
                            const SeriesOptions& opts,
                            const std::function<cplx(const Params&)>& eval)
{
    if (r < 0)
        throw DomainError("partial_power: r must be nonnegative");
    const double rd = static_cast<double>(r);
    auto weighted = [&](const TermWeight& w, cplx x, cplx y) {
        Params q = p;
        q.x = x;
        q.y = y;
        return eval_weighted_dispatch(q, w, opts);
    };
    auto shifted = [&](cplx a, cplx b1, cplx b2, cplx c, cplx x, cplx y) {
        Params q = p;
        q.a = a;
        q.b1 = b1;
        q.b2 = b2;
        q.c = c;
        q.x = x;
        q.y = y;
        return eval(q);
    };

    switch (mode) {
    case PartialMode::XB1: {
        const cplx pre = std::pow(p.x, p.b1 - 1.0);
        const cplx lhs = pre * weighted(rising_weight(p.b1, r, 1.0, 0.0), p.x, p.y);
        const cplx rhs = pre * pochhammer(p.b1, r) *
                         shifted(p.a, p.b1 + rd, p.b2, p.c, p.x, p.y);
        return {lhs, rhs};
    }
    case PartialMode::YB2: {
        const cplx pre = std::pow(p.y, p.b2 - 1.0);
        const cplx lhs = pre * weighted(rising_weight(p.b2, r, 0.0, 1.0), p.x, p.y);
        const cplx rhs = pre * pochhammer(p.b2, r) *
                         shifted(p.a, p.b1, p.b2 + rd, p.c, p.x, p.y);
        return {lhs, rhs};
    }
    case PartialMode::XA: {
        const cplx pre = std::pow(p.x, p.a - 1.0);
        const cplx yy = p.x * p.y;
        const cplx lhs = pre * weighted(rising_weight(p.a, r, 1.0, 1.0), p.x, yy);
        const cplx rhs = pre * pochhammer(p.a, r) *
                         shifted(p.a + rd, p.b1, p.b2, p.c, p.x, yy);
        return {lhs, rhs};
    }
    case PartialMode::YA: {
        const cplx pre = std::pow(p.y, p.a - 1.0);
        const cplx xx = p.x * p.y;
        const cplx lhs = pre * weighted(rising_weight(p.a, r, 1.0, 1.0), xx, p.y);
        const cplx rhs = pre * pochhammer(p.a, r) *
                         shifted(p.a + rd, p.b1, p.b2, p.c, xx, p.y);
        return {lhs, rhs};
    }
    case PartialMode::XC: {
        if (is_nonpositive_integer(p.c - rd))
            throw PoleError("partial_power: c - r is a nonpositive integer");
        const cplx pre = std::pow(p.x, p.c - rd - 1.0);
        const cplx yy = p.x * p.y;
        const cplx lhs = pre * weighted(rising_weight(p.c - rd, r, 1.0, 1.0), p.x, yy);
        const double sign = (r % 2 == 0) ? 1.0 : -1.0;
        const cplx rhs = sign * pochhammer(1.0 - p.c, r) * pre *
                         shifted(p.a, p.b1, p.b2, p.c - rd, p.x, yy);
        return {lhs, rhs};
    }
    case PartialMode::YC: {
        if (is_nonpositive_integer(p.c - rd))
            throw PoleError("partial_power: c - r is a nonpositive integer");
        const cplx pre = std::pow(p.y, p.c - rd - 1.0);
        const cplx xx = p.x * p.y;
        const cplx lhs = pre * weighted(rising_weight(p.c - rd, r, 1.0, 1.0), xx, p.y);
        const double sign = (r % 2 == 0) ? 1.0 : -1.0;
        const cplx rhs = sign * pochhammer(1.0 - p.c, r) * pre *
                         shifted(p.a, p.b1, p.b2, p.c - rd, xx, p.y);
        return {lhs, rhs};
    }
    }
    throw DomainError("partial_power: unknown mode");
}

} // namespace

SidePair partial_power_sides(const Appell1Params& p, PartialMode mode, int r,
                             const SeriesOptions& opts)
{
    std::function<cplx(const Appell1Params&)> eval = [&](const Appell1Params& q) {
        return eval_f1_d1(q, opts).value;
    };
    return partial_power_impl<Appell1Params>(p, mode, r, opts, eval);
}

SidePair partial_power_sides(const Appell2Params& p, PartialMode mode, int r,
                             const SeriesOptions& opts)
{
    std::function<cplx(const Appell2Params&)> eval = [&](const Appell2Params& q) {
        return eval_f1_d2(q, opts).value;
    };
    return partial_power_impl<Appell2Params>(p, mode, r, opts, eval);
}

double partial_power(const Appell1Params& p, PartialMode mode, int r,
                     const SeriesOptions& opts)
{
    const SidePair s = partial_power_sides(p, mode, r, opts);
    return std::abs(s.lhs - s.rhs) / (std::abs(s.rhs) + 1.0);
}

double partial_power(const Appell2Params& p, PartialMode mode, int r,
                     const SeriesOptions& opts)
{
    const SidePair s = partial_power_sides(p, mode, r, opts);
    return std::abs(s.lhs - s.rhs) / (std::abs(s.rhs) + 1.0);
}

namespace {

TermWeight weight_mn(cplx alpha, cplx beta, cplx gamma)
{
    TermWeight w;
    w.factors.push_back({alpha, beta, gamma});
    return w;
}

TermWeight product(TermWeight a, const TermWeight& b)
{
    for (const auto& f : b.factors)
        a.factors.push_back(f);
    return a;
}

} // namespace

SidePair diff_eq_sides_first(const Appell1Params& p, const SeriesOptions& opts)
{
    if (p.k1 < 1 || p.k2 < 1)
        throw DomainError("diff_eq_residual_first: requires k1, k2 >= 1");
    const double k1 = static_cast<double>(p.k1);
    // Theta_{t1} (Theta_{t1}/k1 + Theta_{t2}/k2 + c - 1)
    const TermWeight lhs_w =
        product(weight_mn(0.0, k1, 0.0), weight_mn(p.c - 1.0, 1.0, 1.0));
    const cplx lhs = eval_f1_d1_weighted(p, lhs_w, opts).value;

    Appell1Params shifted = p;
    shifted.t1 = p.t1 - k1;
    const TermWeight rhs_w =
        product(weight_mn(p.a, 1.0, 1.0), weight_mn(p.b1, 1.0, 0.0));
    const double sign = (p.k1 % 2 == 0) ? 1.0 : -1.0;
    const cplx pre = k1 * sign * pochhammer(-p.t1, p.k1) * p.x;
    const cplx rhs = pre * eval_f1_d1_weighted(shifted, rhs_w, opts).value;
    return {lhs, rhs};
}

SidePair diff_eq_sides_second(const Appell1Params& p, const SeriesOptions& opts)
{
    if (p.k1 < 1 || p.k2 < 1)
        throw DomainError("diff_eq_residual_second: requires k1, k2 >= 1");
    const double k2 = static_cast<double>(p.k2);
    const TermWeight lhs_w =
        product(weight_mn(0.0, 0.0, k2), weight_mn(p.c - 1.0, 1.0, 1.0));
    const cplx lhs = eval_f1_d1_weighted(p, lhs_w, opts).value;

    Appell1Params shifted = p;
    shifted.t2 = p.t2 - k2;
    const TermWeight rhs_w =
        product(weight_mn(p.a, 1.0, 1.0), weight_mn(p.b2, 0.0, 1.0));
    const double sign = (p.k2 % 2 == 0) ? 1.0 : -1.0;
    const cplx pre = k2 * sign * pochhammer(-p.t2, p.k2) * p.y;
    const cplx rhs = pre * eval_f1_d1_weighted(shifted, rhs_w, opts).value;
    return {lhs, rhs};
}

SidePair diff_eq_sides_third(const Appell1Params& p, const SeriesOptions& opts)
{
    if (p.k1 < 1 || p.k2 < 1)
        throw DomainError("diff_eq_residual_third: requires k1, k2 >= 1");
    const double k1 = static_cast<double>(p.k1), k2 = static_cast<double>(p.k2);
    const double s1 = (p.k1 % 2 == 0) ? 1.0 : -1.0;
    const double s2 = (p.k2 % 2 == 0) ? 1.0 : -1.0;

    Appell1Params sh2 = p;
    sh2.t2 = p.t2 - k2;
    const TermWeight wa = product(weight_mn(0.0, k1, 0.0), weight_mn(p.b2, 0.0, 1.0));
    const cplx lhs =
        k2 * s2 * pochhammer(-p.t2, p.k2) * p.y * eval_f1_d1_weighted(sh2, wa, opts).value;

    Appell1Params sh1 = p;
    sh1.t1 = p.t1 - k1;
    const TermWeight wb = product(weight_mn(0.0, 0.0, k2), weight_mn(p.b1, 1.0, 0.0));
    const cplx rhs =
        k1 * s1 * pochhammer(-p.t1, p.k1) * p.x * eval_f1_d1_weighted(sh1, wb, opts).value;
    return {lhs, rhs};
}

SidePair diff_eq_sides_f2_theta(const Appell2Params& p, const SeriesOptions& opts)
{
    if (p.k < 1)
        throw DomainError("diff_eq_residual_f2_theta: requires k >= 1");
    const double k = static_cast<double>(p.k);
    const TermWeight lhs_w =
        product(weight_mn(0.0, 1.0, 0.0), weight_mn(p.c - 1.0, 1.0, 1.0));
    const cplx lhs = eval_f1_d2_weighted(p, lhs_w, opts).value;

    Appell2Params shifted = p;
    shifted.t = p.t - k;
    const TermWeight rhs_w =
        product(weight_mn(p.a, 1.0, 1.0), weight_mn(p.b1, 1.0, 0.0));
    // theta supplies the eigenvalue m with no step factor, so the right side
    // carries no leading k (the joint-operator form would)
    const double sign = (p.k % 2 == 0) ? 1.0 : -1.0;
    const cplx pre = sign * pochhammer(-p.t, p.k) * p.x;
    const cplx rhs = pre * eval_f1_d2_weighted(shifted, rhs_w, opts).value;
    return {lhs, rhs};
}

SidePair diff_eq_sides_f2_phi(const Appell2Params& p, const SeriesOptions& opts)
{
    if (p.k < 1)
        throw DomainError("diff_eq_residual_f2_phi: requires k >= 1");
    const double k = static_cast<double>(p.k);
    const TermWeight lhs_w =
        product(weight_mn(0.0, 0.0, 1.0), weight_mn(p.c - 1.0, 1.0, 1.0));
    const cplx lhs = eval_f1_d2_weighted(p, lhs_w, opts).value;

    Appell2Params shifted = p;
    shifted.t = p.t - k;
    const TermWeight rhs_w =
        product(weight_mn(p.a, 1.0, 1.0), weight_mn(p.b2, 0.0, 1.0));
    const double sign = (p.k % 2 == 0) ? 1.0 : -1.0;
    const cplx pre = sign * pochhammer(-p.t, p.k) * p.y;
    const cplx rhs = pre * eval_f1_d2_weighted(shifted, rhs_w, opts).value;
    return {lhs, rhs};
}

SidePair diff_eq_sides_f2_euler(const Appell2Params& p, const SeriesOptions& opts)
{
    // y theta (b2 + phi) F = x phi (b1 + theta) F; contains no t-operators
    const TermWeight wa = product(weight_mn(0.0, 1.0, 0.0), weight_mn(p.b2, 0.0, 1.0));
    const TermWeight wb = product(weight_mn(0.0, 0.0, 1.0), weight_mn(p.b1, 1.0, 0.0));
    const cplx lhs = p.y * eval_f1_d2_weighted(p, wa, opts).value;
    const cplx rhs = p.x * eval_f1_d2_weighted(p, wb, opts).value;
    return {lhs, rhs};
}

double diff_eq_residual_first(const Appell1Params& p, const SeriesOptions& opts)
{
    return diff_eq_sides_first(p, opts).residual();
}

double diff_eq_residual_second(const Appell1Params& p, const SeriesOptions& opts)
{
    return diff_eq_sides_second(p, opts).residual();
}

double diff_eq_residual_third(const Appell1Params& p, const SeriesOptions& opts)
{
    return diff_eq_sides_third(p, opts).residual();
}

double diff_eq_residual_f2_theta(const Appell2Params& p, const SeriesOptions& opts)
{
    return diff_eq_sides_f2_theta(p, opts).residual();
}

double diff_eq_residual_f2_phi(const Appell2Params& p, const SeriesOptions& opts)
{
    return diff_eq_sides_f2_phi(p, opts).residual();
}

double diff_eq_residual_f2_euler(const Appell2Params& p, const SeriesOptions& opts)
{
    return diff_eq_sides_f2_euler(p, opts).residual();
}

} // namespace dappell
