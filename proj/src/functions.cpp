#include "dappell/functions.hpp"

#include <algorithm>
#include <cmath>

namespace dappell {

namespace {

long nonpositive_int_bound(cplx u)
{
    // (u)_m vanishes for m > -u when u is a nonpositive integer
    if (is_nonpositive_integer(u))
        return -static_cast<long>(std::llround(u.real()));
    return kUnbounded;
}

long min_bound(long a, long b)
{
    if (a == kUnbounded)
        return b;
    if (b == kUnbounded)
        return a;
    return std::min(a, b);
}

long discrete_axis_bound(cplx t, long k)
{
    // (-t)_{mk} vanishes once mk > t for nonnegative integer t
    if (k >= 1 && is_nonnegative_integer(t))
        return static_cast<long>(std::llround(t.real())) / k;
    return kUnbounded;
}

// ratio of consecutive signed discrete factors:
// D(s+1)/D(s) = prod_{j<k} (t - sk - j)
cplx discrete_ratio(cplx t, long s, long k)
{
    cplx r = 1.0;
    for (long j = 0; j < k; ++j)
        r *= t - static_cast<double>(s * k + j);
    return r;
}

void require_valid_c(cplx c, const char* who)
{
    if (is_nonpositive_integer(c))
        throw PoleError(std::string(who) + ": c is a nonpositive integer");
}

bool axis_terminates(cplx t, long k, cplx numerator_b)
{
    return discrete_axis_bound(t, k) != kUnbounded ||
           nonpositive_int_bound(numerator_b) != kUnbounded;
}

void require_in_region_1(const Appell1Params& p, const char* who)
{
    if (std::abs(p.x) >= 1.0 && p.x != cplx(0.0) &&
        !axis_terminates(p.t1, p.k1, p.b1))
        throw DomainError(std::string(who) + ": |x| >= 1 on a non-terminating axis");
    if (std::abs(p.y) >= 1.0 && p.y != cplx(0.0) &&
        !axis_terminates(p.t2, p.k2, p.b2))
        throw DomainError(std::string(who) + ": |y| >= 1 on a non-terminating axis");
}

} // namespace

AxisRegime axis_regime(cplx t, long k)
{
    if (k == 0)
        return AxisRegime::Classical;
    if (is_nonnegative_integer(t))
        return AxisRegime::Terminating;
    return AxisRegime::Formal;
}

Appell1Oracle::Appell1Oracle(const Appell1Params& p, bool use_a, bool use_b2)
    : p_(p), use_a_(use_a), use_b2_(use_b2)
{
    bound_m_ = min_bound(discrete_axis_bound(p.t1, p.k1), nonpositive_int_bound(p.b1));
    bound_n_ = discrete_axis_bound(p.t2, p.k2);
    if (use_b2_)
        bound_n_ = min_bound(bound_n_, nonpositive_int_bound(p.b2));
}

cplx Appell1Oracle::ratio_m(long m, long n) const
{
    const double md = static_cast<double>(m), nd = static_cast<double>(n);
    cplx r = (p_.b1 + md) * discrete_ratio(p_.t1, m, p_.k1) /
             ((p_.c + md + nd) * (md + 1.0));
    if (use_a_)
        r *= p_.a + md + nd;
    return r;
}

cplx Appell1Oracle::ratio_n(long m, long n) const
{
    const double md = static_cast<double>(m), nd = static_cast<double>(n);
    cplx r = discrete_ratio(p_.t2, n, p_.k2) / ((p_.c + md + nd) * (nd + 1.0));
    if (use_a_)
        r *= p_.a + md + nd;
    if (use_b2_)
        r *= p_.b2 + nd;
    return r;
}

Appell2Oracle::Appell2Oracle(const Appell2Params& p, bool use_a, bool use_b2)
    : p_(p), use_a_(use_a), use_b2_(use_b2)
{
    bound_diag_ = discrete_axis_bound(p.t, p.k);
    if (use_a_)
        bound_diag_ = min_bound(bound_diag_, nonpositive_int_bound(p.a));
}

cplx Appell2Oracle::ratio_m(long m, long n) const
{
    const double md = static_cast<double>(m), nd = static_cast<double>(n);
    cplx r = (p_.b1 + md) * discrete_ratio(p_.t, m + n, p_.k) /
             ((p_.c + md + nd) * (md + 1.0));
    if (use_a_)
        r *= p_.a + md + nd;
    return r;
}

cplx Appell2Oracle::ratio_n(long m, long n) const
{
    const double md = static_cast<double>(m), nd = static_cast<double>(n);
    cplx r = discrete_ratio(p_.t, m + n, p_.k) / ((p_.c + md + nd) * (nd + 1.0));
    if (use_a_)
        r *= p_.a + md + nd;
    if (use_b2_)
        r *= p_.b2 + nd;
    return r;
}

EvalResult eval_f1_d1(const Appell1Params& p, const SeriesOptions& opts)
{
    require_valid_c(p.c, "eval_f1_d1");
    require_in_region_1(p, "eval_f1_d1");
    return sum_double_series(Appell1Oracle(p), p.x, p.y, opts);
}

EvalResult eval_f1_d2(const Appell2Params& p, const SeriesOptions& opts)
{
    require_valid_c(p.c, "eval_f1_d2");
    const bool term = discrete_axis_bound(p.t, p.k) != kUnbounded ||
                      nonpositive_int_bound(p.a) != kUnbounded;
    if (!term) {
        if (std::abs(p.x) >= 1.0 && p.x != cplx(0.0) &&
            nonpositive_int_bound(p.b1) == kUnbounded)
            throw DomainError("eval_f1_d2: |x| >= 1 on a non-terminating axis");
        if (std::abs(p.y) >= 1.0 && p.y != cplx(0.0) &&
            nonpositive_int_bound(p.b2) == kUnbounded)
            throw DomainError("eval_f1_d2: |y| >= 1 on a non-terminating axis");
    }
    return sum_double_series(Appell2Oracle(p), p.x, p.y, opts);
}

EvalResult eval_f1_d1_weighted(const Appell1Params& p, const TermWeight& w,
                               const SeriesOptions& opts)
{
    require_valid_c(p.c, "eval_f1_d1_weighted");
    require_in_region_1(p, "eval_f1_d1_weighted");
    return sum_double_series(Appell1Oracle(p), p.x, p.y, w, opts);
}

EvalResult eval_f1_d2_weighted(const Appell2Params& p, const TermWeight& w,
                               const SeriesOptions& opts)
{
    require_valid_c(p.c, "eval_f1_d2_weighted");
    return sum_double_series(Appell2Oracle(p), p.x, p.y, w, opts);
}

EvalResult eval_humbert(HumbertVariant v, const Appell1Params& p,
                        const SeriesOptions& opts)
{
    require_valid_c(p.c, "eval_humbert");
    const bool use_a = v.family == HumbertFamily::Phi1;
    const bool use_b2 = v.family == HumbertFamily::Phi2;
    return sum_double_series(Appell1Oracle(p, use_a, use_b2), p.x, p.y, opts);
}

EvalResult eval_humbert(HumbertVariant v, const Appell2Params& p,
                        const SeriesOptions& opts)
{
    require_valid_c(p.c, "eval_humbert");
    const bool use_a = v.family == HumbertFamily::Phi1;
    const bool use_b2 = v.family == HumbertFamily::Phi2;
    return sum_double_series(Appell2Oracle(p, use_a, use_b2), p.x, p.y, opts);
}

namespace {

class DiscretePfqOracle : public TermOracle {
public:
    DiscretePfqOracle(std::vector<cplx> upper, std::vector<cplx> lower, cplx t,
                      long k)
        : upper_(std::move(upper)), lower_(std::move(lower)), t_(t), k_(k)
    {
        bound_ = discrete_axis_bound(t_, k_);
        for (cplx u : upper_)
            bound_ = min_bound(bound_, nonpositive_int_bound(u));
    }

    cplx first() const override { return 1.0; }
    cplx ratio_m(long m, long) const override
    {
        const double md = static_cast<double>(m);
        cplx r = discrete_ratio(t_, m, k_) / (md + 1.0);
        for (cplx u : upper_)
            r *= u + md;
        for (cplx v : lower_)
            r /= v + md;
        return r;
    }
    cplx ratio_n(long, long) const override { return 0.0; }
    long bound_m() const override { return bound_; }
    long bound_n() const override { return 0; }

private:
    std::vector<cplx> upper_, lower_;
    cplx t_;
    long k_;
    long bound_ = kUnbounded;
};

} // namespace

EvalResult eval_discrete_pfq(const std::vector<cplx>& upper,
                             const std::vector<cplx>& lower, cplx t, long k,
                             cplx z, const SeriesOptions& opts)
{
    for (cplx v : lower)
        if (is_nonpositive_integer(v))
            throw PoleError("eval_discrete_pfq: lower parameter is a nonpositive integer");
    DiscretePfqOracle oracle(upper, lower, t, k);
    if (std::abs(z) >= 1.0 && z != cplx(0.0) && oracle.bound_m() == kUnbounded &&
        upper.size() > lower.size())
        throw DomainError("eval_discrete_pfq: |z| >= 1 on a non-terminating series");
    return sum_double_series(oracle, z, 0.0, opts);
}

namespace {

class KdFOracle : public TermOracle {
public:
    explicit KdFOracle(const KdFSpec& s) : s_(s)
    {
        for (cplx u : s_.upper_x)
            bound_m_ = min_bound(bound_m_, nonpositive_int_bound(u));
        for (cplx u : s_.upper_y)
            bound_n_ = min_bound(bound_n_, nonpositive_int_bound(u));
        for (cplx u : s_.upper_joint)
            bound_diag_ = min_bound(bound_diag_, nonpositive_int_bound(u));
    }

    cplx first() const override { return 1.0; }
    cplx ratio_m(long m, long n) const override
    {
        const double md = static_cast<double>(m), sd = static_cast<double>(m + n);
        cplx r = 1.0 / (md + 1.0);
        for (cplx u : s_.upper_joint)
            r *= u + sd;
        for (cplx u : s_.upper_x)
            r *= u + md;
        for (cplx v : s_.lower_joint)
            r /= v + sd;
        for (cplx v : s_.lower_x)
            r /= v + md;
        return r;
    }
    cplx ratio_n(long m, long n) const override
    {
        const double nd = static_cast<double>(n), sd = static_cast<double>(m + n);
        cplx r = 1.0 / (nd + 1.0);
        for (cplx u : s_.upper_joint)
            r *= u + sd;
        for (cplx u : s_.upper_y)
            r *= u + nd;
        for (cplx v : s_.lower_joint)
            r /= v + sd;
        for (cplx v : s_.lower_y)
            r /= v + nd;
        return r;
    }
    long bound_m() const override { return bound_m_; }
    long bound_n() const override { return bound_n_; }
    long bound_diag() const override { return bound_diag_; }

private:
    const KdFSpec& s_;
    long bound_m_ = kUnbounded, bound_n_ = kUnbounded, bound_diag_ = kUnbounded;
};

} // namespace

RegionClass kdf_region(const KdFSpec& spec, cplx x, cplx y)
{
    const long k1 = static_cast<long>(spec.upper_joint.size());
    const long l1 = static_cast<long>(spec.upper_x.size());
    const long l1p = static_cast<long>(spec.upper_y.size());
    const long k2 = static_cast<long>(spec.lower_joint.size());
    const long l2 = static_cast<long>(spec.lower_x.size());
    const long l2p = static_cast<long>(spec.lower_y.size());

    if (k1 + l1 < k2 + l2 + 1 && k1 + l1p < k2 + l2p + 1)
        return RegionClass::Inside;
    if (k1 + l1 == k2 + l2 + 1 && k1 + l1p == k2 + l2p + 1) {
        constexpr double tie = 1e-12;
        if (k1 > k2) {
            const double e = 1.0 / static_cast<double>(k1 - k2);
            const double s = std::pow(std::abs(x), e) + std::pow(std::abs(y), e);
            if (std::abs(s - 1.0) <= tie)
                return RegionClass::Boundary;
            return s < 1.0 ? RegionClass::Inside : RegionClass::Outside;
        }
        const double ax = std::abs(x), ay = std::abs(y);
        if (std::abs(ax - 1.0) <= tie || std::abs(ay - 1.0) <= tie)
            return RegionClass::Boundary;
        return (ax < 1.0 && ay < 1.0) ? RegionClass::Inside : RegionClass::Outside;
    }
    return RegionClass::Outside;
}

EvalResult eval_kdf(const KdFSpec& spec, cplx x, cplx y, const SeriesOptions& opts)
{
    for (const auto* group : {&spec.lower_joint, &spec.lower_x, &spec.lower_y})
        for (cplx v : *group)
            if (is_nonpositive_integer(v))
                throw PoleError("eval_kdf: lower parameter is a nonpositive integer");
    EvalResult res = sum_double_series(KdFOracle(spec), x, y, opts);
    res.region = kdf_region(spec, x, y);
    return res;
}

// ---------------------------------------------------------------------------
// Classical reference evaluators. Plain nested loops with their own stopping
// logic, kept apart from the generic engine so reduction checks cross two
// genuinely different code paths.
// ---------------------------------------------------------------------------

EvalResult eval_2f1(cplx a, cplx b, cplx c, cplx z, const SeriesOptions& opts)
{
    if (is_nonpositive_integer(c))
        throw PoleError("eval_2f1: c is a nonpositive integer");
    const bool poly = is_nonpositive_integer(a) || is_nonpositive_integer(b);
    if (!poly && std::abs(z) >= 1.0)
        throw DomainError("eval_2f1: |z| >= 1");
    EvalResult res;
    cplx term = 1.0, sum = 1.0;
    res.terms_summed = 1;
    int small = 0;
    const long kmax = 100 * opts.max_diagonal;
    for (long k = 0; k < kmax; ++k) {
        const double kd = static_cast<double>(k);
        term *= (a + kd) * (b + kd) * z / ((c + kd) * (kd + 1.0));
        sum += term;
        ++res.terms_summed;
        res.last_diagonal = k + 1;
        if (term == cplx(0.0)) {
            res.value = sum;
            res.verdict = Verdict::Terminated;
            return res;
        }
        if (std::abs(term) <= opts.rel_tol * std::abs(sum) + opts.abs_tol) {
            if (++small >= opts.consecutive_small) {
                res.value = sum;
                res.verdict = Verdict::Converged;
                res.tail_estimate = std::abs(term) * opts.consecutive_small;
                return res;
            }
        } else {
            small = 0;
        }
    }
    res.value = sum;
    res.verdict = Verdict::MaxTermsReached;
    return res;
}

namespace {

// Row-by-row summation shared by the four classical Appell evaluators.
// rowFirstRatio advances the m-row seed, colRatio advances within a row.
template <typename RowRatio, typename ColRatio>
EvalResult sum_classical_rows(cplx x, cplx y, RowRatio row_ratio, ColRatio col_ratio,
                              const SeriesOptions& opts)
{
    EvalResult res;
    cplx sum = 0.0;
    cplx row_seed = 1.0; // term (m, 0)
    int small_rows = 0;
    bool exact = true; // every summed row ended on an exactly-zero term
    for (long m = 0; m <= opts.max_diagonal; ++m) {
        cplx term = row_seed;
        cplx row_sum = 0.0;
        double row_abs = 0.0;
        int small = 0;
        for (long n = 0; n <= opts.max_diagonal; ++n) {
            row_sum += term;
            row_abs += std::abs(term);
            ++res.terms_summed;
            const cplx next = term * col_ratio(m, n) * y;
            if (next == cplx(0.0))
                break;
            if (std::abs(next) <= opts.rel_tol * (std::abs(sum) + row_abs) + opts.abs_tol) {
                if (++small >= opts.consecutive_small) {
                    row_sum += next;
                    exact = false;
                    break;
                }
            } else {
                small = 0;
            }
            term = next;
        }
        sum += row_sum;
        res.last_diagonal = m;
        const cplx next_seed = row_seed * row_ratio(m) * x;
        if (next_seed == cplx(0.0)) {
            res.value = sum;
            res.verdict = exact ? Verdict::Terminated : Verdict::Converged;
            return res;
        }
        if (row_abs <= opts.rel_tol * std::abs(sum) + opts.abs_tol && m > 0) {
            if (++small_rows >= opts.consecutive_small) {
                res.value = sum;
                res.verdict = Verdict::Converged;
                res.tail_estimate = row_abs * opts.consecutive_small;
                return res;
            }
        } else {
            small_rows = 0;
        }
        row_seed = next_seed;
    }
    res.value = sum;
    res.verdict = Verdict::MaxTermsReached;
    return res;
}

} // namespace

EvalResult eval_classical_f1(cplx a, cplx b1, cplx b2, cplx c, cplx x, cplx y,
                             const SeriesOptions& opts)
{
    if (is_nonpositive_integer(c))
        throw PoleError("eval_classical_f1: c is a nonpositive integer");
    if ((std::abs(x) >= 1.0 || std::abs(y) >= 1.0) &&
        !(is_nonpositive_integer(b1) && is_nonpositive_integer(b2)))
        throw DomainError("eval_classical_f1: requires |x| < 1 and |y| < 1");
    auto row = [&](long m) {
        const double md = static_cast<double>(m);
        return (a + md) * (b1 + md) / ((c + md) * (md + 1.0));
    };
    auto col = [&](long m, long n) {
        const double md = static_cast<double>(m), nd = static_cast<double>(n);
        return (a + md + nd) * (b2 + nd) / ((c + md + nd) * (nd + 1.0));
    };
    return sum_classical_rows(x, y, row, col, opts);
}

EvalResult eval_classical_f2(cplx a, cplx b1, cplx b2, cplx c1, cplx c2, cplx x,
                             cplx y, const SeriesOptions& opts)
{
    if (is_nonpositive_integer(c1) || is_nonpositive_integer(c2))
        throw PoleError("eval_classical_f2: lower parameter is a nonpositive integer");
    if (std::abs(x) + std::abs(y) >= 1.0)
        throw DomainError("eval_classical_f2: requires |x| + |y| < 1");
    auto row = [&](long m) {
        const double md = static_cast<double>(m);
        return (a + md) * (b1 + md) / ((c1 + md) * (md + 1.0));
    };
    auto col = [&](long m, long n) {
        const double md = static_cast<double>(m), nd = static_cast<double>(n);
        return (a + md + nd) * (b2 + nd) / ((c2 + nd) * (nd + 1.0));
    };
    return sum_classical_rows(x, y, row, col, opts);
}

EvalResult eval_classical_f3(cplx a1, cplx a2, cplx b1, cplx b2, cplx c, cplx x,
                             cplx y, const SeriesOptions& opts)
{
    if (is_nonpositive_integer(c))
        throw PoleError("eval_classical_f3: c is a nonpositive integer");
    if (std::abs(x) >= 1.0 || std::abs(y) >= 1.0)
        throw DomainError("eval_classical_f3: requires |x| < 1 and |y| < 1");
    auto row = [&](long m) {
        const double md = static_cast<double>(m);
        return (a1 + md) * (b1 + md) / ((c + md) * (md + 1.0));
    };
    auto col = [&](long m, long n) {
        const double md = static_cast<double>(m), nd = static_cast<double>(n);
        return (a2 + nd) * (b2 + nd) / ((c + md + nd) * (nd + 1.0));
    };
    return sum_classical_rows(x, y, row, col, opts);
}

EvalResult eval_classical_f4(cplx a, cplx b, cplx c1, cplx c2, cplx x, cplx y,
                             const SeriesOptions& opts)
{
    if (is_nonpositive_integer(c1) || is_nonpositive_integer(c2))
        throw PoleError("eval_classical_f4: lower parameter is a nonpositive integer");
    if (std::sqrt(std::abs(x)) + std::sqrt(std::abs(y)) >= 1.0)
        throw DomainError("eval_classical_f4: requires sqrt|x| + sqrt|y| < 1");
    auto row = [&](long m) {
        const double md = static_cast<double>(m);
        return (a + md) * (b + md) / ((c1 + md) * (md + 1.0));
    };
    auto col = [&](long m, long n) {
        const double md = static_cast<double>(m), nd = static_cast<double>(n);
        return (a + md + nd) * (b + md + nd) / ((c2 + nd) * (nd + 1.0));
    };
    return sum_classical_rows(x, y, row, col, opts);
}

// ---------------------------------------------------------------------------
// Degenerations
// ---------------------------------------------------------------------------

namespace {

void require_epsilon(double eps)
{
    if (!(eps > 1e-8) || eps > 0.1)
        throw DomainError("degeneration_error: epsilon must lie in (1e-8, 0.1]");
}

} // namespace

double degeneration_error(const DegenerationProbe& probe, const Appell1Params& base,
                          const SeriesOptions& opts)
{
    require_epsilon(probe.epsilon);
    const double inv = 1.0 / probe.epsilon;
    Appell1Params sub = base;
    switch (probe.variant.family) {
    case HumbertFamily::Phi1:
        sub.b2 = inv;
        sub.y = base.y * probe.epsilon;
        break;
    case HumbertFamily::Phi2:
        sub.a = inv;
        sub.x = base.x * probe.epsilon;
        sub.y = base.y * probe.epsilon;
        break;
    case HumbertFamily::Phi3:
        sub.a = inv;
        sub.b2 = inv;
        sub.x = base.x * probe.epsilon;
        sub.y = base.y * probe.epsilon * probe.epsilon;
        break;
    }
    const cplx lhs = eval_f1_d1(sub, opts).value;
    const cplx rhs = eval_humbert(probe.variant, base, opts).value;
    return std::abs(lhs - rhs);
}

double degeneration_error(const DegenerationProbe& probe, const Appell2Params& base,
                          const SeriesOptions& opts)
{
    require_epsilon(probe.epsilon);
    const double inv = 1.0 / probe.epsilon;
    Appell2Params sub = base;
    switch (probe.variant.family) {
    case HumbertFamily::Phi1:
        sub.b2 = inv;
        sub.y = base.y * probe.epsilon;
        break;
    case HumbertFamily::Phi2:
        sub.a = inv;
        sub.x = base.x * probe.epsilon;
        sub.y = base.y * probe.epsilon;
        break;
    case HumbertFamily::Phi3:
        sub.a = inv;
        sub.b2 = inv;
        sub.x = base.x * probe.epsilon;
        sub.y = base.y * probe.epsilon * probe.epsilon;
        break;
    }
    const cplx lhs = eval_f1_d2(sub, opts).value;
    const cplx rhs = eval_humbert(probe.variant, base, opts).value;
    return std::abs(lhs - rhs);
}

EvalResult eval_f1_d1_equal_k(cplx a, cplx b1, cplx b2, cplx c, cplx t1, cplx t2,
                              long k, cplx x, cplx y, const SeriesOptions& opts)
{
    return eval_f1_d1({a, b1, b2, c, t1, t2, k, k, x, y}, opts);
}

EvalResult eval_f1_d1_equal_t(cplx a, cplx b1, cplx b2, cplx c, cplx t, long k1,
                              long k2, cplx x, cplx y, const SeriesOptions& opts)
{
    return eval_f1_d1({a, b1, b2, c, t, t, k1, k2, x, y}, opts);
}

} // namespace dappell
