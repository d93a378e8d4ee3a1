#include "dappell/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dappell {

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::Converged: return "converged";
    case Verdict::Terminated: return "terminated";
    case Verdict::DivergenceSuspected: return "divergence-suspected";
    case Verdict::MaxTermsReached: return "max-terms-reached";
    }
    return "unknown";
}

std::string to_string(RegionClass r)
{
    switch (r) {
    case RegionClass::NotClassified: return "not-classified";
    case RegionClass::Inside: return "inside";
    case RegionClass::Boundary: return "boundary";
    case RegionClass::Outside: return "outside";
    }
    return "unknown";
}

namespace {

inline void neumaier_add(double x, double& sum, double& comp)
{
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
        comp += (sum - t) + x;
    else
        comp += (x - t) + sum;
    sum = t;
}

} // namespace

void KahanAccumulator::add(cplx term)
{
    double sr = sum_.real(), cr = comp_.real();
    double si = sum_.imag(), ci = comp_.imag();
    neumaier_add(term.real(), sr, cr);
    neumaier_add(term.imag(), si, ci);
    sum_ = {sr, si};
    comp_ = {cr, ci};
}

cplx kahan_accumulate(std::span<const cplx> terms)
{
    KahanAccumulator acc;
    for (cplx t : terms)
        acc.add(t);
    return acc.value();
}

cplx TermOracle::coefficient(long m, long n) const
{
    cplx a = first();
    for (long i = 0; i < m; ++i)
        a *= ratio_m(i, 0);
    for (long j = 0; j < n; ++j)
        a *= ratio_n(m, j);
    return a;
}

EvalResult sum_double_series(const TermOracle& coeff, cplx x, cplx y,
                             const TermWeight& weight, const SeriesOptions& opts)
{
    // Effective per-direction exhaustion: a declared coefficient bound, or a
    // zero argument which kills every term off the axis.
    long bm = coeff.bound_m();
    long bn = coeff.bound_n();
    const long bd = coeff.bound_diag();
    if (x == cplx(0.0))
        bm = bm == kUnbounded ? 0 : std::min(bm, 0L);
    if (y == cplx(0.0))
        bn = bn == kUnbounded ? 0 : std::min(bn, 0L);

    long term_diag = kUnbounded;
    if (bd != kUnbounded)
        term_diag = bd;
    if (bm != kUnbounded && bn != kUnbounded) {
        const long s = bm + bn;
        term_diag = term_diag == kUnbounded ? s : std::min(term_diag, s);
    }

    EvalResult res;
    KahanAccumulator acc;

    // cur[j] = A(j, d-j) x^j y^(d-j), updated diagonal by diagonal. Entry j
    // of the next diagonal comes from entry j via the n-ratio, and the new
    // corner (d, 0) from the previous corner via the m-ratio.
    std::vector<cplx> cur{coeff.first()};
    long d = 0;
    double prev_abs = 0.0;
    int small_streak = 0;
    int growth_streak = 0;
    double last_abs = 0.0;
    const double small_div =
        static_cast<double>(std::max(1, opts.consecutive_small));

    while (true) {
        // bounds restrict the live index range on this diagonal
        long jlo = 0, jhi = d;
        if (bm != kUnbounded)
            jhi = std::min(jhi, bm);
        if (bn != kUnbounded)
            jlo = std::max(jlo, d - bn);

        double diag_abs = 0.0;
        bool finite = true;
        for (long j = jlo; j <= jhi; ++j) {
            const cplx wterm = weight(j, d - j) * cur[static_cast<size_t>(j)];
            if (!std::isfinite(wterm.real()) || !std::isfinite(wterm.imag())) {
                finite = false;
                break;
            }
            acc.add(wterm);
            diag_abs += std::abs(wterm);
            ++res.terms_summed;
        }
        res.last_diagonal = d;
        res.value = acc.value();
        last_abs = diag_abs;

        if (!finite) {
            // overflow mid-sum: growth, not a pole (poles throw upstream)
            res.verdict = Verdict::DivergenceSuspected;
            res.tail_estimate = std::numeric_limits<double>::infinity();
            return res;
        }
        if (term_diag != kUnbounded && d >= term_diag) {
            res.verdict = Verdict::Terminated;
            res.tail_estimate = 0.0;
            return res;
        }

        // divergence first: a budget increase must never flip a flagged
        // series back to Converged. A declared-terminating series is a
        // finite sum; its pre-termination growth is not divergence.
        if (term_diag == kUnbounded && d > 0 && prev_abs > 0.0 &&
            diag_abs >= opts.divergence_ratio * prev_abs) {
            if (++growth_streak >= opts.divergence_window) {
                res.verdict = Verdict::DivergenceSuspected;
                res.tail_estimate = diag_abs;
                return res;
            }
        } else {
            growth_streak = 0;
        }

        const double thresh =
            (opts.rel_tol * std::abs(res.value) + opts.abs_tol) / small_div;
        if (d > 0 && diag_abs <= thresh) {
            if (++small_streak >= opts.consecutive_small) {
                res.verdict = Verdict::Converged;
                res.tail_estimate = diag_abs * small_div;
                return res;
            }
        } else {
            small_streak = 0;
        }

        if (d >= opts.max_diagonal) {
            res.verdict = Verdict::MaxTermsReached;
            res.tail_estimate = diag_abs;
            return res;
        }
        prev_abs = diag_abs;

        // advance to diagonal d+1
        std::vector<cplx> next(static_cast<size_t>(d) + 2, cplx(0.0));
        for (long j = jlo; j <= jhi; ++j)
            next[static_cast<size_t>(j)] =
                cur[static_cast<size_t>(j)] * coeff.ratio_n(j, d - j) * y;
        if (bm == kUnbounded || d + 1 <= bm)
            next[static_cast<size_t>(d) + 1] =
                cur[static_cast<size_t>(d)] * coeff.ratio_m(d, 0) * x;
        cur = std::move(next);
        ++d;
    }
}

} // namespace dappell
