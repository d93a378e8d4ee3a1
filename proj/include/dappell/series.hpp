#pragma once

#include <span>
#include <string>
#include <vector>

#include "dappell/special.hpp"

namespace dappell {

struct TermIndex {
    long m = 0;
    long n = 0;
};

struct SeriesOptions {
    double rel_tol = 1e-12;
    double abs_tol = 1e-300;
    long max_diagonal = 2000;
    int consecutive_small = 3;
    double divergence_ratio = 1.5;
    int divergence_window = 8;
};

enum class Verdict {
    Converged,           ///< tail below tolerance
    Terminated,          ///< finite sum, exact
    DivergenceSuspected, ///< sustained growth of diagonal sums
    MaxTermsReached,     ///< budget exhausted without a verdict
};

std::string to_string(Verdict v);

/// How an argument pair sits relative to a series' printed convergence
/// region (recorded for Kampe de Feriet evaluations).
enum class RegionClass { NotClassified, Inside, Boundary, Outside };

std::string to_string(RegionClass r);

struct EvalResult {
    cplx value{};
    long terms_summed = 0;
    long last_diagonal = 0;
    double tail_estimate = 0.0;
    Verdict verdict = Verdict::MaxTermsReached;
    RegionClass region = RegionClass::NotClassified;

    bool quantitative() const
    {
        return verdict == Verdict::Converged || verdict == Verdict::Terminated;
    }
};

/// Product of affine weights (alpha + beta m + gamma n) applied termwise.
/// An empty factor list is the unit weight.
struct TermWeight {
    struct Factor {
        cplx alpha{1.0};
        cplx beta{};
        cplx gamma{};
    };
    std::vector<Factor> factors;

    cplx operator()(long m, long n) const
    {
        cplx w = 1.0;
        for (const Factor& f : factors)
            w *= f.alpha + f.beta * static_cast<double>(m) +
                 f.gamma * static_cast<double>(n);
        return w;
    }
    static TermWeight unit() { return {}; }
};

inline constexpr long kUnbounded = -1;

/// Coefficient oracle for a double series sum A(m,n) x^m y^n. Coefficients
/// are produced incrementally through formal term ratios (always finite,
/// zero allowed); declared bounds mark indices past which A vanishes.
class TermOracle {
public:
    virtual ~TermOracle() = default;

    virtual cplx first() const = 0;                 ///< A(0,0)
    virtual cplx ratio_m(long m, long n) const = 0; ///< A(m+1,n)/A(m,n)
    virtual cplx ratio_n(long m, long n) const = 0; ///< A(m,n+1)/A(m,n)

    virtual long bound_m() const { return kUnbounded; }
    virtual long bound_n() const { return kUnbounded; }
    /// All terms with m+n beyond this vanish (joint termination).
    virtual long bound_diag() const { return kUnbounded; }

    /// A(m,n) reconstructed by a ratio walk from (0,0).
    cplx coefficient(long m, long n) const;
};

/// Sums w(m,n) A(m,n) x^m y^n along diagonals m+n = 0, 1, 2, ...
EvalResult sum_double_series(const TermOracle& coeff, cplx x, cplx y,
                             const TermWeight& weight, const SeriesOptions& opts);

inline EvalResult sum_double_series(const TermOracle& coeff, cplx x, cplx y,
                                    const SeriesOptions& opts)
{
    return sum_double_series(coeff, x, y, TermWeight::unit(), opts);
}

/// Neumaier-compensated accumulator; error stays within a couple of ulp per
/// term in well-scaled cases.
class KahanAccumulator {
public:
    void add(cplx term);
    cplx value() const { return sum_ + comp_; }

private:
    cplx sum_{};
    cplx comp_{};
};

/// Compensated sum of a term stream.
cplx kahan_accumulate(std::span<const cplx> terms);

} // namespace dappell
