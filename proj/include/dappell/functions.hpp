#pragma once

#include <vector>

#include "dappell/series.hpp"

namespace dappell {

/// Parameters of the first discrete Appell form: separate lattice variables
/// t1, t2 with steps k1, k2 on the two summation indices.
struct Appell1Params {
    cplx a, b1, b2, c;
    cplx t1, t2;
    long k1 = 0, k2 = 0;
    cplx x, y;
};

/// Parameters of the second discrete form: one joint lattice variable t with
/// step k on m+n.
struct Appell2Params {
    cplx a, b1, b2, c;
    cplx t;
    long k = 0;
    cplx x, y;
};

/// Kampe de Feriet parameter groups. Joint lists are indexed by m+n, the x/y
/// lists by the separate indices.
struct KdFSpec {
    std::vector<cplx> upper_joint; // A
    std::vector<cplx> upper_x;     // B
    std::vector<cplx> upper_y;     // C
    std::vector<cplx> lower_joint; // D
    std::vector<cplx> lower_x;     // E
    std::vector<cplx> lower_y;     // F
};

enum class HumbertFamily { Phi1, Phi2, Phi3 };
enum class HumbertForm { First, Second };

struct HumbertVariant {
    HumbertFamily family = HumbertFamily::Phi1;
    HumbertForm form = HumbertForm::First;
};

struct DegenerationProbe {
    double epsilon = 1e-2;
    HumbertVariant variant;
};

/// Summation regime implied by a (t, k) slot: k = 0 behaves classically,
/// k >= 1 with integer t terminates, anything else is formal only.
enum class AxisRegime { Classical, Terminating, Formal };

AxisRegime axis_regime(cplx t, long k);

/// First discrete Appell function.
EvalResult eval_f1_d1(const Appell1Params& p, const SeriesOptions& opts = {});

/// Second discrete Appell function.
EvalResult eval_f1_d2(const Appell2Params& p, const SeriesOptions& opts = {});

/// Discrete Humbert functions; parameters irrelevant to the variant are
/// ignored (phi1 drops b2, phi2 drops a, phi3 drops a and b2).
EvalResult eval_humbert(HumbertVariant v, const Appell1Params& p,
                        const SeriesOptions& opts = {});
EvalResult eval_humbert(HumbertVariant v, const Appell2Params& p,
                        const SeriesOptions& opts = {});

/// Discrete pFq with factor (-1)^{mk} (-t)_{mk} on index m.
EvalResult eval_discrete_pfq(const std::vector<cplx>& upper,
                             const std::vector<cplx>& lower, cplx t, long k,
                             cplx z, const SeriesOptions& opts = {});

/// Kampe de Feriet double series. Classifies (x, y) against the printed
/// convergence cases before summing; outside the region the sum proceeds
/// with divergence detection armed.
EvalResult eval_kdf(const KdFSpec& spec, cplx x, cplx y,
                    const SeriesOptions& opts = {});

RegionClass kdf_region(const KdFSpec& spec, cplx x, cplx y);

/// Classical reference evaluators (kept independent of the generic engine;
/// reduction tests compare against these).
EvalResult eval_classical_f1(cplx a, cplx b1, cplx b2, cplx c, cplx x, cplx y,
                             const SeriesOptions& opts = {});
EvalResult eval_classical_f2(cplx a, cplx b1, cplx b2, cplx c1, cplx c2, cplx x,
                             cplx y, const SeriesOptions& opts = {});
EvalResult eval_classical_f3(cplx a1, cplx a2, cplx b1, cplx b2, cplx c, cplx x,
                             cplx y, const SeriesOptions& opts = {});
EvalResult eval_classical_f4(cplx a, cplx b, cplx c1, cplx c2, cplx x, cplx y,
                             const SeriesOptions& opts = {});
EvalResult eval_2f1(cplx a, cplx b, cplx c, cplx z,
                    const SeriesOptions& opts = {});

/// |F with the printed epsilon substitution - phi variant| at the probe's
/// epsilon. Epsilon below 1e-8 is rejected.
double degeneration_error(const DegenerationProbe& probe, const Appell1Params& base,
                          const SeriesOptions& opts = {});
double degeneration_error(const DegenerationProbe& probe, const Appell2Params& base,
                          const SeriesOptions& opts = {});

/// Conclusion-section special cases: shared-oracle wrappers for k1 = k2 = k
/// and t1 = t2 = t.
EvalResult eval_f1_d1_equal_k(cplx a, cplx b1, cplx b2, cplx c, cplx t1, cplx t2,
                              long k, cplx x, cplx y, const SeriesOptions& opts = {});
EvalResult eval_f1_d1_equal_t(cplx a, cplx b1, cplx b2, cplx c, cplx t, long k1,
                              long k2, cplx x, cplx y, const SeriesOptions& opts = {});

/// Oracles shared with the operators module (term weights act on these).
class Appell1Oracle : public TermOracle {
public:
    Appell1Oracle(const Appell1Params& p, bool use_a = true, bool use_b2 = true);

    cplx first() const override { return 1.0; }
    cplx ratio_m(long m, long n) const override;
    cplx ratio_n(long m, long n) const override;
    long bound_m() const override { return bound_m_; }
    long bound_n() const override { return bound_n_; }

private:
    Appell1Params p_;
    bool use_a_, use_b2_;
    long bound_m_ = kUnbounded, bound_n_ = kUnbounded;
};

class Appell2Oracle : public TermOracle {
public:
    Appell2Oracle(const Appell2Params& p, bool use_a = true, bool use_b2 = true);

    cplx first() const override { return 1.0; }
    cplx ratio_m(long m, long n) const override;
    cplx ratio_n(long m, long n) const override;
    long bound_diag() const override { return bound_diag_; }

private:
    Appell2Params p_;
    bool use_a_, use_b2_;
    long bound_diag_ = kUnbounded;
};

/// Weighted evaluations used by the operator calculus.
EvalResult eval_f1_d1_weighted(const Appell1Params& p, const TermWeight& w,
                               const SeriesOptions& opts = {});
EvalResult eval_f1_d2_weighted(const Appell2Params& p, const TermWeight& w,
                               const SeriesOptions& opts = {});

} // namespace dappell
