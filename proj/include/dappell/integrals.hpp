#pragma once

#include "dappell/functions.hpp"
#include "dappell/parallel.hpp"

namespace dappell {

struct QuadratureOptions {
    int panels = 64;
    int points_per_panel = 20; // Gauss-Legendre
    int laguerre_points = 120;
    double target_tol = 1e-9;
    int simplex_refinement = 6; // panels per axis of the simplex square
    ExecPolicy exec = ExecPolicy::Parallel;
};

/// The printed integral representations. Forms prefixed F2 belong to the
/// second discrete Appell function.
enum class IntegralForm {
    Euler1,       // [0,1] Euler kernel against two discrete 1F0 factors
    EulerSimplex, // simplex kernel against a Kampe de Feriet integrand
    LaplaceA,     // semi-infinite, exponent on a
    LaplaceB1,    // semi-infinite, exponent on b1
    LaplaceB2,    // semi-infinite, exponent on b2
    LaplaceT1,    // semi-infinite, exponent on -t1 (formal-regime companion)
    LaplaceT2,    // semi-infinite, exponent on -t2
    F2Euler1,
    F2EulerSimplex,
    F2LaplaceA,
    F2LaplaceB1,
    F2LaplaceB2,
    F2LaplaceT,
};

bool is_f2_form(IntegralForm f);
std::string to_string(IntegralForm f);

/// Quadrature value of the selected representation. tail_estimate carries
/// the internal refinement estimate; throws QuadratureError when refinement
/// stalls above target_tol or an integrand series leaves its region.
EvalResult eval_integral(IntegralForm form, const Appell1Params& p,
                         const QuadratureOptions& q = {});
EvalResult eval_integral(IntegralForm form, const Appell2Params& p,
                         const QuadratureOptions& q = {});

/// |A - B| / (|A| + |B| + 1) between two representations of one function.
double crosscheck_integral(IntegralForm a, IntegralForm b, const Appell1Params& p,
                           const QuadratureOptions& q = {});
double crosscheck_integral(IntegralForm a, IntegralForm b, const Appell2Params& p,
                           const QuadratureOptions& q = {});

/// Gauss-Legendre nodes/weights on [-1, 1] (cached per order).
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Gauss-Laguerre nodes/weights for the weight e^{-u} on [0, inf).
void gauss_laguerre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// One row of the representation-vs-series battery.
struct IntegralSuiteRow {
    IntegralForm form;
    std::string mode; // "series-classical" | "series-terminating" | "crosscheck"
    long pass = 0, fail = 0, skip = 0;
    double worst_residual = 0.0;
    double tolerance = 0.0;
};

/// Deterministic battery over every representation: Euler forms against the
/// series at 1e-7 (classical and terminating draws), Laplace forms at 1e-6
/// (terminating), and the Gamma(-t)-prefactor forms by mutual crosscheck and
/// classical limit at 1e-6 (their series counterpart is formal).
std::vector<IntegralSuiteRow> run_integral_suite(int count, std::uint64_t seed,
                                                 const QuadratureOptions& q = {});

} // namespace dappell
