#pragma once

#include <functional>
#include <vector>

#include "dappell/functions.hpp"

namespace dappell {

/// Atoms of the operator calculus. Theta/Phi are the Euler operators x d/dx
/// and y d/dy; the BigTheta atoms are the lattice operators t rho_t Delta_t
/// on the respective t-slots.
enum class OperatorAtom { Identity, ThetaX, PhiY, BigThetaT1, BigThetaT2, BigThetaT };

struct OperatorTerm {
    cplx coefficient{1.0};
    OperatorAtom atom = OperatorAtom::Identity;
};

/// One affine factor: constant + sum of coefficient * atom.
struct OperatorFactor {
    cplx constant{};
    std::vector<OperatorTerm> terms;
};

/// Product of affine factors. All atoms act diagonally on monomials, so the
/// factor order never matters for the weighted value.
struct OperatorExpr {
    std::vector<OperatorFactor> factors;

    static OperatorExpr identity() { return {}; }
    OperatorExpr& operator*=(OperatorFactor f)
    {
        factors.push_back(std::move(f));
        return *this;
    }
};

OperatorFactor make_factor(cplx constant, std::vector<OperatorTerm> terms = {});

enum class FunctionFamily { F1D1, F1D2 };

/// Which function the atoms act on; carries the step parameters needed for
/// the eigenvalue images.
struct WeightTarget {
    FunctionFamily family = FunctionFamily::F1D1;
    long k1 = 0, k2 = 0; // F1D1
    long k = 0;          // F1D2

    static WeightTarget for_params(const Appell1Params& p)
    {
        return {FunctionFamily::F1D1, p.k1, p.k2, 0};
    }
    static WeightTarget for_params(const Appell2Params& p)
    {
        return {FunctionFamily::F1D2, 0, 0, p.k};
    }
};

/// Termwise eigenvalue images: theta -> m, phi -> n, Theta_{t1} -> m k1,
/// Theta_{t2} -> n k2, Theta_t -> (m+n) k. Throws OperatorMismatchError when
/// an atom does not act on the target family.
TermWeight compile_weight(const OperatorExpr& expr, const WeightTarget& target);

/// Weighted series value of expr acting on the function.
EvalResult apply_weighted(const Appell1Params& p, const OperatorExpr& expr,
                          const SeriesOptions& opts = {});
EvalResult apply_weighted(const Appell2Params& p, const OperatorExpr& expr,
                          const SeriesOptions& opts = {});

enum class TSlot { T1, T2 };

/// Numeric Theta_t f(t) = t (f(t) - f(t-1)) for a caller-supplied
/// shift-evaluator.
cplx theta_t_numeric(const std::function<cplx(cplx)>& f, cplx t);

/// Numeric Theta on one t-slot of the discrete Appell functions, by two full
/// series evaluations.
cplx theta_t_numeric(const Appell1Params& p, TSlot slot,
                     const SeriesOptions& opts = {});
cplx theta_t_numeric(const Appell2Params& p, const SeriesOptions& opts = {});

/// r-fold forward difference on a t-slot, by r+1 evaluations with binomial
/// weights. The step parameter on the chosen slot must equal 1.
cplx delta_power(const Appell1Params& p, TSlot slot, int r,
                 const SeriesOptions& opts = {});

/// The six printed d^r shapes: numerator-parameter shifts in x and y, the
/// joint-parameter shifts under the y -> xy (or x -> xy) substitution, and
/// the two lower-parameter shapes.
enum class PartialMode { XB1, YB2, XA, YA, XC, YC };

/// Two sides of an identity, evaluated independently.
struct SidePair {
    cplx lhs{}, rhs{};
    double residual() const; // |lhs-rhs| / (|lhs|+|rhs|+1)
};

SidePair partial_power_sides(const Appell1Params& p, PartialMode mode, int r,
                             const SeriesOptions& opts = {});
SidePair partial_power_sides(const Appell2Params& p, PartialMode mode, int r,
                             const SeriesOptions& opts = {});

/// Residual |LHS - RHS| / (|RHS| + 1) of the selected shape at order r,
/// with the LHS derivative taken exactly termwise.
double partial_power(const Appell1Params& p, PartialMode mode, int r,
                     const SeriesOptions& opts = {});
double partial_power(const Appell2Params& p, PartialMode mode, int r,
                     const SeriesOptions& opts = {});

SidePair diff_eq_sides_first(const Appell1Params& p, const SeriesOptions& opts = {});
SidePair diff_eq_sides_second(const Appell1Params& p, const SeriesOptions& opts = {});
SidePair diff_eq_sides_third(const Appell1Params& p, const SeriesOptions& opts = {});
SidePair diff_eq_sides_f2_theta(const Appell2Params& p, const SeriesOptions& opts = {});
SidePair diff_eq_sides_f2_phi(const Appell2Params& p, const SeriesOptions& opts = {});
SidePair diff_eq_sides_f2_euler(const Appell2Params& p, const SeriesOptions& opts = {});

/// Residuals |lhs - rhs| / (|lhs| + |rhs| + 1) of the three difference
/// equations obeyed by the first discrete Appell function (both step
/// parameters must be >= 1).
double diff_eq_residual_first(const Appell1Params& p, const SeriesOptions& opts = {});
double diff_eq_residual_second(const Appell1Params& p, const SeriesOptions& opts = {});
double diff_eq_residual_third(const Appell1Params& p, const SeriesOptions& opts = {});

/// Residuals of the difference-differential equations for the second form;
/// the last one is t-free and valid for k = 0 as well.
double diff_eq_residual_f2_theta(const Appell2Params& p, const SeriesOptions& opts = {});
double diff_eq_residual_f2_phi(const Appell2Params& p, const SeriesOptions& opts = {});
double diff_eq_residual_f2_euler(const Appell2Params& p, const SeriesOptions& opts = {});

} // namespace dappell
