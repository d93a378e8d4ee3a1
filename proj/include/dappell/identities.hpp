#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dappell/integrals.hpp"
#include "dappell/operators.hpp"

namespace dappell {

/// Every displayed formula family, one id each. F2-prefixed ids are the
/// second-form mirrors; the recursion/contiguous catalogues are indexed in
/// the printed order.
enum class IdentityFamily {
    Reduction3_3,
    Reduction3_4,
    Reduction3_5,
    Reduction3_6,
    Reduction7_1,
    DiffEq1_15,
    DiffEq1_16,
    DiffEq3rd,
    DiffEq7_6,
    DiffEq7_7,
    DiffEq7_8,
    DeltaFormula4_1,
    DeltaFormula4_2,
    ThetaPower,
    PhiPower,
    PartialXB1,
    PartialYB2,
    PartialXA,
    PartialYA,
    PartialXC,
    PartialYC,
    FiniteSum5_1,
    FiniteSum5_2,
    InfSum56,
    InfSumB1,
    InfSumB2,
    Recursion6_aPlus,
    Recursion6_aMinus,
    Recursion6_b1Plus,
    Recursion6_b1Minus,
    Recursion6_b2Plus,
    Recursion6_b2Minus,
    Recursion6_cMinus,
    ContiguousDiff8,
    RecursionDiff28,
    ContiguousDelta8,
    RecursionDelta28,
    F2ThetaPower,
    F2PhiPower,
    F2PartialXB1,
    F2PartialYB2,
    F2PartialXA,
    F2PartialYA,
    F2PartialXC,
    F2PartialYC,
    F2FiniteSum1,
    F2FiniteSum2,
    F2InfSumA,
    F2InfSumB1,
    F2InfSumB2,
    F2Recursion_aPlus,
    F2Recursion_aMinus,
    F2Recursion_b1Plus,
    F2Recursion_b1Minus,
    F2Recursion_cMinus,
    F2ContiguousDiff8,
    F2RecursionDiff28,
    F2ContiguousDelta8,
    F2RecursionDelta22,
    DegenerationPhi1First,
    DegenerationPhi2First,
    DegenerationPhi3First,
    DegenerationPhi1Second,
    DegenerationPhi2Second,
    DegenerationPhi3Second,
    Sec8SpecialCases,
};

const std::vector<IdentityFamily>& all_families();
std::string to_string(IdentityFamily f);
std::optional<IdentityFamily> family_from_string(const std::string& name);

/// Per-family default pass tolerance.
double family_tolerance(IdentityFamily f);

enum class Regime { Classical, Terminating };

std::string to_string(Regime r);

struct DrawPolicy {
    Regime regime = Regime::Terminating;
    int count = 50;
    std::uint64_t seed = 42;
    ExecPolicy exec = ExecPolicy::Parallel;
    /// per-family pass-tolerance overrides (defaults from family_tolerance)
    std::vector<std::pair<IdentityFamily, double>> tolerance_overrides;
};

/// One sampled parameter set; which members matter depends on the family.
struct ParamDraw {
    Appell1Params p1;
    Appell2Params p2;
    int r = 1;              // differential/difference order
    int s = 1;              // recursion depth
    cplx z;                 // resummation variable
    long relation_index = 1; // catalogue entry, 1-based printed order
    Regime regime = Regime::Terminating;
};

/// Deterministic draw for (family, index) under a seed; independent of which
/// other families run.
ParamDraw make_draw(IdentityFamily fam, Regime regime, std::uint64_t seed, long index);

enum class CheckStatus { Pass, Fail, Skipped };

struct Residual {
    IdentityFamily family;
    ParamDraw draw;
    cplx lhs{}, rhs{};
    double rel_residual = 0.0; // |lhs-rhs| / (|lhs|+|rhs|+1)
    CheckStatus status = CheckStatus::Pass;
    std::string reason; // skip/fail precondition id or error text
};

Residual check_identity(IdentityFamily fam, const ParamDraw& draw,
                        const SeriesOptions& opts = {});

struct FamilyReport {
    IdentityFamily id;
    long pass = 0, fail = 0, skip = 0;
    double worst_residual = 0.0;
};

struct Report {
    std::string suite;
    std::uint64_t seed = 0;
    Regime regime = Regime::Terminating;
    std::vector<FamilyReport> families;
    long wall_ms = 0;

    long total_failures() const;
    /// zero fails and, for a default full suite, no family that only skips
    bool all_pass() const;
};

bool operator==(const FamilyReport& a, const FamilyReport& b);
bool operator==(const Report& a, const Report& b);

/// Runs count draws per family (count per relation for catalogue families).
/// Deterministic given (seed, tolerances); draws are checked concurrently
/// and reduced in index order.
Report run_suite(const DrawPolicy& policy, const std::vector<IdentityFamily>& families,
                 const SeriesOptions& opts = {});

// ---------------------------------------------------------------------------
// relation catalogues
// ---------------------------------------------------------------------------

enum class RelationCatalogue {
    ContiguousDiff8,
    RecursionDiff28,
    ContiguousDelta8,
    RecursionDelta28,
    F2ContiguousDiff8,
    F2RecursionDiff28,
    F2ContiguousDelta8,
    F2RecursionDelta22,
};

long catalogue_size(RelationCatalogue c);
std::string to_string(RelationCatalogue c);

enum class ParamShift { None, APlus, AMinus, B1Plus, B1Minus, B2Plus, B2Minus, CPlus, CMinus };

Appell1Params apply_shift(const Appell1Params& p, ParamShift s);
Appell2Params apply_shift(const Appell2Params& p, ParamShift s);

struct RelationSide {
    OperatorExpr op;
    ParamShift shift = ParamShift::None;
};

/// lhs.op F(lhs.shift) = rhs.op F(rhs.shift)
struct Relation {
    RelationSide lhs, rhs;
};

/// The printed relation at the given 1-based index, with coefficients taken
/// from the draw's parameters (the step parameters enter the Theta images).
Relation enumerate_relation(RelationCatalogue c, long index, const Appell1Params& p);
Relation enumerate_relation(RelationCatalogue c, long index, const Appell2Params& p);

/// Human-readable rendition of the printed relation, for audit listings.
std::string relation_description(RelationCatalogue c, long index);

} // namespace dappell
