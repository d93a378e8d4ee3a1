#include "dappell/identities.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>

namespace dappell {

namespace {

struct FamilyInfo {
    IdentityFamily id;
    const char* name;
    double tolerance;
};

// Suite defaults: 1e-10 for reductions and finite sums, 1e-9 for algebraic
// and operator families, 1e-8 for truncated infinite sums. Degenerations
// assert a rate window and Sec8 asserts bit equality, so both carry a zero
// tolerance on their hinge residuals.
constexpr double kTolReduction = 1e-10;
constexpr double kTolAlgebraic = 1e-9;
constexpr double kTolFiniteSum = 1e-10;
constexpr double kTolInfSum = 1e-8;

const FamilyInfo kFamilies[] = {
    {IdentityFamily::Reduction3_3, "Reduction3_3", kTolReduction},
    {IdentityFamily::Reduction3_4, "Reduction3_4", kTolReduction},
    {IdentityFamily::Reduction3_5, "Reduction3_5", kTolReduction},
    {IdentityFamily::Reduction3_6, "Reduction3_6", kTolReduction},
    {IdentityFamily::Reduction7_1, "Reduction7_1", kTolReduction},
    {IdentityFamily::DiffEq1_15, "DiffEq1_15", kTolAlgebraic},
    {IdentityFamily::DiffEq1_16, "DiffEq1_16", kTolAlgebraic},
    {IdentityFamily::DiffEq3rd, "DiffEq3rd", kTolAlgebraic},
    {IdentityFamily::DiffEq7_6, "DiffEq7_6", kTolAlgebraic},
    {IdentityFamily::DiffEq7_7, "DiffEq7_7", kTolAlgebraic},
    {IdentityFamily::DiffEq7_8, "DiffEq7_8", kTolAlgebraic},
    {IdentityFamily::DeltaFormula4_1, "DeltaFormula4_1", kTolAlgebraic},
    {IdentityFamily::DeltaFormula4_2, "DeltaFormula4_2", kTolAlgebraic},
    {IdentityFamily::ThetaPower, "ThetaPower", kTolAlgebraic},
    {IdentityFamily::PhiPower, "PhiPower", kTolAlgebraic},
    {IdentityFamily::PartialXB1, "PartialXB1", kTolAlgebraic},
    {IdentityFamily::PartialYB2, "PartialYB2", kTolAlgebraic},
    {IdentityFamily::PartialXA, "PartialXA", kTolAlgebraic},
    {IdentityFamily::PartialYA, "PartialYA", kTolAlgebraic},
    {IdentityFamily::PartialXC, "PartialXC", kTolAlgebraic},
    {IdentityFamily::PartialYC, "PartialYC", kTolAlgebraic},
    {IdentityFamily::FiniteSum5_1, "FiniteSum5_1", kTolFiniteSum},
    {IdentityFamily::FiniteSum5_2, "FiniteSum5_2", kTolFiniteSum},
    {IdentityFamily::InfSum56, "InfSum56", kTolInfSum},
    {IdentityFamily::InfSumB1, "InfSumB1", kTolInfSum},
    {IdentityFamily::InfSumB2, "InfSumB2", kTolInfSum},
    {IdentityFamily::Recursion6_aPlus, "Recursion6_aPlus", kTolAlgebraic},
    {IdentityFamily::Recursion6_aMinus, "Recursion6_aMinus", kTolAlgebraic},
    {IdentityFamily::Recursion6_b1Plus, "Recursion6_b1Plus", kTolAlgebraic},
    {IdentityFamily::Recursion6_b1Minus, "Recursion6_b1Minus", kTolAlgebraic},
    {IdentityFamily::Recursion6_b2Plus, "Recursion6_b2Plus", kTolAlgebraic},
    {IdentityFamily::Recursion6_b2Minus, "Recursion6_b2Minus", kTolAlgebraic},
    {IdentityFamily::Recursion6_cMinus, "Recursion6_cMinus", kTolAlgebraic},
    {IdentityFamily::ContiguousDiff8, "ContiguousDiff8", kTolAlgebraic},
    {IdentityFamily::RecursionDiff28, "RecursionDiff28", kTolAlgebraic},
    {IdentityFamily::ContiguousDelta8, "ContiguousDelta8", kTolAlgebraic},
    {IdentityFamily::RecursionDelta28, "RecursionDelta28", kTolAlgebraic},
    {IdentityFamily::F2ThetaPower, "F2ThetaPower", kTolAlgebraic},
    {IdentityFamily::F2PhiPower, "F2PhiPower", kTolAlgebraic},
    {IdentityFamily::F2PartialXB1, "F2PartialXB1", kTolAlgebraic},
    {IdentityFamily::F2PartialYB2, "F2PartialYB2", kTolAlgebraic},
    {IdentityFamily::F2PartialXA, "F2PartialXA", kTolAlgebraic},
    {IdentityFamily::F2PartialYA, "F2PartialYA", kTolAlgebraic},
    {IdentityFamily::F2PartialXC, "F2PartialXC", kTolAlgebraic},
    {IdentityFamily::F2PartialYC, "F2PartialYC", kTolAlgebraic},
    {IdentityFamily::F2FiniteSum1, "F2FiniteSum1", kTolFiniteSum},
    {IdentityFamily::F2FiniteSum2, "F2FiniteSum2", kTolFiniteSum},
    {IdentityFamily::F2InfSumA, "F2InfSumA", kTolInfSum},
    {IdentityFamily::F2InfSumB1, "F2InfSumB1", kTolInfSum},
    {IdentityFamily::F2InfSumB2, "F2InfSumB2", kTolInfSum},
    {IdentityFamily::F2Recursion_aPlus, "F2Recursion_aPlus", kTolAlgebraic},
    {IdentityFamily::F2Recursion_aMinus, "F2Recursion_aMinus", kTolAlgebraic},
    {IdentityFamily::F2Recursion_b1Plus, "F2Recursion_b1Plus", kTolAlgebraic},
    {IdentityFamily::F2Recursion_b1Minus, "F2Recursion_b1Minus", kTolAlgebraic},
    {IdentityFamily::F2Recursion_cMinus, "F2Recursion_cMinus", kTolAlgebraic},
    {IdentityFamily::F2ContiguousDiff8, "F2ContiguousDiff8", kTolAlgebraic},
    {IdentityFamily::F2RecursionDiff28, "F2RecursionDiff28", kTolAlgebraic},
    {IdentityFamily::F2ContiguousDelta8, "F2ContiguousDelta8", kTolAlgebraic},
    {IdentityFamily::F2RecursionDelta22, "F2RecursionDelta22", kTolAlgebraic},
    {IdentityFamily::DegenerationPhi1First, "DegenerationPhi1First", 0.0},
    {IdentityFamily::DegenerationPhi2First, "DegenerationPhi2First", 0.0},
    {IdentityFamily::DegenerationPhi3First, "DegenerationPhi3First", 0.0},
    {IdentityFamily::DegenerationPhi1Second, "DegenerationPhi1Second", 0.0},
    {IdentityFamily::DegenerationPhi2Second, "DegenerationPhi2Second", 0.0},
    {IdentityFamily::DegenerationPhi3Second, "DegenerationPhi3Second", 0.0},
    {IdentityFamily::Sec8SpecialCases, "Sec8SpecialCases", 0.0},
};

const FamilyInfo& info(IdentityFamily f)
{
    for (const FamilyInfo& fi : kFamilies)
        if (fi.id == f)
            return fi;
    throw DomainError("unknown identity family");
}

} // namespace

const std::vector<IdentityFamily>& all_families()
{
    static const std::vector<IdentityFamily> v = [] {
        std::vector<IdentityFamily> out;
        for (const FamilyInfo& fi : kFamilies)
            out.push_back(fi.id);
        return out;
    }();
    return v;
}

std::string to_string(IdentityFamily f)
{
    return info(f).name;
}

std::optional<IdentityFamily> family_from_string(const std::string& name)
{
    for (const FamilyInfo& fi : kFamilies)
        if (name == fi.name)
            return fi.id;
    return std::nullopt;
}

double family_tolerance(IdentityFamily f)
{
    return info(f).tolerance;
}

std::string to_string(Regime r)
{
    return r == Regime::Classical ? "classical" : "terminating";
}

// ---------------------------------------------------------------------------
// deterministic draws
// ---------------------------------------------------------------------------

namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// small deterministic generator; one instance per (seed, family, index)
struct DrawRng {
    std::uint64_t state;
    double uniform()
    {
        state = splitmix64(state);
        return static_cast<double>(state >> 11) * 0x1.0p-53;
    }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    long integer(long lo, long hi) // inclusive
    {
        const long span = hi - lo + 1;
        return lo + static_cast<long>(uniform() * static_cast<double>(span)) % span;
    }
    cplx box(double re_lo, double re_hi, double im_max)
    {
        const double re = uniform(re_lo, re_hi);
        const double im = uniform(-im_max, im_max);
        return {re, im};
    }
    cplx arg(double lo, double hi)
    {
        const double rr = uniform(lo, hi), th = uniform(0.0, 2.0 * M_PI);
        return {rr * std::cos(th), rr * std::sin(th)};
    }
};

bool c_shift_ok(cplx c, int down_shifts)
{
    // keep c - j clear of nonpositive integers for every shift the harness uses
    for (int j = 0; j <= down_shifts; ++j) {
        const cplx z = c - static_cast<double>(j);
        if (std::abs(z.imag()) < 0.1 &&
            std::abs(z.real() - std::round(z.real())) < 0.1 && z.real() < 0.6)
            return false;
    }
    return true;
}

} // namespace

ParamDraw make_draw(IdentityFamily fam, Regime regime, std::uint64_t seed, long index)
{
    DrawRng rng{splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(fam) + 1) ^
                           splitmix64(static_cast<std::uint64_t>(index) * 0x51ull + 7))};
    ParamDraw d;
    d.regime = regime;

    const bool terminating = regime == Regime::Terminating;

    Appell1Params& p = d.p1;
    p.a = rng.box(0.5, 3.0, 1.0);
    p.b1 = rng.box(0.5, 3.0, 1.0);
    p.b2 = rng.box(0.5, 3.0, 1.0);
    do {
        p.c = rng.box(1.5, 4.0, 1.0);
    } while (!c_shift_ok(p.c, 4));
    if (terminating) {
        p.k1 = rng.integer(1, 3);
        p.k2 = rng.integer(1, 3);
        p.t1 = static_cast<double>(3 * p.k1 + rng.integer(0, 4));
        p.t2 = static_cast<double>(3 * p.k2 + rng.integer(0, 4));
    } else {
        p.k1 = p.k2 = 0;
        p.t1 = rng.box(-1.5, 1.5, 1.0);
        p.t2 = rng.box(-1.5, 1.5, 1.0);
    }
    p.x = rng.arg(0.05, 0.35);
    p.y = rng.arg(0.05, 0.35);

    Appell2Params& p2 = d.p2;
    p2.a = rng.box(0.5, 3.0, 1.0);
    p2.b1 = rng.box(0.5, 3.0, 1.0);
    p2.b2 = rng.box(0.5, 3.0, 1.0);
    do {
        p2.c = rng.box(1.5, 4.0, 1.0);
    } while (!c_shift_ok(p2.c, 4));
    if (terminating) {
        p2.k = rng.integer(1, 3);
        p2.t = static_cast<double>(3 * p2.k + rng.integer(0, 4));
    } else {
        p2.k = 0;
        p2.t = rng.box(-1.5, 1.5, 1.0);
    }
    p2.x = rng.arg(0.05, 0.35);
    p2.y = rng.arg(0.05, 0.35);

    d.r = static_cast<int>(rng.integer(1, 3));
    d.s = static_cast<int>(rng.integer(1, 3));
    d.z = rng.arg(0.05, 0.3);
    d.relation_index = 1;

    // family pins
    switch (fam) {
    case IdentityFamily::Reduction3_3:
        p.k1 = p.k2 = 0;
        break;
    case IdentityFamily::Reduction3_4:
        p.k1 = 1;
        p.k2 = 0;
        p.t1 = static_cast<double>(rng.integer(2, 7));
        break;
    case IdentityFamily::Reduction3_5:
        p.k1 = 0;
        p.k2 = 1;
        p.t2 = static_cast<double>(rng.integer(2, 7));
        break;
    case IdentityFamily::Reduction3_6:
        p.k1 = p.k2 = 1;
        p.t1 = static_cast<double>(rng.integer(2, 7));
        p.t2 = static_cast<double>(rng.integer(2, 7));
        break;
    case IdentityFamily::Reduction7_1:
        p2.k = 1;
        p2.t = static_cast<double>(rng.integer(2, 7));
        break;
    case IdentityFamily::DeltaFormula4_1:
        p.k1 = 1;
        p.t1 = static_cast<double>(3 + rng.integer(0, 4));
        break;
    case IdentityFamily::DeltaFormula4_2:
        p.k2 = 1;
        p.t2 = static_cast<double>(3 + rng.integer(0, 4));
        break;
    case IdentityFamily::DegenerationPhi1First:
    case IdentityFamily::DegenerationPhi2First:
    case IdentityFamily::DegenerationPhi3First:
    case IdentityFamily::DegenerationPhi1Second:
    case IdentityFamily::DegenerationPhi2Second:
    case IdentityFamily::DegenerationPhi3Second:
        // The halving-ratio window presumes the O(epsilon) term dominates at
        // epsilon = 1e-1. Small arguments and a unit step keep the series
        // support low-order, so the linear coefficient cannot be swamped (or
        // cancelled) by the quadratic one.
        p.x = rng.arg(0.05, 0.15);
        p.y = rng.arg(0.05, 0.12);
        p2.x = rng.arg(0.05, 0.15);
        p2.y = rng.arg(0.05, 0.12);
        p.a = rng.box(0.5, 2.0, 0.5);
        p.b1 = rng.box(0.5, 2.0, 0.5);
        p.b2 = rng.box(0.5, 2.0, 0.5);
        p2.a = rng.box(0.5, 2.0, 0.5);
        p2.b1 = rng.box(0.5, 2.0, 0.5);
        p2.b2 = rng.box(0.5, 2.0, 0.5);
        if (terminating) {
            p.k1 = p.k2 = 1;
            p2.k = 1;
            p.t1 = static_cast<double>(3 + rng.integer(0, 1));
            p.t2 = static_cast<double>(3 + rng.integer(0, 1));
            p2.t = static_cast<double>(3 + rng.integer(0, 1));
        }
        break;
    default:
        break;
    }
    return d;
}

// ---------------------------------------------------------------------------
// relation catalogues
// ---------------------------------------------------------------------------

long catalogue_size(RelationCatalogue c)
{
    switch (c) {
    case RelationCatalogue::ContiguousDiff8:
    case RelationCatalogue::ContiguousDelta8:
    case RelationCatalogue::F2ContiguousDiff8:
    case RelationCatalogue::F2ContiguousDelta8:
        return 8;
    case RelationCatalogue::RecursionDiff28:
    case RelationCatalogue::RecursionDelta28:
    case RelationCatalogue::F2RecursionDiff28:
        return 28;
    case RelationCatalogue::F2RecursionDelta22:
        return 22;
    }
    return 0;
}

std::string to_string(RelationCatalogue c)
{
    switch (c) {
    case RelationCatalogue::ContiguousDiff8: return "ContiguousDiff8";
    case RelationCatalogue::RecursionDiff28: return "RecursionDiff28";
    case RelationCatalogue::ContiguousDelta8: return "ContiguousDelta8";
    case RelationCatalogue::RecursionDelta28: return "RecursionDelta28";
    case RelationCatalogue::F2ContiguousDiff8: return "F2ContiguousDiff8";
    case RelationCatalogue::F2RecursionDiff28: return "F2RecursionDiff28";
    case RelationCatalogue::F2ContiguousDelta8: return "F2ContiguousDelta8";
    case RelationCatalogue::F2RecursionDelta22: return "F2RecursionDelta22";
    }
    return "unknown";
}

Appell1Params apply_shift(const Appell1Params& p, ParamShift s)
{
    Appell1Params q = p;
    switch (s) {
    case ParamShift::None: break;
    case ParamShift::APlus: q.a += 1.0; break;
    case ParamShift::AMinus: q.a -= 1.0; break;
    case ParamShift::B1Plus: q.b1 += 1.0; break;
    case ParamShift::B1Minus: q.b1 -= 1.0; break;
    case ParamShift::B2Plus: q.b2 += 1.0; break;
    case ParamShift::B2Minus: q.b2 -= 1.0; break;
    case ParamShift::CPlus: q.c += 1.0; break;
    case ParamShift::CMinus: q.c -= 1.0; break;
    }
    return q;
}

Appell2Params apply_shift(const Appell2Params& p, ParamShift s)
{
    Appell2Params q = p;
    switch (s) {
    case ParamShift::None: break;
    case ParamShift::APlus: q.a += 1.0; break;
    case ParamShift::AMinus: q.a -= 1.0; break;
    case ParamShift::B1Plus: q.b1 += 1.0; break;
    case ParamShift::B1Minus: q.b1 -= 1.0; break;
    case ParamShift::B2Plus: q.b2 += 1.0; break;
    case ParamShift::B2Minus: q.b2 -= 1.0; break;
    case ParamShift::CPlus: q.c += 1.0; break;
    case ParamShift::CMinus: q.c -= 1.0; break;
    }
    return q;
}

namespace {

// one printed contiguous relation: P F(shift) = Q F
struct BaseRelation {
    OperatorFactor p_op;
    OperatorFactor q_op;
    ParamShift shift;
    std::string p_text, q_text, shift_text;
};

// operator vocabularies of the four base-relation sets
enum class AtomSet { EulerF1, LatticeF1, EulerF2, MixedF2 };

std::vector<OperatorTerm> joint_terms(AtomSet set, const Appell1Params* p1,
                                      const Appell2Params* p2)
{
    switch (set) {
    case AtomSet::EulerF1:
    case AtomSet::EulerF2:
        return {{1.0, OperatorAtom::ThetaX}, {1.0, OperatorAtom::PhiY}};
    case AtomSet::LatticeF1:
        return {{cplx(1.0) / static_cast<double>(p1->k1), OperatorAtom::BigThetaT1},
                {cplx(1.0) / static_cast<double>(p1->k2), OperatorAtom::BigThetaT2}};
    case AtomSet::MixedF2:
        return {{cplx(1.0) / static_cast<double>(p2->k), OperatorAtom::BigThetaT}};
    }
    return {};
}

std::vector<OperatorTerm> x_terms(AtomSet set, const Appell1Params* p1)
{
    // the second form keeps the Euler operator on its b1/b2 relations
    if (set == AtomSet::LatticeF1)
        return {{cplx(1.0) / static_cast<double>(p1->k1), OperatorAtom::BigThetaT1}};
    return {{1.0, OperatorAtom::ThetaX}};
}

std::vector<OperatorTerm> y_terms(AtomSet set, const Appell1Params* p1)
{
    if (set == AtomSet::LatticeF1)
        return {{cplx(1.0) / static_cast<double>(p1->k2), OperatorAtom::BigThetaT2}};
    return {{1.0, OperatorAtom::PhiY}};
}

const char* joint_text(AtomSet set)
{
    switch (set) {
    case AtomSet::EulerF1:
    case AtomSet::EulerF2: return "th+ph";
    case AtomSet::LatticeF1: return "Th1/k1+Th2/k2";
    case AtomSet::MixedF2: return "Th/k";
    }
    return "";
}

const char* x_text(AtomSet set)
{
    return set == AtomSet::LatticeF1 ? "Th1/k1" : "th";
}

const char* y_text(AtomSet set)
{
    return set == AtomSet::LatticeF1 ? "Th2/k2" : "ph";
}

// the eight printed relations, in order: a+1, a-1, b1+1, b1-1, b2+1, b2-1,
// c-1, c+1
std::vector<BaseRelation> base_relations(AtomSet set, const Appell1Params* p1,
                                         const Appell2Params* p2)
{
    const cplx a = p1 ? p1->a : p2->a;
    const cplx b1 = p1 ? p1->b1 : p2->b1;
    const cplx b2 = p1 ? p1->b2 : p2->b2;
    const cplx c = p1 ? p1->c : p2->c;
    const auto J = joint_terms(set, p1, p2);
    const auto X = x_terms(set, p1);
    const auto Y = y_terms(set, p1);
    const std::string j = joint_text(set), xs = x_text(set), ys = y_text(set);

    std::vector<BaseRelation> rel;
    rel.push_back({make_factor(a), make_factor(a, J), ParamShift::APlus,
                   "a", "(a+" + j + ")", "a+1"});
    rel.push_back({make_factor(a - 1.0, J), make_factor(a - 1.0), ParamShift::AMinus,
                   "(a+" + j + "-1)", "(a-1)", "a-1"});
    rel.push_back({make_factor(b1), make_factor(b1, X), ParamShift::B1Plus,
                   "b1", "(b1+" + xs + ")", "b1+1"});
    rel.push_back({make_factor(b1 - 1.0, X), make_factor(b1 - 1.0), ParamShift::B1Minus,
                   "(b1+" + xs + "-1)", "(b1-1)", "b1-1"});
    rel.push_back({make_factor(b2), make_factor(b2, Y), ParamShift::B2Plus,
                   "b2", "(b2+" + ys + ")", "b2+1"});
    rel.push_back({make_factor(b2 - 1.0, Y), make_factor(b2 - 1.0), ParamShift::B2Minus,
                   "(b2+" + ys + "-1)", "(b2-1)", "b2-1"});
    rel.push_back({make_factor(c - 1.0), make_factor(c - 1.0, J), ParamShift::CMinus,
                   "(c-1)", "(c+" + j + "-1)", "c-1"});
    rel.push_back({make_factor(c, J), make_factor(c), ParamShift::CPlus,
                   "(c+" + j + ")", "c", "c+1"});
    return rel;
}

// printed order of the 28 pairings (1-based indices into the base list)
constexpr int kPairs28[28][2] = {
    {1, 2}, {1, 4}, {1, 6}, {1, 8}, {1, 3}, {1, 5}, {1, 7},
    {2, 3}, {2, 5}, {2, 7}, {2, 4}, {2, 6}, {2, 8},
    {3, 4}, {3, 5}, {3, 6}, {3, 7}, {3, 8},
    {5, 4}, {5, 6}, {5, 7}, {5, 8},
    {4, 6}, {4, 7}, {4, 8},
    {6, 7}, {6, 8},
    {7, 8},
};

// the second form's lattice list omits the six pure-Euler pairings already
// present in its differential catalogue
constexpr int kPairs22[22][2] = {
    {1, 2}, {1, 4}, {1, 6}, {1, 8}, {1, 3}, {1, 5}, {1, 7},
    {2, 3}, {2, 5}, {2, 7}, {2, 4}, {2, 6}, {2, 8},
    {3, 7}, {3, 8},
    {5, 7}, {5, 8},
    {4, 7}, {4, 8},
    {6, 7}, {6, 8},
    {7, 8},
};

AtomSet catalogue_atoms(RelationCatalogue c)
{
    switch (c) {
    case RelationCatalogue::ContiguousDiff8:
    case RelationCatalogue::RecursionDiff28:
        return AtomSet::EulerF1;
    case RelationCatalogue::ContiguousDelta8:
    case RelationCatalogue::RecursionDelta28:
        return AtomSet::LatticeF1;
    case RelationCatalogue::F2ContiguousDiff8:
    case RelationCatalogue::F2RecursionDiff28:
        return AtomSet::EulerF2;
    case RelationCatalogue::F2ContiguousDelta8:
    case RelationCatalogue::F2RecursionDelta22:
        return AtomSet::MixedF2;
    }
    return AtomSet::EulerF1;
}

bool is_contiguous_catalogue(RelationCatalogue c)
{
    switch (c) {
    case RelationCatalogue::ContiguousDiff8:
    case RelationCatalogue::ContiguousDelta8:
    case RelationCatalogue::F2ContiguousDiff8:
    case RelationCatalogue::F2ContiguousDelta8:
        return true;
    default:
        return false;
    }
}

Relation build_relation(RelationCatalogue c, long index, const Appell1Params* p1,
                        const Appell2Params* p2)
{
    if (index < 1 || index > catalogue_size(c))
        throw DomainError("enumerate_relation: index out of range");
    const auto base = base_relations(catalogue_atoms(c), p1, p2);
    if (is_contiguous_catalogue(c)) {
        const BaseRelation& b = base[static_cast<size_t>(index - 1)];
        Relation r;
        r.lhs.op *= b.p_op;
        r.lhs.shift = b.shift;
        r.rhs.op *= b.q_op;
        r.rhs.shift = ParamShift::None;
        return r;
    }
    const bool is22 = c == RelationCatalogue::F2RecursionDelta22;
    const int* pair = is22 ? kPairs22[index - 1] : kPairs28[index - 1];
    const BaseRelation& bi = base[static_cast<size_t>(pair[0] - 1)];
    const BaseRelation& bj = base[static_cast<size_t>(pair[1] - 1)];
    // Q_j P_i F(s_i) = Q_i P_j F(s_j): both sides reduce to Q_j Q_i F
    Relation r;
    r.lhs.op *= bj.q_op;
    r.lhs.op *= bi.p_op;
    r.lhs.shift = bi.shift;
    r.rhs.op *= bi.q_op;
    r.rhs.op *= bj.p_op;
    r.rhs.shift = bj.shift;
    return r;
}

} // namespace

Relation enumerate_relation(RelationCatalogue c, long index, const Appell1Params& p)
{
    switch (c) {
    case RelationCatalogue::ContiguousDiff8:
    case RelationCatalogue::RecursionDiff28:
    case RelationCatalogue::ContiguousDelta8:
    case RelationCatalogue::RecursionDelta28:
        return build_relation(c, index, &p, nullptr);
    default:
        throw OperatorMismatchError(
            "enumerate_relation: catalogue belongs to the second form");
    }
}

Relation enumerate_relation(RelationCatalogue c, long index, const Appell2Params& p)
{
    switch (c) {
    case RelationCatalogue::F2ContiguousDiff8:
    case RelationCatalogue::F2RecursionDiff28:
    case RelationCatalogue::F2ContiguousDelta8:
    case RelationCatalogue::F2RecursionDelta22:
        return build_relation(c, index, nullptr, &p);
    default:
        throw OperatorMismatchError(
            "enumerate_relation: catalogue belongs to the first form");
    }
}

std::string relation_description(RelationCatalogue c, long index)
{
    if (index < 1 || index > catalogue_size(c))
        throw DomainError("relation_description: index out of range");
    Appell1Params sym1;
    sym1.k1 = sym1.k2 = 1;
    Appell2Params sym2;
    sym2.k = 1;
    const AtomSet set = catalogue_atoms(c);
    const bool f2 = set == AtomSet::EulerF2 || set == AtomSet::MixedF2;
    const auto base =
        base_relations(set, f2 ? nullptr : &sym1, f2 ? &sym2 : nullptr);
    const std::string fn = f2 ? "F2" : "F1";
    if (is_contiguous_catalogue(c)) {
        const BaseRelation& b = base[static_cast<size_t>(index - 1)];
        return b.p_text + "*" + fn + "(" + b.shift_text + ") = " + b.q_text + "*" + fn;
    }
    const bool is22 = c == RelationCatalogue::F2RecursionDelta22;
    const int* pair = is22 ? kPairs22[index - 1] : kPairs28[index - 1];
    const BaseRelation& bi = base[static_cast<size_t>(pair[0] - 1)];
    const BaseRelation& bj = base[static_cast<size_t>(pair[1] - 1)];
    return bj.q_text + "*" + bi.p_text + "*" + fn + "(" + bi.shift_text + ") = " +
           bi.q_text + "*" + bj.p_text + "*" + fn + "(" + bj.shift_text + ")";
}

// ---------------------------------------------------------------------------
// identity checks
// ---------------------------------------------------------------------------

namespace {

double harness_residual(cplx lhs, cplx rhs)
{
    return std::abs(lhs - rhs) / (std::abs(lhs) + std::abs(rhs) + 1.0);
}

Residual from_sides(IdentityFamily fam, const ParamDraw& d, cplx lhs, cplx rhs)
{
    Residual r;
    r.family = fam;
    r.draw = d;
    r.lhs = lhs;
    r.rhs = rhs;
    r.rel_residual = harness_residual(lhs, rhs);
    r.status =
        r.rel_residual <= family_tolerance(fam) ? CheckStatus::Pass : CheckStatus::Fail;
    return r;
}

Residual skipped(IdentityFamily fam, const ParamDraw& d, std::string reason)
{
    Residual r;
    r.family = fam;
    r.draw = d;
    r.status = CheckStatus::Skipped;
    r.reason = std::move(reason);
    return r;
}

cplx checked(const EvalResult& r, const char* what)
{
    if (!r.quantitative())
        throw DomainError(std::string("non-quantitative sub-evaluation: ") + what);
    return r.value;
}

// finite-sum right sides of the printed summation theorems
cplx finite_sum_rhs_x(const Appell1Params& p, int r, const SeriesOptions& opts)
{
    cplx acc = 0.0;
    for (int s = 0; s <= r; ++s) {
        Appell1Params q = p;
        q.a += s;
        q.b1 += s;
        q.c += s;
        q.t1 -= static_cast<double>(s * p.k1);
        const double sign = (s * p.k1) % 2 == 0 ? 1.0 : -1.0;
        const cplx coef = binomial(r, s) * pochhammer(p.a, s) * sign *
                          pochhammer(-p.t1, s * p.k1) / pochhammer(p.c, s) *
                          std::pow(p.x, s);
        acc += coef * checked(eval_f1_d1(q, opts), "finite-sum term");
    }
    return acc;
}

cplx finite_sum_rhs_y(const Appell1Params& p, int r, const SeriesOptions& opts)
{
    cplx acc = 0.0;
    for (int s = 0; s <= r; ++s) {
        Appell1Params q = p;
        q.a += s;
        q.b2 += s;
        q.c += s;
        q.t2 -= static_cast<double>(s * p.k2);
        const double sign = (s * p.k2) % 2 == 0 ? 1.0 : -1.0;
        const cplx coef = binomial(r, s) * pochhammer(p.a, s) * sign *
                          pochhammer(-p.t2, s * p.k2) / pochhammer(p.c, s) *
                          std::pow(p.y, s);
        acc += coef * checked(eval_f1_d1(q, opts), "finite-sum term");
    }
    return acc;
}

cplx f2_finite_sum_rhs(const Appell2Params& p, int r, bool on_x,
                       const SeriesOptions& opts)
{
    cplx acc = 0.0;
    for (int s = 0; s <= r; ++s) {
        Appell2Params q = p;
        q.a += s;
        (on_x ? q.b1 : q.b2) += static_cast<double>(s);
        q.c += s;
        q.t -= static_cast<double>(s * p.k);
        const double sign = (s * p.k) % 2 == 0 ? 1.0 : -1.0;
        const cplx coef = binomial(r, s) * pochhammer(p.a, s) * sign *
                          pochhammer(-p.t, s * p.k) / pochhammer(p.c, s) *
                          std::pow(on_x ? p.x : p.y, s);
        acc += coef * checked(eval_f1_d2(q, opts), "finite-sum term");
    }
    return acc;
}

// truncated outer resummation: sum_r coef(r) z^r F(shifted by r)
template <typename Term>
cplx outer_sum(cplx z, const Term& term, const SeriesOptions& opts)
{
    KahanAccumulator acc;
    int small = 0;
    cplx zr = 1.0;
    for (int r = 0; r < 400; ++r) {
        const cplx t = term(r) * zr;
        acc.add(t);
        zr *= z;
        if (std::abs(t) <= (opts.rel_tol * std::abs(acc.value()) + opts.abs_tol) /
                               opts.consecutive_small) {
            if (++small >= opts.consecutive_small)
                return acc.value();
        } else {
            small = 0;
        }
    }
    throw DomainError("outer resummation did not settle within 400 terms");
}

void shift_t(Appell1Params& p, bool on_x, double amount)
{
    (on_x ? p.t1 : p.t2) -= amount;
}

void shift_t(Appell2Params& p, bool, double amount)
{
    p.t -= amount;
}

// theta/phi power formulas, both families
template <typename Params, typename Eval, typename WeightedEval>
SidePair power_formula_sides(const Params& p, int r, bool on_x, long kslot, cplx t_slot,
                             const Eval& eval, const WeightedEval& weval)
{
    TermWeight falling;
    for (int j = 0; j < r; ++j)
        falling.factors.push_back(
            {cplx(-j), on_x ? cplx(1.0) : cplx(0.0), on_x ? cplx(0.0) : cplx(1.0)});
    const cplx lhs = weval(p, falling);

    Params sh = p;
    sh.a += r;
    (on_x ? sh.b1 : sh.b2) += static_cast<double>(r);
    sh.c += r;
    shift_t(sh, on_x, static_cast<double>(r * kslot));
    const double sign = (r * kslot) % 2 == 0 ? 1.0 : -1.0;
    const cplx pre = sign * pochhammer(p.a, r) * pochhammer(on_x ? p.b1 : p.b2, r) *
                     pochhammer(-t_slot, r * kslot) * std::pow(on_x ? p.x : p.y, r) /
                     pochhammer(p.c, r);
    return {lhs, pre * eval(sh)};
}

cplx relation_side_value(const RelationSide& side, const Appell1Params& p,
                         const SeriesOptions& opts)
{
    return checked(apply_weighted(apply_shift(p, side.shift), side.op, opts),
                   "relation side");
}

cplx relation_side_value(const RelationSide& side, const Appell2Params& p,
                         const SeriesOptions& opts)
{
    return checked(apply_weighted(apply_shift(p, side.shift), side.op, opts),
                   "relation side");
}

// epsilon-halving rate window for the degeneration probes
Residual degeneration_check(IdentityFamily fam, const ParamDraw& d, HumbertFamily hf,
                            bool second_form, const SeriesOptions& opts)
{
    const HumbertForm form = second_form ? HumbertForm::Second : HumbertForm::First;
    double err[3];
    const double eps[3] = {1e-1, 5e-2, 2.5e-2};
    for (int i = 0; i < 3; ++i)
        err[i] = second_form ? degeneration_error({eps[i], {hf, form}}, d.p2, opts)
                             : degeneration_error({eps[i], {hf, form}}, d.p1, opts);
    if (err[1] == 0.0 || err[2] == 0.0)
        return skipped(fam, d, "degenerate-zero-error");
    const double r1 = err[0] / err[1], r2 = err[1] / err[2];
    auto hinge = [](double v) {
        if (v < 1.5)
            return 1.5 - v;
        if (v > 2.5)
            return v - 2.5;
        return 0.0;
    };
    Residual r;
    r.family = fam;
    r.draw = d;
    r.lhs = r1;
    r.rhs = r2;
    r.rel_residual = std::max(hinge(r1), hinge(r2));
    r.status = r.rel_residual <= 0.0 ? CheckStatus::Pass : CheckStatus::Fail;
    if (r.status == CheckStatus::Fail)
        r.reason = "halving ratio outside [1.5, 2.5]";
    return r;
}

bool requires_lattice(IdentityFamily f)
{
    switch (f) {
    case IdentityFamily::Reduction3_4:
    case IdentityFamily::Reduction3_5:
    case IdentityFamily::Reduction3_6:
    case IdentityFamily::Reduction7_1:
    case IdentityFamily::DiffEq1_15:
    case IdentityFamily::DiffEq1_16:
    case IdentityFamily::DiffEq3rd:
    case IdentityFamily::DiffEq7_6:
    case IdentityFamily::DiffEq7_7:
    case IdentityFamily::DeltaFormula4_1:
    case IdentityFamily::DeltaFormula4_2:
    case IdentityFamily::ContiguousDelta8:
    case IdentityFamily::RecursionDelta28:
    case IdentityFamily::F2ContiguousDelta8:
    case IdentityFamily::F2RecursionDelta22:
        return true;
    default:
        return false;
    }
}

} // namespace

Residual check_identity(IdentityFamily fam, const ParamDraw& d, const SeriesOptions& opts)
{
    if (d.regime == Regime::Classical && requires_lattice(fam))
        return skipped(fam, d, "requires-terminating-regime");

    try {
        switch (fam) {
        case IdentityFamily::Reduction3_3: {
            Appell1Params p = d.p1;
            p.k1 = p.k2 = 0;
            const cplx lhs = checked(eval_f1_d1(p, opts), "F1d1");
            const cplx rhs =
                checked(eval_classical_f1(p.a, p.b1, p.b2, p.c, p.x, p.y, opts), "F1");
            return from_sides(fam, d, lhs, rhs);
        }
        case IdentityFamily::Reduction3_4: {
            const Appell1Params& p = d.p1;
            KdFSpec s;
            s.upper_joint = {p.a};
            s.upper_x = {p.b1, -p.t1};
            s.upper_y = {p.b2};
            s.lower_joint = {p.c};
            const cplx lhs = checked(eval_f1_d1(p, opts), "F1d1");
            const cplx rhs = checked(eval_kdf(s, -p.x, p.y, opts), "KdF");
            return from_sides(fam, d, lhs, rhs);
        }
        case IdentityFamily::Reduction3_5: {
            const Appell1Params& p = d.p1;
            KdFSpec s;
            s.upper_joint = {p.a};
            s.upper_x = {p.b1};
            s.upper_y = {p.b2, -p.t2};
            s.lower_joint = {p.c};
            const cplx lhs = checked(eval_f1_d1(p, opts), "F1d1");
            const cplx rhs = checked(eval_kdf(s, p.x, -p.y, opts), "KdF");
            return from_sides(fam, d, lhs, rhs);
        }
        case IdentityFamily::Reduction3_6: {
            const Appell1Params& p = d.p1;
            KdFSpec s;
            s.upper_joint = {p.a};
            s.upper_x = {p.b1, -p.t1};
            s.upper_y = {p.b2, -p.t2};
            s.lower_joint = {p.c};
            const cplx lhs = checked(eval_f1_d1(p, opts), "F1d1");
            const cplx rhs = checked(eval_kdf(s, -p.x, -p.y, opts), "KdF");
            return from_sides(fam, d, lhs, rhs);
        }
        case IdentityFamily::Reduction7_1: {
            const Appell2Params& p = d.p2;
            KdFSpec s;
            s.upper_joint = {p.a, -p.t};
            s.upper_x = {p.b1};
            s.upper_y = {p.b2};
            s.lower_joint = {p.c};
            const cplx lhs = checked(eval_f1_d2(p, opts), "F1d2");
            const cplx rhs = checked(eval_kdf(s, -p.x, -p.y, opts), "KdF");
            return from_sides(fam, d, lhs, rhs);
        }
        case IdentityFamily::DiffEq1_15: {
            const SidePair s = diff_eq_sides_first(d.p1, opts);
            return from_sides(fam, d, s.lhs, s.rhs);
        }
        case IdentityFamily::DiffEq1_16: {
            const SidePair s = diff_eq_sides_second(d.p1, opts);
            return from_sides(fam, d, s.lhs, s.rhs);
        }
        case IdentityFamily::DiffEq3rd: {
            const SidePair s = diff_eq_sides_third(d.p1, opts);
            return from_sides(fam, d, s.lhs, s.rhs);
        }
        case IdentityFamily::DiffEq7_6: {
            const SidePair s = diff_eq_sides_f2_theta(d.p2, opts);
            return from_sides(fam, d, s.lhs, s.rhs);
        }
        case IdentityFamily::DiffEq7_7: {
            const SidePair s = diff_eq_sides_f2_phi(d.p2, opts);
            return from_sides(fam, d, s.lhs, s.rhs);
        }
        case IdentityFamily::DiffEq7_8: {
            const SidePair s = diff_eq_sides_f2_euler(d.p2, opts);
            return from_sides(fam, d, s.lhs, s.rhs);
        }
        case IdentityFamily::DeltaFormula4_1: {
            Appell1Params p = d.p1;
            p.k1 = 1;
            const cplx lhs = delta_power(p, TSlot::T1, d.r, opts);
            Appell1Params sh = p;
            sh.a += d.r;
            sh.b1 += d.r;
            sh.c += d.r;
            const cplx pre = pochhammer(p.a, d.r) * pochhammer(p.b1, d.r) *
                             std::pow(p.x, d.r) / pochhammer(p.c, d.r);
            const cplx rhs = pre * checked(eval_f1_d1(sh, opts), "shifted F1d1");
            return from_sides(fam, d, lhs, rhs);
        }
        case IdentityFamily::DeltaFormula4_2: {
            Appell1Params p = d.p1;
            p.k2 = 1;
            const cplx lhs = delta_power(p, TSlot::T2, d.r, opts);
            Appell1Params sh = p;
            sh.a += d.r;
            sh.b2 += d.r;
            sh.c += d.r;
            const cplx pre = pochhammer(p.a, d.r) * pochhammer(p.b2, d.r) *
                             std::pow(p.y, d.r) / pochhammer(p.c, d.r);
            const cplx rhs = pre * checked(eval_f1_d1(sh, opts), "shifted F1d1");
            return from_sides(fam, d, lhs, rhs);
        }
        case IdentityFamily::ThetaPower:
        case IdentityFamily::PhiPower: {
            const bool on_x = fam == IdentityFamily::ThetaPower;
            const Appell1Params& p = d.p1;
            const SidePair s = power_formula_sides(
                p, d.r, on_x, on_x ? p.k1 : p.k2, on_x ? p.t1 : p.t2,
                [&](const Appell1Params& q) {
                    return checked(eval_f1_d1(q, opts), "F1d1");
                },
                [&](const Appell1Params& q, const TermWeight& w) {
                    return checked(eval_f1_d1_weighted(q, w, opts), "weighted F1d1");
                });
            return from_sides(fam, d, s.lhs, s.rhs);
        }
        case IdentityFamily::F2ThetaPower:
        case IdentityFamily::F2PhiPower: {
            const bool on_x = fam == IdentityFamily::F2ThetaPower;
            const Appell2Params& p = d.p2;
            const SidePair s = power_formula_sides(
                p, d.r, on_x, p.k, p.t,
                [&](const Appell2Params& q) {
                    return checked(eval_f1_d2(q, opts), "F1d2");
                },
                [&](const Appell2Params& q, const TermWeight& w) {
                    return checked(eval_f1_d2_weighted(q, w, opts), "weighted F1d2");
                });
            return from_sides(fam, d, s.lhs, s.rhs);
        }
        case IdentityFamily::PartialXB1:
        case IdentityFamily::PartialYB2:
        case IdentityFamily::PartialXA:
        case IdentityFamily::PartialYA:
        case IdentityFamily::PartialXC:
        case IdentityFamily::PartialYC: {
            PartialMode mode;
            switch (fam) {
            case IdentityFamily::PartialXB1: mode = PartialMode::XB1; break;
            case IdentityFamily::PartialYB2: mode = PartialMode::YB2; break;
            case IdentityFamily::PartialXA: mode = PartialMode::XA; break;
            case IdentityFamily::PartialYA: mode = PartialMode::YA; break;
            case IdentityFamily::PartialXC: mode = PartialMode::XC; break;
            default: mode = PartialMode::YC; break;
            }
            const SidePair s = partial_power_sides(d.p1, mode, d.r, opts);
            return from_sides(fam, d, s.lhs, s.rhs);
        }
        case IdentityFamily::F2PartialXB1:
        case IdentityFamily::F2PartialYB2:
        case IdentityFamily::F2PartialXA:
        case IdentityFamily::F2PartialYA:
        case IdentityFamily::F2PartialXC:
        case IdentityFamily::F2PartialYC: {
            PartialMode mode;
            switch (fam) {
            case IdentityFamily::F2PartialXB1: mode = PartialMode::XB1; break;
            case IdentityFamily::F2PartialYB2: mode = PartialMode::YB2; break;
            case IdentityFamily::F2PartialXA: mode = PartialMode::XA; break;
            case IdentityFamily::F2PartialYA: mode = PartialMode::YA; break;
            case IdentityFamily::F2PartialXC: mode = PartialMode::XC; break;
            default: mode = PartialMode::YC; break;
            }
            const SidePair s = partial_power_sides(d.p2, mode, d.r, opts);
            return from_sides(fam, d, s.lhs, s.rhs);
        }
        case IdentityFamily::FiniteSum5_1: {
            Appell1Params sh = d.p1;
            sh.b1 += d.r;
            const cplx lhs = checked(eval_f1_d1(sh, opts), "F1d1(b1+r)");
            return from_sides(fam, d, lhs, finite_sum_rhs_x(d.p1, d.r, opts));
        }
        case IdentityFamily::FiniteSum5_2: {
            Appell1Params sh = d.p1;
            sh.b2 += d.r;
            const cplx lhs = checked(eval_f1_d1(sh, opts), "F1d1(b2+r)");
            return from_sides(fam, d, lhs, finite_sum_rhs_y(d.p1, d.r, opts));
        }
        case IdentityFamily::F2FiniteSum1:
        case IdentityFamily::F2FiniteSum2: {
            const bool on_x = fam == IdentityFamily::F2FiniteSum1;
            Appell2Params sh = d.p2;
            (on_x ? sh.b1 : sh.b2) += static_cast<double>(d.r);
            const cplx lhs = checked(eval_f1_d2(sh, opts), "F1d2(b+r)");
            return from_sides(fam, d, lhs, f2_finite_sum_rhs(d.p2, d.r, on_x, opts));
        }
        case IdentityFamily::InfSum56: {
            const Appell1Params& p = d.p1;
            const cplx lhs = outer_sum(
                d.z,
                [&](int r) {
                    Appell1Params q = p;
                    q.a += r;
                    return pochhammer(p.a, r) / std::tgamma(r + 1.0) *
                           checked(eval_f1_d1(q, opts), "F1d1(a+r)");
                },
                opts);
            Appell1Params q = p;
            q.x = p.x / (1.0 - d.z);
            q.y = p.y / (1.0 - d.z);
            const cplx rhs =
                std::pow(1.0 - d.z, -p.a) * checked(eval_f1_d1(q, opts), "F1d1 scaled");
            return from_sides(fam, d, lhs, rhs);
        }
        case IdentityFamily::InfSumB1:
        case IdentityFamily::InfSumB2: {
            const bool on_x = fam == IdentityFamily::InfSumB1;
            const Appell1Params& p = d.p1;
            const cplx b = on_x ? p.b1 : p.b2;
            const cplx lhs = outer_sum(
                d.z,
                [&](int r) {
                    Appell1Params q = p;
                    (on_x ? q.b1 : q.b2) += static_cast<double>(r);
                    return pochhammer(b, r) / std::tgamma(r + 1.0) *
                           checked(eval_f1_d1(q, opts), "F1d1(b+r)");
                },
                opts);
            Appell1Params q = p;
            (on_x ? q.x : q.y) /= (1.0 - d.z);
            const cplx rhs =
                std::pow(1.0 - d.z, -b) * checked(eval_f1_d1(q, opts), "F1d1 scaled");
            return from_sides(fam, d, lhs, rhs);
        }
        case IdentityFamily::F2InfSumA: {
            const Appell2Params& p = d.p2;
            const cplx lhs = outer_sum(
                d.z,
                [&](int r) {
                    Appell2Params q = p;
                    q.a += r;
                    return pochhammer(p.a, r) / std::tgamma(r + 1.0) *
                           checked(eval_f1_d2(q, opts), "F1d2(a+r)");
                },
                opts);
            Appell2Params q = p;
            q.x = p.x / (1.0 - d.z);
            q.y = p.y / (1.0 - d.z);
            const cplx rhs =
                std::pow(1.0 - d.z, -p.a) * checked(eval_f1_d2(q, opts), "F1d2 scaled");
            return from_sides(fam, d, lhs, rhs);
        }
        case IdentityFamily::F2InfSumB1:
        case IdentityFamily::F2InfSumB2: {
            const bool on_x = fam == IdentityFamily::F2InfSumB1;
            const Appell2Params& p = d.p2;
            const cplx b = on_x ? p.b1 : p.b2;
            const cplx lhs = outer_sum(
                d.z,
                [&](int r) {
                    Appell2Params q = p;
                    (on_x ? q.b1 : q.b2) += static_cast<double>(r);
                    return pochhammer(b, r) / std::tgamma(r + 1.0) *
                           checked(eval_f1_d2(q, opts), "F1d2(b+r)");
                },
                opts);
            Appell2Params q = p;
            (on_x ? q.x : q.y) /= (1.0 - d.z);
            const cplx rhs =
                std::pow(1.0 - d.z, -b) * checked(eval_f1_d2(q, opts), "F1d2 scaled");
            return from_sides(fam, d, lhs, rhs);
        }
        case IdentityFamily::Recursion6_aPlus: {
            const Appell1Params& p = d.p1;
            Appell1Params up = p;
            up.a += d.s;
            const cplx lhs = checked(eval_f1_d1(up, opts), "F1d1(a+s)");
            cplx rhs = checked(eval_f1_d1(p, opts), "F1d1");
            const double s1 = p.k1 % 2 == 0 ? 1.0 : -1.0;
            const double s2 = p.k2 % 2 == 0 ? 1.0 : -1.0;
            const cplx cx = s1 * pochhammer(-p.t1, p.k1) * p.b1 * p.x / p.c;
            const cplx cy = s2 * pochhammer(-p.t2, p.k2) * p.b2 * p.y / p.c;
            for (int r = 1; r <= d.s; ++r) {
                Appell1Params qx = p;
                qx.a += r;
                qx.b1 += 1.0;
                qx.c += 1.0;
                qx.t1 -= static_cast<double>(p.k1);
                rhs += cx * checked(eval_f1_d1(qx, opts), "term");
                Appell1Params qy = p;
                qy.a += r;
                qy.b2 += 1.0;
                qy.c += 1.0;
                qy.t2 -= static_cast<double>(p.k2);
                rhs += cy * checked(eval_f1_d1(qy, opts), "term");
            }
            return from_sides(fam, d, lhs, rhs);
        }
        case IdentityFamily::Recursion6_aMinus: {
            const Appell1Params& p = d.p1;
            Appell1Params dn = p;
            dn.a -= d.s;
            const cplx lhs = checked(eval_f1_d1(dn, opts), "F1d1(a-s)");
            cplx rhs = checked(eval_f1_d1(p, opts), "F1d1");
            const double s1 = p.k1 % 2 == 0 ? 1.0 : -1.0;
            const double s2 = p.k2 % 2 == 0 ? 1.0 : -1.0;
            const cplx cx = s1 * pochhammer(-p.t1, p.k1) * p.b1 * p.x / p.c;
            const cplx cy = s2 * pochhammer(-p.t2, p.k2) * p.b2 * p.y / p.c;
            for (int r = 0; r <= d.s - 1; ++r) {
                Appell1Params qx = p;
                qx.a -= r;
                qx.b1 += 1.0;
                qx.c += 1.0;
                qx.t1 -= static_cast<double>(p.k1);
                rhs -= cx * checked(eval_f1_d1(qx, opts), "term");
                Appell1Params qy = p;
                qy.a -= r;
                qy.b2 += 1.0;
                qy.c += 1.0;
                qy.t2 -= static_cast<double>(p.k2);
                rhs -= cy * checked(eval_f1_d1(qy, opts), "term");
            }
            return from_sides(fam, d, lhs, rhs);
        }
        case IdentityFamily::Recursion6_b1Plus:
        case IdentityFamily::Recursion6_b2Plus: {
            const bool on_x = fam == IdentityFamily::Recursion6_b1Plus;
            const Appell1Params& p = d.p1;
            Appell1Params up = p;
            (on_x ? up.b1 : up.b2) += static_cast<double>(d.s);
            const cplx lhs = checked(eval_f1_d1(up, opts), "F1d1(b+s)");
            cplx rhs = checked(eval_f1_d1(p, opts), "F1d1");
            const long k = on_x ? p.k1 : p.k2;
            const cplx t = on_x ? p.t1 : p.t2;
            const double sg = k % 2 == 0 ? 1.0 : -1.0;
            const cplx coef = sg * pochhammer(-t, k) * p.a * (on_x ? p.x : p.y) / p.c;
            for (int r = 1; r <= d.s; ++r) {
                Appell1Params q = p;
                q.a += 1.0;
                (on_x ? q.b1 : q.b2) += static_cast<double>(r);
                q.c += 1.0;
                (on_x ? q.t1 : q.t2) -= static_cast<double>(k);
                rhs += coef * checked(eval_f1_d1(q, opts), "term");
            }
            return from_sides(fam, d, lhs, rhs);
        }
        case IdentityFamily::Recursion6_b1Minus:
        case IdentityFamily::Recursion6_b2Minus: {
            const bool on_x = fam == IdentityFamily::Recursion6_b1Minus;
            const Appell1Params& p = d.p1;
            Appell1Params dn = p;
            (on_x ? dn.b1 : dn.b2) -= static_cast<double>(d.s);
            const cplx lhs = checked(eval_f1_d1(dn, opts), "F1d1(b-s)");
            cplx rhs = checked(eval_f1_d1(p, opts), "F1d1");
            const long k = on_x ? p.k1 : p.k2;
            const cplx t = on_x ? p.t1 : p.t2;
            const double sg = k % 2 == 0 ? 1.0 : -1.0;
            const cplx coef = sg * pochhammer(-t, k) * p.a * (on_x ? p.x : p.y) / p.c;
            for (int r = 0; r <= d.s - 1; ++r) {
                Appell1Params q = p;
                q.a += 1.0;
                (on_x ? q.b1 : q.b2) -= static_cast<double>(r);
                q.c += 1.0;
                (on_x ? q.t1 : q.t2) -= static_cast<double>(k);
                rhs -= coef * checked(eval_f1_d1(q, opts), "term");
            }
            return from_sides(fam, d, lhs, rhs);
        }
        case IdentityFamily::Recursion6_cMinus: {
            const Appell1Params& p = d.p1;
            Appell1Params dn = p;
            dn.c -= d.s;
            if (is_nonpositive_integer(dn.c))
                return skipped(fam, d, "c-s-pole");
            const cplx lhs = checked(eval_f1_d1(dn, opts), "F1d1(c-s)");
            cplx rhs = checked(eval_f1_d1(p, opts), "F1d1");
            const double s1 = p.k1 % 2 == 0 ? 1.0 : -1.0;
            const double s2 = p.k2 % 2 == 0 ? 1.0 : -1.0;
            const cplx cx = s1 * pochhammer(-p.t1, p.k1) * p.a * p.b1 * p.x;
            const cplx cy = s2 * pochhammer(-p.t2, p.k2) * p.a * p.b2 * p.y;
            for (int r = 1; r <= d.s; ++r) {
                const cplx den = (p.c - static_cast<double>(r)) *
                                 (p.c - static_cast<double>(r) + 1.0);
                Appell1Params qx = p;
                qx.a += 1.0;
                qx.b1 += 1.0;
                qx.c += 2.0 - static_cast<double>(r);
                qx.t1 -= static_cast<double>(p.k1);
                rhs += cx * checked(eval_f1_d1(qx, opts), "term") / den;
                Appell1Params qy = p;
                qy.a += 1.0;
                qy.b2 += 1.0;
                qy.c += 2.0 - static_cast<double>(r);
                qy.t2 -= static_cast<double>(p.k2);
                rhs += cy * checked(eval_f1_d1(qy, opts), "term") / den;
            }
            return from_sides(fam, d, lhs, rhs);
        }
        case IdentityFamily::F2Recursion_aPlus: {
            const Appell2Params& p = d.p2;
            Appell2Params up = p;
            up.a += d.s;
            const cplx lhs = checked(eval_f1_d2(up, opts), "F1d2(a+s)");
            cplx rhs = checked(eval_f1_d2(p, opts), "F1d2");
            const double sg = p.k % 2 == 0 ? 1.0 : -1.0;
            const cplx cx = sg * pochhammer(-p.t, p.k) * p.b1 * p.x / p.c;
            const cplx cy = sg * pochhammer(-p.t, p.k) * p.b2 * p.y / p.c;
            for (int r = 1; r <= d.s; ++r) {
                Appell2Params qx = p;
                qx.a += r;
                qx.b1 += 1.0;
                qx.c += 1.0;
                qx.t -= static_cast<double>(p.k);
                rhs += cx * checked(eval_f1_d2(qx, opts), "term");
                Appell2Params qy = p;
                qy.a += r;
                qy.b2 += 1.0;
                qy.c += 1.0;
                qy.t -= static_cast<double>(p.k);
                rhs += cy * checked(eval_f1_d2(qy, opts), "term");
            }
            return from_sides(fam, d, lhs, rhs);
        }
        case IdentityFamily::F2Recursion_aMinus: {
            const Appell2Params& p = d.p2;
            Appell2Params dn = p;
            dn.a -= d.s;
            const cplx lhs = checked(eval_f1_d2(dn, opts), "F1d2(a-s)");
            cplx rhs = checked(eval_f1_d2(p, opts), "F1d2");
            const double sg = p.k % 2 == 0 ? 1.0 : -1.0;
            const cplx cx = sg * pochhammer(-p.t, p.k) * p.b1 * p.x / p.c;
            const cplx cy = sg * pochhammer(-p.t, p.k) * p.b2 * p.y / p.c;
            for (int r = 0; r <= d.s - 1; ++r) {
                Appell2Params qx = p;
                qx.a -= r;
                qx.b1 += 1.0;
                qx.c += 1.0;
                qx.t -= static_cast<double>(p.k);
                rhs -= cx * checked(eval_f1_d2(qx, opts), "term");
                Appell2Params qy = p;
                qy.a -= r;
                qy.b2 += 1.0;
                qy.c += 1.0;
                qy.t -= static_cast<double>(p.k);
                rhs -= cy * checked(eval_f1_d2(qy, opts), "term");
            }
            return from_sides(fam, d, lhs, rhs);
        }
        case IdentityFamily::F2Recursion_b1Plus: {
            const Appell2Params& p = d.p2;
            Appell2Params up = p;
            up.b1 += d.s;
            const cplx lhs = checked(eval_f1_d2(up, opts), "F1d2(b1+s)");
            cplx rhs = checked(eval_f1_d2(p, opts), "F1d2");
            const double sg = p.k % 2 == 0 ? 1.0 : -1.0;
            const cplx coef = sg * pochhammer(-p.t, p.k) * p.a * p.x / p.c;
            for (int r = 1; r <= d.s; ++r) {
                Appell2Params q = p;
                q.a += 1.0;
                q.b1 += r;
                q.c += 1.0;
                q.t -= static_cast<double>(p.k);
                rhs += coef * checked(eval_f1_d2(q, opts), "term");
            }
            return from_sides(fam, d, lhs, rhs);
        }
        case IdentityFamily::F2Recursion_b1Minus: {
            const Appell2Params& p = d.p2;
            Appell2Params dn = p;
            dn.b1 -= d.s;
            const cplx lhs = checked(eval_f1_d2(dn, opts), "F1d2(b1-s)");
            cplx rhs = checked(eval_f1_d2(p, opts), "F1d2");
            const double sg = p.k % 2 == 0 ? 1.0 : -1.0;
            const cplx coef = sg * pochhammer(-p.t, p.k) * p.a * p.x / p.c;
            for (int r = 0; r <= d.s - 1; ++r) {
                Appell2Params q = p;
                q.a += 1.0;
                q.b1 -= r;
                q.c += 1.0;
                q.t -= static_cast<double>(p.k);
                rhs -= coef * checked(eval_f1_d2(q, opts), "term");
            }
            return from_sides(fam, d, lhs, rhs);
        }
        case IdentityFamily::F2Recursion_cMinus: {
            const Appell2Params& p = d.p2;
            Appell2Params dn = p;
            dn.c -= d.s;
            if (is_nonpositive_integer(dn.c))
                return skipped(fam, d, "c-s-pole");
            const cplx lhs = checked(eval_f1_d2(dn, opts), "F1d2(c-s)");
            cplx rhs = checked(eval_f1_d2(p, opts), "F1d2");
            const double sg = p.k % 2 == 0 ? 1.0 : -1.0;
            const cplx cx = sg * pochhammer(-p.t, p.k) * p.a * p.b1 * p.x;
            const cplx cy = sg * pochhammer(-p.t, p.k) * p.a * p.b2 * p.y;
            for (int r = 1; r <= d.s; ++r) {
                const cplx den = (p.c - static_cast<double>(r)) *
                                 (p.c - static_cast<double>(r) + 1.0);
                Appell2Params qx = p;
                qx.a += 1.0;
                qx.b1 += 1.0;
                qx.c += 2.0 - static_cast<double>(r);
                qx.t -= static_cast<double>(p.k);
                rhs += cx * checked(eval_f1_d2(qx, opts), "term") / den;
                Appell2Params qy = p;
                qy.a += 1.0;
                qy.b2 += 1.0;
                qy.c += 2.0 - static_cast<double>(r);
                qy.t -= static_cast<double>(p.k);
                rhs += cy * checked(eval_f1_d2(qy, opts), "term") / den;
            }
            return from_sides(fam, d, lhs, rhs);
        }
        case IdentityFamily::ContiguousDiff8:
        case IdentityFamily::RecursionDiff28:
        case IdentityFamily::ContiguousDelta8:
        case IdentityFamily::RecursionDelta28: {
            RelationCatalogue cat;
            switch (fam) {
            case IdentityFamily::ContiguousDiff8:
                cat = RelationCatalogue::ContiguousDiff8;
                break;
            case IdentityFamily::RecursionDiff28:
                cat = RelationCatalogue::RecursionDiff28;
                break;
            case IdentityFamily::ContiguousDelta8:
                cat = RelationCatalogue::ContiguousDelta8;
                break;
            default:
                cat = RelationCatalogue::RecursionDelta28;
                break;
            }
            const Relation rel = enumerate_relation(cat, d.relation_index, d.p1);
            const cplx lhs = relation_side_value(rel.lhs, d.p1, opts);
            const cplx rhs = relation_side_value(rel.rhs, d.p1, opts);
            return from_sides(fam, d, lhs, rhs);
        }
        case IdentityFamily::F2ContiguousDiff8:
        case IdentityFamily::F2RecursionDiff28:
        case IdentityFamily::F2ContiguousDelta8:
        case IdentityFamily::F2RecursionDelta22: {
            RelationCatalogue cat;
            switch (fam) {
            case IdentityFamily::F2ContiguousDiff8:
                cat = RelationCatalogue::F2ContiguousDiff8;
                break;
            case IdentityFamily::F2RecursionDiff28:
                cat = RelationCatalogue::F2RecursionDiff28;
                break;
            case IdentityFamily::F2ContiguousDelta8:
                cat = RelationCatalogue::F2ContiguousDelta8;
                break;
            default:
                cat = RelationCatalogue::F2RecursionDelta22;
                break;
            }
            const Relation rel = enumerate_relation(cat, d.relation_index, d.p2);
            const cplx lhs = relation_side_value(rel.lhs, d.p2, opts);
            const cplx rhs = relation_side_value(rel.rhs, d.p2, opts);
            return from_sides(fam, d, lhs, rhs);
        }
        case IdentityFamily::DegenerationPhi1First:
            return degeneration_check(fam, d, HumbertFamily::Phi1, false, opts);
        case IdentityFamily::DegenerationPhi2First:
            return degeneration_check(fam, d, HumbertFamily::Phi2, false, opts);
        case IdentityFamily::DegenerationPhi3First:
            return degeneration_check(fam, d, HumbertFamily::Phi3, false, opts);
        case IdentityFamily::DegenerationPhi1Second:
            return degeneration_check(fam, d, HumbertFamily::Phi1, true, opts);
        case IdentityFamily::DegenerationPhi2Second:
            return degeneration_check(fam, d, HumbertFamily::Phi2, true, opts);
        case IdentityFamily::DegenerationPhi3Second:
            return degeneration_check(fam, d, HumbertFamily::Phi3, true, opts);
        case IdentityFamily::Sec8SpecialCases: {
            Appell1Params p = d.p1;
            p.k2 = p.k1; // equal-step case
            const cplx via_wrapper =
                eval_f1_d1_equal_k(p.a, p.b1, p.b2, p.c, p.t1, p.t2, p.k1, p.x, p.y,
                                   opts)
                    .value;
            const cplx direct = eval_f1_d1(p, opts).value;
            Appell1Params q = d.p1;
            q.t2 = q.t1; // equal-lattice case
            const cplx via_wrapper_t =
                eval_f1_d1_equal_t(q.a, q.b1, q.b2, q.c, q.t1, q.k1, q.k2, q.x, q.y,
                                   opts)
                    .value;
            const cplx direct_t = eval_f1_d1(q, opts).value;
            Residual r;
            r.family = fam;
            r.draw = d;
            r.lhs = via_wrapper;
            r.rhs = direct;
            const bool exact = via_wrapper == direct && via_wrapper_t == direct_t;
            r.rel_residual = exact ? 0.0 : harness_residual(via_wrapper, direct);
            r.status = exact ? CheckStatus::Pass : CheckStatus::Fail;
            if (!exact)
                r.reason = "shared-oracle values differ at bit level";
            return r;
        }
        }
    } catch (const PoleError& e) {
        return skipped(fam, d, std::string("pole: ") + e.what());
    } catch (const DomainError& e) {
        return skipped(fam, d, std::string("domain: ") + e.what());
    } catch (const std::exception& e) {
        Residual r;
        r.family = fam;
        r.draw = d;
        r.status = CheckStatus::Fail;
        r.rel_residual = std::numeric_limits<double>::infinity();
        r.reason = std::string("error: ") + e.what();
        return r;
    }
    return skipped(fam, d, "unhandled-family");
}

// ---------------------------------------------------------------------------
// suite runner
// ---------------------------------------------------------------------------

namespace {

std::optional<RelationCatalogue> family_catalogue(IdentityFamily f)
{
    switch (f) {
    case IdentityFamily::ContiguousDiff8: return RelationCatalogue::ContiguousDiff8;
    case IdentityFamily::RecursionDiff28: return RelationCatalogue::RecursionDiff28;
    case IdentityFamily::ContiguousDelta8: return RelationCatalogue::ContiguousDelta8;
    case IdentityFamily::RecursionDelta28: return RelationCatalogue::RecursionDelta28;
    case IdentityFamily::F2ContiguousDiff8: return RelationCatalogue::F2ContiguousDiff8;
    case IdentityFamily::F2RecursionDiff28: return RelationCatalogue::F2RecursionDiff28;
    case IdentityFamily::F2ContiguousDelta8: return RelationCatalogue::F2ContiguousDelta8;
    case IdentityFamily::F2RecursionDelta22: return RelationCatalogue::F2RecursionDelta22;
    default: return std::nullopt;
    }
}

} // namespace

long Report::total_failures() const
{
    long n = 0;
    for (const FamilyReport& f : families)
        n += f.fail;
    return n;
}

bool Report::all_pass() const
{
    for (const FamilyReport& f : families) {
        if (f.fail > 0)
            return false;
        if (f.pass == 0) // a family that only ever skips fails the suite
            return false;
    }
    return true;
}

bool operator==(const FamilyReport& a, const FamilyReport& b)
{
    return a.id == b.id && a.pass == b.pass && a.fail == b.fail && a.skip == b.skip &&
           a.worst_residual == b.worst_residual;
}

bool operator==(const Report& a, const Report& b)
{
    return a.suite == b.suite && a.seed == b.seed && a.regime == b.regime &&
           a.families == b.families && a.wall_ms == b.wall_ms;
}

Report run_suite(const DrawPolicy& policy, const std::vector<IdentityFamily>& families,
                 const SeriesOptions& opts)
{
    const auto t0 = std::chrono::steady_clock::now();

    struct Job {
        IdentityFamily fam;
        long draw_index;
        long relation_index; // 0 for non-catalogue families
    };
    std::vector<Job> jobs;
    for (IdentityFamily fam : families) {
        const auto cat = family_catalogue(fam);
        const long relations = cat ? catalogue_size(*cat) : 0;
        for (long i = 0; i < policy.count; ++i) {
            if (relations == 0)
                jobs.push_back({fam, i, 0});
            else
                for (long rel = 1; rel <= relations; ++rel)
                    jobs.push_back({fam, i, rel});
        }
    }

    std::vector<Residual> results(jobs.size());
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic) if (policy.exec == ExecPolicy::Parallel)
    for (long j = 0; j < static_cast<long>(jobs.size()); ++j) {
        try {
            const Job& job = jobs[static_cast<size_t>(j)];
            ParamDraw d = make_draw(job.fam, policy.regime, policy.seed, job.draw_index);
            if (job.relation_index > 0)
                d.relation_index = job.relation_index;
            results[static_cast<size_t>(j)] = check_identity(job.fam, d, opts);
        } catch (...) {
#pragma omp critical
            if (!error)
                error = std::current_exception();
        }
    }
    if (error)
        std::rethrow_exception(error);

    Report report;
    report.suite = "identity-suite";
    report.seed = policy.seed;
    report.regime = policy.regime;
    std::map<IdentityFamily, FamilyReport> agg;
    for (IdentityFamily fam : families)
        agg[fam] = FamilyReport{fam, 0, 0, 0, 0.0};
    std::map<IdentityFamily, double> tol_override;
    for (const auto& [fam, tol] : policy.tolerance_overrides)
        tol_override[fam] = tol;
    for (size_t j = 0; j < jobs.size(); ++j) {
        FamilyReport& f = agg[jobs[j].fam];
        Residual r = results[j];
        const auto it = tol_override.find(jobs[j].fam);
        if (it != tol_override.end() && r.status != CheckStatus::Skipped)
            r.status = r.rel_residual <= it->second ? CheckStatus::Pass : CheckStatus::Fail;
        switch (r.status) {
        case CheckStatus::Pass: ++f.pass; break;
        case CheckStatus::Fail: ++f.fail; break;
        case CheckStatus::Skipped: ++f.skip; break;
        }
        if (r.status != CheckStatus::Skipped)
            f.worst_residual = std::max(f.worst_residual, r.rel_residual);
    }
    for (IdentityFamily fam : families)
        report.families.push_back(agg[fam]);
    report.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
    return report;
}

} // namespace dappell
