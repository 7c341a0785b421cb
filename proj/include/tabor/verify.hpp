#pragma once

#include "tabor/transform.hpp"

#include <string>
#include <utility>
#include <vector>

namespace tabor {

enum class Direction { Convex, Concave };

/// Which coefficient the induction inequality's right-hand side carries.
/// TwoDzBothSides ("cvn-b") uses 2*d_Z on both sides; PrintedHalfB ("cvn-a")
/// uses d_Z on the B side. Both are available because the two conventions
/// disagree in print; cvn-b is the self-consistent default (its n=1 case is
/// exactly the Jensen inclusion).
enum class CvnReading { TwoDzBothSides, PrintedHalfB };

struct Tolerances {
    double series_tol = 5e-11;
    Rational extension_tol = Rational(1, 1000000);
    unsigned dyadic_approx_exponent = 24;
};

/// One concrete instance of the verification problem: the domain, the maps
/// F, A, B, the cone K (intended to equal the recession cone of B), sample
/// pairs, and depths.
struct Scenario {
    std::string name;
    Direction direction = Direction::Convex;
    Box domain;
    SetFamily F, A, B;
    ConeSpec K;
    std::vector<std::pair<RatVec, RatVec>> sample_pairs;
    unsigned dyadic_depth = 4;
    std::vector<Rational> real_t_list;
    Tolerances tol;
    CvnReading reading = CvnReading::TwoDzBothSides;
    /// Stages to run; empty means all of
    /// {hypotheses, induction, conclusions, extensions, mutations}.
    std::vector<std::string> checks;

    Scenario(Box d, SetFamily f, SetFamily a, SetFamily b, ConeSpec k)
        : domain(std::move(d)), F(std::move(f)), A(std::move(a)), B(std::move(b)),
          K(std::move(k)) {}

    /// Deterministic default pairs (endpoints, midpoint, 13/21 split of the
    /// diagonal; box corners and center in higher dimension) plus user pairs.
    std::vector<std::pair<RatVec, RatVec>> all_pairs() const;
};

/// Structural hypotheses: K consistent with rec(B), B values closedly
/// K-convex, 0 in cl(A+K) and 0 in B, F values closedly K-convex for the
/// concave direction, and the Jensen inclusion itself on the sample pairs.
std::vector<InclusionReport> scenario_hypothesis_checks(const Scenario& sc);

InclusionReport check_jensen_convexity(const Scenario& sc);
InclusionReport check_jensen_concavity(const Scenario& sc);

InclusionReport dyadic_induction_check_convex(const Scenario& sc, const RatVec& x,
                                              const RatVec& y, unsigned n_max);
InclusionReport dyadic_induction_check_concave(const Scenario& sc, const RatVec& x,
                                               const RatVec& y, unsigned n_max);

/// Exact inclusion at a dyadic t, both transforms evaluated with exact
/// finite truncation. Throws HypothesisFailure when 0 in cl(A(u)+K) fails
/// on the orbit of x-y.
InclusionReport check_convexity_conclusion(const Scenario& sc, const RatVec& x, const RatVec& y,
                                           const DyadicRational& t);
InclusionReport check_concavity_conclusion(const Scenario& sc, const RatVec& x, const RatVec& y,
                                           const DyadicRational& t);

/// Real-t statement certified through a dyadic s with |t-s| <= 2^-q and an
/// exact modulus-of-continuity inflation. For the approximate-pass verdict
/// margin holds the exact dyadic margin at s and margin_real records the
/// certified inflation radius. Dyadic t reduces to the exact check with
/// zero inflation.
InclusionReport bernstein_doetsch_extension_convex(const Scenario& sc, const RatVec& x,
                                                   const RatVec& y, const Rational& t,
                                                   const Rational& tol);
InclusionReport bernstein_doetsch_extension_concave(const Scenario& sc, const RatVec& x,
                                                    const RatVec& y, const Rational& t,
                                                    const Rational& tol);

struct UscProbeRow {
    Rational eps;
    bool found = false;
    Rational delta;
};

/// For each eps-box U, bisects for the largest delta <= 1 such that
/// F(p+th) is inside F(p)+U+K on a dyadic mesh of (0, delta) down to t_min.
std::vector<UscProbeRow> directional_usc_probe(const SetFamily& f, const RatVec& p,
                                               const RatVec& h, const ConeSpec& k,
                                               const std::vector<Rational>& eps_list,
                                               const Rational& t_min);

enum class CorollaryCase {
    ConvexPlus1,
    ConvexPlus2,
    ConcavePlus1,
    ConcavePlus2,
    ConvexPlus1Ext,
    ConvexPlus2Ext,
    ConcavePlus1Ext,
    ConcavePlus2Ext,
};

const char* corollary_name(CorollaryCase c);

/// Validates that the scenario's A/B match the corollary recipe, checks the
/// standing hypotheses, and dispatches to the matching conclusion or
/// extension checker across the scenario pairs.
InclusionReport corollary_suite(const Scenario& sc, CorollaryCase which);

struct MutationOutcome {
    std::string label;
    bool perturbation_effective = false;
    bool failure_found = false;
    InclusionReport first_failure;
};

/// Negative controls: scales the B template coefficient down and the A
/// template coefficient up by each gamma and records the first dyadic
/// (t, x, y) where a mutated conclusion fails. A scenario whose own Jensen
/// hypothesis fails is flagged before any conclusion runs.
std::vector<MutationOutcome> mutation_search(const Scenario& sc,
                                             const std::vector<Rational>& gammas);

/// The four sets a conclusion check compares at one (x, y, t); exposed for
/// the set-dump surface.
struct ConclusionSets {
    SetUnion a_perp, b_perp, lhs, rhs;
};

ConclusionSets conclusion_sets(const Scenario& sc, const RatVec& x, const RatVec& y,
                               const DyadicRational& t);

struct RunOptions {
    unsigned depth = 4;
    CvnReading reading = CvnReading::TwoDzBothSides;
    bool run_extensions = true;
    bool run_mutations = true;
};

struct RunResult {
    std::vector<InclusionReport> reports;
    bool hypothesis_failure = false;
    bool inclusion_failure = false;

    int exit_code() const { return hypothesis_failure ? 3 : (inclusion_failure ? 1 : 0); }
};

/// Fixed stage order: hypotheses, induction, dyadic conclusions, extensions,
/// mutations. Depth 0 runs the hypothesis stage only. Mutation failures are
/// expected and never affect the exit code.
RunResult run_scenario(const Scenario& sc, const RunOptions& opt);

}  // namespace tabor
