#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lipcert/family.hpp"

namespace lipcert {

// ===== reports =============================================================

struct ViolationWitness {
    int part = -1;    // part index for cover-based checks
    int first = -1;   // point or pair index
    int second = -1;  // point or pair index
    int member = -1;
    int member2 = -1;  // second member for pairwise-difference scans
};

// verdict == pass iff achieved <= eps + tol. On fail the violating tuple is
// populated; on pass a cover-based check echoes the cover it verified.
// max_quotient is filled by the quotient-based checks (L, LDS, lambda,
// flatness): the largest quotient value seen, independent of oscillation.
struct ConditionReport {
    std::string condition;
    double eps = 0;
    bool pass = false;
    double achieved = 0;
    double max_quotient = 0;
    std::optional<Cover> witness_cover;
    std::optional<ViolationWitness> violation;
};

struct EquinormWitness {
    std::vector<int> Y;
    double eps = 0;
};

struct LambdaWitness {
    double delta = 0;
    int n = 1;  // outer tube radius is 1/n
    Cover cover;
};

class SandwichViolation : public Error {
public:
    SandwichViolation(std::string side, int pair_index, const std::string& what)
        : Error("SandwichViolation", what), side(std::move(side)), pair_index(pair_index) {}
    std::string side;  // "inner" | "outer"
    int pair_index;
};

// ===== checkers ============================================================

// sup_norm(f) <= eps + seminorm(f, Y) for every member.
ConditionReport check_equinormed(const FunctionFamily& A, const std::vector<int>& Y,
                                 double eps, double tol = kDefaultTol);

// Oscillation of x -> ||f(x)|| within each part, over a cover of the points.
ConditionReport check_B(const FunctionFamily& A, const Cover& cover, double eps,
                        double tol = kDefaultTol);

// Oscillation of x -> f(x) (vector values) within each part.
ConditionReport check_DS(const FunctionFamily& A, const Cover& cover, double eps,
                         double tol = kDefaultTol);

// ||f(x)-f(y)|| <= eps for every pair with d(x,y) <= delta. delta = 0 checks
// only coincident pairs (vacuous pass).
ConditionReport check_equicontinuity(const FunctionFamily& A, double delta, double eps,
                                     double tol = kDefaultTol);

// Oscillation of the scalar quotient (x,y) -> ||f(x)-f(y)|| / phi(d(x,y))
// within each part of a cover of all ordered off-diagonal pairs.
ConditionReport check_L(const FunctionFamily& A, const ComparisonFunction& phi,
                        const Cover& cover, double eps, double tol = kDefaultTol);

// Oscillation of the vector-valued quotient within each part.
ConditionReport check_LDS(const FunctionFamily& A, const ComparisonFunction& phi,
                          const Cover& cover, double eps, double tol = kDefaultTol);

// Sandwich witness: tube(delta) off-diagonal pairs must all lie in some part,
// every part must sit inside the open 1/n tube; then per-part quotient
// oscillation as in check_L. Throws SandwichViolation when an inclusion
// fails.
ConditionReport check_lambda(const FunctionFamily& A, const ComparisonFunction& phi,
                             double eps, int n, const LambdaWitness& witness,
                             double tol = kDefaultTol);

// ||f(x)-f(y)|| <= eps * phi(d(x,y)) for every pair with 0 < d(x,y) <= delta;
// achieved is the largest quotient among qualifying pairs.
ConditionReport check_uniform_local_flatness(const FunctionFamily& A,
                                             const ComparisonFunction& phi,
                                             double delta, double eps,
                                             double tol = kDefaultTol);

// ===== synthesizers ========================================================
//
// Each synthesizer follows one proof pipeline with its exact constants and
// returns a witness whose target check is guaranteed to pass; the checks are
// re-run by callers (tests, CLI), not inside the synthesizer.

// Point cover on which the pairwise differences of `family` satisfy the (B)
// bound at eps. Requires check_equinormed(difference_family(family), Y,
// eps/16) to pass; net_eps defaults to eps/32 when <= 0. max_net_size, when
// given, caps the section net (NetPreconditionFailed beyond it).
Cover synthesize_B_cover(const FunctionFamily& family, double eps, double net_eps,
                         const std::vector<int>& Y,
                         std::optional<int> max_net_size = std::nullopt);

// One representative point per part (lowest index). The family passed is the
// one the cover certifies at `level`; the witness passes check_equinormed at
// 2 * level.
EquinormWitness equinorm_witness_from_B(const FunctionFamily& family, const Cover& cover,
                                        double level);

// Point cover with check_DS(family, result, eps) guaranteed, built from a
// cover certifying (B) at eps/8 for the difference family plus an eps/8 net
// of the image.
Cover synthesize_DS_from_B(const FunctionFamily& family, const Cover& B_cover_for_diff,
                           double eps, std::optional<int> max_net_size = std::nullopt);

// Closed balls of radius delta/2 around greedy centers.
Cover ds_cover_from_equicontinuity(const FunctionFamily& family, double delta, double eps);

// delta = lebesgue_delta(domain, cover); equicontinuity at eps then follows.
double equicontinuity_from_ds(const FunctionFamily& family, const Cover& cover, double eps);

struct TildeCover {
    Cover cover;        // parts over pairs; union = pairs at tube depth >= delta
    double delta = 0;   // the tube threshold that was excluded
    double r = 0;       // modulus radius; parts are max-metric balls of radius r/2
    double m_lower = 0; // min phi(d) over the covered pairs
    double M_bound = 0; // max of blip norms and phi(diam)
};

// Ball cover of the far-from-diagonal pairs on which
// | ||q_u(p1)|| - ||q_u(p2)|| | <= eps for every difference u of two members
// (q_u = quotient function). Throws EmptyTilde when no pair survives.
TildeCover synthesize_tilde_cover(const FunctionFamily& family, const ComparisonFunction& phi,
                                  double delta, double eps);

// Direct oscillation scan used as the oracle for TildeCover: max over member
// pairs (f,g) and parts of the oscillation of ||q_{f-g}||.
double tilde_oscillation(const FunctionFamily& family, const ComparisonFunction& phi,
                         const Cover& cover);

// Intersects an (L)-certifying cover with squared diagonal balls of radius
// 1/n; delta comes from max_tube_delta. `family` is the family the L-cover
// certifies (the difference family in the round-trip pipelines).
LambdaWitness lambda_from_L(const FunctionFamily& family, const ComparisonFunction& phi,
                            const Cover& L_cover, double eps, int n);

struct LambdaToL {
    Cover cover;
    double blip_bound = 0;   // max blip norm over the source members
    double chain_bound = 0;  // 3R + 2R^2/phi(d) diagnostic from the boundedness run
};

// Full pair cover for the difference family of `source`: the sandwich
// witness parts near the diagonal plus tilde-cover parts at eps/2 on the
// pairs of depth >= delta/4, shrunk away from the delta/2 tube.
LambdaToL L_from_lambda(const FunctionFamily& source, const ComparisonFunction& phi,
                        const LambdaWitness& witness, double eps);

// Sandwich witness from uniform local flatness of `source` at eps/2 within
// flat_delta: squared diagonal balls of radius 1/m, 1/m <= min(flat_delta/2,
// 1/n).
LambdaWitness lambda_from_flatness(const FunctionFamily& source, const ComparisonFunction& phi,
                                   double eps, int n, double flat_delta);

// Largest distance threshold at which every net member stays eps/2-flat; the
// whole family is then eps-flat within it. 0 sentinel when no positive
// threshold works. Throws NotANet when the indexed members miss someone by
// more than eps/2 in lip_norm.
double flatness_from_net(const FunctionFamily& A, const ComparisonFunction& phi,
                         const std::vector<int>& net_members, double eps);

// ||f0||_inf + 1 + 2 * max_{f,t in Y} ||f(t)||: a uniform bound on member sup
// norms whenever the difference family is equinormed over Y at level 1.
double boundedness_bound(const FunctionFamily& A, const std::vector<int>& Y);

}  // namespace lipcert
