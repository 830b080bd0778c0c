#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lipcert/conditions.hpp"

namespace lipcert {

struct ExpectedClaim {
    std::string id;         // stable tag dispatched by verify_fixture
    std::string condition;  // condition or quantity the claim is about
    double eps = 0;
    bool verdict = true;
};

// Deterministic counterexample/example instances with machine-checkable
// claims. `family` is absent for pure metric fixtures.
struct Fixture {
    std::string name;
    SpacePtr space;
    std::optional<FunctionFamily> family;
    std::optional<ComparisonFunction> phi;
    std::map<std::string, double> params;
    std::vector<ExpectedClaim> expected;
};

// Zero-one sequences of length p (domain point i encodes coordinates by its
// bits), normalized Hamming metric, members f_1..f_p into R^(p+1) under the
// sup norm: f_k(x) = e_0 when coordinate k is 0, e_k when it is 1.
// Norms are constant 1, so (B) holds at 0 for the family itself, while every
// small-budget cover forces a gap >= 1/2 on the differences.
Fixture riesz_zero_one(int p, int d = -1);

// k unit basis points under the sup norm (pairwise distance 1) with members
// f(x) = x and g(x) = 2x: norms are constant per member, values are spread.
Fixture sphere_pair(int k);

// Integer grid {0..K} with tents f_n(x) = 1 - |x/n - 1| on [0, 2n] (zero
// elsewhere) for n = 1..K/2, plus the zero member last; phi = identity.
Fixture tent_family(int K);

// Grid of step h = 1/inv_h on [0,2] with the single tent f(x) = 1 - |x-1|;
// two specific pairs a max-metric ball cannot separate carry quotient values
// +1 and -1.
Fixture ball_cover_failure(int inv_h);

// Points {+-1, .., +-K} (order +1, -1, +2, -2, ...) with distances
//   d(+-1, -+1) = 1/2,             d(+-1, +-n) = 1/2 - 1/(2n)  (n >= 2),
//   d(+-1, -+n) = 1/2  (n >= 2),   d(x, y)     = 1/(2n) + 1/(2m) otherwise.
FiniteMetricSpace zminus_metric(int K);
// Wrapper with the metric claims attached (no family).
Fixture zminus_fixture(int K);

// Domain {x_0 = 0} u {x_n = e_n / n} in R^K under the sup norm, members
// f_a(x) = a * x for a in a_grid, phi = identity. Quotients are constant
// |a-b| per difference member; the five pairs (x_n, x_0) pin quotient
// functions a full basis apart.
Fixture linfty_family(int K, const std::vector<double>& a_grid);

struct ClaimOutcome {
    std::string id;
    bool expected_pass = true;
    bool pass = false;
    double value = 0;  // the quantity the claim pinned down
    std::string detail;
};

// Re-derives every expected claim through the checkers and oracles.
std::vector<ClaimOutcome> verify_fixture(const Fixture& fixture);

}  // namespace lipcert
