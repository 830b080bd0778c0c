#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lipcert/metric.hpp"

namespace lipcert {

enum class PhiKind { Power, Log1p, PiecewiseLinear };

// Concave non-decreasing gauge with phi(0) = 0, used to form Hoelder-type
// difference quotients. Three constructive kinds:
//   Power(alpha):        t^alpha, alpha in (0,1]
//   Log1p:               ln(1+t)
//   PiecewiseLinear:     interpolation through breakpoints starting at (0,0),
//                        extended past the last breakpoint with its slope
// Construction checks structure only; axiom checks live in
// validate_comparison so that broken instances can be built and reported.
class ComparisonFunction {
public:
    static ComparisonFunction power(double alpha);
    static ComparisonFunction log1p();
    static ComparisonFunction piecewise_linear(std::vector<std::pair<double, double>> breakpoints);
    static ComparisonFunction identity() { return power(1.0); }

    // Throws NegativeArgument for t < 0.
    double operator()(double t) const;

    PhiKind kind() const { return kind_; }
    double alpha() const { return alpha_; }
    const std::vector<std::pair<double, double>>& breakpoints() const { return breakpoints_; }

private:
    ComparisonFunction() = default;
    PhiKind kind_ = PhiKind::Power;
    double alpha_ = 1.0;
    std::vector<std::pair<double, double>> breakpoints_;
};

inline double eval(const ComparisonFunction& phi, double t) { return phi(t); }

struct PhiAxiomViolation {
    std::string axiom;  // concavity | monotonicity | positivity | ratio | subadditivity
    double t = 0, s = 0;
    double lhs = 0, rhs = 0;
    std::string describe() const;
};

// Grid checks: monotonicity, positivity, phi(t)/t non-increasing,
// sub-additivity over grid pairs; exact slope concavity for piecewise-linear.
// Returns the first violation found, or nullopt.
std::optional<PhiAxiomViolation> validate_comparison(const ComparisonFunction& phi,
                                                     const std::vector<double>& grid,
                                                     double tol = kDefaultTol);

// 1025 Chebyshev-spaced points on [0, D] plus the breakpoints of phi.
std::vector<double> default_phi_grid(const ComparisonFunction& phi, double D);

// Entry-wise phi of the distance matrix, re-validated as a metric.
FiniteMetricSpace induced_metric(const FiniteMetricSpace& space,
                                 const ComparisonFunction& phi,
                                 double tol = kDefaultTol);

struct ModulusRadius {
    double r = 0;
    double phi_r = 0;         // phi(r)
    double achieved_osc = 0;  // max grid increment of phi over steps of 2r
};

// Largest r (geometric descent + bisection, capped at D/2) with
// phi(r) <= osc_bound and |phi(t)-phi(s)| <= osc_bound whenever |t-s| <= 2r
// on [0, D]. Exists for every osc_bound > 0 by continuity at 0.
ModulusRadius modulus_radius(const ComparisonFunction& phi, double D, double osc_bound);

}  // namespace lipcert
