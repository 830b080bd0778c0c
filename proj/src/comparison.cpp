#include "lipcert/comparison.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace lipcert {

ComparisonFunction ComparisonFunction::power(double alpha) {
    if (!(alpha > 0) || alpha > 1)
        throw Error("Shape", "power exponent must lie in (0, 1]");
    ComparisonFunction f;
    f.kind_ = PhiKind::Power;
    f.alpha_ = alpha;
    return f;
}

ComparisonFunction ComparisonFunction::log1p() {
    ComparisonFunction f;
    f.kind_ = PhiKind::Log1p;
    return f;
}

ComparisonFunction ComparisonFunction::piecewise_linear(
    std::vector<std::pair<double, double>> breakpoints) {
    if (breakpoints.empty() || breakpoints.front() != std::make_pair(0.0, 0.0))
        throw Error("Shape", "breakpoints must start at (0, 0)");
    for (size_t k = 0; k + 1 < breakpoints.size(); ++k)
        if (!(breakpoints[k].first < breakpoints[k + 1].first))
            throw Error("Shape", "breakpoint abscissae must strictly increase");
    if (breakpoints.size() < 2)
        throw Error("Shape", "need at least one breakpoint after the origin");
    ComparisonFunction f;
    f.kind_ = PhiKind::PiecewiseLinear;
    f.breakpoints_ = std::move(breakpoints);
    return f;
}

double ComparisonFunction::operator()(double t) const {
    if (t < 0) throw Error("NegativeArgument", "gauge argument must be >= 0");
    switch (kind_) {
        case PhiKind::Power:
            return std::pow(t, alpha_);
        case PhiKind::Log1p:
            return std::log1p(t);
        case PhiKind::PiecewiseLinear: {
            size_t k = 0;
            while (k + 2 < breakpoints_.size() && breakpoints_[k + 1].first < t) ++k;
            const auto [t0, v0] = breakpoints_[k];
            const auto [t1, v1] = breakpoints_[k + 1];
            const double slope = (v1 - v0) / (t1 - t0);
            return v0 + slope * (t - t0);
        }
    }
    return 0;
}

std::string PhiAxiomViolation::describe() const {
    std::ostringstream out;
    out << axiom << " violated at t=" << t << ", s=" << s << " (" << lhs << " vs "
        << rhs << ")";
    return out.str();
}

std::optional<PhiAxiomViolation> validate_comparison(const ComparisonFunction& phi,
                                                     const std::vector<double>& grid,
                                                     double tol) {
    if (phi.kind() == PhiKind::PiecewiseLinear) {
        const auto& bp = phi.breakpoints();
        double prev_slope = std::numeric_limits<double>::infinity();
        for (size_t k = 0; k + 1 < bp.size(); ++k) {
            const double slope = (bp[k + 1].second - bp[k].second) /
                                 (bp[k + 1].first - bp[k].first);
            if (slope > prev_slope)
                return PhiAxiomViolation{"concavity", bp[k].first, bp[k + 1].first,
                                         slope, prev_slope};
            prev_slope = slope;
        }
    }
    std::vector<double> pts(grid);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (!pts.empty() && pts.front() < 0)
        throw Error("NegativeArgument", "grid points must be >= 0");

    double prev_t = -1, prev_v = 0;
    for (double t : pts) {
        const double v = phi(t);
        if (prev_t >= 0 && v < prev_v - tol)
            return PhiAxiomViolation{"monotonicity", prev_t, t, prev_v, v};
        if (t > 0 && v <= tol)
            return PhiAxiomViolation{"positivity", t, 0, v, 0};
        prev_t = t;
        prev_v = v;
    }
    double prev_ratio = std::numeric_limits<double>::infinity();
    for (double t : pts) {
        if (t <= 0) continue;
        const double ratio = phi(t) / t;
        if (ratio > prev_ratio + tol)
            return PhiAxiomViolation{"ratio", t, 0, ratio, prev_ratio};
        prev_ratio = ratio;
    }
    for (double t : pts)
        for (double s : pts) {
            if (t + s > pts.back()) continue;
            const double lhs = phi(t + s);
            const double rhs = phi(t) + phi(s);
            if (lhs > rhs + tol)
                return PhiAxiomViolation{"subadditivity", t, s, lhs, rhs};
        }
    return std::nullopt;
}

std::vector<double> default_phi_grid(const ComparisonFunction& phi, double D) {
    if (!(D > 0)) throw Error("NegativeArgument", "grid extent must be positive");
    std::vector<double> pts;
    const int m = 1025;
    pts.reserve(m + phi.breakpoints().size());
    for (int k = 0; k < m; ++k) {
        const double theta = std::numbers::pi * (m - 1 - k) / (m - 1);
        pts.push_back(D * (1 + std::cos(theta)) / 2);
    }
    for (const auto& [t, v] : phi.breakpoints())
        if (t <= D) pts.push_back(t);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

FiniteMetricSpace induced_metric(const FiniteMetricSpace& space,
                                 const ComparisonFunction& phi, double tol) {
    const int n = space.size();
    std::vector<std::vector<double>> out(n, std::vector<double>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) out[i][j] = phi(space.dist(i, j));
    return FiniteMetricSpace::validated(std::move(out), tol);
}

namespace {

// Worst increment of phi between grid arguments 2r apart; by concavity the
// increment from 0 dominates, but the scan keeps the check agnostic to that.
double max_increment(const ComparisonFunction& phi, double D, double r) {
    const int m = 2048;
    double worst = 0;
    for (int k = 0; k <= m; ++k) {
        const double s = D * k / m;
        const double t = std::min(s + 2 * r, D);
        worst = std::max(worst, phi(t) - phi(s));
    }
    return worst;
}

}  // namespace

ModulusRadius modulus_radius(const ComparisonFunction& phi, double D,
                             double osc_bound) {
    if (!(D > 0) || !(osc_bound > 0))
        throw Error("NegativeArgument", "domain bound and oscillation bound must be positive");
    auto ok = [&](double r) {
        return phi(r) <= osc_bound && max_increment(phi, D, r) <= osc_bound;
    };
    double r = D / 2;
    if (!ok(r)) {
        // Descend geometrically to a feasible radius, then bisect back up.
        double lo = r;
        while (!ok(lo)) lo /= 2;
        double hi = lo * 2;
        for (int it = 0; it < 80; ++it) {
            const double mid = (lo + hi) / 2;
            if (ok(mid))
                lo = mid;
            else
                hi = mid;
        }
        r = lo;
    }
    return ModulusRadius{r, phi(r), max_increment(phi, D, r)};
}

}  // namespace lipcert
