#include "lipcert/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace lipcert {

std::string MetricViolation::name() const {
    switch (kind) {
        case Kind::NonFinite: return "NonFinite";
        case Kind::Asymmetry: return "Asymmetry";
        case Kind::NegativeDistance: return "NegativeDistance";
        case Kind::NonzeroDiagonal: return "NonzeroDiagonal";
        case Kind::IdentityViolation: return "IdentityViolation";
        case Kind::TriangleViolation: return "TriangleViolation";
    }
    return "Unknown";
}

std::string MetricViolation::describe() const {
    std::ostringstream out;
    out << name() << " at (" << i << ", " << j;
    if (k >= 0) out << ", " << k;
    out << ")";
    return out.str();
}

std::optional<MetricViolation> find_metric_violation(
    const std::vector<std::vector<double>>& dist, double tol) {
    const int n = static_cast<int>(dist.size());
    for (const auto& row : dist) {
        if (static_cast<int>(row.size()) != n)
            throw Error("Shape", "distance matrix must be square");
    }
    using Kind = MetricViolation::Kind;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!std::isfinite(dist[i][j]))
                return MetricViolation{Kind::NonFinite, i, j, -1};
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::fabs(dist[i][j] - dist[j][i]) > tol)
                return MetricViolation{Kind::Asymmetry, i, j, -1};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (dist[i][j] < -tol)
                return MetricViolation{Kind::NegativeDistance, i, j, -1};
    for (int i = 0; i < n; ++i)
        if (std::fabs(dist[i][i]) > tol)
            return MetricViolation{Kind::NonzeroDiagonal, i, i, -1};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && dist[i][j] <= tol)
                return MetricViolation{Kind::IdentityViolation, i, j, -1};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (dist[i][j] > dist[i][k] + dist[k][j] + tol)
                    return MetricViolation{Kind::TriangleViolation, i, j, k};
    return std::nullopt;
}

FiniteMetricSpace FiniteMetricSpace::validated(std::vector<std::vector<double>> dist,
                                               double tol) {
    if (dist.empty())
        throw Error("DegenerateSpace", "a metric space needs at least one point");
    if (auto v = find_metric_violation(dist, tol)) throw MetricAxiomError(*v);
    return FiniteMetricSpace(std::move(dist));
}

double FiniteMetricSpace::diameter() const {
    double d = 0;
    for (const auto& row : dist_)
        for (double v : row) d = std::max(d, v);
    return d;
}

double FiniteMetricSpace::min_positive_distance() const {
    const int n = size();
    if (n < 2) return 0;
    double d = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) d = std::min(d, dist_[i][j]);
    return d;
}

std::vector<double> FiniteMetricSpace::sorted_distinct_distances() const {
    std::vector<double> out;
    const int n = size();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) out.push_back(dist_[i][j]);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// ===== ordered off-diagonal pairs ==========================================

PairSpace::PairSpace(SpacePtr base) : base_(std::move(base)) {
    const int n = base_->size();
    if (n < 2)
        throw Error("DegenerateSpace", "off-diagonal pairs need at least two points");
    pairs_.reserve(static_cast<size_t>(n) * (n - 1));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) pairs_.emplace_back(i, j);
}

int PairSpace::index_of(int i, int j) const {
    const int n = base_->size();
    if (i == j || i < 0 || j < 0 || i >= n || j >= n)
        throw Error("Shape", "not an off-diagonal pair");
    return i * (n - 1) + (j < i ? j : j - 1);
}

double PairSpace::dist(int a, int b) const {
    const auto [i1, j1] = pairs_[a];
    const auto [i2, j2] = pairs_[b];
    return std::max(base_->dist(i1, i2), base_->dist(j1, j2));
}

std::shared_ptr<const PairSpace> off_diagonal(SpacePtr space) {
    return std::make_shared<const PairSpace>(std::move(space));
}

// ===== covers ==============================================================

Cover trivial_cover(Ambient ambient, int ambient_size) {
    Cover c{ambient, ambient_size, {}};
    std::vector<int> all(ambient_size);
    for (int i = 0; i < ambient_size; ++i) all[i] = i;
    c.parts.push_back(std::move(all));
    return c;
}

Cover singleton_cover(Ambient ambient, int ambient_size) {
    Cover c{ambient, ambient_size, {}};
    c.parts.reserve(ambient_size);
    for (int i = 0; i < ambient_size; ++i) c.parts.push_back({i});
    return c;
}

void require_well_formed(const Cover& cover) {
    if (cover.ambient_size < 0)
        throw Error("CoverMismatch", "negative ambient size");
    for (const auto& part : cover.parts) {
        if (part.empty()) throw Error("CoverMismatch", "empty cover part");
        for (int idx : part)
            if (idx < 0 || idx >= cover.ambient_size)
                throw Error("CoverMismatch", "part index out of range");
    }
}

bool covers_all(const Cover& cover) {
    std::vector<uint8_t> hit(static_cast<size_t>(cover.ambient_size), 0);
    for (const auto& part : cover.parts)
        for (int idx : part) hit[static_cast<size_t>(idx)] = 1;
    return std::all_of(hit.begin(), hit.end(), [](uint8_t h) { return h != 0; });
}

// ===== tubes around the diagonal ===========================================

double tube_depth(const FiniteMetricSpace& space, int i, int j) {
    const int n = space.size();
    double depth = std::numeric_limits<double>::infinity();
    for (int z = 0; z < n; ++z)
        depth = std::min(depth, std::max(space.dist(i, z), space.dist(j, z)));
    return depth;
}

PairMask tube(const FiniteMetricSpace& space, double delta) {
    const int n = space.size();
    PairMask mask{n, std::vector<uint8_t>(static_cast<size_t>(n) * n, 0)};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (tube_depth(space, i, j) < delta)
                mask.in[static_cast<size_t>(i) * n + j] = 1;
    return mask;
}

std::vector<double> tube_delta_candidates(const FiniteMetricSpace& space,
                                          double radius) {
    std::vector<double> out;
    const auto distances = space.sorted_distinct_distances();
    for (double d : distances) {
        out.push_back(d);
        out.push_back(d / 2);
    }
    for (size_t k = 0; k + 1 < distances.size(); ++k)
        out.push_back((distances[k] + distances[k + 1]) / 2);
    if (radius > 0) out.push_back(radius);
    out.push_back(space.diameter() + 1);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    while (!out.empty() && out.front() <= 0) out.erase(out.begin());
    return out;
}

TubeDelta max_tube_delta(const FiniteMetricSpace& space,
                         const std::vector<int>& centers, double radius) {
    const int n = space.size();
    for (int c : centers)
        if (c < 0 || c >= n) throw Error("CoverMismatch", "center index out of range");

    // Ball membership is strict: the products are squares of open balls.
    auto in_ball = [&](int p, int c) { return space.dist(p, c) < radius; };
    for (int p = 0; p < n; ++p) {
        bool hit = false;
        for (int c : centers) hit = hit || in_ball(p, c);
        if (!hit)
            throw Error("DiagonalNotCovered",
                        "point " + std::to_string(p) + " lies in no open ball");
    }

    // tube(delta) fits inside the union exactly when delta stays at or below
    // the least tube depth among pairs the union misses.
    double min_depth_outside = std::numeric_limits<double>::infinity();
    bool any_outside = false;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            bool in_union = false;
            for (int c : centers) in_union = in_union || (in_ball(i, c) && in_ball(j, c));
            if (!in_union) {
                any_outside = true;
                min_depth_outside = std::min(min_depth_outside, tube_depth(space, i, j));
            }
        }
    if (!any_outside) return TubeDelta{space.diameter() + 1, true};

    double best = 0;
    for (double cand : tube_delta_candidates(space, radius))
        if (cand <= min_depth_outside) best = std::max(best, cand);
    return TubeDelta{best, false};
}

// ===== nets and Lebesgue thresholds ========================================

std::vector<int> greedy_net_indices(int count,
                                    const std::function<double(int, int)>& dist,
                                    double eps, bool strict_radius) {
    if (eps <= 0) throw Error("NegativeArgument", "net radius must be positive");
    std::vector<int> centers;
    if (count == 0) return centers;
    auto covered_by = [&](int i, int c) {
        const double d = dist(i, c);
        return strict_radius ? d < eps : d <= eps;
    };
    // nearest[i] = distance from i to its closest chosen center.
    std::vector<double> nearest(static_cast<size_t>(count),
                                std::numeric_limits<double>::infinity());
    std::vector<uint8_t> covered(static_cast<size_t>(count), 0);
    int next = 0;
    while (next >= 0) {
        centers.push_back(next);
        covered[static_cast<size_t>(next)] = 1;
        for (int i = 0; i < count; ++i) {
            nearest[i] = std::min(nearest[i], dist(i, next));
            if (covered_by(i, next)) covered[static_cast<size_t>(i)] = 1;
        }
        next = -1;
        double far = -1;
        for (int i = 0; i < count; ++i)
            if (!covered[static_cast<size_t>(i)] && nearest[i] > far) {
                far = nearest[i];
                next = i;
            }
    }
    return centers;
}

std::vector<int> greedy_eps_net(const FiniteMetricSpace& space, double eps) {
    return greedy_net_indices(
        space.size(), [&](int i, int j) { return space.dist(i, j); }, eps);
}

std::vector<int> greedy_eps_net(const FiniteMetricSpace& space,
                                const std::vector<int>& subset, double eps) {
    if (subset.empty()) throw Error("EmptySubset", "cannot build a net over nothing");
    for (int p : subset)
        if (p < 0 || p >= space.size())
            throw Error("Shape", "subset index out of range");
    auto local = greedy_net_indices(
        static_cast<int>(subset.size()),
        [&](int i, int j) { return space.dist(subset[i], subset[j]); }, eps);
    std::vector<int> out;
    out.reserve(local.size());
    for (int k : local) out.push_back(subset[k]);
    return out;
}

double lebesgue_delta(const FiniteMetricSpace& space, const Cover& cover) {
    require_well_formed(cover);
    const int n = space.size();
    if (cover.ambient != Ambient::Points || cover.ambient_size != n)
        throw Error("CoverMismatch", "expected a cover of the space's points");
    if (!covers_all(cover))
        throw Error("CoverMismatch", "cover must reach every point");

    std::vector<uint8_t> together(static_cast<size_t>(n) * n, 0);
    for (const auto& part : cover.parts)
        for (int a : part)
            for (int b : part) together[static_cast<size_t>(a) * n + b] = 1;

    auto valid = [&](double delta) {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (space.dist(i, j) <= delta && !together[static_cast<size_t>(i) * n + j])
                    return false;
        return true;
    };

    std::vector<double> candidates;
    for (double d : space.sorted_distinct_distances()) {
        candidates.push_back(d);
        candidates.push_back(d / 2);
    }
    double best = 0;
    for (double cand : candidates)
        if (cand > best && valid(cand)) best = cand;
    if (best < space.min_positive_distance()) return 0;
    return best;
}

}  // namespace lipcert
