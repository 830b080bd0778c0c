#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lipcert {

// Absolute tolerance used for all derived floating-point comparisons.
inline constexpr double kDefaultTol = 1e-9;

// Base error type. `code` is a short machine-readable tag that the CLI maps
// to exit codes and embeds in reports.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

// ===== finite metric spaces ================================================

struct MetricViolation {
    enum class Kind {
        NonFinite,
        Asymmetry,
        NegativeDistance,
        NonzeroDiagonal,
        IdentityViolation,
        TriangleViolation,
    };
    Kind kind = Kind::NonFinite;
    int i = -1, j = -1, k = -1;

    std::string name() const;
    std::string describe() const;
};

class MetricAxiomError : public Error {
public:
    explicit MetricAxiomError(const MetricViolation& v)
        : Error("MetricAxiom", v.describe()), violation(v) {}
    MetricViolation violation;
};

// Scans the matrix for the first violated metric axiom. Checks run in a fixed
// order (finiteness, shape, symmetry, sign, diagonal, identity, triangle) so
// the reported witness is deterministic.
std::optional<MetricViolation> find_metric_violation(
    const std::vector<std::vector<double>>& dist, double tol = kDefaultTol);

// Immutable after construction; safe for concurrent reads.
class FiniteMetricSpace {
public:
    // Throws MetricAxiomError with the witness on the first violated axiom.
    static FiniteMetricSpace validated(std::vector<std::vector<double>> dist,
                                       double tol = kDefaultTol);

    int size() const { return static_cast<int>(dist_.size()); }
    double dist(int i, int j) const { return dist_[i][j]; }
    const std::vector<std::vector<double>>& matrix() const { return dist_; }

    double diameter() const;
    // 0 when the space has a single point.
    double min_positive_distance() const;
    // All distinct positive distance values, ascending.
    std::vector<double> sorted_distinct_distances() const;

private:
    explicit FiniteMetricSpace(std::vector<std::vector<double>> d)
        : dist_(std::move(d)) {}
    std::vector<std::vector<double>> dist_;
};

using SpacePtr = std::shared_ptr<const FiniteMetricSpace>;

// ===== ordered off-diagonal pairs ==========================================

// All ordered pairs (i,j), i != j, in lexicographic order, carrying the max
// metric d((a,b),(c,d)) = max(d(a,c), d(b,d)).
class PairSpace {
public:
    explicit PairSpace(SpacePtr base);  // throws DegenerateSpace when n < 2

    int size() const { return static_cast<int>(pairs_.size()); }
    std::pair<int, int> pair(int k) const { return pairs_[k]; }
    int index_of(int i, int j) const;
    double dist(int a, int b) const;

    const FiniteMetricSpace& base() const { return *base_; }
    const SpacePtr& base_ptr() const { return base_; }

private:
    SpacePtr base_;
    std::vector<std::pair<int, int>> pairs_;
};

std::shared_ptr<const PairSpace> off_diagonal(SpacePtr space);

// ===== covers ==============================================================

enum class Ambient { Points, Pairs };

// Parts index into the ambient set: point ids, or positions in the canonical
// off-diagonal pair order. Union-covers-everything is a property some checks
// demand (covers_all), not a type invariant: sandwich witnesses are partial.
struct Cover {
    Ambient ambient = Ambient::Points;
    int ambient_size = 0;
    std::vector<std::vector<int>> parts;
};

Cover trivial_cover(Ambient ambient, int ambient_size);
Cover singleton_cover(Ambient ambient, int ambient_size);

// Throws CoverMismatch on out-of-range indices or an empty part.
void require_well_formed(const Cover& cover);
bool covers_all(const Cover& cover);

// ===== tubes around the diagonal ===========================================

// Smallest radius at which (i,j) enters the tube: min over z of
// max(d(i,z), d(j,z)).  (i,j) lies in tube(delta) iff tube_depth < delta
// (open balls).
double tube_depth(const FiniteMetricSpace& space, int i, int j);

// Membership mask over ordered pairs (diagonal included).
struct PairMask {
    int n = 0;
    std::vector<uint8_t> in;  // n*n row-major
    bool contains(int i, int j) const { return in[static_cast<size_t>(i) * n + j] != 0; }
};

// tube(delta) = all (i,j) admitting z with d(i,z) < delta and d(j,z) < delta.
PairMask tube(const FiniteMetricSpace& space, double delta);

struct TubeDelta {
    double delta = 0;
    bool unbounded = false;  // the ball products cover every pair; delta = diam+1
};

// Candidate thresholds scanned by max_tube_delta: distances, half-distances,
// the ball radius, midpoints between consecutive distinct distances, diam+1.
std::vector<double> tube_delta_candidates(const FiniteMetricSpace& space, double radius);

// Largest candidate delta with tube(delta) inside the union of the squared
// open balls B(c, radius) x B(c, radius). The centers must cover every point
// strictly within `radius` (throws DiagonalNotCovered otherwise).
TubeDelta max_tube_delta(const FiniteMetricSpace& space,
                         const std::vector<int>& centers, double radius);

// ===== nets and Lebesgue thresholds ========================================

// Greedy farthest-point net over arbitrary indexed items. Covering uses
// closed balls (d <= eps) by default; strict_radius switches to open balls
// (d < eps). The first center is index 0; ties break to the lowest index.
std::vector<int> greedy_net_indices(int count,
                                    const std::function<double(int, int)>& dist,
                                    double eps, bool strict_radius = false);

// Net over the space's points, closed balls of radius eps.
std::vector<int> greedy_eps_net(const FiniteMetricSpace& space, double eps);
// Net over a subset of points; returns point ids.
std::vector<int> greedy_eps_net(const FiniteMetricSpace& space,
                                const std::vector<int>& subset, double eps);

// Largest candidate threshold (distances and half-distances) such that every
// point pair within it shares a part; diam for the trivial cover; 0 sentinel
// when only coincident pairs qualify.
double lebesgue_delta(const FiniteMetricSpace& space, const Cover& cover);

}  // namespace lipcert
