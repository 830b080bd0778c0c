#include "lipcert/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace lipcert {

namespace {

double value_gap(const SampledFunction& f, int x, int y) {
    std::vector<double> d(f.values[x]);
    for (size_t k = 0; k < d.size(); ++k) d[k] -= f.values[y][k];
    return vector_norm(d, f.norm_kind);
}

void require_point_cover(const Cover& cover, int n) {
    require_well_formed(cover);
    if (cover.ambient != Ambient::Points || cover.ambient_size != n)
        throw Error("CoverMismatch", "expected a full cover of the domain points");
    if (!covers_all(cover))
        throw Error("CoverMismatch", "cover must reach every point");
}

void require_pair_cover(const Cover& cover, int pair_count) {
    require_well_formed(cover);
    if (cover.ambient != Ambient::Pairs || cover.ambient_size != pair_count)
        throw Error("CoverMismatch", "expected a full cover of the off-diagonal pairs");
    if (!covers_all(cover))
        throw Error("CoverMismatch", "cover must reach every off-diagonal pair");
}

// Scalar difference quotient of one member over every off-diagonal pair.
std::vector<double> scalar_quotients(const FunctionFamily& A, const PairSpace& pairs,
                                     const ComparisonFunction& phi, int member) {
    std::vector<double> q(static_cast<size_t>(pairs.size()));
    const auto& f = A.member(member);
    for (int k = 0; k < pairs.size(); ++k) {
        const auto [x, y] = pairs.pair(k);
        q[static_cast<size_t>(k)] = value_gap(f, x, y) / phi(pairs.base().dist(x, y));
    }
    return q;
}

struct PointOscillation {
    double achieved = 0;
    ViolationWitness worst;
};

// Worst in-part oscillation of x -> ||f(x)|| (norms=true) or x -> f(x).
PointOscillation point_cover_oscillation(const FunctionFamily& A, const Cover& cover,
                                         bool norms) {
    PointOscillation out;
    for (int p = 0; p < static_cast<int>(cover.parts.size()); ++p) {
        const auto& part = cover.parts[static_cast<size_t>(p)];
        for (size_t a = 0; a < part.size(); ++a)
            for (size_t b = a + 1; b < part.size(); ++b)
                for (int m = 0; m < A.member_count(); ++m) {
                    const auto& f = A.member(m);
                    const double gap =
                        norms ? std::fabs(vector_norm(f.values[part[a]], f.norm_kind) -
                                          vector_norm(f.values[part[b]], f.norm_kind))
                              : value_gap(f, part[a], part[b]);
                    if (gap > out.achieved) {
                        out.achieved = gap;
                        out.worst = ViolationWitness{p, part[a], part[b], m, -1};
                    }
                }
    }
    return out;
}

ConditionReport finish(std::string condition, double eps, double tol, double achieved,
                       double max_quotient, const Cover* cover,
                       const ViolationWitness& worst) {
    ConditionReport rep;
    rep.condition = std::move(condition);
    rep.eps = eps;
    rep.achieved = achieved;
    rep.max_quotient = max_quotient;
    rep.pass = achieved <= eps + tol;
    if (rep.pass) {
        if (cover) rep.witness_cover = *cover;
    } else {
        rep.violation = worst;
    }
    return rep;
}

}  // namespace

// ===== checkers ============================================================

ConditionReport check_equinormed(const FunctionFamily& A, const std::vector<int>& Y,
                                 double eps, double tol) {
    A.require_valid();
    if (Y.empty()) throw Error("EmptySubset", "equinorm subset must be non-empty");
    double achieved = 0;
    ViolationWitness worst;
    for (int m = 0; m < A.member_count(); ++m) {
        const auto& f = A.member(m);
        const double gap = sup_norm(f) - seminorm(f, Y);
        if (gap > achieved) {
            achieved = gap;
            int peak = 0;
            for (int x = 1; x < f.size(); ++x)
                if (vector_norm(f.values[x], f.norm_kind) >
                    vector_norm(f.values[peak], f.norm_kind))
                    peak = x;
            worst = ViolationWitness{-1, peak, -1, m, -1};
        }
    }
    return finish("equinormed", eps, tol, achieved, 0, nullptr, worst);
}

ConditionReport check_B(const FunctionFamily& A, const Cover& cover, double eps,
                        double tol) {
    A.require_valid();
    require_point_cover(cover, A.point_count());
    const auto osc = point_cover_oscillation(A, cover, true);
    return finish("B", eps, tol, osc.achieved, 0, &cover, osc.worst);
}

ConditionReport check_DS(const FunctionFamily& A, const Cover& cover, double eps,
                         double tol) {
    A.require_valid();
    require_point_cover(cover, A.point_count());
    const auto osc = point_cover_oscillation(A, cover, false);
    return finish("DS", eps, tol, osc.achieved, 0, &cover, osc.worst);
}

ConditionReport check_equicontinuity(const FunctionFamily& A, double delta, double eps,
                                     double tol) {
    A.require_valid();
    if (delta < 0) throw Error("NegativeArgument", "threshold must be >= 0");
    const auto& space = *A.domain;
    double achieved = 0;
    ViolationWitness worst;
    for (int x = 0; x < space.size(); ++x)
        for (int y = x + 1; y < space.size(); ++y) {
            if (space.dist(x, y) > delta) continue;
            for (int m = 0; m < A.member_count(); ++m) {
                const double gap = value_gap(A.member(m), x, y);
                if (gap > achieved) {
                    achieved = gap;
                    worst = ViolationWitness{-1, x, y, m, -1};
                }
            }
        }
    return finish("equicontinuity", eps, tol, achieved, 0, nullptr, worst);
}

namespace {

ConditionReport quotient_cover_check(const char* name, const FunctionFamily& A,
                                     const ComparisonFunction& phi, const Cover& cover,
                                     double eps, double tol, bool vector_valued) {
    A.require_valid();
    const auto pairs = off_diagonal(A.domain);
    require_pair_cover(cover, pairs->size());

    double achieved = 0, max_q = 0;
    ViolationWitness worst;
    for (int m = 0; m < A.member_count(); ++m) {
        const auto& f = A.member(m);
        const auto quotient = deleeuw(*pairs, f, phi);
        const auto scalar = scalar_quotients(A, *pairs, phi, m);
        for (double q : scalar) max_q = std::max(max_q, q);
        for (int p = 0; p < static_cast<int>(cover.parts.size()); ++p) {
            const auto& part = cover.parts[static_cast<size_t>(p)];
            if (!vector_valued) {
                // Oscillation of a scalar map is max - min within the part.
                int lo = part[0], hi = part[0];
                for (int k : part) {
                    if (scalar[static_cast<size_t>(k)] < scalar[static_cast<size_t>(lo)]) lo = k;
                    if (scalar[static_cast<size_t>(k)] > scalar[static_cast<size_t>(hi)]) hi = k;
                }
                const double osc = scalar[static_cast<size_t>(hi)] - scalar[static_cast<size_t>(lo)];
                if (osc > achieved) {
                    achieved = osc;
                    worst = ViolationWitness{p, hi, lo, m, -1};
                }
            } else {
                for (size_t a = 0; a < part.size(); ++a)
                    for (size_t b = a + 1; b < part.size(); ++b) {
                        const double osc = value_gap(quotient, part[a], part[b]);
                        if (osc > achieved) {
                            achieved = osc;
                            worst = ViolationWitness{p, part[a], part[b], m, -1};
                        }
                    }
            }
        }
    }
    return finish(name, eps, tol, achieved, max_q, &cover, worst);
}

}  // namespace

ConditionReport check_L(const FunctionFamily& A, const ComparisonFunction& phi,
                        const Cover& cover, double eps, double tol) {
    return quotient_cover_check("L", A, phi, cover, eps, tol, false);
}

ConditionReport check_LDS(const FunctionFamily& A, const ComparisonFunction& phi,
                          const Cover& cover, double eps, double tol) {
    return quotient_cover_check("LDS", A, phi, cover, eps, tol, true);
}

ConditionReport check_lambda(const FunctionFamily& A, const ComparisonFunction& phi,
                             double eps, int n, const LambdaWitness& witness,
                             double tol) {
    A.require_valid();
    if (n < 1) throw Error("NegativeArgument", "outer radius index must be >= 1");
    if (!(witness.delta > 0))
        throw Error("PreconditionFailed", "witness threshold must be positive");
    const auto pairs = off_diagonal(A.domain);
    const auto& space = *A.domain;
    require_well_formed(witness.cover);
    if (witness.cover.ambient != Ambient::Pairs ||
        witness.cover.ambient_size != pairs->size())
        throw Error("CoverMismatch", "witness cover must live on the off-diagonal pairs");

    std::vector<double> depth(static_cast<size_t>(pairs->size()));
    std::vector<uint8_t> in_part(static_cast<size_t>(pairs->size()), 0);
    for (int k = 0; k < pairs->size(); ++k) {
        const auto [x, y] = pairs->pair(k);
        depth[static_cast<size_t>(k)] = tube_depth(space, x, y);
    }
    for (const auto& part : witness.cover.parts)
        for (int k : part) in_part[static_cast<size_t>(k)] = 1;

    for (int k = 0; k < pairs->size(); ++k)
        if (depth[static_cast<size_t>(k)] < witness.delta && !in_part[static_cast<size_t>(k)])
            throw SandwichViolation("inner", k,
                                    "tube pair " + std::to_string(k) + " is uncovered");
    const double outer = 1.0 / n;
    for (const auto& part : witness.cover.parts)
        for (int k : part)
            if (!(depth[static_cast<size_t>(k)] < outer))
                throw SandwichViolation("outer", k,
                                        "pair " + std::to_string(k) +
                                            " escapes the outer tube");

    double achieved = 0, max_q = 0;
    ViolationWitness worst;
    for (int m = 0; m < A.member_count(); ++m) {
        const auto scalar = scalar_quotients(A, *pairs, phi, m);
        for (int p = 0; p < static_cast<int>(witness.cover.parts.size()); ++p) {
            const auto& part = witness.cover.parts[static_cast<size_t>(p)];
            int lo = part[0], hi = part[0];
            for (int k : part) {
                if (scalar[static_cast<size_t>(k)] < scalar[static_cast<size_t>(lo)]) lo = k;
                if (scalar[static_cast<size_t>(k)] > scalar[static_cast<size_t>(hi)]) hi = k;
            }
            max_q = std::max(max_q, scalar[static_cast<size_t>(hi)]);
            const double osc = scalar[static_cast<size_t>(hi)] - scalar[static_cast<size_t>(lo)];
            if (osc > achieved) {
                achieved = osc;
                worst = ViolationWitness{p, hi, lo, m, -1};
            }
        }
    }
    return finish("lambda", eps, tol, achieved, max_q, &witness.cover, worst);
}

ConditionReport check_uniform_local_flatness(const FunctionFamily& A,
                                             const ComparisonFunction& phi,
                                             double delta, double eps, double tol) {
    A.require_valid();
    if (delta < 0) throw Error("NegativeArgument", "threshold must be >= 0");
    const auto& space = *A.domain;
    double achieved = 0;
    ViolationWitness worst;
    for (int x = 0; x < space.size(); ++x)
        for (int y = x + 1; y < space.size(); ++y) {
            const double d = space.dist(x, y);
            if (d > delta) continue;
            for (int m = 0; m < A.member_count(); ++m) {
                const double q = value_gap(A.member(m), x, y) / phi(d);
                if (q > achieved) {
                    achieved = q;
                    worst = ViolationWitness{-1, x, y, m, -1};
                }
            }
        }
    ConditionReport rep = finish("flatness", eps, tol, achieved, achieved, nullptr, worst);
    return rep;
}

// ===== synthesizers ========================================================

namespace {

// Lowest net element whose closed ball of radius `radius` holds the vector.
int ball_index(const std::vector<std::vector<double>>& items, NormKind norm_kind,
               const std::vector<int>& net, double radius,
               const std::vector<double>& v) {
    for (size_t j = 0; j < net.size(); ++j) {
        std::vector<double> d(v);
        const auto& c = items[static_cast<size_t>(net[j])];
        for (size_t k = 0; k < d.size(); ++k) d[k] -= c[k];
        if (vector_norm(d, norm_kind) <= radius) return static_cast<int>(j);
    }
    return -1;
}

std::vector<int> strict_diagonal_net(const FiniteMetricSpace& space, double radius) {
    return greedy_net_indices(
        space.size(), [&](int i, int j) { return space.dist(i, j); }, radius, true);
}

}  // namespace

Cover synthesize_B_cover(const FunctionFamily& family, double eps, double net_eps,
                         const std::vector<int>& Y,
                         std::optional<int> max_net_size) {
    family.require_valid();
    if (eps <= 0) throw Error("NegativeArgument", "target level must be positive");
    if (Y.empty()) throw Error("EmptySubset", "anchor subset must be non-empty");
    for (int t : Y)
        if (t < 0 || t >= family.point_count())
            throw Error("Shape", "anchor point out of range");
    if (net_eps <= 0) net_eps = eps / 32;

    const FunctionFamily diffs = difference_family(family);
    if (!check_equinormed(diffs, Y, eps / 16).pass)
        throw Error("EquinormPreconditionFailed",
                    "pairwise differences are not equinormed over the anchors");

    // Values of every member at every anchor; the net classifies members by
    // which ball each anchored value falls into.
    std::vector<std::vector<double>> anchored;
    for (int i = 0; i < family.member_count(); ++i)
        for (int t : Y) anchored.push_back(family.member(i).values[t]);
    const auto net = greedy_net_indices(
        static_cast<int>(anchored.size()),
        [&](int a, int b) {
            std::vector<double> d(anchored[static_cast<size_t>(a)]);
            for (size_t k = 0; k < d.size(); ++k) d[k] -= anchored[static_cast<size_t>(b)][k];
            return vector_norm(d, family.norm_kind);
        },
        net_eps);
    if (max_net_size && static_cast<int>(net.size()) > *max_net_size)
        throw Error("NetPreconditionFailed", "anchored-value net exceeds the size cap");

    std::vector<std::vector<int>> psi(static_cast<size_t>(family.member_count()));
    for (int i = 0; i < family.member_count(); ++i)
        for (size_t t = 0; t < Y.size(); ++t)
            psi[static_cast<size_t>(i)].push_back(
                ball_index(anchored, family.norm_kind, net, net_eps,
                           anchored[static_cast<size_t>(i) * Y.size() + t]));

    // Class representatives in first-occurrence order (lowest member index).
    std::vector<int> reps;
    for (int i = 0; i < family.member_count(); ++i) {
        bool seen = false;
        for (int r : reps) seen = seen || (psi[static_cast<size_t>(r)] == psi[static_cast<size_t>(i)]);
        if (!seen) reps.push_back(i);
    }

    double M = 0;
    for (const auto& f : family.members) M = std::max(M, sup_norm(f));
    const double width = eps / 2;
    const long long boxes =
        std::max(1LL, static_cast<long long>(std::ceil(2 * M / width)));
    auto box = [&](double v) {
        const long long b = static_cast<long long>(std::floor(v / width));
        return std::clamp(b, 0LL, boxes - 1);
    };

    // Quantized signature of the representative-difference norms at x.
    const int n = family.point_count();
    auto rep_gap = [&](int p, int q, int x) {
        std::vector<double> d(family.member(p).values[static_cast<size_t>(x)]);
        const auto& w = family.member(q).values[static_cast<size_t>(x)];
        for (size_t k = 0; k < d.size(); ++k) d[k] -= w[k];
        return vector_norm(d, family.norm_kind);
    };
    std::map<std::vector<long long>, std::vector<int>> groups;
    std::vector<std::vector<long long>> order;
    for (int x = 0; x < n; ++x) {
        std::vector<long long> key;
        for (int p : reps)
            for (int q : reps) key.push_back(box(rep_gap(p, q, x)));
        groups[key].push_back(x);
        if (groups[key].size() == 1) order.push_back(key);
    }

    Cover cover{Ambient::Points, n, {}};
    for (const auto& key : order) cover.parts.push_back(groups[key]);
    return cover;
}

EquinormWitness equinorm_witness_from_B(const FunctionFamily& family, const Cover& cover,
                                        double level) {
    family.require_valid();
    if (!check_B(family, cover, level).pass)
        throw Error("PreconditionFailed", "cover does not certify the norm condition");
    std::vector<int> Y;
    for (const auto& part : cover.parts)
        Y.push_back(*std::min_element(part.begin(), part.end()));
    std::sort(Y.begin(), Y.end());
    Y.erase(std::unique(Y.begin(), Y.end()), Y.end());
    return EquinormWitness{Y, 2 * level};
}

Cover synthesize_DS_from_B(const FunctionFamily& A, const Cover& B_cover_for_diff,
                           double eps, std::optional<int> max_net_size) {
    A.require_valid();
    if (eps <= 0) throw Error("NegativeArgument", "target level must be positive");
    const FunctionFamily diffs = difference_family(A);
    if (!check_B(diffs, B_cover_for_diff, eps / 8).pass)
        throw Error("PreconditionFailed",
                    "cover does not certify the norm condition for the differences");

    const double radius = eps / 8;
    std::vector<std::vector<double>> values;
    for (const auto& f : A.members)
        for (const auto& v : f.values) values.push_back(v);
    const auto net = greedy_net_indices(
        static_cast<int>(values.size()),
        [&](int a, int b) {
            std::vector<double> d(values[static_cast<size_t>(a)]);
            for (size_t k = 0; k < d.size(); ++k) d[k] -= values[static_cast<size_t>(b)][k];
            return vector_norm(d, A.norm_kind);
        },
        radius);
    if (max_net_size && static_cast<int>(net.size()) > *max_net_size)
        throw Error("NetPreconditionFailed", "image net exceeds the size cap");

    // Classify members by the net balls of their values at the part anchors.
    std::vector<int> anchors;
    for (const auto& part : B_cover_for_diff.parts)
        anchors.push_back(*std::min_element(part.begin(), part.end()));
    std::vector<std::vector<int>> psi(static_cast<size_t>(A.member_count()));
    for (int i = 0; i < A.member_count(); ++i)
        for (int w : anchors)
            psi[static_cast<size_t>(i)].push_back(ball_index(
                values, A.norm_kind, net, radius, A.member(i).values[static_cast<size_t>(w)]));
    std::vector<int> reps;
    for (int i = 0; i < A.member_count(); ++i) {
        bool seen = false;
        for (int r : reps) seen = seen || (psi[static_cast<size_t>(r)] == psi[static_cast<size_t>(i)]);
        if (!seen) reps.push_back(i);
    }

    // Partition key: lowest containing part plus the ball vector of the
    // representatives' values at x.
    const int n = A.point_count();
    std::map<std::vector<int>, std::vector<int>> groups;
    std::vector<std::vector<int>> order;
    for (int x = 0; x < n; ++x) {
        std::vector<int> key;
        int home = -1;
        for (int p = 0; p < static_cast<int>(B_cover_for_diff.parts.size()) && home < 0; ++p) {
            const auto& part = B_cover_for_diff.parts[static_cast<size_t>(p)];
            if (std::find(part.begin(), part.end(), x) != part.end()) home = p;
        }
        key.push_back(home);
        for (int r : reps)
            key.push_back(ball_index(values, A.norm_kind, net, radius,
                                     A.member(r).values[static_cast<size_t>(x)]));
        groups[key].push_back(x);
        if (groups[key].size() == 1) order.push_back(key);
    }
    Cover cover{Ambient::Points, n, {}};
    for (const auto& key : order) cover.parts.push_back(groups[key]);
    return cover;
}

Cover ds_cover_from_equicontinuity(const FunctionFamily& A, double delta, double eps) {
    A.require_valid();
    if (!(delta > 0))
        throw Error("PreconditionFailed", "modulus threshold must be positive");
    if (!check_equicontinuity(A, delta, eps).pass)
        throw Error("PreconditionFailed", "family is not equicontinuous at the threshold");
    const auto& space = *A.domain;
    const auto centers = greedy_eps_net(space, delta / 4);
    Cover cover{Ambient::Points, space.size(), {}};
    for (int c : centers) {
        std::vector<int> part;
        for (int x = 0; x < space.size(); ++x)
            if (space.dist(x, c) <= delta / 2) part.push_back(x);
        cover.parts.push_back(std::move(part));
    }
    return cover;
}

double equicontinuity_from_ds(const FunctionFamily& A, const Cover& cover, double eps) {
    A.require_valid();
    if (!check_DS(A, cover, eps).pass)
        throw Error("PreconditionFailed", "cover does not certify the oscillation bound");
    return lebesgue_delta(*A.domain, cover);
}

TildeCover synthesize_tilde_cover(const FunctionFamily& family, const ComparisonFunction& phi,
                                  double delta, double eps) {
    family.require_valid();
    if (eps <= 0) throw Error("NegativeArgument", "target level must be positive");
    if (delta < 0) throw Error("NegativeArgument", "threshold must be >= 0");
    const auto pairs = off_diagonal(family.domain);
    const auto& space = *family.domain;

    std::vector<int> far;
    for (int k = 0; k < pairs->size(); ++k) {
        const auto [x, y] = pairs->pair(k);
        if (tube_depth(space, x, y) >= delta) far.push_back(k);
    }
    if (far.empty()) throw Error("EmptyTilde", "no pair survives the tube exclusion");

    double m_lower = std::numeric_limits<double>::infinity();
    for (int k : far) {
        const auto [x, y] = pairs->pair(k);
        m_lower = std::min(m_lower, phi(space.dist(x, y)));
    }
    double M = phi(space.diameter());
    for (const auto& f : family.members)
        M = std::max(M, blip_norm(space, f, phi));

    const double bound =
        std::min(m_lower * m_lower * eps / (8 * M * M), m_lower * m_lower * eps / (8 * M));
    const double r = modulus_radius(phi, space.diameter(), bound).r;

    const auto centers = greedy_net_indices(
        static_cast<int>(far.size()),
        [&](int a, int b) {
            return pairs->dist(far[static_cast<size_t>(a)], far[static_cast<size_t>(b)]);
        },
        r / 2);
    Cover cover{Ambient::Pairs, pairs->size(), {}};
    for (int c : centers) {
        std::vector<int> part;
        for (size_t k = 0; k < far.size(); ++k)
            if (pairs->dist(far[k], far[static_cast<size_t>(c)]) <= r / 2)
                part.push_back(far[k]);
        cover.parts.push_back(std::move(part));
    }
    return TildeCover{std::move(cover), delta, r, m_lower, M};
}

double tilde_oscillation(const FunctionFamily& family, const ComparisonFunction& phi,
                         const Cover& cover) {
    family.require_valid();
    const auto pairs = off_diagonal(family.domain);
    require_well_formed(cover);
    if (cover.ambient != Ambient::Pairs || cover.ambient_size != pairs->size())
        throw Error("CoverMismatch", "expected parts over the off-diagonal pairs");
    double worst = 0;
    for (int i = 0; i < family.member_count(); ++i)
        for (int j = 0; j < family.member_count(); ++j) {
            const auto u = difference(family.member(i), family.member(j));
            const auto q = deleeuw(*pairs, u, phi);
            for (const auto& part : cover.parts)
                for (size_t a = 0; a < part.size(); ++a)
                    for (size_t b = a + 1; b < part.size(); ++b)
                        worst = std::max(
                            worst,
                            std::fabs(vector_norm(q.values[static_cast<size_t>(part[a])],
                                                  q.norm_kind) -
                                      vector_norm(q.values[static_cast<size_t>(part[b])],
                                                  q.norm_kind)));
        }
    return worst;
}

LambdaWitness lambda_from_L(const FunctionFamily& family, const ComparisonFunction& phi,
                            const Cover& L_cover, double eps, int n) {
    family.require_valid();
    if (n < 1) throw Error("NegativeArgument", "outer radius index must be >= 1");
    const FunctionFamily diffs = difference_family(family);
    if (!check_L(diffs, phi, L_cover, eps).pass)
        throw Error("PreconditionFailed",
                    "cover does not certify the quotient oscillation bound");

    const auto& space = *family.domain;
    const auto pairs = off_diagonal(family.domain);
    const double radius = 1.0 / n;
    const auto centers = strict_diagonal_net(space, radius);
    const TubeDelta td = max_tube_delta(space, centers, radius);

    Cover cover{Ambient::Pairs, pairs->size(), {}};
    for (const auto& upart : L_cover.parts)
        for (int c : centers) {
            std::vector<int> part;
            for (int k : upart) {
                const auto [x, y] = pairs->pair(k);
                if (space.dist(x, c) < radius && space.dist(y, c) < radius)
                    part.push_back(k);
            }
            if (!part.empty()) cover.parts.push_back(std::move(part));
        }
    return LambdaWitness{td.delta, n, std::move(cover)};
}

LambdaToL L_from_lambda(const FunctionFamily& source, const ComparisonFunction& phi,
                        const LambdaWitness& witness, double eps) {
    source.require_valid();
    if (eps <= 0) throw Error("NegativeArgument", "target level must be positive");
    const FunctionFamily diffs = difference_family(source);
    if (!check_lambda(diffs, phi, eps, witness.n, witness).pass)
        throw Error("PreconditionFailed", "witness does not certify the sandwich bound");

    const auto& space = *source.domain;
    const auto pairs = off_diagonal(source.domain);
    std::vector<double> depth(static_cast<size_t>(pairs->size()));
    double min_phi = std::numeric_limits<double>::infinity(), max_phi = 0;
    for (int k = 0; k < pairs->size(); ++k) {
        const auto [x, y] = pairs->pair(k);
        depth[static_cast<size_t>(k)] = tube_depth(space, x, y);
        const double v = phi(space.dist(x, y));
        min_phi = std::min(min_phi, v);
        max_phi = std::max(max_phi, v);
    }

    double max_sup = 0, blip_bound = 0;
    for (const auto& f : source.members) {
        max_sup = std::max(max_sup, sup_norm(f));
        blip_bound = std::max(blip_bound, blip_norm(space, f, phi));
    }
    const double R = std::max({1.0, max_phi, 2 * max_sup});
    const double chain_bound = 3 * R + 2 * R * R / min_phi;

    Cover cover{Ambient::Pairs, pairs->size(), witness.cover.parts};
    bool any_far = false;
    for (double d : depth) any_far = any_far || (d >= witness.delta / 4);
    if (any_far) {
        const TildeCover tilde =
            synthesize_tilde_cover(diffs, phi, witness.delta / 4, eps / 2);
        for (const auto& tpart : tilde.cover.parts) {
            std::vector<int> shrunk;
            for (int k : tpart)
                if (depth[static_cast<size_t>(k)] > witness.delta / 2) shrunk.push_back(k);
            if (!shrunk.empty()) cover.parts.push_back(std::move(shrunk));
        }
    }
    return LambdaToL{std::move(cover), blip_bound, chain_bound};
}

LambdaWitness lambda_from_flatness(const FunctionFamily& source, const ComparisonFunction& phi,
                                   double eps, int n, double flat_delta) {
    source.require_valid();
    if (n < 1) throw Error("NegativeArgument", "outer radius index must be >= 1");
    if (!(flat_delta > 0))
        throw Error("PreconditionFailed", "flatness threshold must be positive");
    if (!check_uniform_local_flatness(source, phi, flat_delta, eps / 2).pass)
        throw Error("PreconditionFailed", "family is not flat enough at the threshold");

    long long m = std::max<long long>(n, static_cast<long long>(std::ceil(2.0 / flat_delta)));
    const double target = std::min(flat_delta / 2, 1.0 / n);
    while (1.0 / static_cast<double>(m) > target) ++m;
    const double radius = 1.0 / static_cast<double>(m);

    const auto& space = *source.domain;
    const auto pairs = off_diagonal(source.domain);
    const auto centers = strict_diagonal_net(space, radius);
    const TubeDelta td = max_tube_delta(space, centers, radius);

    Cover cover{Ambient::Pairs, pairs->size(), {}};
    for (int c : centers) {
        std::vector<int> part;
        for (int k = 0; k < pairs->size(); ++k) {
            const auto [x, y] = pairs->pair(k);
            if (space.dist(x, c) < radius && space.dist(y, c) < radius) part.push_back(k);
        }
        if (!part.empty()) cover.parts.push_back(std::move(part));
    }
    return LambdaWitness{td.delta, n, std::move(cover)};
}

double flatness_from_net(const FunctionFamily& A, const ComparisonFunction& phi,
                         const std::vector<int>& net_members, double eps) {
    A.require_valid();
    if (eps <= 0) throw Error("NegativeArgument", "target level must be positive");
    if (net_members.empty()) throw Error("EmptySubset", "net needs at least one member");
    for (int j : net_members)
        if (j < 0 || j >= A.member_count())
            throw Error("Shape", "net member index out of range");
    const auto& space = *A.domain;

    for (int i = 0; i < A.member_count(); ++i) {
        double nearest = std::numeric_limits<double>::infinity();
        for (int j : net_members)
            nearest = std::min(nearest,
                               lip_norm(space, difference(A.member(i), A.member(j)), phi,
                                        A.base_point));
        if (nearest > eps / 2 + kDefaultTol)
            throw Error("NotANet", "member " + std::to_string(i) + " sits at distance " +
                                       std::to_string(nearest) + " from the net");
    }

    auto member_flat_at = [&](int j, double delta) {
        for (int x = 0; x < space.size(); ++x)
            for (int y = x + 1; y < space.size(); ++y) {
                const double d = space.dist(x, y);
                if (d <= 0 || d > delta) continue;
                if (value_gap(A.member(j), x, y) / phi(d) > eps / 2 + kDefaultTol)
                    return false;
            }
        return true;
    };
    const auto candidates = space.sorted_distinct_distances();
    for (auto it = candidates.rbegin(); it != candidates.rend(); ++it) {
        bool all = true;
        for (int j : net_members) all = all && member_flat_at(j, *it);
        if (all) return *it;
    }
    return 0;
}

double boundedness_bound(const FunctionFamily& A, const std::vector<int>& Y) {
    A.require_valid();
    if (Y.empty()) throw Error("EmptySubset", "anchor subset must be non-empty");
    double anchored = 0;
    for (const auto& f : A.members) anchored = std::max(anchored, seminorm(f, Y));
    return sup_norm(A.member(0)) + 1 + 2 * anchored;
}

}  // namespace lipcert
