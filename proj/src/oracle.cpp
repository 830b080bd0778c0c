#include "lipcert/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lipcert {

namespace {

int min_mask_cover(const std::vector<uint32_t>& ball_masks, int count) {
    const uint32_t full = (count == 32) ? 0xffffffffu : ((1u << count) - 1);
    const size_t states = size_t{1} << count;
    constexpr int kInf = 1 << 20;
    std::vector<int> dp(states, kInf);
    dp[0] = 0;
    for (uint32_t mask = 0; mask < states; ++mask) {
        if (dp[mask] >= kInf) continue;
        for (const uint32_t ball : ball_masks) {
            const uint32_t next = (mask | ball) & full;
            dp[next] = std::min(dp[next], dp[mask] + 1);
        }
    }
    return dp[full];
}

}  // namespace

int exact_covering_number(const FiniteMetricSpace& space, double eps) {
    std::vector<int> all(space.size());
    for (int i = 0; i < space.size(); ++i) all[i] = i;
    return exact_covering_number(space, all, eps);
}

int exact_covering_number(const FiniteMetricSpace& space, const std::vector<int>& subset,
                          double eps) {
    if (subset.empty()) throw Error("EmptySubset", "nothing to cover");
    if (eps <= 0) throw Error("NegativeArgument", "ball radius must be positive");
    const int m = static_cast<int>(subset.size());
    if (m > kMaxCoveringPoints)
        throw Error("TooLarge", "exact covering is capped at " +
                                    std::to_string(kMaxCoveringPoints) + " points");
    for (int p : subset)
        if (p < 0 || p >= space.size()) throw Error("Shape", "subset index out of range");
    std::vector<uint32_t> balls(m, 0);
    for (int c = 0; c < m; ++c)
        for (int i = 0; i < m; ++i)
            if (space.dist(subset[c], subset[i]) <= eps) balls[c] |= 1u << i;
    return min_mask_cover(balls, m);
}

CoveringProfile covering_profile(const FiniteMetricSpace& space,
                                 const std::vector<double>& eps_grid) {
    CoveringProfile profile;
    profile.eps_grid = eps_grid;
    for (double eps : eps_grid) {
        profile.exact_sizes.push_back(exact_covering_number(space, eps));
        profile.greedy_sizes.push_back(static_cast<int>(greedy_eps_net(space, eps).size()));
    }
    return profile;
}

namespace {

std::vector<double> flat_difference(const SampledFunction& f, int a, int b) {
    std::vector<double> d(f.values[a]);
    for (size_t k = 0; k < d.size(); ++k) d[k] -= f.values[b][k];
    return d;
}

// Worst per-member separation between two elements; pairwise costs are all an
// in-part oscillation scan ever looks at, which is what makes the partition
// search below exact.
double element_cost(const FunctionFamily& A, OscKind kind,
                    const std::optional<ComparisonFunction>& phi_arg,
                    const PairSpace* pairs, int a, int b) {
    const ComparisonFunction* phi = nullptr;
    if (phi_arg) phi = &*phi_arg;
    else if (A.phi) phi = &*A.phi;

    double worst = 0;
    for (const auto& f : A.members) {
        double c = 0;
        switch (kind) {
            case OscKind::B:
                c = std::fabs(vector_norm(f.values[a], f.norm_kind) -
                              vector_norm(f.values[b], f.norm_kind));
                break;
            case OscKind::DS:
                c = vector_norm(flat_difference(f, a, b), f.norm_kind);
                break;
            case OscKind::L:
            case OscKind::LDS: {
                const auto [xa, ya] = pairs->pair(a);
                const auto [xb, yb] = pairs->pair(b);
                const double ga = (*phi)(pairs->base().dist(xa, ya));
                const double gb = (*phi)(pairs->base().dist(xb, yb));
                if (kind == OscKind::L) {
                    const double qa = vector_norm(flat_difference(f, xa, ya), f.norm_kind) / ga;
                    const double qb = vector_norm(flat_difference(f, xb, yb), f.norm_kind) / gb;
                    c = std::fabs(qa - qb);
                } else {
                    std::vector<double> va = flat_difference(f, xa, ya);
                    std::vector<double> vb = flat_difference(f, xb, yb);
                    for (size_t k = 0; k < va.size(); ++k) va[k] = va[k] / ga - vb[k] / gb;
                    c = vector_norm(va, f.norm_kind);
                }
                break;
            }
        }
        worst = std::max(worst, c);
    }
    return worst;
}

struct PartitionSearch {
    int count = 0;
    int max_parts = 0;
    const std::vector<std::vector<double>>* cost = nullptr;
    std::vector<int> assign;
    double best = std::numeric_limits<double>::infinity();

    void run(int t, int used, double current) {
        if (current >= best) return;
        if (t == count) {
            best = current;
            return;
        }
        const int limit = std::min(used + 1, max_parts);
        for (int c = 0; c < limit; ++c) {
            double grown = current;
            for (int s = 0; s < t; ++s)
                if (assign[s] == c) grown = std::max(grown, (*cost)[s][t]);
            assign[t] = c;
            run(t + 1, std::max(used, c + 1), grown);
        }
        assign[t] = -1;
    }
};

}  // namespace

double exact_min_oscillation(const FunctionFamily& A, int max_parts, OscKind kind,
                             const std::optional<std::vector<int>>& subset,
                             const std::optional<ComparisonFunction>& phi) {
    A.require_valid();
    if (max_parts < 1) throw Error("NegativeArgument", "need at least one part");
    if (max_parts > kMaxOscillationParts)
        throw Error("TooLarge", "exact oscillation is capped at " +
                                    std::to_string(kMaxOscillationParts) + " parts");
    const bool on_pairs = (kind == OscKind::L || kind == OscKind::LDS);
    if (on_pairs && !phi && !A.phi)
        throw Error("PreconditionFailed", "quotient oscillation needs a gauge");

    std::shared_ptr<const PairSpace> pairs;
    int ambient = A.point_count();
    if (on_pairs) {
        pairs = off_diagonal(A.domain);
        ambient = pairs->size();
    }
    std::vector<int> elems;
    if (subset) {
        elems = *subset;
        for (int e : elems)
            if (e < 0 || e >= ambient) throw Error("Shape", "subset index out of range");
    } else {
        elems.resize(ambient);
        for (int e = 0; e < ambient; ++e) elems[e] = e;
    }
    if (elems.empty()) throw Error("EmptySubset", "nothing to partition");
    const int m = static_cast<int>(elems.size());
    if (m > kMaxOscillationElements)
        throw Error("TooLarge", "exact oscillation is capped at " +
                                    std::to_string(kMaxOscillationElements) + " elements");

    std::vector<std::vector<double>> cost(m, std::vector<double>(m, 0));
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b)
            cost[a][b] = cost[b][a] =
                element_cost(A, kind, phi, pairs.get(), elems[a], elems[b]);

    PartitionSearch search;
    search.count = m;
    search.max_parts = max_parts;
    search.cost = &cost;
    search.assign.assign(m, -1);
    search.run(0, 0, 0);
    return search.best;
}

std::optional<PigeonWitness> pigeonhole_B_witness(const FunctionFamily& family, int p,
                                                  const Cover& cover) {
    family.require_valid();
    require_well_formed(cover);
    if (p < 1 || p > family.member_count())
        throw Error("Shape", "sequence length exceeds the family");
    const int parts = static_cast<int>(cover.parts.size());

    int k = -1;
    for (int cand = 1; cand <= p; ++cand)
        if ((1 << (cand - 1)) > parts) {
            k = cand;
            break;
        }
    if (k < 0) return std::nullopt;

    const int low_count = 1 << (k - 1);
    if (low_count > family.point_count())
        throw Error("Shape", "family domain is too small for the bit encoding");

    // Lowest containing part per low point; the first part holding two of
    // them yields the deterministic witness pair.
    std::vector<std::vector<int>> by_part(parts);
    for (int x = 0; x < low_count; ++x) {
        int home = -1;
        for (int c = 0; c < parts && home < 0; ++c)
            if (std::find(cover.parts[c].begin(), cover.parts[c].end(), x) !=
                cover.parts[c].end())
                home = c;
        if (home < 0)
            throw Error("CoverMismatch", "cover misses point " + std::to_string(x));
        by_part[home].push_back(x);
    }
    int part = -1, x = -1, y = -1;
    for (int c = 0; c < parts && part < 0; ++c)
        if (by_part[c].size() >= 2) {
            part = c;
            x = by_part[c][0];
            y = by_part[c][1];
        }
    if (part < 0)
        throw Error("PreconditionFailed", "pigeonhole failed; cover is not well-formed");

    int l = -1;
    for (int bit = 1; bit < k && l < 0; ++bit)
        if (((x >> (bit - 1)) & 1) != ((y >> (bit - 1)) & 1)) l = bit;
    if (((x >> (l - 1)) & 1) == 0) std::swap(x, y);

    const SampledFunction u = difference(family.member(k - 1), family.member(l - 1));
    const double gap = std::fabs(vector_norm(u.values[x], u.norm_kind) -
                                 vector_norm(u.values[y], u.norm_kind));
    return PigeonWitness{part, x, y, k, l, gap};
}

}  // namespace lipcert
