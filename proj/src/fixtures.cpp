#include "lipcert/fixtures.hpp"

#include <algorithm>
#include <cmath>

#include "lipcert/oracle.hpp"

namespace lipcert {

namespace {

SpacePtr make_space(std::vector<std::vector<double>> dist) {
    return std::make_shared<const FiniteMetricSpace>(
        FiniteMetricSpace::validated(std::move(dist)));
}

SampledFunction make_member(int dim, NormKind norm_kind,
                            std::vector<std::vector<double>> values) {
    return SampledFunction{dim, norm_kind, std::move(values)};
}

int popcount(int v) {
    int c = 0;
    while (v) {
        c += v & 1;
        v >>= 1;
    }
    return c;
}

}  // namespace

Fixture riesz_zero_one(int p, int d) {
    if (p < 2) throw Error("Shape", "sequence length must be at least 2");
    if (p > 10) throw Error("TooLarge", "sequence domain grows as 2^p; keep p <= 10");
    if (d < 0) d = p + 1;
    if (d < p + 1) throw Error("Shape", "basis dimension must be at least p+1");
    const int n = 1 << p;

    std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) dist[i][j] = static_cast<double>(popcount(i ^ j)) / p;

    Fixture fx;
    fx.name = "riesz";
    fx.space = make_space(std::move(dist));
    fx.params = {{"p", static_cast<double>(p)}, {"d", static_cast<double>(d)}};

    FunctionFamily family;
    family.domain = fx.space;
    family.norm_kind = NormKind::Sup;
    family.dim = d;
    family.base_point = 0;
    for (int k = 1; k <= p; ++k) {
        std::vector<std::vector<double>> values(static_cast<size_t>(n),
                                                std::vector<double>(static_cast<size_t>(d), 0));
        for (int i = 0; i < n; ++i) {
            const int coord = ((i >> (k - 1)) & 1) ? k : 0;
            values[static_cast<size_t>(i)][static_cast<size_t>(coord)] = 1;
        }
        family.members.push_back(make_member(d, NormKind::Sup, std::move(values)));
    }
    fx.family = std::move(family);

    fx.expected = {
        {"norms-constant", "B", 0.0, true},
        {"diff-min-osc", "B", 0.5, true},
        {"pigeonhole-gap", "B", 1.0, true},
        {"section-base", "sections", 1.0, true},
    };
    return fx;
}

Fixture sphere_pair(int k) {
    if (k < 2 || k > 6) throw Error("Shape", "basis point count must lie in [2, 6]");
    std::vector<std::vector<double>> dist(static_cast<size_t>(k),
                                          std::vector<double>(static_cast<size_t>(k), 1));
    for (int i = 0; i < k; ++i) dist[static_cast<size_t>(i)][static_cast<size_t>(i)] = 0;

    Fixture fx;
    fx.name = "sphere";
    fx.space = make_space(std::move(dist));
    fx.params = {{"k", static_cast<double>(k)}};

    FunctionFamily family;
    family.domain = fx.space;
    family.norm_kind = NormKind::Sup;
    family.dim = k;
    family.base_point = 0;
    for (double scale : {1.0, 2.0}) {
        std::vector<std::vector<double>> values(static_cast<size_t>(k),
                                                std::vector<double>(static_cast<size_t>(k), 0));
        for (int i = 0; i < k; ++i) values[static_cast<size_t>(i)][static_cast<size_t>(i)] = scale;
        family.members.push_back(make_member(k, NormKind::Sup, std::move(values)));
    }
    fx.family = std::move(family);

    fx.expected = {
        {"B-family-zero", "B", 0.0, true},
        {"B-diff-zero", "B", 0.0, true},
        {"DS-min-osc", "DS", 1.0, true},
    };
    return fx;
}

Fixture tent_family(int K) {
    if (K < 2) throw Error("Shape", "grid extent must be at least 2");
    const int n = K + 1;
    std::vector<std::vector<double>> dist(static_cast<size_t>(n),
                                          std::vector<double>(static_cast<size_t>(n), 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) dist[static_cast<size_t>(i)][static_cast<size_t>(j)] = std::abs(i - j);

    Fixture fx;
    fx.name = "tent";
    fx.space = make_space(std::move(dist));
    fx.params = {{"K", static_cast<double>(K)}};
    fx.phi = ComparisonFunction::identity();

    FunctionFamily family;
    family.domain = fx.space;
    family.norm_kind = NormKind::Sup;
    family.dim = 1;
    family.base_point = 0;
    family.phi = fx.phi;
    const int m = K / 2;
    for (int t = 1; t <= m; ++t) {
        std::vector<std::vector<double>> values;
        values.reserve(static_cast<size_t>(n));
        for (int x = 0; x < n; ++x) {
            const double v = 1.0 - std::fabs(static_cast<double>(x) / t - 1.0);
            values.push_back({std::max(0.0, v)});
        }
        family.members.push_back(make_member(1, NormKind::Sup, std::move(values)));
    }
    family.members.push_back(make_member(
        1, NormKind::Sup,
        std::vector<std::vector<double>>(static_cast<size_t>(n), std::vector<double>{0})));
    fx.family = std::move(family);

    fx.expected = {
        {"lip-pattern", "lip", 1e-12, true},
        {"zero-member", "norms", 0.0, true},
    };
    if (K >= 8) fx.expected.push_back({"two-part-min", "B", 1.0, true});
    return fx;
}

Fixture ball_cover_failure(int inv_h) {
    if (inv_h < 2) throw Error("Shape", "grid density must be at least 2");
    const int n = 2 * inv_h + 1;
    const double h = 1.0 / inv_h;
    std::vector<std::vector<double>> dist(static_cast<size_t>(n),
                                          std::vector<double>(static_cast<size_t>(n), 0));
    auto coord = [&](int i) { return static_cast<double>(i) / inv_h; };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            dist[static_cast<size_t>(i)][static_cast<size_t>(j)] = std::fabs(coord(i) - coord(j));

    Fixture fx;
    fx.name = "ball";
    fx.space = make_space(std::move(dist));
    fx.params = {{"inv_h", static_cast<double>(inv_h)}, {"h", h}};
    fx.phi = ComparisonFunction::identity();

    FunctionFamily family;
    family.domain = fx.space;
    family.norm_kind = NormKind::Sup;
    family.dim = 1;
    family.base_point = 0;
    family.phi = fx.phi;
    std::vector<std::vector<double>> values;
    for (int i = 0; i < n; ++i) values.push_back({1.0 - std::fabs(coord(i) - 1.0)});
    family.members.push_back(make_member(1, NormKind::Sup, std::move(values)));
    fx.family = std::move(family);

    fx.expected = {
        {"quotient-plus", "LDS", 1.0, true},
        {"quotient-minus", "LDS", 1.0, true},
        {"ball-part-osc", "LDS", 2.0, true},
        {"sign-cover-zero", "LDS", 0.0, true},
    };
    return fx;
}

FiniteMetricSpace zminus_metric(int K) {
    if (K < 2) throw Error("Shape", "truncation must be at least 2");
    const int n = 2 * K;
    // index 2(t-1) is +t, index 2t-1 is -t
    auto mag = [](int idx) { return idx / 2 + 1; };
    auto pos = [](int idx) { return idx % 2 == 0; };
    std::vector<std::vector<double>> dist(static_cast<size_t>(n),
                                          std::vector<double>(static_cast<size_t>(n), 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const int a = mag(i), b = mag(j);
            const bool same_sign = pos(i) == pos(j);
            double d;
            if (a == 1 && b == 1) d = 0.5;
            else if (a == 1 || b == 1) d = same_sign ? 0.5 - 1.0 / (2 * std::max(a, b)) : 0.5;
            else d = 1.0 / (2 * a) + 1.0 / (2 * b);
            dist[static_cast<size_t>(i)][static_cast<size_t>(j)] = d;
        }
    return FiniteMetricSpace::validated(std::move(dist));
}

Fixture zminus_fixture(int K) {
    Fixture fx;
    fx.name = "zminus";
    fx.space = std::make_shared<const FiniteMetricSpace>(zminus_metric(K));
    fx.params = {{"K", static_cast<double>(K)}};
    fx.expected = {
        {"metric-valid", "metric", 0.0, true},
        {"one-opposite", "metric", 0.5, true},
        {"two-opposite", "metric", 0.5, true},
        {"tube-delta", "tube", 1.0 / K, true},
    };
    return fx;
}

Fixture linfty_family(int K, const std::vector<double>& a_grid) {
    if (K < 2) throw Error("Shape", "need at least two basis points");
    if (a_grid.empty()) throw Error("EmptySubset", "coefficient grid must be non-empty");
    const int n = K + 1;
    std::vector<std::vector<double>> dist(static_cast<size_t>(n),
                                          std::vector<double>(static_cast<size_t>(n), 0));
    for (int i = 1; i < n; ++i) {
        dist[0][static_cast<size_t>(i)] = dist[static_cast<size_t>(i)][0] = 1.0 / i;
        for (int j = 1; j < n; ++j)
            if (i != j)
                dist[static_cast<size_t>(i)][static_cast<size_t>(j)] = 1.0 / std::min(i, j);
    }

    Fixture fx;
    fx.name = "linfty";
    fx.space = make_space(std::move(dist));
    fx.params = {{"K", static_cast<double>(K)}};
    fx.phi = ComparisonFunction::identity();

    FunctionFamily family;
    family.domain = fx.space;
    family.norm_kind = NormKind::Sup;
    family.dim = K;
    family.base_point = 0;
    family.phi = fx.phi;
    for (double a : a_grid) {
        std::vector<std::vector<double>> values(static_cast<size_t>(n),
                                                std::vector<double>(static_cast<size_t>(K), 0));
        for (int i = 1; i < n; ++i)
            values[static_cast<size_t>(i)][static_cast<size_t>(i - 1)] = a / i;
        family.members.push_back(make_member(K, NormKind::Sup, std::move(values)));
    }
    fx.family = std::move(family);

    fx.expected = {
        {"L-osc-zero", "L", 0.0, true},
        {"L-max-quotient", "L", 0.0, true},
    };
    if (a_grid.size() >= 2) fx.expected.push_back({"LDS-critical", "LDS", 1.0, true});
    return fx;
}

// ===== claim verification ===================================================

namespace {

ClaimOutcome outcome(const ExpectedClaim& claim, double value, bool pass,
                     std::string detail) {
    return ClaimOutcome{claim.id, claim.verdict, pass, value, std::move(detail)};
}

ClaimOutcome verify_riesz(const Fixture& fx, const ExpectedClaim& claim) {
    const auto& A = *fx.family;
    const int p = static_cast<int>(fx.params.at("p"));
    if (claim.id == "norms-constant") {
        const auto rep = check_B(A, trivial_cover(Ambient::Points, A.point_count()), 0.0);
        return outcome(claim, rep.achieved, rep.pass, "norm oscillation over one part");
    }
    if (claim.id == "diff-min-osc") {
        const int budget = std::min((1 << (p - 1)) - 1, kMaxOscillationParts);
        std::vector<int> subset;
        for (int i = 0; i < std::min(A.point_count(), kMaxOscillationElements); ++i)
            subset.push_back(i);
        const double v =
            exact_min_oscillation(difference_family(A), budget, OscKind::B, subset);
        return outcome(claim, v, v >= claim.eps - 1e-9,
                       "least norm oscillation over " + std::to_string(budget) + " parts");
    }
    if (claim.id == "pigeonhole-gap") {
        const auto w = pigeonhole_B_witness(
            A, p, trivial_cover(Ambient::Points, A.point_count()));
        if (!w) return outcome(claim, 0, false, "no counting witness found");
        return outcome(claim, w->gap, std::fabs(w->gap - claim.eps) <= 1e-9,
                       "norm gap of the witness difference");
    }
    if (claim.id == "section-base") {
        auto vals = section(A, 0);
        std::sort(vals.begin(), vals.end(),
                  [](const NormedVector& a, const NormedVector& b) { return a.coords < b.coords; });
        int distinct = vals.empty() ? 0 : 1;
        for (size_t i = 1; i < vals.size(); ++i)
            if (vals[i].coords != vals[i - 1].coords) ++distinct;
        return outcome(claim, distinct, distinct == static_cast<int>(claim.eps),
                       "distinct values at the all-zeros point");
    }
    throw Error("Shape", "unknown claim " + claim.id);
}

ClaimOutcome verify_sphere(const Fixture& fx, const ExpectedClaim& claim) {
    const auto& A = *fx.family;
    const auto trivial = trivial_cover(Ambient::Points, A.point_count());
    if (claim.id == "B-family-zero") {
        const auto rep = check_B(A, trivial, 0.0);
        return outcome(claim, rep.achieved, rep.pass, "norm oscillation of the family");
    }
    if (claim.id == "B-diff-zero") {
        const auto rep = check_B(difference_family(A), trivial, 0.0);
        return outcome(claim, rep.achieved, rep.pass, "norm oscillation of the differences");
    }
    if (claim.id == "DS-min-osc") {
        const int k = static_cast<int>(fx.params.at("k"));
        const int budget = std::min(k - 1, kMaxOscillationParts);
        const double v = exact_min_oscillation(A, budget, OscKind::DS);
        return outcome(claim, v, v >= claim.eps - 1e-9,
                       "least value oscillation over " + std::to_string(budget) + " parts");
    }
    throw Error("Shape", "unknown claim " + claim.id);
}

ClaimOutcome verify_tent(const Fixture& fx, const ExpectedClaim& claim) {
    const auto& A = *fx.family;
    const auto& space = *A.domain;
    const auto phi = *fx.phi;
    if (claim.id == "lip-pattern") {
        double worst = 0;
        for (int t = 1; t < A.member_count(); ++t)
            worst = std::max(worst,
                             std::fabs(lip_seminorm(space, A.member(t - 1), phi) - 1.0 / t));
        return outcome(claim, worst, worst <= claim.eps,
                       "worst deviation of the slope pattern");
    }
    if (claim.id == "zero-member") {
        const auto& z = A.member(A.member_count() - 1);
        const double v = sup_norm(z) + lip_seminorm(space, z, phi);
        return outcome(claim, v, v == 0.0, "norms of the trailing zero member");
    }
    if (claim.id == "two-part-min") {
        std::vector<int> subset;
        for (int x = 1; x <= kMaxOscillationElements; ++x) subset.push_back(x);
        const double v = exact_min_oscillation(difference_family(A), 2, OscKind::B, subset);
        return outcome(claim, v, std::fabs(v - claim.eps) <= 1e-12,
                       "least norm oscillation of two parts on the inner grid");
    }
    throw Error("Shape", "unknown claim " + claim.id);
}

ClaimOutcome verify_ball(const Fixture& fx, const ExpectedClaim& claim) {
    const auto& A = *fx.family;
    const auto pairs = off_diagonal(A.domain);
    const auto phi = *fx.phi;
    const int inv_h = static_cast<int>(fx.params.at("inv_h"));
    const double h = fx.params.at("h");
    const int plus = pairs->index_of(inv_h - 1, inv_h - 2);
    const int minus = pairs->index_of(inv_h - 2, inv_h - 1);
    const auto quotient = deleeuw(*pairs, A.member(0), phi);

    if (claim.id == "quotient-plus" || claim.id == "quotient-minus") {
        const bool is_plus = claim.id == "quotient-plus";
        const double v = quotient.values[static_cast<size_t>(is_plus ? plus : minus)][0];
        const double want = is_plus ? claim.eps : -claim.eps;
        return outcome(claim, v, std::fabs(v - want) <= 1e-12,
                       "quotient value at the slope pair");
    }
    if (claim.id == "ball-part-osc") {
        // One closed max-metric ball holding both oriented slope pairs, the
        // rest singletons.
        std::vector<int> ball;
        std::vector<uint8_t> used(static_cast<size_t>(pairs->size()), 0);
        for (int q = 0; q < pairs->size(); ++q)
            if (pairs->dist(q, plus) <= h) {
                ball.push_back(q);
                used[static_cast<size_t>(q)] = 1;
            }
        Cover cover{Ambient::Pairs, pairs->size(), {ball}};
        for (int q = 0; q < pairs->size(); ++q)
            if (!used[static_cast<size_t>(q)]) cover.parts.push_back({q});
        const auto rep = check_LDS(A, phi, cover, claim.eps);
        return outcome(claim, rep.achieved, std::fabs(rep.achieved - claim.eps) <= 1e-12,
                       "quotient oscillation inside the forced ball");
    }
    if (claim.id == "sign-cover-zero") {
        // Same-side pairs split by slope sign; cross pairs isolated.
        std::vector<std::vector<int>> sign_parts(4);
        std::vector<int> singles;
        for (int q = 0; q < pairs->size(); ++q) {
            const auto [i, j] = pairs->pair(q);
            const bool left = i <= inv_h && j <= inv_h;
            const bool right = i >= inv_h && j >= inv_h;
            if (left) sign_parts[i > j ? 0 : 1].push_back(q);
            else if (right) sign_parts[i < j ? 2 : 3].push_back(q);
            else singles.push_back(q);
        }
        Cover cover{Ambient::Pairs, pairs->size(), {}};
        for (auto& part : sign_parts)
            if (!part.empty()) cover.parts.push_back(std::move(part));
        for (int q : singles) cover.parts.push_back({q});
        const auto rep = check_LDS(A, phi, cover, claim.eps);
        return outcome(claim, rep.achieved, rep.achieved <= 1e-12,
                       "quotient oscillation under the slope-sign cover");
    }
    throw Error("Shape", "unknown claim " + claim.id);
}

ClaimOutcome verify_zminus(const Fixture& fx, const ExpectedClaim& claim) {
    const auto& space = *fx.space;
    const int K = static_cast<int>(fx.params.at("K"));
    if (claim.id == "metric-valid") {
        const auto v = find_metric_violation(space.matrix());
        return outcome(claim, v ? 1 : 0, !v, v ? v->describe() : "all axioms hold");
    }
    if (claim.id == "one-opposite") {
        const double v = space.dist(0, 1);
        return outcome(claim, v, v == claim.eps, "distance between +1 and -1");
    }
    if (claim.id == "two-opposite") {
        const double v = space.dist(2, 3);
        return outcome(claim, v, v == claim.eps, "distance between +2 and -2");
    }
    if (claim.id == "tube-delta") {
        const auto td = max_tube_delta(space, {0, 1}, 0.5);
        return outcome(claim, td.delta,
                       !td.unbounded && std::fabs(td.delta - 1.0 / K) <= 1e-12,
                       "largest safe tube threshold for the two half-balls");
    }
    throw Error("Shape", "unknown claim " + claim.id);
}

ClaimOutcome verify_linfty(const Fixture& fx, const ExpectedClaim& claim) {
    const auto& A = *fx.family;
    const auto phi = *fx.phi;
    const auto pairs = off_diagonal(A.domain);
    const int K = static_cast<int>(fx.params.at("K"));

    // Coefficient a of each member can be read off at x_1 , coordinate 0.
    std::vector<double> coeffs;
    for (const auto& f : A.members) coeffs.push_back(f.values[1][0]);
    double spread = 0;
    for (double a : coeffs)
        for (double b : coeffs) spread = std::max(spread, std::fabs(a - b));

    if (claim.id == "L-osc-zero" || claim.id == "L-max-quotient") {
        const auto rep = check_L(difference_family(A), phi,
                                 trivial_cover(Ambient::Pairs, pairs->size()), spread);
        if (claim.id == "L-osc-zero")
            return outcome(claim, rep.achieved, rep.achieved <= 1e-12,
                           "quotient oscillation under the one-part cover");
        return outcome(claim, rep.max_quotient,
                       std::fabs(rep.max_quotient - spread) <= 1e-12,
                       "largest quotient against the coefficient spread");
    }
    if (claim.id == "LDS-critical") {
        std::vector<int> critical;
        for (int t = 1; t <= std::min(K, 5); ++t) critical.push_back(pairs->index_of(t, 0));
        const int budget = std::min(static_cast<int>(critical.size()) - 1,
                                    kMaxOscillationParts);
        const double v = exact_min_oscillation(A, budget, OscKind::LDS, critical, phi);
        return outcome(claim, v, v >= claim.eps - 1e-9,
                       "least quotient oscillation over the pinned pairs");
    }
    throw Error("Shape", "unknown claim " + claim.id);
}

}  // namespace

std::vector<ClaimOutcome> verify_fixture(const Fixture& fixture) {
    std::vector<ClaimOutcome> out;
    for (const auto& claim : fixture.expected) {
        if (fixture.name == "riesz") out.push_back(verify_riesz(fixture, claim));
        else if (fixture.name == "sphere") out.push_back(verify_sphere(fixture, claim));
        else if (fixture.name == "tent") out.push_back(verify_tent(fixture, claim));
        else if (fixture.name == "ball") out.push_back(verify_ball(fixture, claim));
        else if (fixture.name == "zminus") out.push_back(verify_zminus(fixture, claim));
        else if (fixture.name == "linfty") out.push_back(verify_linfty(fixture, claim));
        else throw Error("Shape", "unknown fixture " + fixture.name);
    }
    return out;
}

}  // namespace lipcert
