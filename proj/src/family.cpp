#include "lipcert/family.hpp"

#include <algorithm>
#include <cmath>

namespace lipcert {

std::string norm_kind_name(NormKind kind) {
    switch (kind) {
        case NormKind::Sup: return "sup";
        case NormKind::Euclid: return "euclid";
        case NormKind::L1: return "l1";
    }
    return "unknown";
}

double vector_norm(const std::vector<double>& v, NormKind kind) {
    double acc = 0;
    switch (kind) {
        case NormKind::Sup:
            for (double x : v) acc = std::max(acc, std::fabs(x));
            return acc;
        case NormKind::Euclid:
            for (double x : v) acc += x * x;
            return std::sqrt(acc);
        case NormKind::L1:
            for (double x : v) acc += std::fabs(x);
            return acc;
    }
    return 0;
}

void FunctionFamily::require_valid() const {
    if (!domain) throw Error("FamilyInvariant", "family has no domain");
    if (members.empty()) throw Error("FamilyInvariant", "family must be non-empty");
    const int n = domain->size();
    if (base_point < 0 || base_point >= n)
        throw Error("FamilyInvariant", "base point out of range");
    for (const auto& f : members) {
        if (f.size() != n)
            throw Error("FamilyInvariant", "member sample count differs from domain size");
        if (f.dim != dim || f.norm_kind != norm_kind)
            throw Error("FamilyInvariant", "member codomain disagrees with family");
        for (const auto& v : f.values) {
            if (static_cast<int>(v.size()) != dim)
                throw Error("FamilyInvariant", "sample dimension differs from family");
            for (double x : v)
                if (!std::isfinite(x))
                    throw Error("FamilyInvariant", "non-finite sample value");
        }
    }
}

// ===== norms and seminorms =================================================

double sup_norm(const SampledFunction& f) {
    double best = 0;
    for (const auto& v : f.values) best = std::max(best, vector_norm(v, f.norm_kind));
    return best;
}

double seminorm(const SampledFunction& f, const std::vector<int>& Y) {
    if (Y.empty()) throw Error("EmptySubset", "seminorm needs a non-empty subset");
    double best = 0;
    for (int x : Y) {
        if (x < 0 || x >= f.size())
            throw Error("Shape", "subset index out of range");
        best = std::max(best, vector_norm(f.values[x], f.norm_kind));
    }
    return best;
}

namespace {

double diff_norm(const SampledFunction& f, int x, int y) {
    const auto& a = f.values[x];
    const auto& b = f.values[y];
    std::vector<double> d(a.size());
    for (size_t k = 0; k < a.size(); ++k) d[k] = a[k] - b[k];
    return vector_norm(d, f.norm_kind);
}

}  // namespace

double lip_seminorm(const FiniteMetricSpace& space, const SampledFunction& f,
                    const ComparisonFunction& phi) {
    const int n = space.size();
    if (n < 2)
        throw Error("DegenerateSpace", "difference quotients need two points");
    double best = 0;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (x != y) best = std::max(best, diff_norm(f, x, y) / phi(space.dist(x, y)));
    return best;
}

double lip_norm(const FiniteMetricSpace& space, const SampledFunction& f,
                const ComparisonFunction& phi, int base) {
    return vector_norm(f.values[base], f.norm_kind) + lip_seminorm(space, f, phi);
}

double blip_norm(const FiniteMetricSpace& space, const SampledFunction& f,
                 const ComparisonFunction& phi) {
    return sup_norm(f) + lip_seminorm(space, f, phi);
}

// ===== family algebra ======================================================

SampledFunction difference(const SampledFunction& f, const SampledFunction& g) {
    if (f.size() != g.size() || f.dim != g.dim || f.norm_kind != g.norm_kind)
        throw Error("Shape", "difference of incompatible functions");
    SampledFunction out{f.dim, f.norm_kind, f.values};
    for (int x = 0; x < f.size(); ++x)
        for (int k = 0; k < f.dim; ++k) out.values[x][k] -= g.values[x][k];
    return out;
}

SampledFunction scale(const SampledFunction& f, double lambda) {
    SampledFunction out{f.dim, f.norm_kind, f.values};
    for (auto& v : out.values)
        for (double& x : v) x *= lambda;
    return out;
}

FunctionFamily difference_family(const FunctionFamily& A) {
    A.require_valid();
    FunctionFamily out{A.domain, A.norm_kind, A.dim, A.base_point, A.phi, {}};
    out.members.reserve(static_cast<size_t>(A.member_count()) * A.member_count());
    for (int i = 0; i < A.member_count(); ++i)
        for (int j = 0; j < A.member_count(); ++j)
            out.members.push_back(difference(A.member(i), A.member(j)));
    return out;
}

std::vector<NormedVector> section(const FunctionFamily& A, int x) {
    if (x < 0 || x >= A.point_count())
        throw Error("Shape", "section point out of range");
    std::vector<NormedVector> out;
    out.reserve(A.member_count());
    for (const auto& f : A.members) out.push_back(f.at(x));
    return out;
}

std::vector<NormedVector> image(const FunctionFamily& A) {
    std::vector<NormedVector> out;
    out.reserve(static_cast<size_t>(A.member_count()) * A.point_count());
    for (const auto& f : A.members)
        for (int x = 0; x < A.point_count(); ++x) out.push_back(f.at(x));
    return out;
}

// ===== difference quotients ================================================

SampledFunction deleeuw(const PairSpace& pairs, const SampledFunction& f,
                        const ComparisonFunction& phi) {
    SampledFunction out{f.dim, f.norm_kind, {}};
    out.values.reserve(pairs.size());
    for (int k = 0; k < pairs.size(); ++k) {
        const auto [x, y] = pairs.pair(k);
        const double gauge = phi(pairs.base().dist(x, y));
        std::vector<double> v(f.values[x]);
        for (int c = 0; c < f.dim; ++c) v[c] = (v[c] - f.values[y][c]) / gauge;
        out.values.push_back(std::move(v));
    }
    return out;
}

Embedding embed_T(const PairSpace& pairs, const SampledFunction& f,
                  const ComparisonFunction& phi, int base) {
    return Embedding{NormedVector{f.values[base], f.norm_kind},
                     deleeuw(pairs, f, phi)};
}

}  // namespace lipcert
