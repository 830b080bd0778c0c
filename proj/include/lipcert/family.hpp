#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lipcert/comparison.hpp"
#include "lipcert/metric.hpp"

namespace lipcert {

enum class NormKind { Sup, Euclid, L1 };

std::string norm_kind_name(NormKind kind);
double vector_norm(const std::vector<double>& v, NormKind kind);

struct NormedVector {
    std::vector<double> coords;
    NormKind norm_kind = NormKind::Sup;
    double norm() const { return vector_norm(coords, norm_kind); }
};

// One codomain vector per point of the domain space (or per pair of a
// PairSpace for difference-quotient functions).
struct SampledFunction {
    int dim = 0;
    NormKind norm_kind = NormKind::Sup;
    std::vector<std::vector<double>> values;

    int size() const { return static_cast<int>(values.size()); }
    NormedVector at(int x) const { return NormedVector{values[x], norm_kind}; }
};

// Non-empty set of sampled functions over one domain, one codomain dimension
// and norm, with a distinguished base point. Immutable by convention.
struct FunctionFamily {
    SpacePtr domain;
    NormKind norm_kind = NormKind::Sup;
    int dim = 0;
    int base_point = 0;
    std::optional<ComparisonFunction> phi;
    std::vector<SampledFunction> members;

    int point_count() const { return domain ? domain->size() : 0; }
    int member_count() const { return static_cast<int>(members.size()); }
    const SampledFunction& member(int i) const { return members[i]; }

    // Throws FamilyInvariant when shapes, base point, or norm kinds disagree.
    void require_valid() const;
};

// ===== norms and seminorms =================================================

double sup_norm(const SampledFunction& f);

// Max of ||f(x)|| over the subset Y; throws EmptySubset.
double seminorm(const SampledFunction& f, const std::vector<int>& Y);

// Max over ordered pairs x != y of ||f(x)-f(y)|| / phi(d(x,y)).
// Throws DegenerateSpace when the domain has fewer than two points.
double lip_seminorm(const FiniteMetricSpace& space, const SampledFunction& f,
                    const ComparisonFunction& phi);

// ||f(base)|| + lip_seminorm.
double lip_norm(const FiniteMetricSpace& space, const SampledFunction& f,
                const ComparisonFunction& phi, int base);

// sup_norm + lip_seminorm.
double blip_norm(const FiniteMetricSpace& space, const SampledFunction& f,
                 const ComparisonFunction& phi);

// ===== family algebra ======================================================

// All m^2 pointwise differences f_i - f_j in (i major, j minor) order.
// Duplicates are retained so witness indices stay stable.
FunctionFamily difference_family(const FunctionFamily& A);

SampledFunction difference(const SampledFunction& f, const SampledFunction& g);
SampledFunction scale(const SampledFunction& f, double lambda);

// Values of all members at one point, in member order.
std::vector<NormedVector> section(const FunctionFamily& A, int x);
// Values of all members at all points (member major, point minor).
std::vector<NormedVector> image(const FunctionFamily& A);

// ===== difference quotients ================================================

// Quotient function on the pair space: value at (x,y) is
// (f(x) - f(y)) / phi(d(x,y)).
SampledFunction deleeuw(const PairSpace& pairs, const SampledFunction& f,
                        const ComparisonFunction& phi);

struct Embedding {
    NormedVector at_base;
    SampledFunction quotient;
};

// (f(base), quotient function); the identity
// ||f(base)|| + sup||quotient|| = lip_norm(f) holds by construction.
Embedding embed_T(const PairSpace& pairs, const SampledFunction& f,
                  const ComparisonFunction& phi, int base);

}  // namespace lipcert
