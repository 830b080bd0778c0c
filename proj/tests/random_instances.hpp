#pragma once

// Deterministic random instances shared by the test suites. Spaces come from
// points embedded in the unit cube (so the triangle inequality is inherited),
// optionally passed through a concave distance transform to vary the
// geometry away from Euclidean.

#include <array>
#include <cmath>
#include <memory>
#include <random>
#include <vector>

#include "lipcert/comparison.hpp"
#include "lipcert/family.hpp"
#include "lipcert/metric.hpp"

namespace testgen {

struct Rng {
    std::mt19937_64 eng;

    explicit Rng(uint64_t seed) : eng(seed) {}

    double u01() { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }
    double range(double lo, double hi) { return lo + (hi - lo) * u01(); }
    int pick(int n) { return static_cast<int>(eng() % static_cast<uint64_t>(n)); }
};

inline lipcert::SpacePtr random_space(Rng& rng, int n, bool sqrt_transform = false) {
    for (;;) {
        std::vector<std::array<double, 3>> pts(static_cast<size_t>(n));
        for (auto& p : pts) p = {rng.u01(), rng.u01(), rng.u01()};
        std::vector<std::vector<double>> dist(static_cast<size_t>(n),
                                              std::vector<double>(static_cast<size_t>(n), 0));
        double min_gap = 1.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (i == j) continue;
                double s = 0;
                for (int c = 0; c < 3; ++c) {
                    const double t = pts[static_cast<size_t>(i)][static_cast<size_t>(c)] -
                                     pts[static_cast<size_t>(j)][static_cast<size_t>(c)];
                    s += t * t;
                }
                double d = std::sqrt(s);
                if (sqrt_transform) d = std::sqrt(d);
                dist[static_cast<size_t>(i)][static_cast<size_t>(j)] = d;
                min_gap = std::min(min_gap, d);
            }
        if (n > 1 && min_gap < 1e-6) continue;  // resample near-coincident draws
        return std::make_shared<const lipcert::FiniteMetricSpace>(
            lipcert::FiniteMetricSpace::validated(std::move(dist)));
    }
}

inline lipcert::FunctionFamily random_family(Rng& rng, lipcert::SpacePtr space, int members,
                                             int dim,
                                             lipcert::NormKind norm = lipcert::NormKind::Sup) {
    lipcert::FunctionFamily family;
    family.domain = std::move(space);
    family.norm_kind = norm;
    family.dim = dim;
    family.base_point = 0;
    family.phi = lipcert::ComparisonFunction::identity();
    for (int m = 0; m < members; ++m) {
        lipcert::SampledFunction f;
        f.dim = dim;
        f.norm_kind = norm;
        for (int i = 0; i < family.point_count(); ++i) {
            std::vector<double> row(static_cast<size_t>(dim));
            for (auto& v : row) v = rng.range(-1, 1);
            f.values.push_back(std::move(row));
        }
        family.members.push_back(std::move(f));
    }
    family.require_valid();
    return family;
}

inline lipcert::ComparisonFunction random_phi(Rng& rng) {
    switch (rng.pick(3)) {
        case 0: return lipcert::ComparisonFunction::power(rng.range(0.3, 1.0));
        case 1: return lipcert::ComparisonFunction::log1p();
        default:
            return lipcert::ComparisonFunction::piecewise_linear(
                {{0.0, 0.0}, {0.5, rng.range(0.5, 1.0)}, {2.0, rng.range(1.0, 1.4)}});
    }
}

}  // namespace testgen
