// End-to-end gate: ten numbered properties covering synthesis soundness, the
// canned counterexamples, the quotient embedding, tube thresholds, and the
// oscillation invariants. Prints one [PASS]/[FAIL] line per property and
// exits 0 only when every one holds.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "lipcert/conditions.hpp"
#include "lipcert/fixtures.hpp"
#include "lipcert/oracle.hpp"
#include "random_instances.hpp"

using namespace lipcert;
using testgen::Rng;

namespace {

std::vector<int> all_points(const FunctionFamily& A) {
    std::vector<int> Y(static_cast<size_t>(A.point_count()));
    for (size_t i = 0; i < Y.size(); ++i) Y[i] = static_cast<int>(i);
    return Y;
}

Cover one_part(Ambient ambient, int n) {
    Cover c{ambient, n, {{}}};
    for (int i = 0; i < n; ++i) c.parts[0].push_back(i);
    return c;
}

Cover singletons(Ambient ambient, int n) {
    Cover c{ambient, n, {}};
    for (int i = 0; i < n; ++i) c.parts.push_back({i});
    return c;
}

std::string at_trial(int t, const std::string& what) {
    return "trial " + std::to_string(t) + ": " + what;
}

// ---- 1: every synthesis pipeline yields a witness its target check accepts

bool synthesis_soundness(std::string& why) {
    Rng rng(101);
    const double eps_grid[3] = {1.0, 0.5, 0.25};
    for (int t = 0; t < 500; ++t) {
        const int n = 2 + rng.pick(9);
        const int m = 1 + rng.pick(8);
        const int d = 1 + rng.pick(3);
        const double eps = eps_grid[t % 3];
        const int tube_n = 1 + t % 3;
        auto space = testgen::random_space(rng, n, t % 2 == 1);
        auto A = testgen::random_family(rng, space, m, d);
        const auto phi = testgen::random_phi(rng);
        const auto Y = all_points(A);
        const auto diffs = difference_family(A);
        const auto pairs = off_diagonal(A.domain);

        const auto b = synthesize_B_cover(A, eps, 0, Y);
        if (!check_B(diffs, b, eps).pass) {
            why = at_trial(t, "B cover missed its bound");
            return false;
        }

        const auto b8 = synthesize_B_cover(A, eps / 8, 0, Y);
        const auto ds = synthesize_DS_from_B(A, b8, eps);
        if (!check_DS(A, ds, eps).pass) {
            why = at_trial(t, "DS cover missed its bound");
            return false;
        }

        // Largest threshold the family is equicontinuous at, then round trip.
        double ec_delta = space->min_positive_distance() / 2;
        for (double cand : space->sorted_distinct_distances())
            if (check_equicontinuity(A, cand, eps).pass) ec_delta = std::max(ec_delta, cand);
        const auto balls = ds_cover_from_equicontinuity(A, ec_delta, eps);
        if (!check_DS(A, balls, eps).pass) {
            why = at_trial(t, "ball cover missed its bound");
            return false;
        }

        double min_depth = space->diameter();
        for (int k = 0; k < pairs->size(); ++k) {
            const auto pr = pairs->pair(k);
            min_depth = std::min(min_depth, tube_depth(*space, pr.first, pr.second));
        }
        const double tilde_delta = t % 3 == 0 ? 0.0 : min_depth / 2;
        const auto tc = synthesize_tilde_cover(A, phi, tilde_delta, eps);
        if (tilde_oscillation(A, phi, tc.cover) > eps + 1e-9) {
            why = at_trial(t, "tilde cover oscillates past its bound");
            return false;
        }

        const auto L_cover = singletons(Ambient::Pairs, pairs->size());
        const auto w = lambda_from_L(A, phi, L_cover, eps, tube_n);
        if (!check_lambda(diffs, phi, eps, tube_n, w).pass) {
            why = at_trial(t, "sandwich witness missed its bound");
            return false;
        }

        const auto half = lambda_from_L(A, phi, L_cover, eps / 2, tube_n);
        const auto back = L_from_lambda(A, phi, half, eps);
        if (!check_L(diffs, phi, back.cover, eps).pass) {
            why = at_trial(t, "recovered L cover missed its bound");
            return false;
        }

        double flat_delta = space->min_positive_distance() / 2;
        for (double cand : space->sorted_distinct_distances())
            if (check_uniform_local_flatness(A, phi, cand, eps / 2).pass)
                flat_delta = std::max(flat_delta, cand);
        const auto fw = lambda_from_flatness(A, phi, eps, tube_n, flat_delta);
        if (!check_lambda(diffs, phi, eps, tube_n, fw).pass) {
            why = at_trial(t, "flatness sandwich witness missed its bound");
            return false;
        }
    }
    return true;
}

// ---- 2: zero-one sequence family separates (B) from small covers

bool sequence_separation(std::string& why) {
    const auto fx = riesz_zero_one(3);
    const auto& A = *fx.family;
    if (!check_B(A, trivial_cover(Ambient::Points, A.point_count()), 0.0).pass) {
        why = "norms are not flat on the trivial cover";
        return false;
    }
    const auto diffs = difference_family(A);
    for (int parts = 1; parts <= 3; ++parts) {
        const double v = exact_min_oscillation(diffs, parts, OscKind::B);
        if (v < 0.5 - 1e-9) {
            why = std::to_string(parts) + " parts reached oscillation " + std::to_string(v);
            return false;
        }
    }
    const double v3 = exact_min_oscillation(diffs, 3, OscKind::B);
    if (std::fabs(v3 - 1.0) > 1e-9) {
        why = "3-part minimum is " + std::to_string(v3) + ", expected 1";
        return false;
    }
    return true;
}

// ---- 3: basis-point sphere separates (B) from (DS)

bool sphere_separation(std::string& why) {
    const auto fx = sphere_pair(4);
    const auto& A = *fx.family;
    const auto trivial = trivial_cover(Ambient::Points, A.point_count());
    if (!check_B(A, trivial, 0.0).pass || !check_B(difference_family(A), trivial, 0.0).pass) {
        why = "norm oscillation is not zero on the trivial cover";
        return false;
    }
    const double v = exact_min_oscillation(A, 3, OscKind::DS);
    if (v < 1.0 - 1e-9) {
        why = "3-part value oscillation reached " + std::to_string(v);
        return false;
    }
    return true;
}

// ---- 4: base norm plus quotient sup norm equals the lip norm

bool embedding_isometry(std::string& why) {
    Rng rng(404);
    const NormKind kinds[3] = {NormKind::Sup, NormKind::Euclid, NormKind::L1};
    for (int t = 0; t < 1000; ++t) {
        const int n = 2 + rng.pick(7);
        auto space = testgen::random_space(rng, n, t % 2 == 1);
        auto A = testgen::random_family(rng, space, 1, 1 + rng.pick(3), kinds[t % 3]);
        const auto phi = testgen::random_phi(rng);
        const int base = rng.pick(n);
        const auto pairs = off_diagonal(space);

        const auto emb = embed_T(*pairs, A.member(0), phi, base);
        const double lhs = emb.at_base.norm() + sup_norm(emb.quotient);
        const double rhs = lip_norm(*space, A.member(0), phi, base);
        if (std::fabs(lhs - rhs) > 1e-9) {
            why = at_trial(t, "gap " + std::to_string(std::fabs(lhs - rhs)));
            return false;
        }
    }
    return true;
}

// ---- 5: the quotient map kills exactly the constant shifts

bool quotient_kernel(std::string& why) {
    Rng rng(505);
    auto shift_size = [](const FunctionFamily& A, const SampledFunction& f,
                         const SampledFunction& g) {
        const auto diff = difference(f, g);
        double worst = 0;
        for (int x = 0; x < diff.size(); ++x) {
            std::vector<double> v(diff.values[static_cast<size_t>(x)]);
            for (size_t k = 0; k < v.size(); ++k)
                v[k] -= diff.values[static_cast<size_t>(A.base_point)][k];
            worst = std::max(worst, vector_norm(v, diff.norm_kind));
        }
        return worst;
    };

    for (int t = 0; t < 500; ++t) {
        const int n = 2 + rng.pick(7);
        auto space = testgen::random_space(rng, n, t % 2 == 1);
        auto A = testgen::random_family(rng, space, 2, 1 + rng.pick(3));
        const auto phi = testgen::random_phi(rng);
        const auto pairs = off_diagonal(space);

        const SampledFunction& f = A.member(0);
        const SampledFunction g = t % 10 == 0 ? f : A.member(1);
        const double image_gap =
            sup_norm(difference(deleeuw(*pairs, f, phi), deleeuw(*pairs, g, phi)));
        const double shift_gap = shift_size(A, f, g);
        if ((image_gap <= 1e-12) != (shift_gap <= 1e-12)) {
            why = at_trial(t, "image gap " + std::to_string(image_gap) + " vs shift gap " +
                                  std::to_string(shift_gap));
            return false;
        }
    }

    // Constructed constant shifts with dyadic values stay exact in both maps.
    for (int t = 0; t < 100; ++t) {
        const int n = 2 + rng.pick(6);
        const int d = 1 + rng.pick(3);
        auto space = testgen::random_space(rng, n);
        const auto phi = testgen::random_phi(rng);
        const auto pairs = off_diagonal(space);

        FunctionFamily A;
        A.domain = space;
        A.dim = d;
        SampledFunction f{d, NormKind::Sup, {}};
        for (int x = 0; x < n; ++x) {
            std::vector<double> row(static_cast<size_t>(d));
            for (auto& v : row) v = static_cast<double>(rng.pick(2049) - 1024) / 1024.0;
            f.values.push_back(std::move(row));
        }
        SampledFunction g = f;
        for (auto& row : g.values)
            for (size_t k = 0; k < row.size(); ++k) row[k] += static_cast<double>(1 + k);
        A.members = {f, g};
        A.require_valid();

        const double image_gap =
            sup_norm(difference(deleeuw(*pairs, f, phi), deleeuw(*pairs, g, phi)));
        const double shift_gap = shift_size(A, f, g);
        if (image_gap > 1e-12 || shift_gap > 1e-12) {
            why = at_trial(t, "constant shift leaked: image " + std::to_string(image_gap) +
                                  ", shift " + std::to_string(shift_gap));
            return false;
        }
    }
    return true;
}

// ---- 6: equicontinuity survives the ball-cover round trip

bool equicontinuity_round_trip(std::string& why) {
    Rng rng(606);
    for (int t = 0; t < 200; ++t) {
        const int n = 3 + rng.pick(6);
        auto space = testgen::random_space(rng, n, t % 2 == 1);
        auto A = testgen::random_family(rng, space, 1 + rng.pick(3), 1 + rng.pick(2));
        const double delta =
            std::max(4 * space->min_positive_distance(), space->diameter() / 2);
        const double eps = check_equicontinuity(A, delta, 1e300).achieved;

        const auto cover = ds_cover_from_equicontinuity(A, delta, eps);
        if (!check_DS(A, cover, eps).pass) {
            why = at_trial(t, "ball cover missed the value bound");
            return false;
        }
        const double recovered = equicontinuity_from_ds(A, cover, eps);
        if (!(recovered > 0.0)) {
            why = at_trial(t, "recovered threshold is not positive");
            return false;
        }
        if (!check_equicontinuity(A, recovered, eps).pass) {
            why = at_trial(t, "recovered threshold fails at the same level");
            return false;
        }
    }
    return true;
}

// ---- 7: tube thresholds are exact maxima; truncated-integer thresholds decay

bool tube_threshold(std::string& why) {
    Rng rng(707);
    for (int t = 0; t < 200; ++t) {
        const int n = 2 + rng.pick(9);
        auto space = testgen::random_space(rng, n, t % 2 == 1);
        const double r = std::max(space->min_positive_distance(),
                                  rng.range(0.15, 0.9) * space->diameter());
        const auto centers = greedy_eps_net(*space, r / 2);
        const auto td = max_tube_delta(*space, centers, r);

        auto in_balls = [&](int i, int j) {
            for (int c : centers)
                if (space->dist(i, c) < r && space->dist(j, c) < r) return true;
            return false;
        };
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (tube_depth(*space, i, j) < td.delta && !in_balls(i, j)) {
                    why = at_trial(t, "pair inside the tube escapes the balls");
                    return false;
                }
        if (!td.unbounded) {
            double next = 0;
            for (double cand : tube_delta_candidates(*space, r))
                if (cand > td.delta && (next == 0 || cand < next)) next = cand;
            bool breaks = next == 0;
            for (int i = 0; i < n && !breaks; ++i)
                for (int j = 0; j < n && !breaks; ++j)
                    if (tube_depth(*space, i, j) < next && !in_balls(i, j)) breaks = true;
            if (!breaks) {
                why = at_trial(t, "a larger candidate threshold also fits");
                return false;
            }
        }
    }

    double prev = 1e300;
    for (int K = 3; K <= 8; ++K) {
        const auto space = zminus_metric(K);
        const auto td = max_tube_delta(space, {0, 1}, 0.5);
        if (!(td.delta > 0.0) || td.delta > prev + 1e-12 ||
            std::fabs(td.delta - 1.0 / K) > 1e-9) {
            why = "K=" + std::to_string(K) + " gave threshold " + std::to_string(td.delta);
            return false;
        }
        prev = td.delta;
    }
    return true;
}

// ---- 8: l-infinity family has constant quotients no small cover separates

bool linfty_quotients(std::string& why) {
    const auto fx = linfty_family(5, {0, 0.25, 0.5, 0.75, 1});
    const auto& A = *fx.family;
    const auto phi = *fx.phi;
    const auto diffs = difference_family(A);
    const auto pairs = off_diagonal(A.domain);

    const auto rep = check_L(diffs, phi, one_part(Ambient::Pairs, pairs->size()), 0.0);
    if (!rep.pass || rep.achieved > 1e-12 || std::fabs(rep.max_quotient - 1.0) > 1e-12) {
        why = "trivial cover gave oscillation " + std::to_string(rep.achieved) +
              ", top quotient " + std::to_string(rep.max_quotient);
        return false;
    }

    std::vector<int> critical;
    for (int i = 1; i <= 5; ++i) critical.push_back(pairs->index_of(i, 0));
    for (int parts = 1; parts <= 4; ++parts) {
        const double v = exact_min_oscillation(diffs, parts, OscKind::LDS, critical, phi);
        if (v < 1.0 - 1e-9) {
            why = std::to_string(parts) + " parts reached signed oscillation " +
                  std::to_string(v);
            return false;
        }
    }
    return true;
}

// ---- 9: truncated-integer metric is valid with the exact distance table

bool truncated_integer_metric(std::string& why) {
    for (int K = 2; K <= 8; ++K) {
        const auto space = zminus_metric(K);
        if (find_metric_violation(space.matrix())) {
            why = "K=" + std::to_string(K) + " violates a metric axiom";
            return false;
        }
        auto mag = [](int idx) { return idx / 2 + 1; };
        auto pos = [](int idx) { return idx % 2 == 0; };
        for (int i = 0; i < space.size(); ++i)
            for (int j = 0; j < space.size(); ++j) {
                const int a = mag(i), b = mag(j);
                double expected;
                if (i == j) expected = 0.0;
                else if (a == 1 && b == 1) expected = 0.5;
                else if (a == 1 || b == 1)
                    expected = pos(i) == pos(j) ? 0.5 - 1.0 / (2 * std::max(a, b)) : 0.5;
                else expected = 1.0 / (2 * a) + 1.0 / (2 * b);
                if (space.dist(i, j) != expected) {
                    why = "K=" + std::to_string(K) + " entry (" + std::to_string(i) + "," +
                          std::to_string(j) + ") is off the table";
                    return false;
                }
            }
    }
    return true;
}

// ---- 10: oscillation monotonicity, refinement and scaling invariants

bool oscillation_invariants(std::string& why) {
    Rng rng(1010);
    for (int t = 0; t < 1000; ++t) {
        const int n = 2 + rng.pick(5);
        auto space = testgen::random_space(rng, n, t % 2 == 1);
        auto A = testgen::random_family(rng, space, 1 + rng.pick(3), 1 + rng.pick(2));
        const auto phi = testgen::random_phi(rng);
        const auto pairs = off_diagonal(A.domain);
        const auto points_cover = one_part(Ambient::Points, n);
        const auto pair_cover = one_part(Ambient::Pairs, pairs->size());

        const double b = check_B(A, points_cover, 0).achieved;
        const double ds = check_DS(A, points_cover, 0).achieved;
        const double l = check_L(A, phi, pair_cover, 0).achieved;
        const double lds = check_LDS(A, phi, pair_cover, 0).achieved;
        if (b > ds + 1e-12 || l > lds + 1e-12) {
            why = at_trial(t, "norm oscillation exceeded value oscillation");
            return false;
        }

        const auto split = singletons(Ambient::Points, n);
        if (check_DS(A, split, 0).achieved > ds + 1e-12 ||
            check_L(A, phi, singletons(Ambient::Pairs, pairs->size()), 0).achieved >
                l + 1e-12) {
            why = at_trial(t, "splitting a part increased an oscillation");
            return false;
        }

        FunctionFamily S = A;
        for (auto& f : S.members) f = scale(f, 2.0);
        if (check_DS(S, points_cover, 0).achieved != 2 * ds ||
            check_L(S, phi, pair_cover, 0).achieved != 2 * l) {
            why = at_trial(t, "doubling the members did not double the oscillation");
            return false;
        }

        const double d1 = space->min_positive_distance();
        const double d2 = space->diameter();
        if (check_equicontinuity(A, d1, 0).achieved >
                check_equicontinuity(A, d2, 0).achieved + 1e-12 ||
            check_uniform_local_flatness(A, phi, d1, 0).achieved >
                check_uniform_local_flatness(A, phi, d2, 0).achieved + 1e-12) {
            why = at_trial(t, "widening the threshold lowered an oscillation");
            return false;
        }

        if (check_DS(A, points_cover, ds).pass && !check_B(A, points_cover, ds).pass) {
            why = at_trial(t, "a value certificate failed as a norm certificate");
            return false;
        }
    }
    return true;
}

struct Criterion {
    const char* name;
    bool (*fn)(std::string&);
};

}  // namespace

int main() {
    const Criterion criteria[] = {
        {"synthesis pipelines certify their targets (500 instances)", synthesis_soundness},
        {"zero-one sequences: flat norms, differences gap >= 1/2", sequence_separation},
        {"basis-point sphere: flat norms, 3-part value gap >= 1", sphere_separation},
        {"quotient embedding is isometric (1000 functions)", embedding_isometry},
        {"quotient kernel is exactly the constant shifts (600 pairs)", quotient_kernel},
        {"equicontinuity survives the ball-cover round trip (200)", equicontinuity_round_trip},
        {"tube thresholds are exact maxima and decay with truncation", tube_threshold},
        {"l-infinity family: constant quotients, 5 pairs beat 4 parts", linfty_quotients},
        {"truncated-integer metric matches its distance table (K <= 8)", truncated_integer_metric},
        {"oscillation monotonicity/refinement/scaling (1000 trials)", oscillation_invariants},
    };

    bool all_ok = true;
    int idx = 0;
    for (const auto& c : criteria) {
        ++idx;
        std::string why;
        bool ok = false;
        try {
            ok = c.fn(why);
        } catch (const std::exception& e) {
            why = std::string("exception: ") + e.what();
        }
        std::printf("[%s] %2d %s\n", ok ? "PASS" : "FAIL", idx, c.name);
        if (!ok && !why.empty()) std::printf("          %s\n", why.c_str());
        all_ok = all_ok && ok;
    }
    return all_ok ? 0 : 1;
}
