// Command-line front end: validates inputs, runs condition checks, builds
// witness covers, queries the exact oracles, and emits canned instances.
// Every command writes a single JSON document with a manifest (command,
// input digests, parameters, tool version) so reruns are hash-comparable.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lipcert/json_io.hpp"

namespace {

using namespace lipcert;

// Errors that mean "the request itself is malformed" exit with 2; everything
// else (axiom violations, failed preconditions, failed verdicts) exits with 1.
int exit_code_for(const Error& e) {
    static const std::set<std::string> usage = {
        "Schema",   "Shape",        "FamilyInvariant", "Io",       "MissingWitness",
        "Usage",    "TooLarge",     "CoverMismatch",   "Degenerate",
        "DegenerateSpace", "NegativeArgument", "EmptySubset"};
    return usage.count(e.code()) ? 2 : 1;
}

struct Emitter {
    std::string command;
    Json inputs = Json::object();
    Json parameters = Json::object();
    std::string out_path;

    void record_input(const std::string& path, const std::string& bytes) {
        inputs[path] = fnv1a_hex(bytes);
    }

    Json manifest() const {
        return Json{{"command", command},
                    {"inputs", inputs},
                    {"parameters", parameters},
                    {"version", kToolVersion}};
    }

    int emit(Json payload, int code) const {
        Json doc{{"schema", kSchemaTag}, {"manifest", manifest()}};
        for (auto& [k, v] : payload.items()) doc[k] = v;
        const std::string text = doc.dump(2) + "\n";
        std::cout << text;
        if (!out_path.empty()) {
            std::ofstream out(out_path, std::ios::binary);
            if (!out) throw Error("Io", "cannot write " + out_path);
            out << text;
        }
        return code;
    }

    int emit_error(const std::string& code, const std::string& message, int exit_code,
                   Json extra = Json::object()) const {
        Json err{{"code", code}, {"message", message}};
        for (auto& [k, v] : extra.items()) err[k] = v;
        return emit(Json{{"error", std::move(err)}}, exit_code);
    }
};

Json load_json(Emitter& em, const std::string& path) {
    const std::string bytes = read_text_file(path);
    em.record_input(path, bytes);
    Json j = Json::parse(bytes, nullptr, false);
    if (j.is_discarded()) throw SchemaError("invalid JSON in " + path);
    return j;
}

// Emitted documents nest their payload (families under "family" or "fixture",
// covers and witnesses under "witness"); follow those wrappers so the output
// of one command can feed the next one unedited.
Json descend_to(Json j, const std::vector<std::string>& leaf_keys,
                const std::vector<std::string>& wrappers) {
    auto at_leaf = [&](const Json& node) {
        for (const auto& k : leaf_keys)
            if (node.contains(k)) return true;
        return false;
    };
    while (j.is_object() && !at_leaf(j)) {
        bool moved = false;
        for (const auto& w : wrappers)
            if (j.contains(w)) {
                j = j.at(w);
                moved = true;
                break;
            }
        if (!moved) break;
    }
    return j;
}

FunctionFamily load_family(Emitter& em, const std::string& path, double tol) {
    return family_from_json(
        descend_to(load_json(em, path), {"members"}, {"family", "fixture"}), tol);
}

Cover load_cover(Emitter& em, const std::string& path) {
    Cover cover =
        cover_from_json(descend_to(load_json(em, path), {"parts"}, {"witness", "cover"}));
    require_well_formed(cover);
    return cover;
}

LambdaWitness load_lambda_witness(Emitter& em, const std::string& path) {
    return lambda_witness_from_json(
        descend_to(load_json(em, path), {"delta"}, {"witness"}));
}

ComparisonFunction resolve_phi(Emitter& em, const std::string& phi_path,
                               const FunctionFamily& family) {
    if (!phi_path.empty()) return phi_from_json(load_json(em, phi_path));
    if (family.phi) return *family.phi;
    throw Error("Usage", "no comparison function: pass --phi or embed one in the family");
}

std::vector<int> parse_int_csv(const std::string& csv) {
    std::vector<int> out;
    size_t pos = 0;
    while (pos < csv.size()) {
        size_t next = csv.find(',', pos);
        if (next == std::string::npos) next = csv.size();
        out.push_back(std::stoi(csv.substr(pos, next - pos)));
        pos = next + 1;
    }
    return out;
}

std::vector<double> parse_double_csv(const std::string& csv) {
    std::vector<double> out;
    size_t pos = 0;
    while (pos < csv.size()) {
        size_t next = csv.find(',', pos);
        if (next == std::string::npos) next = csv.size();
        out.push_back(std::stod(csv.substr(pos, next - pos)));
        pos = next + 1;
    }
    return out;
}

std::vector<int> all_points(const FunctionFamily& family) {
    std::vector<int> Y(static_cast<size_t>(family.point_count()));
    for (int i = 0; i < family.point_count(); ++i) Y[static_cast<size_t>(i)] = i;
    return Y;
}

// ----- validate --------------------------------------------------------------

int cmd_validate(Emitter& em, const std::string& input, double tol) {
    const Json j = descend_to(load_json(em, input), {"dist", "members"},
                              {"family", "fixture", "space", "domain"});
    Json findings = Json::array();
    bool valid = true;

    const Json& space_json = j.contains("domain") ? j.at("domain") : j;
    const auto dist = dist_from_json(space_json);
    if (const auto v = find_metric_violation(dist, tol)) {
        valid = false;
        findings.push_back(Json{{"kind", "metric"},
                                {"axiom", v->name()},
                                {"i", v->i},
                                {"j", v->j},
                                {"k", v->k},
                                {"detail", v->describe()}});
    }

    std::optional<ComparisonFunction> phi;
    if (j.contains("phi")) phi = phi_from_json(j.at("phi"));
    if (phi && valid) {
        double diam = 0;
        for (const auto& row : dist)
            for (double d : row) diam = std::max(diam, d);
        const auto grid = default_phi_grid(*phi, std::max(diam, 1.0));
        if (const auto v = validate_comparison(*phi, grid)) {
            valid = false;
            findings.push_back(Json{{"kind", "comparison"},
                                    {"axiom", v->axiom},
                                    {"t", v->t},
                                    {"s", v->s},
                                    {"detail", v->describe()}});
        }
    }

    if (j.contains("members") && valid) family_from_json(j, tol);

    return em.emit(Json{{"valid", valid}, {"findings", findings}}, valid ? 0 : 1);
}

// ----- check -------------------------------------------------------------------

struct CheckArgs {
    std::string condition, family_path, cover_path, witness_path, phi_path, anchors;
    double eps = 0, tol = kDefaultTol, delta = -1;
    int n = 0;
    bool has_delta = false;
};

int cmd_check(Emitter& em, const CheckArgs& a) {
    const FunctionFamily family = load_family(em, a.family_path, a.tol);

    auto need_cover = [&]() -> Cover {
        if (a.cover_path.empty())
            throw Error("MissingWitness", "condition " + a.condition + " needs --cover");
        return load_cover(em, a.cover_path);
    };
    auto need_delta = [&]() -> double {
        if (!a.has_delta) throw Error("Usage", "condition " + a.condition + " needs --delta");
        return a.delta;
    };

    ConditionReport report;
    if (a.condition == "equinormed") {
        const auto Y = a.anchors.empty() ? all_points(family) : parse_int_csv(a.anchors);
        report = check_equinormed(family, Y, a.eps, a.tol);
    } else if (a.condition == "B") {
        report = check_B(family, need_cover(), a.eps, a.tol);
    } else if (a.condition == "DS") {
        report = check_DS(family, need_cover(), a.eps, a.tol);
    } else if (a.condition == "equicontinuity") {
        report = check_equicontinuity(family, need_delta(), a.eps, a.tol);
    } else if (a.condition == "L") {
        report = check_L(family, resolve_phi(em, a.phi_path, family), need_cover(), a.eps, a.tol);
    } else if (a.condition == "LDS") {
        report = check_LDS(family, resolve_phi(em, a.phi_path, family), need_cover(), a.eps, a.tol);
    } else if (a.condition == "lambda") {
        if (a.witness_path.empty())
            throw Error("MissingWitness", "condition lambda needs --witness");
        const auto witness = load_lambda_witness(em, a.witness_path);
        const int n = a.n > 0 ? a.n : witness.n;
        report = check_lambda(family, resolve_phi(em, a.phi_path, family), a.eps, n, witness,
                              a.tol);
    } else if (a.condition == "flatness") {
        report = check_uniform_local_flatness(family, resolve_phi(em, a.phi_path, family),
                                              need_delta(), a.eps, a.tol);
    } else {
        throw Error("Usage", "unknown condition \"" + a.condition + "\"");
    }

    return em.emit(Json{{"report", report_to_json(report)}}, report.pass ? 0 : 1);
}

// ----- synthesize ----------------------------------------------------------------

struct SynthArgs {
    std::string kind, family_path, cover_path, witness_path, phi_path, anchors, members;
    double eps = 0.25, tol = kDefaultTol, delta = -1, net_eps = 0;
    int n = 1, max_net = 0;
    bool has_delta = false;
};

int cmd_synthesize(Emitter& em, const SynthArgs& a) {
    const FunctionFamily family = load_family(em, a.family_path, a.tol);
    const std::optional<int> max_net =
        a.max_net > 0 ? std::optional<int>(a.max_net) : std::nullopt;

    auto need_delta = [&]() -> double {
        if (!a.has_delta) throw Error("Usage", "kind " + a.kind + " needs --delta");
        return a.delta;
    };

    Json witness_json;
    ConditionReport verification;

    if (a.kind == "B") {
        const auto Y = a.anchors.empty() ? all_points(family) : parse_int_csv(a.anchors);
        const Cover cover = synthesize_B_cover(family, a.eps, a.net_eps, Y, max_net);
        witness_json = cover_to_json(cover);
        verification = check_B(family, cover, a.eps, a.tol);
    } else if (a.kind == "equinorm") {
        const Cover cover = a.cover_path.empty()
                                ? synthesize_B_cover(family, a.eps, a.net_eps,
                                                     all_points(family), max_net)
                                : load_cover(em, a.cover_path);
        const EquinormWitness w = equinorm_witness_from_B(family, cover, a.eps);
        witness_json = equinorm_witness_to_json(w);
        verification = check_equinormed(family, w.Y, w.eps, a.tol);
    } else if (a.kind == "DS") {
        const Cover b_cover =
            a.cover_path.empty()
                ? synthesize_B_cover(difference_family(family), a.eps / 8, 0,
                                     all_points(family), max_net)
                : load_cover(em, a.cover_path);
        const Cover cover = synthesize_DS_from_B(family, b_cover, a.eps, max_net);
        witness_json = cover_to_json(cover);
        verification = check_DS(family, cover, a.eps, a.tol);
    } else if (a.kind == "ds-cover") {
        const Cover cover = ds_cover_from_equicontinuity(family, need_delta(), a.eps);
        witness_json = cover_to_json(cover);
        verification = check_DS(family, cover, a.eps, a.tol);
    } else if (a.kind == "equicontinuity") {
        if (a.cover_path.empty()) throw Error("MissingWitness", "kind equicontinuity needs --cover");
        const Cover cover = load_cover(em, a.cover_path);
        const double delta = equicontinuity_from_ds(family, cover, a.eps);
        witness_json = Json{{"schema", kSchemaTag}, {"delta", delta}};
        verification = check_equicontinuity(family, delta, a.eps, a.tol);
    } else if (a.kind == "tilde") {
        const auto phi = resolve_phi(em, a.phi_path, family);
        const TildeCover tc = synthesize_tilde_cover(family, phi, need_delta(), a.eps);
        witness_json = Json{{"schema", kSchemaTag},
                            {"cover", cover_to_json(tc.cover)},
                            {"delta", tc.delta},
                            {"r", tc.r},
                            {"m_lower", tc.m_lower},
                            {"M_bound", tc.M_bound}};
        const double osc = tilde_oscillation(family, phi, tc.cover);
        verification.condition = "B";
        verification.eps = a.eps;
        verification.achieved = osc;
        verification.pass = osc <= a.eps + a.tol;
    } else if (a.kind == "lambda") {
        const auto phi = resolve_phi(em, a.phi_path, family);
        if (a.cover_path.empty()) throw Error("MissingWitness", "kind lambda needs --cover");
        const Cover L_cover = load_cover(em, a.cover_path);
        const LambdaWitness w = lambda_from_L(family, phi, L_cover, a.eps, a.n);
        witness_json = lambda_witness_to_json(w);
        verification =
            check_lambda(difference_family(family), phi, a.eps, w.n, w, a.tol);
    } else if (a.kind == "L") {
        const auto phi = resolve_phi(em, a.phi_path, family);
        if (a.witness_path.empty()) throw Error("MissingWitness", "kind L needs --witness");
        const LambdaWitness w = load_lambda_witness(em, a.witness_path);
        const LambdaToL result = L_from_lambda(family, phi, w, a.eps);
        witness_json = Json{{"schema", kSchemaTag},
                            {"cover", cover_to_json(result.cover)},
                            {"blip_bound", result.blip_bound},
                            {"chain_bound", result.chain_bound}};
        verification = check_L(difference_family(family), phi, result.cover, a.eps, a.tol);
    } else if (a.kind == "lambda-flat") {
        const auto phi = resolve_phi(em, a.phi_path, family);
        const LambdaWitness w = lambda_from_flatness(family, phi, a.eps, a.n, need_delta());
        witness_json = lambda_witness_to_json(w);
        verification =
            check_lambda(difference_family(family), phi, a.eps, w.n, w, a.tol);
    } else if (a.kind == "flatness") {
        const auto phi = resolve_phi(em, a.phi_path, family);
        std::vector<int> net;
        if (a.members.empty())
            for (int i = 0; i < family.member_count(); ++i) net.push_back(i);
        else
            net = parse_int_csv(a.members);
        const double delta = flatness_from_net(family, phi, net, a.eps);
        witness_json = Json{{"schema", kSchemaTag}, {"delta", delta}};
        verification = check_uniform_local_flatness(family, phi, delta, a.eps, a.tol);
    } else {
        throw Error("Usage", "unknown synthesis kind \"" + a.kind + "\"");
    }

    return em.emit(Json{{"witness", std::move(witness_json)},
                        {"verification", report_to_json(verification)}},
                   verification.pass ? 0 : 1);
}

// ----- oracle ----------------------------------------------------------------------

struct OracleArgs {
    std::string space_path, family_path, kind = "B", subset, phi_path, grid;
    int parts = 1;
    double tol = kDefaultTol;
};

int cmd_oracle(Emitter& em, const OracleArgs& a) {
    if (!a.family_path.empty()) {
        const FunctionFamily family = load_family(em, a.family_path, a.tol);
        OscKind kind;
        if (a.kind == "B") kind = OscKind::B;
        else if (a.kind == "DS") kind = OscKind::DS;
        else if (a.kind == "L") kind = OscKind::L;
        else if (a.kind == "LDS") kind = OscKind::LDS;
        else throw Error("Usage", "unknown oscillation kind \"" + a.kind + "\"");

        std::optional<std::vector<int>> subset;
        if (!a.subset.empty()) subset = parse_int_csv(a.subset);
        std::optional<ComparisonFunction> phi;
        if (!a.phi_path.empty()) phi = phi_from_json(load_json(em, a.phi_path));
        else if (family.phi) phi = family.phi;

        const double v = exact_min_oscillation(family, a.parts, kind, subset, phi);
        return em.emit(Json{{"min_oscillation", v}, {"parts", a.parts}, {"kind", a.kind}}, 0);
    }
    if (a.space_path.empty()) throw Error("Usage", "oracle needs --space or --family");
    const FiniteMetricSpace space = space_from_json(
        descend_to(load_json(em, a.space_path), {"dist"},
                   {"space", "fixture", "family", "domain"}),
        a.tol);
    std::vector<double> grid;
    if (!a.grid.empty()) grid = parse_double_csv(a.grid);
    else {
        const double diam = space.diameter();
        for (int k = 1; k <= 8; ++k) grid.push_back(diam * k / 8);
    }
    return em.emit(Json{{"profile", covering_profile_to_json(covering_profile(space, grid))}},
                   0);
}

// ----- fixture ------------------------------------------------------------------------

struct FixtureArgs {
    std::string name;
    int p = 3, d = -1, k = 4, K = -1, inv_h = 8;
    std::string a_grid = "0,0.25,0.5,0.75,1";
};

int cmd_fixture(Emitter& em, const FixtureArgs& a) {
    Fixture fx;
    if (a.name == "riesz") fx = riesz_zero_one(a.p, a.d);
    else if (a.name == "sphere") fx = sphere_pair(a.k);
    else if (a.name == "tent") fx = tent_family(a.K > 0 ? a.K : 12);
    else if (a.name == "ball") fx = ball_cover_failure(a.inv_h);
    else if (a.name == "zminus") fx = zminus_fixture(a.K > 0 ? a.K : 6);
    else if (a.name == "linfty") fx = linfty_family(a.K > 0 ? a.K : 5, parse_double_csv(a.a_grid));
    else throw Error("Usage", "unknown fixture \"" + a.name + "\"");

    const auto outcomes = verify_fixture(fx);
    bool all_ok = true;
    for (const auto& o : outcomes) all_ok = all_ok && (o.pass == o.expected_pass);

    return em.emit(Json{{"fixture", fixture_to_json(fx)},
                        {"outcomes", claim_outcomes_to_json(outcomes)},
                        {"verdict", all_ok ? "pass" : "fail"}},
                   all_ok ? 0 : 1);
}

// ----- gen ---------------------------------------------------------------------------

struct GenArgs {
    uint64_t seed = 0;
    int points = 6, members = 3, dim = 2;
    std::string norm = "sup";
};

int cmd_gen(Emitter& em, const GenArgs& a) {
    if (a.points < 2 || a.members < 1 || a.dim < 1)
        throw Error("Usage", "gen needs points >= 2, members >= 1, dim >= 1");
    std::mt19937_64 rng(a.seed);
    auto u01 = [&]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

    // Points embedded in the unit cube so the triangle inequality is inherited.
    std::vector<std::array<double, 3>> pts(static_cast<size_t>(a.points));
    for (auto& p : pts) p = {u01(), u01(), u01()};
    std::vector<std::vector<double>> dist(static_cast<size_t>(a.points),
                                          std::vector<double>(static_cast<size_t>(a.points), 0));
    for (int i = 0; i < a.points; ++i)
        for (int j = 0; j < a.points; ++j) {
            double s = 0;
            for (int c = 0; c < 3; ++c) {
                const double t = pts[static_cast<size_t>(i)][static_cast<size_t>(c)] -
                                 pts[static_cast<size_t>(j)][static_cast<size_t>(c)];
                s += t * t;
            }
            dist[static_cast<size_t>(i)][static_cast<size_t>(j)] = std::sqrt(s);
        }

    FunctionFamily family;
    family.domain = std::make_shared<const FiniteMetricSpace>(
        FiniteMetricSpace::validated(std::move(dist)));
    if (a.norm == "sup") family.norm_kind = NormKind::Sup;
    else if (a.norm == "euclid") family.norm_kind = NormKind::Euclid;
    else if (a.norm == "l1") family.norm_kind = NormKind::L1;
    else throw Error("Usage", "unknown norm \"" + a.norm + "\"");
    family.dim = a.dim;
    family.base_point = 0;
    family.phi = ComparisonFunction::identity();
    for (int m = 0; m < a.members; ++m) {
        SampledFunction f;
        f.dim = a.dim;
        f.norm_kind = family.norm_kind;
        for (int i = 0; i < a.points; ++i) {
            std::vector<double> row(static_cast<size_t>(a.dim));
            for (auto& v : row) v = 2 * u01() - 1;
            f.values.push_back(std::move(row));
        }
        family.members.push_back(std::move(f));
    }
    family.require_valid();
    return em.emit(Json{{"family", family_to_json(family)}}, 0);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"certify compactness conditions of sampled Lipschitz families"};
    app.require_subcommand(1);
    app.fallthrough();  // lets the global --out appear after the verb

    std::string out_path;
    app.add_option("--out", out_path, "also write the JSON document to this file");

    std::string validate_input;
    double validate_tol = kDefaultTol;
    auto* validate = app.add_subcommand("validate", "check metric, gauge and family axioms");
    validate->add_option("input", validate_input, "space or family JSON")->required();
    validate->add_option("--tol", validate_tol, "absolute comparison tolerance");

    CheckArgs check_args;
    auto* check = app.add_subcommand("check", "evaluate one condition against a witness");
    check->add_option("--condition", check_args.condition,
                      "equinormed|B|DS|equicontinuity|L|LDS|lambda|flatness")
        ->required();
    check->add_option("--family", check_args.family_path, "family JSON")->required();
    check->add_option("--cover", check_args.cover_path, "cover JSON");
    check->add_option("--witness", check_args.witness_path, "sandwich witness JSON");
    check->add_option("--phi", check_args.phi_path, "comparison function JSON");
    check->add_option("--anchors", check_args.anchors, "comma-separated anchor points");
    check->add_option("--eps", check_args.eps, "target oscillation bound");
    check->add_option("--tol", check_args.tol, "absolute comparison tolerance");
    auto* check_delta = check->add_option("--delta", check_args.delta, "distance threshold");
    check->add_option("--n", check_args.n, "outer tube parameter (1/n)");

    SynthArgs synth_args;
    auto* synth = app.add_subcommand("synthesize", "construct a witness, then re-check it");
    synth->add_option("--kind", synth_args.kind,
                      "B|equinorm|DS|ds-cover|equicontinuity|tilde|lambda|L|lambda-flat|flatness")
        ->required();
    synth->add_option("--family", synth_args.family_path, "family JSON")->required();
    synth->add_option("--eps", synth_args.eps, "target oscillation bound");
    synth->add_option("--cover", synth_args.cover_path, "input cover JSON");
    synth->add_option("--witness", synth_args.witness_path, "input sandwich witness JSON");
    synth->add_option("--phi", synth_args.phi_path, "comparison function JSON");
    synth->add_option("--anchors", synth_args.anchors, "comma-separated anchor points");
    synth->add_option("--members", synth_args.members, "comma-separated net member indices");
    synth->add_option("--net-eps", synth_args.net_eps, "net resolution (0 = default)");
    synth->add_option("--max-net", synth_args.max_net, "net size budget (0 = unlimited)");
    synth->add_option("--tol", synth_args.tol, "absolute comparison tolerance");
    auto* synth_delta = synth->add_option("--delta", synth_args.delta, "distance threshold");
    synth->add_option("--n", synth_args.n, "outer tube parameter (1/n)");

    OracleArgs oracle_args;
    auto* oracle = app.add_subcommand("oracle", "exact covering numbers and least oscillations");
    oracle->add_option("--space", oracle_args.space_path, "space JSON (covering profile)");
    oracle->add_option("--family", oracle_args.family_path, "family JSON (least oscillation)");
    oracle->add_option("--kind", oracle_args.kind, "B|DS|L|LDS");
    oracle->add_option("--parts", oracle_args.parts, "part budget");
    oracle->add_option("--subset", oracle_args.subset, "comma-separated element indices");
    oracle->add_option("--phi", oracle_args.phi_path, "comparison function JSON");
    oracle->add_option("--grid", oracle_args.grid, "comma-separated radii");
    oracle->add_option("--tol", oracle_args.tol, "absolute comparison tolerance");

    FixtureArgs fixture_args;
    auto* fixture = app.add_subcommand("fixture", "emit a canned instance and verify its claims");
    fixture->add_option("name", fixture_args.name, "riesz|sphere|tent|ball|zminus|linfty")
        ->required();
    fixture->add_option("--p", fixture_args.p, "sequence length (riesz)");
    fixture->add_option("--d", fixture_args.d, "target dimension (riesz)");
    fixture->add_option("--k", fixture_args.k, "basis point count (sphere)");
    fixture->add_option("--K", fixture_args.K, "grid extent / truncation");
    fixture->add_option("--inv-h", fixture_args.inv_h, "inverse grid step (ball)");
    fixture->add_option("--a", fixture_args.a_grid, "comma-separated coefficients (linfty)");

    GenArgs gen_args;
    auto* gen = app.add_subcommand("gen", "emit a seeded random family");
    gen->add_option("--seed", gen_args.seed, "RNG seed");
    gen->add_option("--points", gen_args.points, "domain size");
    gen->add_option("--members", gen_args.members, "member count");
    gen->add_option("--dim", gen_args.dim, "value dimension");
    gen->add_option("--norm", gen_args.norm, "sup|euclid|l1");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    check_args.has_delta = check_delta->count() > 0;
    synth_args.has_delta = synth_delta->count() > 0;

    Emitter em;
    em.out_path = out_path;
    try {
        if (validate->parsed()) {
            em.command = "validate";
            em.parameters = Json{{"tol", validate_tol}};
            return cmd_validate(em, validate_input, validate_tol);
        }
        if (check->parsed()) {
            em.command = "check";
            em.parameters = Json{{"condition", check_args.condition},
                                 {"eps", check_args.eps},
                                 {"tol", check_args.tol}};
            if (check_args.has_delta) em.parameters["delta"] = check_args.delta;
            if (check_args.n > 0) em.parameters["n"] = check_args.n;
            if (!check_args.anchors.empty()) em.parameters["anchors"] = check_args.anchors;
            return cmd_check(em, check_args);
        }
        if (synth->parsed()) {
            em.command = "synthesize";
            em.parameters = Json{{"kind", synth_args.kind},
                                 {"eps", synth_args.eps},
                                 {"tol", synth_args.tol}};
            if (synth_args.has_delta) em.parameters["delta"] = synth_args.delta;
            if (synth_args.n > 0) em.parameters["n"] = synth_args.n;
            if (synth_args.net_eps > 0) em.parameters["net_eps"] = synth_args.net_eps;
            if (synth_args.max_net > 0) em.parameters["max_net"] = synth_args.max_net;
            return cmd_synthesize(em, synth_args);
        }
        if (oracle->parsed()) {
            em.command = "oracle";
            em.parameters = Json{{"kind", oracle_args.kind}, {"parts", oracle_args.parts}};
            if (!oracle_args.subset.empty()) em.parameters["subset"] = oracle_args.subset;
            if (!oracle_args.grid.empty()) em.parameters["grid"] = oracle_args.grid;
            return cmd_oracle(em, oracle_args);
        }
        if (fixture->parsed()) {
            em.command = "fixture";
            em.parameters = Json{{"name", fixture_args.name}};
            return cmd_fixture(em, fixture_args);
        }
        if (gen->parsed()) {
            em.command = "gen";
            em.parameters = Json{{"seed", gen_args.seed},
                                 {"points", gen_args.points},
                                 {"members", gen_args.members},
                                 {"dim", gen_args.dim},
                                 {"norm", gen_args.norm}};
            return cmd_gen(em, gen_args);
        }
    } catch (const MetricAxiomError& e) {
        return em.emit_error("MetricAxiom", e.what(), 1,
                             Json{{"axiom", e.violation.name()},
                                  {"i", e.violation.i},
                                  {"j", e.violation.j},
                                  {"k", e.violation.k}});
    } catch (const SandwichViolation& e) {
        return em.emit_error("SandwichViolation", e.what(), 1,
                             Json{{"side", e.side}, {"pair", e.pair_index}});
    } catch (const Error& e) {
        return em.emit_error(e.code(), e.what(), exit_code_for(e));
    } catch (const std::exception& e) {
        return em.emit_error("Internal", e.what(), 2);
    }
    return 2;
}
