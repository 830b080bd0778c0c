#include "lipcert/json_io.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace lipcert {

namespace {

const Json& require_field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw SchemaError(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

double require_number(const Json& j, const char* key) {
    const Json& v = require_field(j, key);
    if (!v.is_number()) throw SchemaError(std::string("field \"") + key + "\" must be a number");
    return v.get<double>();
}

int require_int(const Json& j, const char* key) {
    const Json& v = require_field(j, key);
    if (!v.is_number_integer())
        throw SchemaError(std::string("field \"") + key + "\" must be an integer");
    return v.get<int>();
}

std::string require_string(const Json& j, const char* key) {
    const Json& v = require_field(j, key);
    if (!v.is_string()) throw SchemaError(std::string("field \"") + key + "\" must be a string");
    return v.get<std::string>();
}

Json violation_to_json(const ViolationWitness& w) {
    return Json{{"part", w.part},
                {"first", w.first},
                {"second", w.second},
                {"member", w.member},
                {"member2", w.member2}};
}

}  // namespace

// ----- serialization --------------------------------------------------------

Json space_to_json(const FiniteMetricSpace& space) {
    return Json{{"schema", kSchemaTag}, {"points", space.size()}, {"dist", space.matrix()}};
}

Json cover_to_json(const Cover& cover) {
    return Json{{"schema", kSchemaTag},
                {"ambient", cover.ambient == Ambient::Points ? "points" : "pairs"},
                {"size", cover.ambient_size},
                {"parts", cover.parts}};
}

Json phi_to_json(const ComparisonFunction& phi) {
    switch (phi.kind()) {
        case PhiKind::Power:
            return Json{{"kind", "power"}, {"alpha", phi.alpha()}};
        case PhiKind::Log1p:
            return Json{{"kind", "log1p"}};
        case PhiKind::PiecewiseLinear: {
            Json pts = Json::array();
            for (const auto& [t, v] : phi.breakpoints()) pts.push_back(Json::array({t, v}));
            return Json{{"kind", "pwl"}, {"breakpoints", std::move(pts)}};
        }
    }
    throw SchemaError("unserializable comparison function");
}

Json family_to_json(const FunctionFamily& family) {
    Json j{{"schema", kSchemaTag},
           {"domain", space_to_json(*family.domain)},
           {"norm", norm_kind_name(family.norm_kind)},
           {"dim", family.dim},
           {"base", family.base_point}};
    if (family.phi) j["phi"] = phi_to_json(*family.phi);
    Json members = Json::array();
    for (const auto& f : family.members) members.push_back(f.values);
    j["members"] = std::move(members);
    return j;
}

Json report_to_json(const ConditionReport& report) {
    Json j{{"schema", kSchemaTag},
           {"condition", report.condition},
           {"eps", report.eps},
           {"verdict", report.pass ? "pass" : "fail"},
           {"achieved", report.achieved},
           {"max_quotient", report.max_quotient}};
    if (report.witness_cover) j["witness_cover"] = cover_to_json(*report.witness_cover);
    if (report.violation) j["violation"] = violation_to_json(*report.violation);
    return j;
}

Json lambda_witness_to_json(const LambdaWitness& witness) {
    return Json{{"schema", kSchemaTag},
                {"delta", witness.delta},
                {"n", witness.n},
                {"cover", cover_to_json(witness.cover)}};
}

Json equinorm_witness_to_json(const EquinormWitness& witness) {
    return Json{{"schema", kSchemaTag}, {"Y", witness.Y}, {"eps", witness.eps}};
}

Json covering_profile_to_json(const CoveringProfile& profile) {
    return Json{{"schema", kSchemaTag},
                {"eps_grid", profile.eps_grid},
                {"exact", profile.exact_sizes},
                {"greedy", profile.greedy_sizes}};
}

Json fixture_to_json(const Fixture& fixture) {
    Json j{{"schema", kSchemaTag}, {"name", fixture.name}, {"params", fixture.params}};
    j["space"] = space_to_json(*fixture.space);
    if (fixture.family) j["family"] = family_to_json(*fixture.family);
    if (fixture.phi) j["phi"] = phi_to_json(*fixture.phi);
    Json claims = Json::array();
    for (const auto& c : fixture.expected)
        claims.push_back(Json{{"id", c.id},
                              {"condition", c.condition},
                              {"eps", c.eps},
                              {"verdict", c.verdict ? "pass" : "fail"}});
    j["claims"] = std::move(claims);
    return j;
}

Json claim_outcomes_to_json(const std::vector<ClaimOutcome>& outcomes) {
    Json arr = Json::array();
    for (const auto& o : outcomes)
        arr.push_back(Json{{"id", o.id},
                           {"expected", o.expected_pass ? "pass" : "fail"},
                           {"observed", o.pass ? "pass" : "fail"},
                           {"value", o.value},
                           {"detail", o.detail}});
    return arr;
}

// ----- parsing ---------------------------------------------------------------

void require_schema_tag(const Json& j) {
    if (!j.is_object()) throw SchemaError("expected a JSON object");
    if (!j.contains("schema")) return;  // absent tag is tolerated
    const Json& tag = j.at("schema");
    if (!tag.is_string() || tag.get<std::string>() != kSchemaTag)
        throw SchemaError("unsupported schema tag");
}

std::vector<std::vector<double>> dist_from_json(const Json& j) {
    const Json& rows = j.is_array() ? j : require_field(j, "dist");
    if (!rows.is_array()) throw SchemaError("distance matrix must be an array of rows");
    std::vector<std::vector<double>> dist;
    for (const Json& row : rows) {
        if (!row.is_array()) throw SchemaError("distance matrix rows must be arrays");
        std::vector<double> r;
        for (const Json& v : row) {
            if (!v.is_number()) throw SchemaError("distances must be numbers");
            r.push_back(v.get<double>());
        }
        dist.push_back(std::move(r));
    }
    if (dist.empty()) throw SchemaError("distance matrix must be non-empty");
    return dist;
}

FiniteMetricSpace space_from_json(const Json& j, double tol) {
    require_schema_tag(j);
    return FiniteMetricSpace::validated(dist_from_json(j), tol);
}

Cover cover_from_json(const Json& j) {
    require_schema_tag(j);
    Cover cover;
    const std::string ambient = require_string(j, "ambient");
    if (ambient == "points") cover.ambient = Ambient::Points;
    else if (ambient == "pairs") cover.ambient = Ambient::Pairs;
    else throw SchemaError("ambient must be \"points\" or \"pairs\"");

    const Json& parts = require_field(j, "parts");
    if (!parts.is_array()) throw SchemaError("parts must be an array");
    int max_index = -1;
    for (const Json& part : parts) {
        if (!part.is_array()) throw SchemaError("each part must be an array of indices");
        std::vector<int> p;
        for (const Json& v : part) {
            if (!v.is_number_integer()) throw SchemaError("part entries must be integers");
            p.push_back(v.get<int>());
            max_index = std::max(max_index, p.back());
        }
        cover.parts.push_back(std::move(p));
    }
    cover.ambient_size = j.contains("size") ? require_int(j, "size") : max_index + 1;
    return cover;
}

ComparisonFunction phi_from_json(const Json& j) {
    const std::string kind = require_string(j, "kind");
    if (kind == "power") return ComparisonFunction::power(require_number(j, "alpha"));
    if (kind == "log1p") return ComparisonFunction::log1p();
    if (kind == "pwl") {
        const Json& pts = require_field(j, "breakpoints");
        if (!pts.is_array()) throw SchemaError("breakpoints must be an array");
        std::vector<std::pair<double, double>> bp;
        for (const Json& p : pts) {
            if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
                throw SchemaError("breakpoints must be [t, value] number pairs");
            bp.emplace_back(p[0].get<double>(), p[1].get<double>());
        }
        return ComparisonFunction::piecewise_linear(std::move(bp));
    }
    throw SchemaError("unknown comparison function kind \"" + kind + "\"");
}

FunctionFamily family_from_json(const Json& j, double tol) {
    require_schema_tag(j);
    FunctionFamily family;
    family.domain = std::make_shared<const FiniteMetricSpace>(
        space_from_json(require_field(j, "domain"), tol));

    const std::string norm = require_string(j, "norm");
    if (norm == "sup") family.norm_kind = NormKind::Sup;
    else if (norm == "euclid") family.norm_kind = NormKind::Euclid;
    else if (norm == "l1") family.norm_kind = NormKind::L1;
    else throw SchemaError("norm must be \"sup\", \"euclid\" or \"l1\"");

    family.base_point = j.contains("base") ? require_int(j, "base") : 0;
    if (j.contains("phi")) family.phi = phi_from_json(j.at("phi"));

    const Json& members = require_field(j, "members");
    if (!members.is_array() || members.empty())
        throw SchemaError("members must be a non-empty array");
    int dim = j.contains("dim") ? require_int(j, "dim") : -1;
    for (const Json& m : members) {
        if (!m.is_array()) throw SchemaError("each member must be an array of value rows");
        SampledFunction f;
        f.norm_kind = family.norm_kind;
        for (const Json& row : m) {
            if (!row.is_array()) throw SchemaError("member values must be arrays of numbers");
            std::vector<double> r;
            for (const Json& v : row) {
                if (!v.is_number()) throw SchemaError("member values must be numbers");
                r.push_back(v.get<double>());
            }
            if (dim < 0) dim = static_cast<int>(r.size());
            f.values.push_back(std::move(r));
        }
        f.dim = dim;
        family.members.push_back(std::move(f));
    }
    family.dim = dim;
    family.require_valid();
    return family;
}

LambdaWitness lambda_witness_from_json(const Json& j) {
    require_schema_tag(j);
    LambdaWitness w;
    w.delta = require_number(j, "delta");
    w.n = require_int(j, "n");
    w.cover = cover_from_json(require_field(j, "cover"));
    return w;
}

// ----- files and digests ------------------------------------------------------

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("Io", "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw Error("Io", "cannot read " + path);
    return buf.str();
}

std::string fnv1a_hex(const std::string& bytes) {
    uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char out[17];
    std::snprintf(out, sizeof(out), "%016llx", static_cast<unsigned long long>(h));
    return std::string(out);
}

}  // namespace lipcert
