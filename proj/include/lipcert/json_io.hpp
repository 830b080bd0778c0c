#pragma once

#include <string>

#include <json.hpp>

#include "lipcert/fixtures.hpp"
#include "lipcert/oracle.hpp"

namespace lipcert {

// Key order is part of the output contract (reports are hash-compared), so
// everything serializes through ordered_json.
using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaTag = "lipcert/1";
inline constexpr const char* kToolVersion = "lipcert 1.0.0";

class SchemaError : public Error {
public:
    explicit SchemaError(const std::string& what) : Error("Schema", what) {}
};

// ----- serialization -------------------------------------------------------

Json space_to_json(const FiniteMetricSpace& space);
Json cover_to_json(const Cover& cover);
Json phi_to_json(const ComparisonFunction& phi);
Json family_to_json(const FunctionFamily& family);
Json report_to_json(const ConditionReport& report);
Json lambda_witness_to_json(const LambdaWitness& witness);
Json equinorm_witness_to_json(const EquinormWitness& witness);
Json covering_profile_to_json(const CoveringProfile& profile);
Json fixture_to_json(const Fixture& fixture);
Json claim_outcomes_to_json(const std::vector<ClaimOutcome>& outcomes);

// ----- parsing (throws SchemaError) ----------------------------------------

// Shape checks only; metric axioms are validated separately so the CLI can
// report the witness.
std::vector<std::vector<double>> dist_from_json(const Json& j);
FiniteMetricSpace space_from_json(const Json& j, double tol = kDefaultTol);
Cover cover_from_json(const Json& j);
ComparisonFunction phi_from_json(const Json& j);
FunctionFamily family_from_json(const Json& j, double tol = kDefaultTol);
LambdaWitness lambda_witness_from_json(const Json& j);

// Rejects a "schema" field that names a different contract version.
void require_schema_tag(const Json& j);

// ----- files and digests ----------------------------------------------------

std::string read_text_file(const std::string& path);
// FNV-1a 64 over the raw bytes, as 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace lipcert
