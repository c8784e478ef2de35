#pragma once

#include <json.hpp>
#include <string>

#include "arithmoduli/criterion.hpp"

namespace arithmoduli {

using Json = nlohmann::ordered_json;

/// Integers that fit in a signed 64-bit value become JSON numbers, larger
/// ones decimal strings.
Json to_json(const Integer& z);
/// Ascending coefficient array.
Json to_json(const IntPoly& p);
Json to_json(const IntMatrix& m);
/// HNF rows.
Json to_json(const IntLattice& l);
Json to_json(const CertLevel& c);
Json to_json(const RelationLattice& r);
Json to_json(const RootBox& b);
Json to_json(const TotallyRealResult& t);
Json to_json(const DecideConfig& c);
Json to_json(const ValidationOutcome& v);
Json to_json(const FullIrreducibility& f);
Json to_json(const ArithmeticityReport& r);

/// Deterministic rendering: two-space indentation, or compact.
std::string dump(const Json& j, bool pretty = true);

/// Short human-readable summary.
std::string describe(const ArithmeticityReport& r);

}  // namespace arithmoduli
