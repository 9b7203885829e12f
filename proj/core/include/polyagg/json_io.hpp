#pragma once

#include <nlohmann/json.hpp>

#include "polyagg/approx.hpp"
#include "polyagg/equiv.hpp"
#include "polyagg/poly_engine.hpp"
#include "polyagg/predicate.hpp"
#include "polyagg/spectral.hpp"

namespace polyagg {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// {"schema":1,"name","m","n","members":[[...],...]}. Built-ins also carry
/// "builtin":{"kind","m","n"}.
Json to_json(const Predicate& P);
/// Accepts the member form or {"builtin":"surj"|..., "m", "n"}.
Predicate predicate_from_json(const Json& j);

/// {"schema":1,"m","p","n","index_order":"mixed_radix_first_argument_least_significant","tables":[[...],...]}
Json to_json(const FunctionFamily& F);
FunctionFamily family_from_json(const Json& j);

/// {"schema":1,"p","n","values":[...]}; values are 0/1 (boolean) or letters
/// (truth table, with "n_out").
Json to_json(const BooleanTable& f);
BooleanTable boolean_from_json(const Json& j);
Json to_json(const TruthTable& t);
TruthTable table_from_json(const Json& j);
Json to_json(const RealTable& t);
RealTable real_from_json(const Json& j);

/// {"schema":1,"predicate":{...},"weights":[...]} or with "weights":"uniform".
Json to_json(const ProfileDistribution& D);
ProfileDistribution distribution_from_json(const Json& j);

Json to_json(const PartialAssignment& rho);
Json to_json(const Dictator& d);
Json to_json(const PredicateProfile& profile);
Json to_json(const PolyCheck& check);
Json to_json(const TrivialityVerdict& v);
Json to_json(const HallWitness& w);
Json to_json(const EquivStructure& s);
Json to_json(const DegreeDecomposition& d);
Json to_json(const HoffmanReport& r);
Json to_json(const IndicatorRecovery& r);
Json to_json(const MuMatrix& M);
Json to_json(const MuProfile& profile);
Json to_json(const DeficiencyReport& r);
Json to_json(const NearestReport& r);
Json to_json(const QuantReport& r);
Json to_json(const FunctionShape& s);

/// Parses text, converting parse failures into FormatError.
Json parse_json(std::string_view text);

}  // namespace polyagg
