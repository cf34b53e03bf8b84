#pragma once

// JSON forms of diagrams, rank-2 data, finite groupoids and certificates.
// Malformed input throws StructuralError; the objects' own validation runs
// separately.

#include <optional>
#include <string>

#include <json.hpp>

#include "forge/dimension_groups.hpp"
#include "forge/graph_model.hpp"
#include "forge/groupoid_core.hpp"
#include "forge/rank2.hpp"
#include "forge/twisted_product.hpp"

namespace forge {

using Json = nlohmann::ordered_json;

Json read_json_file(const std::string& path);

Json to_json(const IntMatrix& m);
IntMatrix matrix_from_json(const Json& j);
Json to_json(const IntVector& v);

// {"levels":[{"size":c}...], "edges":[{"level","range","source","mult"}...], "repeat_from": n}
BratteliDiagram bratteli_from_json(const Json& j);
Json to_json(const BratteliDiagram& d);

// {"T":[[...]] or [[[...]]...], "A":..., "B":..., "horizon": N, "orientation": "+1"|"-1",
//  "periodic": bool}. A single matrix means constant data.
struct Rank2Input {
  Rank2Data data;
  std::optional<std::size_t> horizon;
};
Rank2Input rank2_from_json(const Json& j);
Json to_json(const Rank2Data& d);

// {"elements": n, "labels": [...], "units": [...], "compositions": [[g, h, gh]...]}
// Range, source and inverse are read off the composition triples.
FiniteGroupoid groupoid_from_json(const Json& j);
Json to_json(const FiniteGroupoid& g);

Json to_json(const Verdict& v);
Verdict verdict_from_json(const Json& j);
Decision decision_from_string(const std::string& s);

Json to_json(const WfcCertificate& c);
WfcCertificate wfc_from_json(const Json& j);
Json to_json(const LcWitness& w);
LcWitness lc_from_json(const Json& j);

Json to_json(const DimGroupElement& a);
DimGroupElement dg_element_from_json(const Json& j);

}  // namespace forge
