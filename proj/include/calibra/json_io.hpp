#pragma once

// JSON reading and writing for tensors, complexes, chains, cochains and
// Plateau instances. Parse failures throw Error(parse_error) with the JSON
// pointer of the offending field, or the line and column for syntax errors.

#include <string>

#include <json.hpp>

#include "calibra/plateau.hpp"

namespace calibra {

using Json = nlohmann::ordered_json;

// Parses text; syntax errors report "line L, column C".
Json parse_json(const std::string& text);

Json to_json(const KVector& xi);
Json to_json(const KCovector& phi);
KVector kvector_from_json(const Json& j);
KCovector kcovector_from_json(const Json& j);

// {"dim", "vertices": [[...]], "simplices": {"k": [[v...]]}}
ComplexPtr complex_from_json(const Json& j);
Json complex_to_json(const SimplicialComplex& cx);

// {"degree", "coeffs": [[index, coeff]]}
Chain chain_from_json(const Json& j, const ComplexPtr& complex);
Json chain_to_json(const Chain& c);

// {"degree", "values": [...]}
DiscreteCochain cochain_from_json(const Json& j, const ComplexPtr& complex);
Json cochain_to_json(const DiscreteCochain& a);

// Complex fields plus {"k", "boundary", optional "candidate", "certificate"}.
PlateauInstance instance_from_json(const Json& j);

Json plane_to_json(const SimplePlane& plane);
Json vec_to_json(const Vec& v);

}  // namespace calibra
