#pragma once

#include <string>

#include <json.hpp>

#include "morava/charcount.hpp"
#include "morava/glgroups.hpp"
#include "morava/glp.hpp"

namespace morava {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "morava-rings/1";

// {"schema", "kind", "params", "result"}
Json envelope(const std::string& kind, Json params, Json result);

// Inverse of PadicCtx::digits; InvalidInput on malformed strings.
u64 parse_digits(const std::string& s, const PadicCtx& pc);

Json to_json(const PadicCtx& pc);
Json to_json(const USeries& f);
Json to_json(const GLpParams& P);
Json to_json(const GLPAlgebra& A, bool with_table = true);
GLPAlgebra glp_algebra_from_json(const Json& j);
Json to_json(const KReport& r);
Json to_json(const RingElement& e);
Json to_json(const H2Series& h);
Json to_json(const TRelationReport& r);
Json to_json(const CRTWitness& w);
Json to_json(const SylowDescriptor& s);
Json to_json(const NormalizerScan& s);
Json to_json(const GLMat& m);
Json to_json(const CrosscheckReport& r);

}  // namespace morava
