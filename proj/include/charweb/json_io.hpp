#pragma once

#include <nlohmann/json_fwd.hpp>

#include "charweb/poly.hpp"
#include "charweb/reconstruct.hpp"
#include "charweb/web.hpp"

// JSON vocabulary (documented in docs/FORMATS.md):
//   scalar      "a/b" or "a/b+c/d i" / "a/b-c/d i", lowest terms
//   subspace    {"n": int, "basis": [[scalar, ...], ...]}
//   system      {"n": int, "members": [subspace, ...]}
//   certificate {"n": int, "dims": [int], "target": int,
//                "P": ["expr"], "Q": ["expr"], "I": [[int]]}
//   matrix      [[scalar, ...], ...]   (row-vector convention: v -> v*M)
//   poly map    {"n_in": int, "components": [[{"coeff": scalar,
//                "exps": [int, ...]}, ...], ...]}
//   presentation{"n": int, "defs": [poly map, ...]}
// Decoders throw ParseError on malformed input and SemanticError when the
// data violates a structural invariant.

namespace charweb {

using Json = nlohmann::ordered_json;

Json to_json(const Subspace& s);
Json to_json(const SubspaceSystem& system);
Json to_json(const Certificate& cert);
Json to_json(const GenPosVerdict& verdict);
Json to_json(const RigidityVerdict& verdict);
Json to_json(const GenericVerdict& verdict);
Json to_json(const WebReport& report);
Json matrix_to_json(const Mat& m);
Json to_json(const PolyMap& map);
Json to_json(const PolyhedralPresentation& pres);

Subspace subspace_from_json(const Json& j);
SubspaceSystem system_from_json(const Json& j);
Certificate certificate_from_json(const Json& j);
Mat matrix_from_json(const Json& j);
PolyMap polymap_from_json(const Json& j);
PolyhedralPresentation presentation_from_json(const Json& j);

/// Parse text as JSON; nlohmann diagnostics become ParseErrors.
Json parse_json_text(const std::string& text);
/// Read and parse a file (ParseError on IO failure too).
Json load_json_file(const std::string& path);

}  // namespace charweb
