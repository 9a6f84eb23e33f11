#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "spreclone/closures.hpp"
#include "spreclone/galois.hpp"
#include "spreclone/monoid.hpp"
#include "spreclone/relation.hpp"
#include "spreclone/signed_op.hpp"

namespace spreclone::io {

using Json = nlohmann::ordered_json;

/// Parse errors are reported as Error(Parse).
Json read_json_file(const std::string& path);

/// {"elements": [...], "unit": name, "table": [[names]]}
Monoid monoid_from_json(const Json& j);
Json to_json(const Monoid& monoid);
/// A builtin name or the path of a monoid file.
Monoid load_monoid(const std::string& source);

/// {"domain_size": k, "arity": n, "signum": [names], "values": [...]}
SignedOp op_from_json(const Json& j, const Monoid& monoid);
Json to_json(const SignedOp& f, const Monoid& monoid);
/// A single op object or an array of them.
std::vector<SignedOp> ops_from_json(const Json& j, const Monoid& monoid);
/// Unsigned tables in the same format; a "signum" field is ignored.
std::vector<Operation> operations_from_json(const Json& j);
Json to_json(const Operation& f);

/// {"domain_size": k, "arity": m, "parts": {name: [[tuple]..]}}; omitted parts are empty.
SRelation relation_from_json(const Json& j, const Monoid& monoid);
Json to_json(const SRelation& r, const Monoid& monoid);
std::vector<SRelation> relations_from_json(const Json& j, const Monoid& monoid);

/// {"violated_s": name, "columns": [[..]], "image": [..]}
Json to_json(const PreservationWitness& w, int k, const Monoid& monoid);

Json to_json(const PrecloneFragment& fragment, const Monoid& monoid);
Json to_json(const RelCloneFragment& fragment, const Monoid& monoid);

/// Line-oriented rendering of a JSON document for --format text.
std::string render_text(const Json& j);

}  // namespace spreclone::io
