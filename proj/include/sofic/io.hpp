#pragma once

#include <string>

#include "json.hpp"

#include "sofic/align.hpp"
#include "sofic/commutant.hpp"
#include "sofic/convex.hpp"
#include "sofic/group.hpp"
#include "sofic/rounding.hpp"

namespace sofic::io {

using nlohmann::json;

// Every from_json throws ParseError on malformed input.

json to_json(const Perm& p);
Perm perm_from_json(const json& j);

json to_json(const Subset& s);
Subset subset_from_json(const json& j, std::size_t ambient);

json to_json(const SubsetFamily& fam);
SubsetFamily family_from_json(const json& j, std::size_t ambient);

// { "dimension", "generators", "images", "relators"? }
json to_json(const SoficApprox& theta);
SoficApprox approx_from_json(const json& j);

// { "order", "identity", "table" }
json to_json(const CayleyTable& k);
CayleyTable table_from_json(const json& j);

json to_json(const CombinePlan& plan);
json to_json(const Alignment& a);
json to_json(const ErgodicityCertificate& c);
json to_json(const TraceProfile& tp, const std::vector<std::string>& generators);

json read_json_file(const std::string& path);
// Writes to a temporary file in the same directory and renames it over `path`.
void write_json_file_atomic(const std::string& path, const json& j);

}  // namespace sofic::io
