#pragma once

#include <json.hpp>
#include <map>
#include <string>

#include "hcoh/barcalc.hpp"
#include "hcoh/cdga.hpp"
#include "hcoh/presentation.hpp"
#include "hcoh/simplicial.hpp"
#include "hcoh/tor.hpp"

namespace hcoh {

using Json = nlohmann::ordered_json;

inline constexpr const char* kDgaSchema = "hcoh.dga/1";
inline constexpr const char* kSpanSchema = "hcoh.span/1";
inline constexpr const char* kSsetSchema = "hcoh.sset/1";
inline constexpr const char* kReportSchema = "hcoh.report/1";

Json read_json_file(const std::string& path);
Rational parse_rational(const Json& v);

Json to_json(const TorTable& t);
// Second-quadrant grid: p increases to the right, q decreases downward.
std::string render_grid(const TorTable& t);

Json to_json(const RingPresentation& p);
std::string render(const RingPresentation& p);
Json to_json(const std::vector<IntegralSlice>& z);

std::vector<GeneratorSpec> generators_from_json(const Json& j);
FreeCga free_algebra_from_json(const Json& j, const CoefficientRing& ring);

// Explicit tables, or {"free": {...}, "truncate": n}. The cap is min(requested, truncate).
Dga dga_from_json(const Json& j, int cap);
Json to_json(const Dga& a);
Json to_json(const Dgc& c, bool with_coproduct = false);

// Polynomial span, or a group form {"G": ..., "K": ..., "H": ...}.
TorSpan span_from_json(const Json& j);

struct SimplicialInput {
  FiniteSimplicialSet space;
  std::map<std::string, NormalizedCochain> cochains;
};
// Builtin names "boundary-tetrahedron", "rp2", "random:<seed>" or a JSON file.
SimplicialInput simplicial_from_json(const Json& j);
SimplicialInput simplicial_builtin(const std::string& name);
Json to_json(const FiniteSimplicialSet& X, const NormalizedCochain& c);

}  // namespace hcoh
