#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hcoh/catalog.hpp"
#include "hcoh/models.hpp"
#include "hcoh/serialize.hpp"

namespace hcoh {

// "1,0;0,1": rows are target coordinates, columns source coordinates.
std::vector<std::vector<long>> parse_weight_matrix(const std::string& text);
// A named subgroup of G, or a catalog group with an explicit weight matrix.
EmbeddingSpec resolve_embedding(const GroupDatum& G, const std::string& sub, const std::string& weights);

struct SpaceConfig {
  std::string G;
  std::string H;  // empty: one-sided
  std::string K;
  std::string embed_H;
  std::string embed_K;
  std::string coeff = "Q";
  std::optional<int> maxdeg;
  std::string method = "koszul";  // koszul, bar, both
  unsigned threads = 1;  // not serialized: output does not depend on it
  bool flip_sign = false;
  bool require_ring = false;

  Json to_json() const;
  static SpaceConfig from_json(const Json& j);
};

struct RunResult {
  Json report;
  std::vector<std::string> warnings;
  int exit_code = 0;
  std::string error;  // set with exit_code 3 or 4
};

ModelRecipe recipe_from_config(const SpaceConfig& c);
RunResult run_space(const SpaceConfig& c);
std::string render_space_text(const Json& report);

// Manifest embedded in every report; wall time is kept out so replays are byte-identical.
Json make_manifest(const std::string& command, const Json& config, const std::string& ring, int cap,
                   const std::vector<std::string>& warnings);
const char* engine_version();

}  // namespace hcoh
