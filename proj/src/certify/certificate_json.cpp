#include "arbor/certify.hpp"

namespace arbor {

nlohmann::json to_json(const CertificateChain& ch, bool include_values) {
  using nlohmann::json;
  json levels = json::array();
  for (const auto& L : ch.levels) {
    json m = {{"kind", maximality_kind_name(L.maximality.kind)},
              {"maximal", L.maximality.maximal},
              {"witness", L.maximality.witness},
              {"witness_is_prime", L.maximality.witness_is_prime},
              {"detail", L.maximality.detail}};
    json l = {{"level", L.level},
              {"map", L.map_index + 1},
              {"stability", stability_kind_name(L.stability)},
              {"stability_detail", L.stability_detail},
              {"maximality", m},
              {"tool_guaranteed", L.tool_guaranteed}};
    if (include_values) l["value"] = L.value;
    levels.push_back(std::move(l));
  }
  json tool = nullptr;
  if (ch.tool) tool = {{"j", ch.tool->j + 1}, {"k", ch.tool->k + 1}};
  return {{"format", "arbor-certificate"},
          {"version", kCertificateFormatVersion},
          {"set", ch.set.to_string()},
          {"ring", ring_name(ch.set.ring)},
          {"coding", ch.coding.to_string()},
          {"depth", ch.depth},
          {"summary",
           {{"stable_through_depth", ch.stable_through_depth},
            {"maximal_levels", ch.maximal_levels},
            {"tool_guarantee", ch.tool_guarantee},
            {"tool", tool},
            {"inconclusive", ch.inconclusive()}}},
          {"levels", levels}};
}

}  // namespace arbor
