#include "helpkit/report.hpp"

namespace helpkit {

using nlohmann::json;

namespace {

json subgroup_json(const FiniteGroup& g, const Subgroup& h) {
  json labels = json::array();
  for (Element x : h.elements()) labels.push_back(g.label(x));
  return {{"order", h.order()}, {"elements", labels}};
}

}  // namespace

json to_json(const FiniteGroup& g, const StructureReport& r) {
  json classes = json::array();
  for (const auto& c : g.classes())
    classes.push_back({{"representative", g.label(c.representative)},
                       {"size", c.size()},
                       {"element_order", g.element_order(c.representative)},
                       {"centralizer_order", c.centralizer_order}});
  json sylow = json::object();
  for (const auto& [p, s] : r.sylow) sylow[std::to_string(p)] = s.order();
  return {{"schema_version", kReportSchemaVersion},
          {"order", r.order},
          {"class_count", r.class_count},
          {"exponent", r.exponent},
          {"is_abelian", r.is_abelian},
          {"is_nilpotent", r.is_nilpotent},
          {"is_hamiltonian", r.is_hamiltonian},
          {"center", subgroup_json(g, r.center)},
          {"derived", subgroup_json(g, r.derived)},
          {"socle", subgroup_json(g, r.socle)},
          {"sylow_orders", sylow},
          {"classes", classes}};
}

json to_json(const FiniteGroup& g, const AuditReport& r) {
  json levels = json::array();
  std::map<std::string, std::size_t> counts;
  for (const auto& l : r.levels) {
    ++counts[l.status];
    json survivors = json::array();
    for (const auto& s : l.survivors) {
      json pinned = json::object();
      for (const auto& [p, x] : s.pinned) pinned[std::to_string(p)] = g.label(x);
      survivors.push_back({{"pinned", pinned}, {"entries", s.vector.entries}, {"non_negative", s.non_negative}});
    }
    levels.push_back({{"m", l.m},
                      {"status", l.status},
                      {"templates", l.templates},
                      {"survivors", survivors},
                      {"negative_survivors", l.negative_survivors},
                      {"nodes", l.nodes},
                      {"rejections", l.rejections},
                      {"elapsed_ms", l.elapsed_ms}});
  }
  json class_reps = json::array();
  for (const auto& c : g.classes()) class_reps.push_back(g.label(c.representative));
  return {{"schema_version", kReportSchemaVersion},
          {"group_order", r.group_order},
          {"bound", r.bound},
          {"characters", r.characters},
          {"character_count", r.character_count},
          {"assume_quotient_zc", r.assume_quotient_zc},
          {"classes", class_reps},
          {"levels", levels},
          {"summary", counts}};
}

int audit_exit_code(const AuditReport& r) {
  for (const auto& l : r.levels)
    if (l.status == "budget") return 3;
  return 0;
}

}  // namespace helpkit
