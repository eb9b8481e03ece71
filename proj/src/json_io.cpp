#include "disclab/json_io.hpp"

#include "disclab/verify.hpp"

namespace disclab {

void to_json(nlohmann::json& j, const DiscrepancyResult& r) {
  j = nlohmann::json{{"schema", "disclab/discrepancy/v1"},
                     {"measure", to_string(r.measure)},
                     {"method", to_string(r.method)},
                     {"value", r.value},
                     {"squared", r.squared}};
  if (r.truncation_order) j["truncation_order"] = *r.truncation_order;
  if (r.tail_bound) j["tail_bound"] = *r.tail_bound;
}

void to_json(nlohmann::json& j, const BmoCandidate& c) {
  j = nlohmann::json{{"kind", to_string(c.kind)}};
  if (c.kind == BmoCandidate::Kind::DyadicBox) {
    j["box"] = {{"levels", c.box.levels}, {"positions", c.box.positions}};
  }
  if (c.kind == BmoCandidate::Kind::CellUnion) j["cells"] = c.cells;
}

void to_json(nlohmann::json& j, const BmoEstimate& e) {
  j = nlohmann::json{{"schema", "disclab/bmo-estimate/v1"},
                     {"measure", to_string(Measure::BmoLower)},
                     {"value", e.value},
                     {"squared", e.squared},
                     {"truncation_order", e.truncation_order},
                     {"search_level", e.search_level},
                     {"global_term_squared", e.global_term_squared},
                     {"tail_bound", e.tail_bound},
                     {"candidate_u", e.candidate}};
}

void to_json(nlohmann::json& j, const InverseBoundReport& r) {
  j = nlohmann::json{{"schema", "disclab/inverse-report/v1"},
                     {"epsilon", r.epsilon},
                     {"dim", r.dim},
                     {"measure", to_string(r.measure)},
                     {"family", to_string(r.family)},
                     {"bmo_lower", r.bmo_lower},
                     {"extreme_lower", r.extreme_lower},
                     {"notes", r.notes}};
  if (r.empirical_upper) {
    j["empirical_upper"] = *r.empirical_upper;
  } else {
    j["empirical_upper"] = nullptr;
  }
}

void to_json(nlohmann::json& j, const RothRow& row) {
  j = nlohmann::json{{"n", row.n},
                     {"extreme", row.extreme},
                     {"bmo_lower", row.bmo_lower},
                     {"shape", row.shape},
                     {"ratio_extreme", row.ratio_extreme},
                     {"ratio_bmo", row.ratio_bmo}};
}

void to_json(nlohmann::json& j, const CheckResult& c) {
  j = nlohmann::json{
      {"name", c.name}, {"status", to_string(c.status)}, {"detail", c.detail}};
}

nlohmann::json pointset_json(const PointSet& ps) {
  nlohmann::json points = nlohmann::json::array();
  for (std::size_t i = 0; i < ps.size(); ++i) {
    auto p = ps.point(i);
    points.push_back(std::vector<double>(p.begin(), p.end()));
  }
  return nlohmann::json{{"schema", "disclab/pointset/v1"},
                        {"dim", ps.dim()},
                        {"n", ps.size()},
                        {"label", ps.label()},
                        {"points", points}};
}

nlohmann::json roth_table_json(int dim, const std::vector<RothRow>& rows) {
  return nlohmann::json{
      {"schema", "disclab/roth-curve/v1"}, {"dim", dim}, {"rows", rows}};
}

nlohmann::json curse_table_json(double epsilon, int dmax) {
  nlohmann::json rows = nlohmann::json::array();
  for (int d = 1; d <= dmax; ++d) {
    rows.push_back({{"dim", d},
                    {"bmo_lower", curse_lower_bound_bmo(epsilon, d)},
                    {"extreme_lower", curse_lower_bound_extreme(epsilon, d)}});
  }
  return nlohmann::json{
      {"schema", "disclab/curse-table/v1"}, {"epsilon", epsilon}, {"rows", rows}};
}

nlohmann::json verify_report_json(const std::vector<CheckResult>& checks) {
  return nlohmann::json{{"schema", "disclab/verify/v1"},
                        {"passed", all_passed(checks)},
                        {"checks", checks}};
}

}  // namespace disclab
