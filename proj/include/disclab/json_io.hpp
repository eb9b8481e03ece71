#pragma once

#include <vector>

#include <json.hpp>

#include "disclab/bmo.hpp"
#include "disclab/bounds.hpp"
#include "disclab/discrepancy.hpp"
#include "disclab/pointset.hpp"
#include "disclab/verify.hpp"

// JSON encodings of every report type.  Each object carries a `schema` field
// of the form "disclab/<type>/v1"; columns and keys are part of the output
// contract and only change with the version suffix.
namespace disclab {

void to_json(nlohmann::json& j, const DiscrepancyResult& r);
void to_json(nlohmann::json& j, const BmoCandidate& c);
void to_json(nlohmann::json& j, const BmoEstimate& e);
void to_json(nlohmann::json& j, const InverseBoundReport& r);
void to_json(nlohmann::json& j, const RothRow& row);
void to_json(nlohmann::json& j, const CheckResult& c);

nlohmann::json pointset_json(const PointSet& ps);
nlohmann::json roth_table_json(int dim, const std::vector<RothRow>& rows);
nlohmann::json curse_table_json(double epsilon, int dmax);
nlohmann::json verify_report_json(const std::vector<CheckResult>& checks);

}  // namespace disclab
