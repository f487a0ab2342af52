#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "bbr/bounds.hpp"
#include "bbr/op_table.hpp"
#include "bbr/oracle.hpp"
#include "bbr/recovery.hpp"
#include "bbr/tree_search.hpp"

namespace bbr {

using nlohmann::json;

/// {"n": n, "table": [[row 0], ...]}
json table_to_json(const OpTable& t);
OpTable table_from_json(const json& j);

/// {"n": n, "add": [[...]], "mul": [[...]]}
json ring_to_json(const RingTables& r);
RingTables ring_from_json(const json& j);

/// {"method": ..., "n": ..., "queries_used": ..., "table": [[...]]}
json result_to_json(const RecoveryResult& r);

/// {"query": [x, y], "children": {"z": subtree | {"leaf": id}}}
json tree_to_json(const QueryTree& t);
QueryTree tree_from_json(const json& j);

json report_to_json(const BoundsReport& r);
std::string report_csv_header();
/// n,class,x_size,avg_lower,closed_form_lower. Floats use 6 significant
/// digits, exact integers are printed in full, missing fields are empty.
std::string report_csv_row(const BoundsReport& r);

/// Instance export: spec, seed, canonical table(s), permutation, truth.
json instance_to_json(const HiddenInstance& h);
HiddenInstance instance_from_json(const json& j);
json ring_instance_to_json(const HiddenRing& h);
HiddenRing ring_instance_from_json(const json& j);

/// Quotes a CSV cell when it holds a comma, quote or newline.
std::string csv_field(const std::string& s);

/// Shared number formatting for CSV/text output.
std::string format_real(double v);

}  // namespace bbr
