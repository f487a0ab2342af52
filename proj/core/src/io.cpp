#include "bbr/io.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <string>

#include "bbr/errors.hpp"
#include "bbr/structure.hpp"

namespace bbr {

namespace {

template <typename F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string(what) + ": " + e.what());
  }
}

OpTable rows_to_table(const json& rows, std::size_t n) {
  auto r = rows.get<std::vector<std::vector<Element>>>();
  if (r.size() != n) {
    throw ValidationError("declared n = " + std::to_string(n) + " but found " +
                          std::to_string(r.size()) + " rows");
  }
  return OpTable::from_rows(r);
}

json big_to_json(const BigInt& x) {
  if (x <= std::numeric_limits<std::uint64_t>::max()) return x.convert_to<std::uint64_t>();
  return x.str();
}

}  // namespace

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

json table_to_json(const OpTable& t) { return json{{"n", t.size()}, {"table", t.rows()}}; }

OpTable table_from_json(const json& j) {
  return guarded("table", [&] { return rows_to_table(j.at("table"), j.at("n").get<std::size_t>()); });
}

json ring_to_json(const RingTables& r) {
  return json{{"n", r.size()}, {"add", r.add.rows()}, {"mul", r.mul.rows()}};
}

RingTables ring_from_json(const json& j) {
  return guarded("ring", [&] {
    const auto n = j.at("n").get<std::size_t>();
    return RingTables{rows_to_table(j.at("add"), n), rows_to_table(j.at("mul"), n)};
  });
}

json result_to_json(const RecoveryResult& r) {
  return json{{"method", r.method},
              {"n", r.table.size()},
              {"queries_used", r.queries_used},
              {"table", r.table.rows()}};
}

json tree_to_json(const QueryTree& t) {
  if (t.is_leaf()) {
    return json{{"leaf", t.leaf_op ? json(*t.leaf_op) : json(nullptr)}};
  }
  json children = json::object();
  for (const auto& b : t.children) children[std::to_string(b.answer)] = tree_to_json(b.subtree);
  return json{{"query", {t.query->x, t.query->y}}, {"children", children}};
}

QueryTree tree_from_json(const json& j) {
  return guarded("query tree", [&]() -> QueryTree {
    if (j.contains("leaf")) {
      const auto& leaf = j.at("leaf");
      return QueryTree::leaf(leaf.is_null() ? std::nullopt
                                            : std::optional<OperationId>(leaf.get<OperationId>()));
    }
    const auto q = j.at("query").get<std::vector<Element>>();
    if (q.size() != 2) throw ValidationError("query must be [x, y]");
    std::vector<Branch> children;
    for (const auto& [label, sub] : j.at("children").items()) {
      std::size_t pos = 0;
      unsigned long z = 0;
      try {
        z = std::stoul(label, &pos);
      } catch (const std::logic_error&) {
        pos = std::string::npos;
      }
      if (pos != label.size()) throw ValidationError("branch label '" + label + "' is not an index");
      children.push_back(Branch{static_cast<Element>(z), tree_from_json(sub)});
    }
    std::sort(children.begin(), children.end(),
              [](const Branch& a, const Branch& b) { return a.answer < b.answer; });
    return QueryTree::node(q[0], q[1], std::move(children));
  });
}

json report_to_json(const BoundsReport& r) {
  json j{{"n", r.n}, {"class", r.structure}, {"notes", r.notes}};
  j["x_size"] = r.x_size ? big_to_json(*r.x_size) : json(nullptr);
  j["avg_lower"] = r.avg_lower ? json(*r.avg_lower) : json(nullptr);
  j["closed_form_lower"] = r.closed_form_lower ? json(*r.closed_form_lower) : json(nullptr);
  j["binary_lower"] = r.binary_lower ? json(*r.binary_lower) : json(nullptr);
  return j;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string report_csv_header() { return "n,class,x_size,avg_lower,closed_form_lower"; }

std::string report_csv_row(const BoundsReport& r) {
  std::string row = std::to_string(r.n) + "," + csv_field(r.structure) + ",";
  if (r.x_size) row += r.x_size->str();
  row += ",";
  if (r.avg_lower) row += format_real(*r.avg_lower);
  row += ",";
  if (r.closed_form_lower) row += format_real(*r.closed_form_lower);
  return row;
}

json instance_to_json(const HiddenInstance& h) {
  if (!h.spec) throw ValidationError("only instances generated from a spec can be exported");
  return json{{"kind", "groupoid"},
              {"spec", to_string(*h.spec)},
              {"seed", h.seed},
              {"n", h.truth.size()},
              {"canonical", h.canonical.rows()},
              {"permutation", std::vector<Element>(h.secret_perm.images().begin(), h.secret_perm.images().end())},
              {"table", h.truth.rows()}};
}

HiddenInstance instance_from_json(const json& j) {
  return guarded("instance", [&] {
    if (j.at("kind") != "groupoid") throw ValidationError("not a groupoid instance file");
    const auto n = j.at("n").get<std::size_t>();
    auto spec = parse_structure(j.at("spec").get<std::string>());
    auto canonical = rows_to_table(j.at("canonical"), n);
    Permutation sigma(j.at("permutation").get<std::vector<Element>>());
    auto h = make_hidden(canonical, sigma, spec, j.at("seed").get<std::uint64_t>());
    if (j.contains("table") && rows_to_table(j.at("table"), n) != h.truth) {
      throw ValidationError("instance table does not match canonical table under the permutation");
    }
    return h;
  });
}

json ring_instance_to_json(const HiddenRing& h) {
  if (!h.add.spec) throw ValidationError("only instances generated from a spec can be exported");
  return json{{"kind", "ring"},
              {"spec", to_string(*h.add.spec)},
              {"seed", h.add.seed},
              {"n", h.add.truth.size()},
              {"canonical", {{"add", h.add.canonical.rows()}, {"mul", h.mul.canonical.rows()}}},
              {"permutation", std::vector<Element>(h.add.secret_perm.images().begin(), h.add.secret_perm.images().end())},
              {"add", h.add.truth.rows()},
              {"mul", h.mul.truth.rows()}};
}

HiddenRing ring_instance_from_json(const json& j) {
  return guarded("ring instance", [&] {
    if (j.at("kind") != "ring") throw ValidationError("not a ring instance file");
    const auto n = j.at("n").get<std::size_t>();
    auto spec = parse_structure(j.at("spec").get<std::string>());
    const auto* ring = std::get_if<RingSpec>(&spec);
    if (!ring) throw ValidationError("ring instance with a non-ring spec");
    RingTables canonical{rows_to_table(j.at("canonical").at("add"), n),
                         rows_to_table(j.at("canonical").at("mul"), n)};
    Permutation sigma(j.at("permutation").get<std::vector<Element>>());
    auto h = make_hidden_ring(canonical, sigma, *ring, j.at("seed").get<std::uint64_t>());
    if (j.contains("add") && rows_to_table(j.at("add"), n) != h.add.truth) {
      throw ValidationError("instance addition does not match canonical table under the permutation");
    }
    if (j.contains("mul") && rows_to_table(j.at("mul"), n) != h.mul.truth) {
      throw ValidationError("instance multiplication does not match canonical table under the permutation");
    }
    return h;
  });
}

}  // namespace bbr
