#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <CLI11.hpp>

#include "bbr/algebra.hpp"
#include "bbr/bounds.hpp"
#include "bbr/errors.hpp"
#include "bbr/io.hpp"
#include "bbr/recovery.hpp"
#include "bbr/tree_search.hpp"

namespace bbr::cli {

namespace {

struct SpecFlags {
  std::string abelian;
  std::size_t maxchain = 0;
  std::string ring;
  std::string group;
};

void add_spec_flags(CLI::App* app, SpecFlags& f) {
  auto* a = app->add_option("--abelian", f.abelian, "abelian group by invariant factors, e.g. 2,4");
  auto* m = app->add_option("--maxchain", f.maxchain, "the semigroup ({0..n-1}, max)");
  auto* r = app->add_option("--ring", f.ring, "ring such as z4, gf8, z2xgf4");
  auto* g = app->add_option("--group", f.group, "abelian group by cyclic factors, e.g. z4, z2xz6");
  a->excludes(m, r, g);
  m->excludes(r, g);
  r->excludes(g);
}

std::optional<StructureSpec> resolve_spec(const SpecFlags& f) {
  if (!f.abelian.empty()) return abelian_from_invariant_factors(parse_uint_list(f.abelian));
  if (f.maxchain > 0) return MaxChainSpec{f.maxchain};
  if (!f.ring.empty()) return parse_ring(f.ring);
  if (!f.group.empty()) return parse_group(f.group);
  return std::nullopt;
}

StructureSpec require_spec(const SpecFlags& f) {
  auto spec = resolve_spec(f);
  if (!spec) throw ValidationError("one of --abelian, --maxchain, --ring, --group is required");
  validate(*spec);
  return *spec;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path);
  if (!file) throw ValidationError("cannot write " + path);
  file << text;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

struct Hidden {
  std::optional<HiddenInstance> single;
  std::optional<HiddenRing> ring;
};

Hidden make_instance(const StructureSpec& spec, std::uint64_t seed) {
  if (const auto* r = std::get_if<RingSpec>(&spec)) return {std::nullopt, new_hidden_ring(*r, seed)};
  return {new_hidden(spec, seed), std::nullopt};
}

Hidden load_instance(const std::string& path) {
  const json j = read_json_file(path);
  if (j.value("kind", "") == "ring") return {std::nullopt, ring_instance_from_json(j)};
  return {instance_from_json(j), std::nullopt};
}

// Declared budget of each method on an instance of size n.
double method_budget(const std::string& method, std::size_t n, const OpTable* add) {
  if (method == "abelian") return double(n);
  if (method == "prime") return n == 2 ? 1.0 : double(n) - 2.0;
  if (method == "eleven8") return 8.0;
  if (method == "maxchain") return double(merge_sort_budget(n));
  if (method == "ringmul") {
    const double a = double(greedy_generating_set(*add).size());
    return a * a;
  }
  return ring_budget(n);
}

struct Run {
  json result;
  std::size_t queries = 0;
  double budget = 0;
  bool exact = false;
  Transcript trace;
};

Run run_method(const std::string& method, const Hidden& h) {
  Run run;
  const bool ring_method = method == "ringmul" || method == "ringfull";
  if (ring_method != h.ring.has_value()) {
    throw ValidationError("method " + method + (ring_method ? " needs a ring instance" : " needs a single-table instance"));
  }
  if (ring_method) {
    Oracle add(h.ring->add), mul(h.ring->mul);
    const std::size_t n = add.size();
    if (method == "ringmul") {
      const auto r = recover_ring_multiplication(h.ring->add.truth, mul);
      run.queries = r.queries_used;
      run.exact = mul.verify_recovery(r.table).exact;
      run.result = result_to_json(r);
      run.budget = method_budget(method, n, &h.ring->add.truth);
    } else {
      auto [ra, rm] = recover_ring_full(add, mul);
      run.queries = ra.queries_used + rm.queries_used;
      run.exact = add.verify_recovery(ra.table).exact && mul.verify_recovery(rm.table).exact;
      run.result = json{{"method", method}, {"n", n}, {"queries_used", run.queries},
                        {"add", result_to_json(ra)}, {"mul", result_to_json(rm)}};
      run.budget = method_budget(method, n, nullptr);
      run.trace = add.transcript();
    }
    const auto& t = mul.transcript();
    run.trace.insert(run.trace.end(), t.begin(), t.end());
    return run;
  }
  Oracle o(*h.single);
  const std::size_t n = o.size();
  RecoveryResult r = [&] {
    if (method == "abelian") return recover_abelian(o);
    if (method == "prime") return recover_abelian_prime(o, n);
    if (method == "eleven8") return recover_order11_eight(o);
    return recover_max_chain(o);
  }();
  run.queries = r.queries_used;
  run.exact = o.verify_recovery(r.table).exact;
  run.result = result_to_json(r);
  run.budget = method_budget(method, n, nullptr);
  run.trace = o.transcript();
  return run;
}

const std::vector<std::string> methods{"abelian", "prime", "eleven8", "maxchain", "ringmul", "ringfull"};

const char* sweep_columns = "n,spec,method,seed,queries,bound,ok";

std::string bound_text(double b) {
  if (b == std::floor(b)) return std::to_string(static_cast<long long>(b));
  return format_real(b);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Black-box recovery of operation tables", "bbrecover"};
  app.require_subcommand(1);

  SpecFlags spec_flags;
  std::uint64_t seed = 0;
  std::string out_path;

  auto* gen = app.add_subcommand("gen", "generate a hidden instance file");
  add_spec_flags(gen, spec_flags);
  gen->add_option("--seed", seed, "random seed")->required();
  gen->add_option("--out", out_path, "output file (default stdout)");

  std::string method, instance_path, trace_path;
  auto* recover = app.add_subcommand("recover", "recover a hidden table and verify it");
  add_spec_flags(recover, spec_flags);
  auto* recover_seed = recover->add_option("--seed", seed, "random seed for a fresh instance");
  auto* inst = recover->add_option("--instance", instance_path, "instance file written by gen");
  inst->excludes(recover_seed);
  recover->add_option("--method", method, "recovery algorithm")->required()->check(CLI::IsMember(methods));
  recover->add_option("--out", out_path, "result file (default stdout)");
  recover->add_option("--trace", trace_path, "write the query transcript as JSON lines");

  std::string format = "json";
  std::size_t cap = default_brute_force_cap;
  auto* bounds = app.add_subcommand("bounds", "lower bounds for a structure");
  add_spec_flags(bounds, spec_flags);
  bounds->add_option("--format", format, "json or csv (n,class,x_size,avg_lower,closed_form_lower)")
      ->check(CLI::IsMember({"json", "csv"}));
  bounds->add_option("--cap", cap, "largest n for brute-force automorphism counts");
  bounds->add_option("--out", out_path, "output file (default stdout)");

  std::size_t budget = default_search_budget;
  std::string tree_path;
  auto* search = app.add_subcommand("search", "exact minimax optimum of the worst-case query count");
  add_spec_flags(search, spec_flags);
  search->add_option("--budget", budget, "largest |X| to search");
  search->add_option("--cap", cap, "largest n for brute-force automorphism counts");
  search->add_option("--out", tree_path, "write the witness tree as JSON");

  std::string family;
  std::size_t min_n = 2, max_n = 16, reps = 1;
  std::vector<std::string> rings{"z4", "gf4", "gf8", "gf9"};
  auto* sweep = app.add_subcommand(
      "sweep", std::string("run a recovery family over many sizes and seeds; CSV columns ") + sweep_columns);
  sweep->add_option("--family", family, "abelian, maxchain or ring")
      ->required()
      ->check(CLI::IsMember({"abelian", "maxchain", "ring"}));
  sweep->add_option("--min-n", min_n, "smallest size");
  sweep->add_option("--max-n", max_n, "largest size");
  sweep->add_option("--rings", rings, "rings for the ring family")->delimiter(',');
  sweep->add_option("--seed", seed, "first seed")->required();
  sweep->add_option("--reps", reps, "seeds per structure")->check(CLI::PositiveNumber);
  std::string sweep_format = "csv";
  sweep->add_option("--format", sweep_format, "csv or json")->check(CLI::IsMember({"json", "csv"}));
  sweep->add_option("--out", out_path, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? Exit::ok : Exit::usage;
  }

  try {
    if (gen->parsed()) {
      const auto spec = require_spec(spec_flags);
      const auto h = make_instance(spec, seed);
      const json j = h.ring ? ring_instance_to_json(*h.ring) : instance_to_json(*h.single);
      emit(j.dump() + "\n", out_path, out);
      return Exit::ok;
    }

    if (recover->parsed()) {
      Hidden h;
      if (!instance_path.empty()) {
        if (resolve_spec(spec_flags)) throw ValidationError("--instance replaces the structure flags");
        h = load_instance(instance_path);
      } else {
        if (recover_seed->count() == 0) throw ValidationError("--seed is required without --instance");
        h = make_instance(require_spec(spec_flags), seed);
      }
      Run run = run_method(method, h);
      const bool within = double(run.queries) <= run.budget + bound_tolerance;
      run.result["exact"] = run.exact;
      run.result["budget"] = run.budget;
      run.result["within_budget"] = within;
      emit(run.result.dump() + "\n", out_path, out);
      if (!trace_path.empty()) {
        std::ofstream t(trace_path);
        if (!t) throw ValidationError("cannot write " + trace_path);
        write_transcript(t, run.trace);
      }
      if (!run.exact) {
        err << "recovered table does not match the hidden one\n";
        return Exit::failed;
      }
      if (!within) {
        err << "used " << run.queries << " queries, budget " << bound_text(run.budget) << "\n";
        return Exit::failed;
      }
      return Exit::ok;
    }

    if (bounds->parsed()) {
      const auto rep = bounds_report(require_spec(spec_flags), cap);
      const std::string text = format == "csv" ? report_csv_header() + "\n" + report_csv_row(rep) + "\n"
                                               : report_to_json(rep).dump(2) + "\n";
      emit(text, out_path, out);
      return Exit::ok;
    }

    if (search->parsed()) {
      const auto spec = require_spec(spec_flags);
      if (!std::holds_alternative<RingSpec>(spec)) {
        const BigInt size = x_g_size(build_table(spec), cap);
        if (size > budget) {
          throw CapabilityError("|X| = " + size.str() + " exceeds the search budget of " +
                                std::to_string(budget) + " operations");
        }
      }
      const auto ops = std::holds_alternative<RingSpec>(spec)
                           ? enumerate_x_r(build_ring(std::get<RingSpec>(spec)))
                           : enumerate_x_g(build_table(spec));
      const auto r = minimal_worst_case(ops, budget);
      out << "|X| = " << ops.size() << "\n";
      out << "depth " << r.depth << "\n";
      out << render_tree(r.tree);
      if (!tree_path.empty()) emit(tree_to_json(r.tree).dump(2) + "\n", tree_path, out);
      return Exit::ok;
    }

    // sweep
    if (min_n > max_n) throw ValidationError("--min-n exceeds --max-n");
    struct Row {
      std::size_t n;
      std::string spec, method;
      std::uint64_t seed;
      std::size_t queries;
      double bound;
      bool ok;
    };
    std::vector<Row> rows;
    auto run_one = [&](const StructureSpec& spec, const std::string& m) {
      for (std::uint64_t s = seed; s < seed + reps; ++s) {
        const Run run = run_method(m, make_instance(spec, s));
        rows.push_back({order(spec), to_string(spec), m, s, run.queries, run.budget,
                        run.exact && double(run.queries) <= run.budget + bound_tolerance});
      }
    };
    if (family == "ring") {
      for (const auto& name : rings) run_one(parse_ring(name), "ringfull");
    } else {
      for (std::size_t n = min_n; n <= max_n; ++n) {
        if (family == "maxchain") {
          run_one(MaxChainSpec{n}, "maxchain");
        } else {
          for (const auto& spec : abelian_groups_of_order(n)) run_one(spec, "abelian");
        }
      }
    }
    std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
      return std::tie(a.n, a.method, a.seed) < std::tie(b.n, b.method, b.seed);
    });
    std::ostringstream text;
    if (sweep_format == "csv") {
      text << sweep_columns << "\n";
      for (const auto& r : rows) {
        text << r.n << ',' << csv_field(r.spec) << ',' << r.method << ',' << r.seed << ',' << r.queries << ','
             << bound_text(r.bound) << ',' << (r.ok ? "true" : "false") << "\n";
      }
    } else {
      json arr = json::array();
      for (const auto& r : rows) {
        arr.push_back({{"n", r.n}, {"spec", r.spec}, {"method", r.method}, {"seed", r.seed},
                       {"queries", r.queries}, {"bound", r.bound}, {"ok", r.ok}});
      }
      text << arr.dump() << "\n";
    }
    emit(text.str(), out_path, out);
    const auto bad = std::count_if(rows.begin(), rows.end(), [](const Row& r) { return !r.ok; });
    if (bad > 0) {
      err << bad << " of " << rows.size() << " rows failed\n";
      return Exit::failed;
    }
    return Exit::ok;
  } catch (const NotInClassError& e) {
    err << "not in class: " << e.what() << "\n";
    return Exit::failed;
  } catch (const CapabilityError& e) {
    err << "capability: " << e.what() << "\n";
    return Exit::capability;
  } catch (const ValidationError& e) {
    err << "invalid: " << e.what() << "\n";
    return Exit::usage;
  }
}

}  // namespace bbr::cli
