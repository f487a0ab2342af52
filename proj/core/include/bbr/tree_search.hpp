#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bbr/op_table.hpp"

namespace bbr {

using OperationId = std::uint32_t;

/// A candidate set X of operations on one element set, pairwise distinct.
class OperationSet {
 public:
  OperationSet(std::size_t n, std::vector<OpTable> ops, std::string tag);

  std::size_t n() const noexcept { return n_; }
  std::size_t size() const noexcept { return ops_.size(); }
  const OpTable& operator[](OperationId id) const { return ops_[id]; }
  const std::vector<OpTable>& ops() const noexcept { return ops_; }
  const std::string& tag() const noexcept { return tag_; }

  /// Id of a table in the set, if present.
  std::optional<OperationId> find(const OpTable& t) const;

 private:
  std::size_t n_;
  std::vector<OpTable> ops_;
  std::string tag_;
};

struct Query {
  Element x;
  Element y;
  friend bool operator==(const Query&, const Query&) = default;
};

struct Branch;

/// A query-algorithm: internal nodes ask x∗y and branch on the answer,
/// leaves optionally name the operation they identify.
struct QueryTree {
  std::optional<Query> query;
  std::vector<Branch> children;  // sorted by answer when built here
  std::optional<OperationId> leaf_op;

  static QueryTree leaf(std::optional<OperationId> op = std::nullopt);
  static QueryTree node(Element x, Element y, std::vector<Branch> children);

  bool is_leaf() const noexcept { return !query.has_value(); }
  std::size_t leaf_count() const;
  std::size_t height() const;
};

struct Branch {
  Element answer;
  QueryTree subtree;
};

/// Every distinct table {∗^φ : φ ∈ Sym(S)} in the orbit of `canonical`.
/// Brute force over Sym(S) for n <= 8; cyclic groups of prime order up to 11
/// use an identity-and-generator parametrization instead.
/// Throws CapabilityError beyond those limits or above `max_ops` results.
OperationSet enumerate_x_g(const OpTable& canonical, std::size_t max_ops = 1'000'000);

/// Streams the same orbit without materializing it. Returns the count.
std::size_t for_each_x_g(const OpTable& canonical,
                         const std::function<void(const OpTable&)>& visit);

/// Every multiplication in the orbit of r.mul under Aut(r.add); brute force
/// over Sym(S), n <= 8.
OperationSet enumerate_x_r(const RingTables& r);

struct TreeVerification {
  bool ok = false;
  /// leaf_index[id]: preorder index of the leaf reached by operation id.
  std::vector<std::optional<std::size_t>> leaf_index;
  /// depth[id]: number of queries on the path of operation id.
  std::vector<std::size_t> depth;
  std::string failure;
  std::optional<OperationId> witness;
};

/// Walks the tree under every operation of X. ok iff each walk ends at a
/// leaf, branch labels at each node are distinct, labelled leaves agree with
/// the operation reaching them, and the leaf map is a bijection.
TreeVerification verify_query_tree(const QueryTree& tree, const OperationSet& ops);

struct TreeStats {
  std::size_t worst_depth;
  double avg_depth;
};

/// Throws ValidationError if the tree does not verify against ops.
TreeStats tree_stats(const QueryTree& tree, const OperationSet& ops);

inline constexpr std::size_t default_search_budget = 200;

struct SearchResult {
  std::size_t depth;
  QueryTree tree;
};

/// Exact minimax optimum of the worst-case query count over X, with the
/// canonical witness tree (first optimal query in lexicographic order at
/// every node). Throws CapabilityError when |X| exceeds `budget`.
SearchResult minimal_worst_case(const OperationSet& ops,
                                std::size_t budget = default_search_budget);

/// Indented rendering in the style "x*y" / "  = z: ...".
std::string render_tree(const QueryTree& tree);

}  // namespace bbr
