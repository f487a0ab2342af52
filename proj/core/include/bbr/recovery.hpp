#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bbr/op_table.hpp"
#include "bbr/oracle.hpp"

namespace bbr {

/// One subgroup-extension step of the abelian recovery: the known subgroup
/// grew to `subgroup_size` elements at a cost of `queries` oracle calls.
struct ExtensionStep {
  Element generator;
  std::size_t subgroup_size;
  std::size_t queries;
};

struct RecoveryResult {
  OpTable table;
  std::size_t queries_used = 0;
  std::string method;
  std::optional<Transcript> trace;
  /// Filled by recover_abelian only.
  std::vector<ExtensionStep> steps;
};

/// Recovers an abelian group with exactly n queries: a power chain for the
/// first element, then coset extensions by the smallest unknown element until
/// the subgroup is everything. Throws NotInClassError on answers no abelian
/// group can give.
RecoveryResult recover_abelian(Oracle& oracle);

/// Groups of prime order p with at most p-2 queries (one query for p = 2).
/// Throws ValidationError unless p is prime and equals the oracle size.
RecoveryResult recover_abelian_prime(Oracle& oracle, std::size_t p);

/// The eight-query algorithm for groups of order 11. The last two answers
/// pin the discrete logarithms of the four elements the power chain misses.
RecoveryResult recover_order11_eight(Oracle& oracle);

/// Worst case of top-down merge sort: n⌈log₂n⌉ − 2^⌈log₂n⌉ + 1 (0 for n <= 1).
std::size_t merge_sort_budget(std::size_t n);

/// Recovers the hidden order of a max-semigroup by merge sort, one query per
/// comparison.
RecoveryResult recover_max_chain(Oracle& oracle);

/// Greedy additive generating set: repeatedly adjoin the smallest element
/// outside the subgroup generated so far. Never contains the identity.
/// Throws ValidationError unless `add` is an abelian group table.
std::vector<Element> greedy_generating_set(const OpTable& add);

/// Multiplication recovery with a known addition: queries a∗b for a, b in the
/// greedy generating set and expands every other product bilinearly.
RecoveryResult recover_ring_multiplication(const OpTable& add, Oracle& mul_oracle);

/// Addition via recover_abelian, then multiplication over the recovered
/// addition. Total cost is at most n + (log₂n)².
std::pair<RecoveryResult, RecoveryResult> recover_ring_full(Oracle& add_oracle,
                                                            Oracle& mul_oracle);

/// n + (log₂ n)².
double ring_budget(std::size_t n);

}  // namespace bbr
