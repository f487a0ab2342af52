#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>

#include "bbr/op_table.hpp"
#include "bbr/permutation.hpp"
#include "bbr/structure.hpp"

namespace bbr {

/// Largest n accepted by the brute-force automorphism and isomorphism
/// searches unless the caller raises it.
inline constexpr std::size_t default_brute_force_cap = 8;

/// Direct sum Z_{d1} ⊕ ... ⊕ Z_{dk} under mixed-radix encoding
/// index = x1 + d1 (x2 + d2 (x3 + ...)); the identity is index 0.
OpTable build_abelian(const AbelianSpec& spec);

/// entry(x, y) = max(x, y).
OpTable build_max_chain(std::size_t n);

/// Canonical tables of a product of Z_n and GF(p^r) factors. Elements of a
/// product are mixed-radix encoded with the first component least significant.
RingTables build_ring(const RingSpec& spec);

/// Canonical table for a group or max-chain spec. Ring specs carry two
/// tables and are rejected with ValidationError; use build_ring.
OpTable build_table(const StructureSpec& spec);

enum class Axioms { groupoid, semigroup, group, abelian_group };

bool is_associative(const OpTable& t);
bool is_commutative(const OpTable& t);
std::optional<Element> find_identity(const OpTable& t);

/// True iff every axiom of the requested class holds entrywise.
bool check_axioms(const OpTable& t, Axioms which);

/// Both distributive laws of mul over add, checked for all triples.
bool is_distributive(const OpTable& add, const OpTable& mul);

/// Additive group abelian and both distributive laws hold.
bool check_ring_tables(const RingTables& r);

/// Order of x in a group table. Throws ValidationError if t is not a group.
std::size_t element_order(const OpTable& t, Element x);

/// True for a cyclic group table (some element has order n).
bool is_cyclic_group(const OpTable& t);

/// True iff the table is (S, max) for some total order on S.
bool is_max_chain(const OpTable& t);

/// Number of permutations π with π(x∗y) = π(x)∗π(y) for all x, y.
/// Throws CapabilityError when n exceeds `cap`.
std::uint64_t count_automorphisms(const OpTable& t,
                                  std::size_t cap = default_brute_force_cap);

/// Permutations preserving both tables at once.
std::uint64_t count_ring_automorphisms(const RingTables& r,
                                       std::size_t cap = default_brute_force_cap);

/// A permutation π with π(x ∗_a y) = π(x) ∗_b π(y), if one exists.
/// Throws ValidationError on size mismatch and CapabilityError above `cap`.
std::optional<Permutation> are_isomorphic(const OpTable& a, const OpTable& b,
                                          std::size_t cap = default_brute_force_cap);

}  // namespace bbr
