#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace bbr {

/// Finite abelian group by invariant factors d1 | d2 | ... | dk, each >= 2.
/// The empty factor list is the trivial group.
struct AbelianSpec {
  std::vector<std::uint64_t> invariant_factors;
  friend bool operator==(const AbelianSpec&, const AbelianSpec&) = default;
};

/// The semigroup ({0, ..., n-1}, max).
struct MaxChainSpec {
  std::size_t n = 1;
  friend bool operator==(const MaxChainSpec&, const MaxChainSpec&) = default;
};

/// One factor of a ring: Z/nZ or GF(p^r).
struct RingComponent {
  enum class Kind { integers_mod, galois_field };
  Kind kind = Kind::integers_mod;
  std::uint64_t modulus = 1;  // integers_mod
  std::uint64_t prime = 2;    // galois_field
  unsigned degree = 1;        // galois_field

  static RingComponent integers(std::uint64_t n);
  static RingComponent field(std::uint64_t p, unsigned r);

  std::uint64_t order() const;
  friend bool operator==(const RingComponent&, const RingComponent&) = default;
};

/// A direct product of Z_n and GF(p^r) factors (at least one).
struct RingSpec {
  std::vector<RingComponent> components;
  friend bool operator==(const RingSpec&, const RingSpec&) = default;
};

using StructureSpec = std::variant<AbelianSpec, MaxChainSpec, RingSpec>;

bool is_prime(std::uint64_t n);
std::uint64_t euler_phi(std::uint64_t n);

/// Prime factorization as (p, e) pairs, ascending in p.
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);

/// Validates an invariant-factor chain. A lone factor 1 is accepted as an
/// alias for the trivial group and normalized to the empty list.
AbelianSpec abelian_from_invariant_factors(std::vector<std::uint64_t> factors);

/// Normalizes a primary decomposition (prime powers, any order) into
/// invariant-factor form, e.g. {2, 4, 3} -> [2, 12].
AbelianSpec abelian_from_prime_powers(const std::vector<std::uint64_t>& prime_powers);

/// Normalizes arbitrary cyclic factors (e.g. Z2 x Z6) to invariant factors.
AbelianSpec abelian_from_cyclic_factors(const std::vector<std::uint64_t>& factors);

/// Every abelian group of order n, one invariant-factor spec per
/// isomorphism class, in a fixed order.
std::vector<AbelianSpec> abelian_groups_of_order(std::uint64_t n);

RingSpec ring_from_components(std::vector<RingComponent> components);

/// Throws ValidationError on any violated invariant.
void validate(const StructureSpec& spec);

/// Number of elements.
std::uint64_t order(const StructureSpec& spec);

/// Textual forms used by the CLI and the instance files:
///   "abelian:2,4"   "maxchain:5"   "ring:z4"   "ring:gf8"   "ring:z2xgf4"
std::string to_string(const StructureSpec& spec);
StructureSpec parse_structure(std::string_view text);

/// "z4", "gf9", "z2xgf4" -> RingSpec.
RingSpec parse_ring(std::string_view text);

/// "z4", "z2xz2", "z2xz6" -> AbelianSpec (normalized to invariant factors).
AbelianSpec parse_group(std::string_view text);

std::vector<std::uint64_t> parse_uint_list(std::string_view text);

}  // namespace bbr
