#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "bbr/algebra.hpp"
#include "bbr/op_table.hpp"
#include "bbr/structure.hpp"

namespace bbr {

using BigInt = boost::multiprecision::cpp_int;

/// Tolerance for comparisons between real-valued bounds.
inline constexpr double bound_tolerance = 1e-9;

BigInt factorial(std::size_t n);

/// Natural log of a non-negative big integer (log 0 is -inf).
double log_big(const BigInt& x);

/// |X_G| = n!/|Aut(G)|. Cyclic groups use |Aut| = φ(n) and max-chains use
/// |Aut| = 1 at any size; everything else goes through brute force.
BigInt x_g_size(const OpTable& t, std::size_t cap = default_brute_force_cap);

/// Σ x_g_size over pairwise non-isomorphic tables of one size. Throws
/// ValidationError on mixed sizes or isomorphic duplicates.
BigInt x_family_size(std::span<const OpTable> tables,
                     std::size_t cap = default_brute_force_cap);

/// log(x_size)/log(n): the average-query lower bound.
double avg_query_lower_bound(const BigInt& x_size, std::size_t n);

struct MaxChainBound {
  double exact;   // log₂(n!)
  double closed;  // n log₂n − n/ln 2 + (log₂n)/2
};

MaxChainBound max_chain_lower(std::size_t n);

/// n − n/ln n + 1/2 − r. Negative values are returned as is.
double abelian_lower(std::size_t n, std::size_t r);

/// |Aut(GF(q), +)| = (q − 1)(q − p)···(q − p^{r−1}), q = p^r.
BigInt field_aut_add_count(std::uint64_t p, unsigned r);

/// |X_R| = |Aut(R, +)| / |Aut(R, +, ·)| by brute force.
BigInt x_r_size(const RingTables& r, std::size_t cap = default_brute_force_cap);

/// r − log(4r)/log(q).
double field_lower(std::uint64_t p, unsigned r);

struct BoundsReport {
  std::size_t n = 0;
  std::string structure;
  std::optional<BigInt> x_size;
  std::optional<double> avg_lower;
  std::optional<double> closed_form_lower;
  std::optional<double> binary_lower;
  std::vector<std::string> notes;
};

/// Every bound applicable to the spec. Fields that hit a cap are left empty
/// and explained in `notes` rather than failing the report.
BoundsReport bounds_report(const StructureSpec& spec,
                           std::size_t cap = default_brute_force_cap);

}  // namespace bbr
