#include "bbr/bounds.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "bbr/errors.hpp"

namespace bbr {

BigInt factorial(std::size_t n) {
  BigInt f = 1;
  for (std::size_t k = 2; k <= n; ++k) f *= k;
  return f;
}

double log_big(const BigInt& x) {
  if (x < 0) throw ValidationError("log of a negative count");
  if (x == 0) return -std::numeric_limits<double>::infinity();
  if (boost::multiprecision::msb(x) < 1000) return std::log(x.convert_to<double>());
  using boost::multiprecision::cpp_bin_float_50;
  return boost::multiprecision::log(cpp_bin_float_50(x)).convert_to<double>();
}

BigInt x_g_size(const OpTable& t, std::size_t cap) {
  const std::size_t n = t.size();
  BigInt aut;
  if (is_max_chain(t)) {
    aut = 1;
  } else if (is_cyclic_group(t)) {
    aut = euler_phi(n);
  } else {
    aut = count_automorphisms(t, cap);
  }
  const BigInt total = factorial(n);
  if (total % aut != 0) throw std::logic_error("|Aut| does not divide n!");
  return total / aut;
}

BigInt x_family_size(std::span<const OpTable> tables, std::size_t cap) {
  if (tables.empty()) return 0;
  const std::size_t n = tables.front().size();
  for (const auto& t : tables) {
    if (t.size() != n) throw ValidationError("family members must share one size");
  }
  for (std::size_t i = 0; i < tables.size(); ++i) {
    for (std::size_t j = i + 1; j < tables.size(); ++j) {
      const bool same = tables[i] == tables[j] ||
                        (n <= cap && are_isomorphic(tables[i], tables[j], cap).has_value());
      if (same) {
        throw ValidationError("family members " + std::to_string(i) + " and " + std::to_string(j) +
                              " are isomorphic");
      }
    }
  }
  BigInt sum = 0;
  for (const auto& t : tables) sum += x_g_size(t, cap);
  return sum;
}

double avg_query_lower_bound(const BigInt& x_size, std::size_t n) {
  if (n < 2) throw ValidationError("the average bound needs |S| >= 2");
  if (x_size < 1) throw ValidationError("the average bound needs |X| >= 1");
  return log_big(x_size) / std::log(static_cast<double>(n));
}

MaxChainBound max_chain_lower(std::size_t n) {
  if (n < 1) throw ValidationError("max-chain needs n >= 1");
  double exact = 0.0;
  for (std::size_t k = 2; k <= n; ++k) exact += std::log2(static_cast<double>(k));
  const double dn = static_cast<double>(n);
  const double closed = dn * std::log2(dn) - dn / std::log(2.0) + std::log2(dn) / 2.0;
  return {exact, closed};
}

double abelian_lower(std::size_t n, std::size_t r) {
  const double dn = static_cast<double>(n);
  return dn - dn / std::log(dn) + 0.5 - static_cast<double>(r);
}

BigInt field_aut_add_count(std::uint64_t p, unsigned r) {
  if (!is_prime(p)) throw ValidationError("field order needs p prime, got " + std::to_string(p));
  if (r < 1) throw ValidationError("field order needs r >= 1");
  BigInt q = 1;
  for (unsigned i = 0; i < r; ++i) q *= p;
  BigInt count = 1;
  BigInt p_pow = 1;
  for (unsigned i = 0; i < r; ++i) {
    count *= q - p_pow;
    p_pow *= p;
  }
  return count;
}

BigInt x_r_size(const RingTables& r, std::size_t cap) {
  const BigInt additive = count_automorphisms(r.add, cap);
  const BigInt ring = count_ring_automorphisms(r, cap);
  if (additive % ring != 0) throw std::logic_error("|Aut(R,+,*)| does not divide |Aut(R,+)|");
  return additive / ring;
}

double field_lower(std::uint64_t p, unsigned r) {
  if (!is_prime(p)) throw ValidationError("field bound needs p prime, got " + std::to_string(p));
  if (r < 1) throw ValidationError("field bound needs r >= 1");
  const double q = std::pow(static_cast<double>(p), static_cast<double>(r));
  return static_cast<double>(r) - std::log(4.0 * r) / std::log(q);
}

BoundsReport bounds_report(const StructureSpec& spec, std::size_t cap) {
  validate(spec);
  BoundsReport rep;
  rep.n = order(spec);
  rep.structure = to_string(spec);

  auto fill_from_count = [&](const BigInt& x) {
    rep.x_size = x;
    if (rep.n >= 2) {
      rep.avg_lower = avg_query_lower_bound(x, rep.n);
    } else {
      rep.notes.push_back("avg_lower: undefined for |S| = 1 (nothing to recover)");
    }
  };

  if (const auto* ab = std::get_if<AbelianSpec>(&spec)) {
    const auto table = build_abelian(*ab);
    try {
      fill_from_count(x_g_size(table, cap));
      rep.notes.push_back("x_size: n!/|Aut(G)|, |Aut| = phi(n) for cyclic G, brute force otherwise");
    } catch (const CapabilityError& e) {
      rep.notes.push_back(std::string("x_size: ") + e.what());
    }
    if (rep.n >= 2) {
      const std::size_t r = ab->invariant_factors.size();
      rep.closed_form_lower = abelian_lower(rep.n, r);
      rep.notes.push_back("closed_form_lower: n - n/ln n + 1/2 - r with r = " + std::to_string(r) +
                          " generators");
    }
  } else if (const auto* mc = std::get_if<MaxChainSpec>(&spec)) {
    fill_from_count(factorial(mc->n));
    const auto mb = max_chain_lower(mc->n);
    rep.binary_lower = mb.exact;
    rep.closed_form_lower = mb.closed;
    rep.notes.push_back("x_size: n! (a chain has no nontrivial automorphism)");
    rep.notes.push_back("binary_lower: log2(n!), each query has two possible answers");
    rep.notes.push_back("closed_form_lower: n log2 n - n/ln 2 + log2(n)/2, a relaxation of binary_lower");
  } else {
    const auto& ring = std::get<RingSpec>(spec);
    try {
      fill_from_count(x_r_size(build_ring(ring), cap));
      rep.notes.push_back("x_size: |Aut(R,+)| / |Aut(R,+,*)| by brute force");
    } catch (const CapabilityError& e) {
      rep.notes.push_back(std::string("x_size: ") + e.what());
    }
    if (ring.components.size() == 1 &&
        ring.components.front().kind == RingComponent::Kind::galois_field) {
      const auto& c = ring.components.front();
      rep.closed_form_lower = field_lower(c.prime, c.degree);
      rep.notes.push_back("closed_form_lower: r - log_q(4r)");
    } else {
      rep.notes.push_back("closed_form_lower: only available for fields");
    }
  }
  return rep;
}

}  // namespace bbr
