#include "bbr/structure.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <map>
#include <string>

#include "bbr/errors.hpp"

namespace bbr {

namespace {

std::uint64_t parse_uint(std::string_view text) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw ValidationError("expected a non-negative integer, got '" + std::string(text) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

// (p, r) with q = p^r, or nullopt if q is not a prime power.
std::optional<std::pair<std::uint64_t, unsigned>> prime_power(std::uint64_t q) {
  if (q < 2) return std::nullopt;
  auto f = factorize(q);
  if (f.size() != 1) return std::nullopt;
  return f.front();
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t phi = n;
  for (auto [p, e] : factorize(n)) phi = phi / p * (p - 1);
  return phi;
}

AbelianSpec abelian_from_invariant_factors(std::vector<std::uint64_t> factors) {
  if (factors.size() == 1 && factors.front() == 1) factors.clear();
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (factors[i] < 2) {
      throw ValidationError("invariant factors must be >= 2");
    }
    if (i + 1 < factors.size() && factors[i + 1] % factors[i] != 0) {
      throw ValidationError("invariant factor " + std::to_string(factors[i]) +
                            " does not divide " + std::to_string(factors[i + 1]));
    }
  }
  return AbelianSpec{std::move(factors)};
}

AbelianSpec abelian_from_prime_powers(const std::vector<std::uint64_t>& prime_powers) {
  std::map<std::uint64_t, std::vector<std::uint64_t>> by_prime;
  for (auto q : prime_powers) {
    if (q == 1) continue;
    auto pp = prime_power(q);
    if (!pp) throw ValidationError(std::to_string(q) + " is not a prime power");
    by_prime[pp->first].push_back(q);
  }
  std::size_t k = 0;
  for (auto& [p, powers] : by_prime) {
    std::sort(powers.begin(), powers.end(), std::greater<>());
    k = std::max(k, powers.size());
  }
  // factors[0] is the largest invariant factor.
  std::vector<std::uint64_t> factors(k, 1);
  for (auto& [p, powers] : by_prime) {
    for (std::size_t i = 0; i < powers.size(); ++i) factors[i] *= powers[i];
  }
  std::reverse(factors.begin(), factors.end());
  return abelian_from_invariant_factors(std::move(factors));
}

AbelianSpec abelian_from_cyclic_factors(const std::vector<std::uint64_t>& factors) {
  std::vector<std::uint64_t> prime_powers;
  for (auto d : factors) {
    if (d == 0) throw ValidationError("cyclic factor must be >= 1");
    for (auto [p, e] : factorize(d)) {
      std::uint64_t q = 1;
      for (unsigned i = 0; i < e; ++i) q *= p;
      prime_powers.push_back(q);
    }
  }
  return abelian_from_prime_powers(prime_powers);
}

std::vector<AbelianSpec> abelian_groups_of_order(std::uint64_t n) {
  if (n == 0) throw ValidationError("group order must be >= 1");
  // Partitions of each prime exponent, parts in non-increasing order.
  std::function<void(unsigned, unsigned, std::vector<unsigned>&,
                     std::vector<std::vector<unsigned>>&)>
      partitions = [&](unsigned rest, unsigned max_part, std::vector<unsigned>& cur,
                       std::vector<std::vector<unsigned>>& out) {
        if (rest == 0) {
          out.push_back(cur);
          return;
        }
        for (unsigned part = std::min(rest, max_part); part >= 1; --part) {
          cur.push_back(part);
          partitions(rest - part, part, cur, out);
          cur.pop_back();
        }
      };

  auto primes = factorize(n);
  std::vector<std::vector<std::vector<unsigned>>> per_prime;
  for (auto [p, e] : primes) {
    std::vector<std::vector<unsigned>> parts;
    std::vector<unsigned> cur;
    partitions(e, e, cur, parts);
    per_prime.push_back(std::move(parts));
  }

  std::vector<AbelianSpec> out;
  std::vector<std::size_t> choice(primes.size(), 0);
  while (true) {
    std::vector<std::uint64_t> prime_powers;
    for (std::size_t i = 0; i < primes.size(); ++i) {
      for (unsigned part : per_prime[i][choice[i]]) {
        std::uint64_t q = 1;
        for (unsigned j = 0; j < part; ++j) q *= primes[i].first;
        prime_powers.push_back(q);
      }
    }
    out.push_back(abelian_from_prime_powers(prime_powers));
    std::size_t i = 0;
    while (i < choice.size() && ++choice[i] == per_prime[i].size()) choice[i++] = 0;
    if (i == choice.size()) break;
  }
  return out;
}

RingComponent RingComponent::integers(std::uint64_t n) {
  if (n < 2) throw ValidationError("Z_n needs n >= 2");
  RingComponent c;
  c.kind = Kind::integers_mod;
  c.modulus = n;
  return c;
}

RingComponent RingComponent::field(std::uint64_t p, unsigned r) {
  if (!is_prime(p)) throw ValidationError("GF(p^r) needs p prime, got p = " + std::to_string(p));
  if (r < 1) throw ValidationError("GF(p^r) needs r >= 1");
  RingComponent c;
  c.kind = Kind::galois_field;
  c.prime = p;
  c.degree = r;
  return c;
}

std::uint64_t RingComponent::order() const {
  if (kind == Kind::integers_mod) return modulus;
  std::uint64_t q = 1;
  for (unsigned i = 0; i < degree; ++i) q *= prime;
  return q;
}

RingSpec ring_from_components(std::vector<RingComponent> components) {
  RingSpec spec{std::move(components)};
  validate(StructureSpec{spec});
  return spec;
}

void validate(const StructureSpec& spec) {
  std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, AbelianSpec>) {
          abelian_from_invariant_factors(s.invariant_factors);
        } else if constexpr (std::is_same_v<T, MaxChainSpec>) {
          if (s.n < 1) throw ValidationError("max-chain needs n >= 1");
        } else {
          if (s.components.empty()) throw ValidationError("ring needs at least one factor");
          for (const auto& c : s.components) {
            if (c.kind == RingComponent::Kind::integers_mod) {
              RingComponent::integers(c.modulus);
            } else {
              RingComponent::field(c.prime, c.degree);
            }
          }
        }
      },
      spec);
}

std::uint64_t order(const StructureSpec& spec) {
  return std::visit(
      [](const auto& s) -> std::uint64_t {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, AbelianSpec>) {
          std::uint64_t n = 1;
          for (auto d : s.invariant_factors) n *= d;
          return n;
        } else if constexpr (std::is_same_v<T, MaxChainSpec>) {
          return s.n;
        } else {
          std::uint64_t n = 1;
          for (const auto& c : s.components) n *= c.order();
          return n;
        }
      },
      spec);
}

std::string to_string(const StructureSpec& spec) {
  return std::visit(
      [](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, AbelianSpec>) {
          if (s.invariant_factors.empty()) return "abelian:1";
          std::string out = "abelian:";
          for (std::size_t i = 0; i < s.invariant_factors.size(); ++i) {
            if (i) out += ',';
            out += std::to_string(s.invariant_factors[i]);
          }
          return out;
        } else if constexpr (std::is_same_v<T, MaxChainSpec>) {
          return "maxchain:" + std::to_string(s.n);
        } else {
          std::string out = "ring:";
          for (std::size_t i = 0; i < s.components.size(); ++i) {
            if (i) out += 'x';
            const auto& c = s.components[i];
            out += c.kind == RingComponent::Kind::integers_mod
                       ? "z" + std::to_string(c.modulus)
                       : "gf" + std::to_string(c.order());
          }
          return out;
        }
      },
      spec);
}

std::vector<std::uint64_t> parse_uint_list(std::string_view text) {
  std::vector<std::uint64_t> out;
  for (auto part : split(text, ',')) out.push_back(parse_uint(part));
  return out;
}

RingSpec parse_ring(std::string_view text) {
  std::vector<RingComponent> comps;
  for (auto part : split(text, 'x')) {
    if (part.starts_with("gf")) {
      auto q = parse_uint(part.substr(2));
      auto pp = prime_power(q);
      if (!pp) throw ValidationError("GF(q) needs a prime power q, got " + std::to_string(q));
      comps.push_back(RingComponent::field(pp->first, pp->second));
    } else if (part.starts_with("z")) {
      comps.push_back(RingComponent::integers(parse_uint(part.substr(1))));
    } else {
      throw ValidationError("unknown ring factor '" + std::string(part) +
                            "' (expected zN or gfQ)");
    }
  }
  return ring_from_components(std::move(comps));
}

AbelianSpec parse_group(std::string_view text) {
  std::vector<std::uint64_t> factors;
  for (auto part : split(text, 'x')) {
    if (!part.starts_with("z")) {
      throw ValidationError("unknown group factor '" + std::string(part) +
                            "' (expected zN, e.g. z2xz4)");
    }
    factors.push_back(parse_uint(part.substr(1)));
  }
  return abelian_from_cyclic_factors(factors);
}

StructureSpec parse_structure(std::string_view text) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw ValidationError("structure must look like kind:args, got '" + std::string(text) + "'");
  }
  auto kind = text.substr(0, colon);
  auto args = text.substr(colon + 1);
  if (kind == "abelian") return abelian_from_invariant_factors(parse_uint_list(args));
  if (kind == "maxchain") {
    MaxChainSpec s{parse_uint(args)};
    validate(StructureSpec{s});
    return s;
  }
  if (kind == "ring") return parse_ring(args);
  if (kind == "group") return parse_group(args);
  throw ValidationError("unknown structure kind '" + std::string(kind) + "'");
}

}  // namespace bbr
