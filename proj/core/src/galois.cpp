#include "bbr/galois.hpp"

#include <array>
#include <string>

#include "bbr/errors.hpp"
#include "bbr/structure.hpp"

namespace bbr {

namespace {

struct ConwayEntry {
  std::uint64_t p;
  unsigned r;
  std::array<std::uint32_t, 7> coeffs;  // constant term first, monic
};

// Conway polynomials for every non-prime field of order <= 64.
constexpr std::array<ConwayEntry, 9> conway_table{{
    {2, 2, {1, 1, 1}},
    {2, 3, {1, 1, 0, 1}},
    {2, 4, {1, 1, 0, 0, 1}},
    {2, 5, {1, 0, 1, 0, 0, 1}},
    {2, 6, {1, 1, 0, 1, 1, 0, 1}},
    {3, 2, {2, 2, 1}},
    {3, 3, {1, 2, 0, 1}},
    {5, 2, {2, 4, 1}},
    {7, 2, {3, 6, 1}},
}};

}  // namespace

std::span<const std::uint32_t> conway_polynomial(std::uint64_t p, unsigned r) {
  if (!is_prime(p)) throw ValidationError("GF(p^r) needs p prime, got " + std::to_string(p));
  for (const auto& e : conway_table) {
    if (e.p == p && e.r == r) return std::span<const std::uint32_t>(e.coeffs).first(r + 1);
  }
  throw CapabilityError("no irreducible polynomial shipped for GF(" + std::to_string(p) + "^" +
                        std::to_string(r) + "); fields with r >= 2 are limited to p^r <= 64");
}

GaloisField::GaloisField(std::uint64_t p, unsigned r) : p_(p), r_(r), q_(1) {
  if (!is_prime(p)) throw ValidationError("GF(p^r) needs p prime, got " + std::to_string(p));
  if (r < 1) throw ValidationError("GF(p^r) needs r >= 1");
  for (unsigned i = 0; i < r; ++i) q_ *= p;
  if (r >= 2) {
    auto poly = conway_polynomial(p, r);
    modulus_.assign(poly.begin(), poly.end());
  }
}

std::vector<std::uint32_t> GaloisField::digits(Element a) const {
  std::vector<std::uint32_t> d(r_);
  for (unsigned i = 0; i < r_; ++i) {
    d[i] = static_cast<std::uint32_t>(a % p_);
    a = static_cast<Element>(a / p_);
  }
  return d;
}

Element GaloisField::encode(std::span<const std::uint32_t> d) const {
  std::uint64_t v = 0;
  for (unsigned i = r_; i-- > 0;) v = v * p_ + d[i];
  return static_cast<Element>(v);
}

Element GaloisField::add(Element a, Element b) const {
  auto da = digits(a);
  auto db = digits(b);
  for (unsigned i = 0; i < r_; ++i) da[i] = static_cast<std::uint32_t>((da[i] + db[i]) % p_);
  return encode(da);
}

Element GaloisField::mul(Element a, Element b) const {
  if (r_ == 1) return static_cast<Element>((std::uint64_t{a} * b) % p_);
  auto da = digits(a);
  auto db = digits(b);
  std::vector<std::uint64_t> prod(2 * r_ - 1, 0);
  for (unsigned i = 0; i < r_; ++i) {
    for (unsigned j = 0; j < r_; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{da[i]} * db[j]) % p_;
  }
  // Reduce modulo the monic modulus from the top degree down.
  for (unsigned deg = 2 * r_ - 2; deg >= r_; --deg) {
    auto c = prod[deg];
    if (c == 0) continue;
    for (unsigned i = 0; i <= r_; ++i) {
      auto& slot = prod[deg - r_ + i];
      slot = (slot + (p_ - c) * modulus_[i]) % p_;
    }
  }
  std::vector<std::uint32_t> out(r_);
  for (unsigned i = 0; i < r_; ++i) out[i] = static_cast<std::uint32_t>(prod[i]);
  return encode(out);
}

}  // namespace bbr
