#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bbr/permutation.hpp"

namespace bbr {

/// Conway polynomial coefficients (constant term first, monic leading term
/// included) for GF(p^r) with r >= 2 and p^r <= 64.
/// Throws ValidationError for composite p and CapabilityError when no
/// polynomial is shipped for (p, r).
std::span<const std::uint32_t> conway_polynomial(std::uint64_t p, unsigned r);

/// Arithmetic in GF(p^r). An element is encoded by the base-p digits of its
/// polynomial coefficients: index = c0 + c1 p + ... + c_{r-1} p^{r-1}.
class GaloisField {
 public:
  GaloisField(std::uint64_t p, unsigned r);

  std::uint64_t characteristic() const noexcept { return p_; }
  unsigned degree() const noexcept { return r_; }
  std::uint64_t order() const noexcept { return q_; }

  Element add(Element a, Element b) const;
  Element mul(Element a, Element b) const;

 private:
  std::vector<std::uint32_t> digits(Element a) const;
  Element encode(std::span<const std::uint32_t> digits) const;

  std::uint64_t p_;
  unsigned r_;
  std::uint64_t q_;
  std::vector<std::uint32_t> modulus_;
};

}  // namespace bbr
