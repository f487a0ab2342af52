#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace bbr {

/// Elements are dense indices 0..n-1.
using Element = std::uint32_t;

/// A bijection of {0, ..., n-1}, stored as its image list.
class Permutation {
 public:
  Permutation() = default;

  /// Throws ValidationError unless `images` is a permutation of 0..n-1.
  explicit Permutation(std::vector<Element> images);

  static Permutation identity(std::size_t n);

  std::size_t size() const noexcept { return images_.size(); }
  Element operator()(Element x) const { return images_[x]; }
  std::span<const Element> images() const noexcept { return images_; }

  Permutation inverse() const;

  /// (this ∘ other)(x) = this(other(x)).
  Permutation compose(const Permutation& other) const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<Element> images_;
};

}  // namespace bbr
