#include "bbr/permutation.hpp"

#include <numeric>
#include <string>

#include "bbr/errors.hpp"

namespace bbr {

Permutation::Permutation(std::vector<Element> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (Element v : images_) {
    if (v >= images_.size() || seen[v]) {
      throw ValidationError("not a permutation of 0.." +
                            std::to_string(images_.size() - 1));
    }
    seen[v] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<Element> images(n);
  std::iota(images.begin(), images.end(), Element{0});
  return Permutation(std::move(images));
}

Permutation Permutation::inverse() const {
  std::vector<Element> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) {
    inv[images_[i]] = static_cast<Element>(i);
  }
  return Permutation(std::move(inv));
}

Permutation Permutation::compose(const Permutation& other) const {
  if (other.size() != size()) {
    throw ValidationError("cannot compose permutations of different sizes");
  }
  std::vector<Element> out(size());
  for (std::size_t i = 0; i < size(); ++i) out[i] = images_[other.images_[i]];
  return Permutation(std::move(out));
}

}  // namespace bbr
