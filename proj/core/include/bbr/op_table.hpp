#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "bbr/permutation.hpp"

namespace bbr {

/// A full n×n operation table over element indices, row-major:
/// entry(x, y) = x ∗ y.
class OpTable {
 public:
  /// Throws ValidationError if n == 0, entries.size() != n², or an entry
  /// lies outside [0, n).
  OpTable(std::size_t n, std::vector<Element> entries);

  /// Builds the table from nested rows; each row must have length rows.size().
  static OpTable from_rows(const std::vector<std::vector<Element>>& rows);

  static OpTable from_function(std::size_t n,
                               const std::function<Element(Element, Element)>& op);

  std::size_t size() const noexcept { return n_; }

  Element operator()(Element x, Element y) const { return entries_[x * n_ + y]; }

  std::span<const Element> entries() const noexcept { return entries_; }
  std::span<const Element> row(Element x) const {
    return std::span<const Element>(entries_).subspan(x * n_, n_);
  }

  std::vector<std::vector<Element>> rows() const;

  /// The table transported along sigma:
  /// result(x, y) = sigma(this(sigma⁻¹ x, sigma⁻¹ y)).
  OpTable relabeled(const Permutation& sigma) const;

  /// Copy with a single entry replaced.
  OpTable with_entry(Element x, Element y, Element z) const;

  friend bool operator==(const OpTable&, const OpTable&) = default;
  friend auto operator<=>(const OpTable& a, const OpTable& b) {
    return a.entries_ <=> b.entries_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Element> entries_;
};

/// Addition and multiplication of a finite ring over the same element set.
struct RingTables {
  OpTable add;
  OpTable mul;

  std::size_t size() const noexcept { return add.size(); }
  friend bool operator==(const RingTables&, const RingTables&) = default;
};

}  // namespace bbr
