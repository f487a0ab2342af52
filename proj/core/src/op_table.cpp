#include "bbr/op_table.hpp"

#include <string>

#include "bbr/errors.hpp"

namespace bbr {

OpTable::OpTable(std::size_t n, std::vector<Element> entries)
    : n_(n), entries_(std::move(entries)) {
  if (n_ == 0) throw ValidationError("operation table needs n >= 1");
  if (entries_.size() != n_ * n_) {
    throw ValidationError("operation table of size " + std::to_string(n_) + " needs " +
                          std::to_string(n_ * n_) + " entries, got " +
                          std::to_string(entries_.size()));
  }
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i] >= n_) {
      throw ValidationError("entry (" + std::to_string(i / n_) + "," +
                            std::to_string(i % n_) + ") = " +
                            std::to_string(entries_[i]) + " is outside [0," +
                            std::to_string(n_) + ")");
    }
  }
}

OpTable OpTable::from_rows(const std::vector<std::vector<Element>>& rows) {
  const std::size_t n = rows.size();
  std::vector<Element> entries;
  entries.reserve(n * n);
  for (const auto& row : rows) {
    if (row.size() != n) {
      throw ValidationError("table rows must all have length " + std::to_string(n));
    }
    entries.insert(entries.end(), row.begin(), row.end());
  }
  return OpTable(n, std::move(entries));
}

OpTable OpTable::from_function(std::size_t n,
                               const std::function<Element(Element, Element)>& op) {
  std::vector<Element> entries(n * n);
  for (Element x = 0; x < n; ++x) {
    for (Element y = 0; y < n; ++y) entries[x * n + y] = op(x, y);
  }
  return OpTable(n, std::move(entries));
}

std::vector<std::vector<Element>> OpTable::rows() const {
  std::vector<std::vector<Element>> out(n_);
  for (Element x = 0; x < n_; ++x) {
    auto r = row(x);
    out[x].assign(r.begin(), r.end());
  }
  return out;
}

OpTable OpTable::relabeled(const Permutation& sigma) const {
  if (sigma.size() != n_) throw ValidationError("relabeling has the wrong size");
  std::vector<Element> out(n_ * n_);
  for (Element x = 0; x < n_; ++x) {
    for (Element y = 0; y < n_; ++y) {
      out[sigma(x) * n_ + sigma(y)] = sigma((*this)(x, y));
    }
  }
  return OpTable(n_, std::move(out));
}

OpTable OpTable::with_entry(Element x, Element y, Element z) const {
  if (x >= n_ || y >= n_) throw ValidationError("index out of range");
  auto copy = entries_;
  copy[x * n_ + y] = z;
  return OpTable(n_, std::move(copy));
}

}  // namespace bbr
