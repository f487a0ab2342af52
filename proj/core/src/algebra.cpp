#include "bbr/algebra.hpp"

#include <algorithm>
#include <string>

#include "bbr/errors.hpp"
#include "bbr/galois.hpp"

namespace bbr {

OpTable build_abelian(const AbelianSpec& spec) {
  auto checked = abelian_from_invariant_factors(spec.invariant_factors);
  const auto& d = checked.invariant_factors;
  std::uint64_t n = 1;
  for (auto f : d) n *= f;
  return OpTable::from_function(n, [&](Element x, Element y) {
    std::uint64_t out = 0;
    std::uint64_t place = 1;
    std::uint64_t a = x;
    std::uint64_t b = y;
    for (auto f : d) {
      out += ((a % f + b % f) % f) * place;
      a /= f;
      b /= f;
      place *= f;
    }
    return static_cast<Element>(out);
  });
}

OpTable build_max_chain(std::size_t n) {
  if (n < 1) throw ValidationError("max-chain needs n >= 1");
  return OpTable::from_function(n, [](Element x, Element y) { return std::max(x, y); });
}

RingTables build_ring(const RingSpec& spec) {
  validate(StructureSpec{spec});
  std::vector<std::size_t> sizes;
  std::vector<RingTables> parts;
  for (const auto& c : spec.components) {
    const auto q = c.order();
    if (c.kind == RingComponent::Kind::integers_mod) {
      parts.push_back(RingTables{
          OpTable::from_function(q, [q](Element a, Element b) { return static_cast<Element>((a + b) % q); }),
          OpTable::from_function(q, [q](Element a, Element b) {
            return static_cast<Element>((std::uint64_t{a} * b) % q);
          })});
    } else {
      GaloisField f(c.prime, c.degree);
      parts.push_back(RingTables{
          OpTable::from_function(q, [&f](Element a, Element b) { return f.add(a, b); }),
          OpTable::from_function(q, [&f](Element a, Element b) { return f.mul(a, b); })});
    }
    sizes.push_back(q);
  }
  if (parts.size() == 1) return parts.front();

  std::size_t n = 1;
  for (auto s : sizes) n *= s;
  auto combine = [&](auto pick) {
    return OpTable::from_function(n, [&](Element x, Element y) {
      std::size_t out = 0;
      std::size_t place = 1;
      std::size_t a = x;
      std::size_t b = y;
      for (std::size_t i = 0; i < parts.size(); ++i) {
        const OpTable& t = pick(parts[i]);
        out += t(static_cast<Element>(a % sizes[i]), static_cast<Element>(b % sizes[i])) * place;
        a /= sizes[i];
        b /= sizes[i];
        place *= sizes[i];
      }
      return static_cast<Element>(out);
    });
  };
  return RingTables{combine([](const RingTables& r) -> const OpTable& { return r.add; }),
                    combine([](const RingTables& r) -> const OpTable& { return r.mul; })};
}

OpTable build_table(const StructureSpec& spec) {
  if (const auto* a = std::get_if<AbelianSpec>(&spec)) return build_abelian(*a);
  if (const auto* m = std::get_if<MaxChainSpec>(&spec)) return build_max_chain(m->n);
  throw ValidationError("ring specs have two tables; use build_ring");
}

bool is_associative(const OpTable& t) {
  const auto n = static_cast<Element>(t.size());
  for (Element x = 0; x < n; ++x) {
    for (Element y = 0; y < n; ++y) {
      const Element xy = t(x, y);
      for (Element z = 0; z < n; ++z) {
        if (t(xy, z) != t(x, t(y, z))) return false;
      }
    }
  }
  return true;
}

bool is_commutative(const OpTable& t) {
  const auto n = static_cast<Element>(t.size());
  for (Element x = 0; x < n; ++x) {
    for (Element y = x + 1; y < n; ++y) {
      if (t(x, y) != t(y, x)) return false;
    }
  }
  return true;
}

std::optional<Element> find_identity(const OpTable& t) {
  const auto n = static_cast<Element>(t.size());
  for (Element e = 0; e < n; ++e) {
    bool ok = true;
    for (Element x = 0; x < n && ok; ++x) ok = t(e, x) == x && t(x, e) == x;
    if (ok) return e;
  }
  return std::nullopt;
}

namespace {

bool has_inverses(const OpTable& t, Element e) {
  const auto n = static_cast<Element>(t.size());
  for (Element x = 0; x < n; ++x) {
    bool found = false;
    for (Element y = 0; y < n && !found; ++y) found = t(x, y) == e && t(y, x) == e;
    if (!found) return false;
  }
  return true;
}

}  // namespace

bool check_axioms(const OpTable& t, Axioms which) {
  switch (which) {
    case Axioms::groupoid:
      return true;
    case Axioms::semigroup:
      return is_associative(t);
    case Axioms::group:
    case Axioms::abelian_group: {
      if (which == Axioms::abelian_group && !is_commutative(t)) return false;
      auto e = find_identity(t);
      return e && has_inverses(t, *e) && is_associative(t);
    }
  }
  return false;
}

bool is_distributive(const OpTable& add, const OpTable& mul) {
  if (add.size() != mul.size()) throw ValidationError("ring tables differ in size");
  const auto n = static_cast<Element>(add.size());
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) {
      for (Element c = 0; c < n; ++c) {
        if (mul(a, add(b, c)) != add(mul(a, b), mul(a, c))) return false;
        if (mul(add(a, b), c) != add(mul(a, c), mul(b, c))) return false;
      }
    }
  }
  return true;
}

bool check_ring_tables(const RingTables& r) {
  return check_axioms(r.add, Axioms::abelian_group) && is_associative(r.mul) &&
         is_distributive(r.add, r.mul);
}

std::size_t element_order(const OpTable& t, Element x) {
  auto e = find_identity(t);
  if (!e || !check_axioms(t, Axioms::group)) throw ValidationError("element order needs a group table");
  std::size_t k = 1;
  for (Element p = x; p != *e; p = t(p, x)) ++k;
  return k;
}

bool is_cyclic_group(const OpTable& t) {
  if (!check_axioms(t, Axioms::group)) return false;
  const auto e = *find_identity(t);
  const auto n = t.size();
  for (Element g = 0; g < n; ++g) {
    std::size_t k = 1;
    for (Element p = g; p != e; p = t(p, g)) ++k;
    if (k == n) return true;
  }
  return false;
}

bool is_max_chain(const OpTable& t) {
  const auto n = static_cast<Element>(t.size());
  for (Element x = 0; x < n; ++x) {
    for (Element y = 0; y < n; ++y) {
      auto z = t(x, y);
      if (z != x && z != y) return false;
    }
  }
  return is_commutative(t) && is_associative(t);
}

namespace {

// Backtracking over partial bijections from -> to. Elements are assigned in
// index order; a constraint x∗y = z is checked as soon as x, y and z are all
// assigned.
class IsomorphismSearch {
 public:
  IsomorphismSearch(std::vector<const OpTable*> from, std::vector<const OpTable*> to)
      : from_(std::move(from)), to_(std::move(to)), n_(from_.front()->size()),
        image_(n_), used_(n_, false), by_level_(n_) {
    for (std::size_t t = 0; t < from_.size(); ++t) {
      for (Element x = 0; x < n_; ++x) {
        for (Element y = 0; y < n_; ++y) {
          Element z = (*from_[t])(x, y);
          by_level_[std::max({x, y, z})].push_back({t, x, y, z});
        }
      }
    }
  }

  std::uint64_t count_all() {
    stop_at_first_ = false;
    extend(0);
    return count_;
  }

  std::optional<Permutation> find_one() {
    stop_at_first_ = true;
    extend(0);
    return found_;
  }

 private:
  struct Constraint {
    std::size_t table;
    Element x, y, z;
  };

  bool consistent(std::size_t level) const {
    for (const auto& c : by_level_[level]) {
      if (image_[c.z] != (*to_[c.table])(image_[c.x], image_[c.y])) return false;
    }
    return true;
  }

  // Returns true when the search should stop.
  bool extend(std::size_t level) {
    if (level == n_) {
      ++count_;
      if (stop_at_first_) {
        found_ = Permutation(image_);
        return true;
      }
      return false;
    }
    for (Element v = 0; v < n_; ++v) {
      if (used_[v]) continue;
      image_[level] = v;
      used_[v] = true;
      bool stop = consistent(level) && extend(level + 1);
      used_[v] = false;
      if (stop) return true;
    }
    return false;
  }

  std::vector<const OpTable*> from_;
  std::vector<const OpTable*> to_;
  std::size_t n_;
  std::vector<Element> image_;
  std::vector<bool> used_;
  std::vector<std::vector<Constraint>> by_level_;
  bool stop_at_first_ = false;
  std::uint64_t count_ = 0;
  std::optional<Permutation> found_;
};

void check_cap(std::size_t n, std::size_t cap, const char* what) {
  if (n > cap) {
    throw CapabilityError(std::string(what) + " is brute force and capped at n <= " +
                          std::to_string(cap) + " (got n = " + std::to_string(n) +
                          "); raise the cap explicitly to proceed");
  }
}

}  // namespace

std::uint64_t count_automorphisms(const OpTable& t, std::size_t cap) {
  check_cap(t.size(), cap, "automorphism counting");
  return IsomorphismSearch({&t}, {&t}).count_all();
}

std::uint64_t count_ring_automorphisms(const RingTables& r, std::size_t cap) {
  if (r.add.size() != r.mul.size()) throw ValidationError("ring tables differ in size");
  check_cap(r.size(), cap, "ring automorphism counting");
  return IsomorphismSearch({&r.add, &r.mul}, {&r.add, &r.mul}).count_all();
}

std::optional<Permutation> are_isomorphic(const OpTable& a, const OpTable& b, std::size_t cap) {
  if (a.size() != b.size()) {
    throw ValidationError("isomorphism test needs equal sizes (" + std::to_string(a.size()) +
                          " vs " + std::to_string(b.size()) + ")");
  }
  check_cap(a.size(), cap, "isomorphism search");
  return IsomorphismSearch({&a}, {&b}).find_one();
}

}  // namespace bbr
